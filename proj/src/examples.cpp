#include "colevel/examples.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "colevel/error.hpp"

namespace colevel::examples {

namespace {

constexpr Int kMaxMaterializedOrder = 8;

std::vector<std::string> numbered_variables(Int N) {
  std::vector<std::string> out;
  for (Int i = 1; i <= N; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<Int> split_params(const std::string& text, std::string& head) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string part;
  std::getline(ss, head, ':');
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError("bad example parameter '" + part + "' in '" + text + "'");
    }
  }
  return out;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

std::vector<std::string> matrix_variables(Int e) {
  std::vector<std::string> out;
  for (Int i = 1; i <= e; ++i)
    for (Int j = 1; j <= e; ++j) out.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
  return out;
}

MultiPoly symbolic_minor(Int e, const std::vector<Int>& keep) {
  const std::size_t nvars = static_cast<std::size_t>(e * e);
  std::vector<Int> perm = keep;
  std::sort(perm.begin(), perm.end());
  const std::vector<Int> rows = perm;
  std::vector<Term> terms;
  do {
    // sign via inversion count
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) ++inversions;
    Exponents exps(nvars, 0);
    for (std::size_t k = 0; k < rows.size(); ++k) exps[static_cast<std::size_t>(rows[k] * e + perm[k])] += 1;
    terms.push_back(Term{std::move(exps), inversions % 2 ? -1 : 1});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return MultiPoly(nvars, std::move(terms));
}

VarietySpec ExampleDescriptor::variety() const {
  const bool proj = problem.projective;
  const Int nvars = proj ? problem.N + 1 : problem.N;
  switch (kind) {
    case Kind::Det1:
    case Kind::Det2: {
      const Int e = params.at(0);
      if (e > kMaxMaterializedOrder)
        throw InputError("determinantal equations are generated only for e <= " +
                         std::to_string(kMaxMaterializedOrder));
      std::vector<MultiPoly> polys;
      std::vector<Int> all(static_cast<std::size_t>(e));
      std::iota(all.begin(), all.end(), Int{0});
      if (kind == Kind::Det2) polys.push_back(symbolic_minor(e, all));
      for (Int i = 0; i < e; ++i) {
        std::vector<Int> keep;
        for (Int k = 0; k < e; ++k)
          if (k != i) keep.push_back(k);
        polys.push_back(symbolic_minor(e, keep));
      }
      return make_variety(problem.N, matrix_variables(e), std::move(polys), degrees, problem.n, proj, name);
    }
    case Kind::QuadricCone: {
      auto vars = numbered_variables(nvars);
      return make_variety(problem.N, vars, {parse_polynomial("x1*x2 - x3*x4", vars)}, degrees, problem.n, proj, name);
    }
    case Kind::CoordinateUnion: {
      auto vars = numbered_variables(nvars);
      MultiPoly product = MultiPoly::constant(vars.size(), 1);
      for (Int i = 0; i < params.at(1); ++i) product = product * MultiPoly::variable(vars.size(), static_cast<std::size_t>(i));
      return make_variety(problem.N, vars, {product}, degrees, problem.n, proj, name);
    }
    case Kind::Fermat: {
      auto vars = numbered_variables(nvars);
      MultiPoly sum(vars.size());
      for (std::size_t i = 0; i < vars.size(); ++i)
        sum = sum + MultiPoly::variable(vars.size(), i).pow(static_cast<unsigned>(params.at(1)));
      return make_variety(problem.N, vars, {sum}, degrees, problem.n, proj, name);
    }
  }
  throw std::logic_error("unknown example kind");
}

ExampleDescriptor ExampleDescriptor::projective_variant() const {
  if (problem.projective) return *this;
  ExampleDescriptor out = *this;
  out.problem = AmbientProblem{problem.N - 1, problem.n - 1, true};
  out.name = name + ":projective";
  out.expected_bounds.reset();
  return out;
}

ExampleDescriptor det1(Int e) {
  if (e < 4) throw InputError("det1 requires e >= 4");
  ExampleDescriptor d;
  d.kind = Kind::Det1;
  d.name = "det1:" + std::to_string(e);
  d.params = {e};
  d.problem = AmbientProblem{e * e, e * e - 4, false};
  d.degrees.assign(static_cast<std::size_t>(e), e - 1);
  d.note = "principal (e-1)-minors read as the e minors deleting row i and column i";

  ExpectedBounds bounds;
  for (Int m = 0; m <= e - 4; ++m) bounds.before_middle[m] = ceil_div((m + 1) * (e - 1) - (m - 1), e - 1);
  for (Int j = 0; j <= e * e - 4; ++j) bounds.beyond_middle[j] = j + std::max<Int>(0, e - 4 + ceil_div(4 - j, e - 1));
  d.expected_bounds = bounds;
  return d;
}

ExampleDescriptor det2(Int e) {
  if (e < 4) throw InputError("det2 requires e >= 4");
  ExampleDescriptor d;
  d.kind = Kind::Det2;
  d.name = "det2:" + std::to_string(e);
  d.params = {e};
  d.problem = AmbientProblem{e * e, e * e - 4, false};
  d.degrees.assign(static_cast<std::size_t>(e) + 1, e - 1);
  d.degrees.front() = e;
  d.note = "principal (e-1)-minors read as the e minors deleting row i and column i";

  ExpectedBounds bounds;
  for (Int m = 0; m <= e - 3; ++m) bounds.before_middle[m] = ceil_div((e - 1) * m, e);
  for (Int j = 0; j <= e * e - 4; ++j) bounds.beyond_middle[j] = j + std::max<Int>(0, e - 4 + ceil_div(3 - j, e));
  d.expected_bounds = bounds;
  return d;
}

ExampleDescriptor quadric_cone() {
  ExampleDescriptor d;
  d.kind = Kind::QuadricCone;
  d.name = "cone";
  d.problem = AmbientProblem{4, 3, false};
  d.degrees = {2};
  return d;
}

ExampleDescriptor coordinate_union(Int N, Int k) {
  if (N < 1 || k < 1 || k > N) throw InputError("coordinate union needs 1 <= k <= N");
  ExampleDescriptor d;
  d.kind = Kind::CoordinateUnion;
  d.name = N == 2 && k == 2 ? "coordunion" : "coordunion:" + std::to_string(N) + ":" + std::to_string(k);
  d.params = {N, k};
  d.problem = AmbientProblem{N, N - 1, false};
  d.degrees = {k};
  return d;
}

ExampleDescriptor fermat(Int N, Int d_) {
  if (N < 1 || d_ < 1) throw InputError("fermat needs N >= 1 and d >= 1");
  ExampleDescriptor d;
  d.kind = Kind::Fermat;
  d.name = "fermat:" + std::to_string(N) + ":" + std::to_string(d_);
  d.params = {N, d_};
  d.problem = AmbientProblem{N, N - 1, false};
  d.degrees = {d_};
  return d;
}

std::vector<ExampleDescriptor> fixture_corpus() { return {quadric_cone(), coordinate_union(2, 2), fermat(3, 3)}; }

ExampleDescriptor by_name(const std::string& name) {
  std::string head;
  const auto params = split_params(name, head);
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw InputError("example '" + head + "' takes " + std::to_string(n) + " parameter(s), got '" + name + "'");
  };
  if (head == "det1") {
    want(1);
    return det1(params[0]);
  }
  if (head == "det2") {
    want(1);
    return det2(params[0]);
  }
  if (head == "cone") {
    want(0);
    return quadric_cone();
  }
  if (head == "coordunion") {
    if (params.empty()) return coordinate_union();
    want(2);
    return coordinate_union(params[0], params[1]);
  }
  if (head == "fermat") {
    want(2);
    return fermat(params[0], params[1]);
  }
  throw InputError("unknown example '" + name + "' (det1:e, det2:e, cone, coordunion[:N:k], fermat:N:d)");
}

std::optional<std::pair<IntPoly, IntPoly>> expected_zeta(const ExampleDescriptor& example, const mpz_class& q) {
  if (example.problem.projective) return std::nullopt;
  auto power = [&](Int k) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
  };
  switch (example.kind) {
    case Kind::QuadricCone:
      // N_s = q^{3s} + q^{2s} - q^s
      return std::pair{IntPoly{1, -q}, poly_mul(IntPoly{1, -power(2)}, IntPoly{1, -power(3)})};
    case Kind::CoordinateUnion: {
      // N_s = q^{sN} - (q^s - 1)^k q^{s(N-k)}
      //     = sum_{i=1}^{k} (-1)^{i+1} C(k,i) q^{s(N-i)}
      const Int N = example.params.at(0), k = example.params.at(1);
      IntPoly num{1}, den{1};
      for (Int i = 1; i <= k; ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(i));
        const IntPoly factor{1, -power(N - i)};
        // multiplicity +C(k,i) on (1 - q^{N-i} t)^{-1} when i is odd
        IntPoly& target = (i % 2 == 1) ? den : num;
        for (unsigned long c = 0; c < binom.get_ui(); ++c) target = poly_mul(target, factor);
      }
      return std::pair{num, den};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace colevel::examples

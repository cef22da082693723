// Exhaustive zero counting over GF(q)^k.
//
// Variables are assigned one at a time.  After each assignment every
// polynomial is specialized to a polynomial in the remaining variables; a
// subtree is discarded as soon as one polynomial has become a nonzero
// constant, and counted in bulk (q^remaining) once all of them vanish
// identically.  Every point of GF(q)^k is accounted for exactly once, so the
// result equals the per-point odometer count.  Before enumerating, variables
// that occur linearly in exactly one equation are eliminated exactly.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <thread>

#include "colevel/counting.hpp"
#include "colevel/error.hpp"

namespace colevel {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Arithmetic on counting-order indices.
class TableArith {
 public:
  explicit TableArith(const Field& field) : table_(field) {}
  u64 order() const { return table_.order(); }
  u64 add(u64 a, u64 b) const { return table_.add(static_cast<u32>(a), static_cast<u32>(b)); }
  u64 mul(u64 a, u64 b) const { return table_.mul(static_cast<u32>(a), static_cast<u32>(b)); }
  u64 pow(u64 a, u64 e) const { return table_.pow(static_cast<u32>(a), e); }

 private:
  TableField table_;
};

class PrimeArith {
 public:
  explicit PrimeArith(const Field& field) : p_(field.characteristic()) {}
  u64 order() const { return p_; }
  u64 add(u64 a, u64 b) const { return (a + b) % p_; }
  u64 mul(u64 a, u64 b) const { return a * b % p_; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  u64 p_;
};

class GenericArith {
 public:
  explicit GenericArith(const Field& field) : field_(field), q_(field.order().get_ui()) {}
  u64 order() const { return q_; }
  u64 add(u64 a, u64 b) const { return field_.index_of(field_.add(field_.element_at(a), field_.element_at(b))); }
  u64 mul(u64 a, u64 b) const { return field_.index_of(field_.mul(field_.element_at(a), field_.element_at(b))); }
  u64 pow(u64 a, u64 e) const {
    return field_.index_of(field_.pow(field_.element_at(a), mpz_class(static_cast<unsigned long>(e))));
  }

 private:
  const Field& field_;
  u64 q_;
};

// One polynomial's specialization ladder.  Level k holds the distinct
// monomials in the variables order[k..K-1]; moving to level k+1 substitutes
// order[k].
struct Ladder {
  std::vector<u64> initial;                       // coefficients at level 0
  std::vector<std::vector<u32>> parent;           // level k -> index at k+1
  std::vector<std::vector<u32>> exponent;         // exponent of order[k]
  std::vector<std::size_t> width;                 // monomials per level
  std::vector<std::int64_t> constant_index;       // index of 1 at level k, or -1
};

Ladder build_ladder(const ReducedPoly& poly, const std::vector<std::size_t>& order) {
  const std::size_t K = order.size();
  Ladder ladder;
  ladder.parent.resize(K);
  ladder.exponent.resize(K);
  ladder.width.resize(K + 1);
  ladder.constant_index.resize(K + 1, -1);

  // Monomials at level k restricted to order[k..].
  std::vector<Exponents> current;
  for (const auto& t : poly.terms) {
    Exponents e(K);
    for (std::size_t k = 0; k < K; ++k) e[k] = t.exponents[order[k]];
    current.push_back(std::move(e));
    ladder.initial.push_back(t.coef);
  }
  for (std::size_t k = 0; k <= K; ++k) {
    ladder.width[k] = current.size();
    for (std::size_t m = 0; m < current.size(); ++m) {
      if (std::all_of(current[m].begin() + static_cast<std::ptrdiff_t>(k), current[m].end(),
                      [](u32 x) { return x == 0; }))
        ladder.constant_index[k] = static_cast<std::int64_t>(m);
    }
    if (k == K) break;
    std::map<Exponents, u32> next_index;
    std::vector<Exponents> next;
    for (const auto& mono : current) {
      Exponents rest = mono;
      rest[k] = 0;
      auto [it, inserted] = next_index.emplace(rest, static_cast<u32>(next.size()));
      if (inserted) next.push_back(rest);
      ladder.parent[k].push_back(it->second);
      ladder.exponent[k].push_back(mono[k]);
    }
    current = std::move(next);
  }
  return ladder;
}

u64 ipow(u64 base, std::size_t e) {
  u64 r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

// Variables in order of first appearance, scanning polynomials cheapest
// first; unused variables go last.
std::vector<std::size_t> variable_order(const std::vector<ReducedPoly>& polys, std::size_t K) {
  std::vector<std::size_t> order;
  std::vector<bool> used(K, false);
  for (const auto& poly : polys) {
    for (std::size_t v = 0; v < K; ++v) {
      if (used[v]) continue;
      bool appears = std::any_of(poly.terms.begin(), poly.terms.end(),
                                 [v](const ReducedTerm& t) { return t.exponents[v] != 0; });
      if (appears) {
        used[v] = true;
        order.push_back(v);
      }
    }
  }
  for (std::size_t v = 0; v < K; ++v)
    if (!used[v]) order.push_back(v);
  return order;
}

template <typename Arith>
class Counter {
 public:
  Counter(const Arith& arith, const std::vector<Ladder>& ladders, std::size_t K, unsigned max_degree)
      : arith_(arith), ladders_(ladders), K_(K), q_(arith.order()), max_degree_(max_degree) {
    if (q_ * (max_degree_ + 1) <= (1u << 22)) {
      powers_.resize(q_ * (max_degree_ + 1));
      for (u64 a = 0; a < q_; ++a)
        for (unsigned e = 0; e <= max_degree_; ++e) powers_[a * (max_degree_ + 1) + e] = arith_.pow(a, e);
    }
  }

  // Points in the subtree of every prefix index in [lo, hi), where a prefix
  // fixes the first L variables (first variable most significant).
  u64 count_range(std::size_t L, u64 lo, u64 hi) {
    State state = make_state();
    u64 total = 0;
    std::vector<u64> digits(L);
    for (u64 index = lo; index < hi; ++index) {
      u64 rest = index;
      for (std::size_t k = L; k-- > 0;) {
        digits[k] = rest % q_;
        rest /= q_;
      }
      total += count_prefix(state, digits);
    }
    return total;
  }

 private:
  struct State {
    // coefs[i][k]: coefficients of polynomial i at level k
    std::vector<std::vector<std::vector<u64>>> coefs;
    std::vector<std::vector<char>> vanished;  // vanished[k][i]
  };

  State make_state() const {
    State s;
    s.coefs.resize(ladders_.size());
    for (std::size_t i = 0; i < ladders_.size(); ++i) {
      s.coefs[i].resize(K_ + 1);
      for (std::size_t k = 0; k <= K_; ++k) s.coefs[i][k].assign(ladders_[i].width[k], 0);
      s.coefs[i][0] = ladders_[i].initial;
    }
    s.vanished.assign(K_ + 1, std::vector<char>(ladders_.size(), 0));
    return s;
  }

  u64 power(u64 a, u32 e) const {
    if (!powers_.empty()) return powers_[a * (max_degree_ + 1) + e];
    return arith_.pow(a, e);
  }

  enum class Status { Open, Dead, AllVanished };

  // Classifies level k; fills state.vanished[k].
  Status classify(State& state, std::size_t k) const {
    bool all_vanished = true;
    for (std::size_t i = 0; i < ladders_.size(); ++i) {
      if (k > 0 && state.vanished[k - 1][i]) {
        state.vanished[k][i] = 1;
        continue;
      }
      const auto& c = state.coefs[i][k];
      const std::int64_t ci = ladders_[i].constant_index[k];
      bool nonconstant_nonzero = false;
      for (std::size_t m = 0; m < c.size(); ++m) {
        if (c[m] != 0 && static_cast<std::int64_t>(m) != ci) {
          nonconstant_nonzero = true;
          break;
        }
      }
      const bool constant_nonzero = ci >= 0 && c[static_cast<std::size_t>(ci)] != 0;
      if (!nonconstant_nonzero && constant_nonzero) return Status::Dead;
      state.vanished[k][i] = !nonconstant_nonzero && !constant_nonzero;
      if (!state.vanished[k][i]) all_vanished = false;
    }
    return all_vanished ? Status::AllVanished : Status::Open;
  }

  void substitute(State& state, std::size_t k, u64 a) const {
    for (std::size_t i = 0; i < ladders_.size(); ++i) {
      if (state.vanished[k][i]) continue;
      const auto& src = state.coefs[i][k];
      auto& dst = state.coefs[i][k + 1];
      std::fill(dst.begin(), dst.end(), 0);
      const auto& parent = ladders_[i].parent[k];
      const auto& exponent = ladders_[i].exponent[k];
      for (std::size_t m = 0; m < src.size(); ++m) {
        if (src[m] == 0) continue;
        const u64 term = exponent[m] == 0 ? src[m] : arith_.mul(src[m], power(a, exponent[m]));
        dst[parent[m]] = arith_.add(dst[parent[m]], term);
      }
    }
  }

  u64 count_prefix(State& state, const std::vector<u64>& digits) {
    const std::size_t L = digits.size();
    for (std::size_t k = 0; k < L; ++k) {
      switch (classify(state, k)) {
        case Status::Dead: return 0;
        case Status::AllVanished: return ipow(q_, K_ - L);
        case Status::Open: break;
      }
      substitute(state, k, digits[k]);
    }
    return count_from(state, L);
  }

  u64 count_from(State& state, std::size_t k) {
    switch (classify(state, k)) {
      case Status::Dead: return 0;
      case Status::AllVanished: return ipow(q_, K_ - k);
      case Status::Open: break;
    }
    u64 total = 0;
    for (u64 a = 0; a < q_; ++a) {
      substitute(state, k, a);
      total += count_from(state, k + 1);
    }
    return total;
  }

  const Arith& arith_;
  const std::vector<Ladder>& ladders_;
  std::size_t K_;
  u64 q_;
  unsigned max_degree_;
  std::vector<u64> powers_;
};

template <typename Arith>
mpz_class run(const Arith& arith, const std::vector<ReducedPoly>& polys, std::size_t K, unsigned workers) {
  const auto order = variable_order(polys, K);
  std::vector<Ladder> ladders;
  unsigned max_degree = 0;
  for (const auto& poly : polys) {
    ladders.push_back(build_ladder(poly, order));
    for (const auto& t : poly.terms)
      for (u32 e : t.exponents) max_degree = std::max(max_degree, e);
  }
  const u64 q = arith.order();

  workers = std::max(1u, workers);
  std::size_t L = 0;
  u64 prefixes = 1;
  if (workers > 1) {
    while (L < K && prefixes < 16ull * workers) {
      prefixes *= q;
      ++L;
    }
  }
  const u64 chunks = std::min<u64>(prefixes, 4ull * workers);
  std::atomic<u64> next_chunk{0};
  std::vector<u64> partial(workers, 0);

  auto work = [&](unsigned w) {
    Counter<Arith> counter(arith, ladders, K, max_degree);
    for (u64 c = next_chunk++; c < chunks; c = next_chunk++) {
      const u64 lo = prefixes * c / chunks, hi = prefixes * (c + 1) / chunks;
      partial[w] += counter.count_range(L, lo, hi);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  mpz_class total = 0;
  for (u64 x : partial) total += mpz_class(std::to_string(x));
  return total;
}

}  // namespace

namespace {

// Exact elimination of variables that occur linearly in a single equation.
// With f = a*y + b and y absent from the other equations g,
//   #{f = g = 0} = #{g = 0} - #{a = g = 0} + q #{a = b = g = 0}
// over the remaining variables; when a is a nonzero constant only the first
// term survives.  Variables absent from every equation contribute a factor q.
// What is left is enumerated.
class Eliminator {
 public:
  Eliminator(const Field& field, const CountOptions& options) : field_(field), options_(options) {}

  mpz_class count(std::vector<ReducedPoly> polys, std::size_t n) {
    // drop identically zero equations; a nonzero constant has no zeros
    std::erase_if(polys, [](const ReducedPoly& f) { return f.is_zero(); });
    for (const auto& f : polys)
      if (f.terms.size() == 1 && is_constant(f.terms[0])) return 0;

    std::vector<std::size_t> occurrences(n, 0);
    for (const auto& f : polys)
      for (std::size_t v = 0; v < n; ++v)
        if (std::any_of(f.terms.begin(), f.terms.end(), [&](const ReducedTerm& t) { return t.exponents[v] > 0; }))
          ++occurrences[v];
    std::vector<std::size_t> absent;
    for (std::size_t v = 0; v < n; ++v)
      if (occurrences[v] == 0) absent.push_back(v);
    if (!absent.empty()) {
      for (auto it = absent.rbegin(); it != absent.rend(); ++it)
        for (auto& f : polys) drop_variable(f, *it);
      mpz_class factor;
      mpz_pow_ui(factor.get_mpz_t(), field_.order().get_mpz_t(), absent.size());
      return factor * count(std::move(polys), n - absent.size());
    }
    if (polys.empty()) return 1;

    const std::string key = serialize(polys, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Candidate (equation, variable) pairs; prefer a constant coefficient a.
    std::size_t best_poly = 0, best_var = n, best_cost = SIZE_MAX;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      for (std::size_t v = 0; v < n; ++v) {
        if (occurrences[v] != 1) continue;
        std::size_t cost = 0;
        bool linear = true, present = false;
        for (const auto& t : polys[i].terms) {
          if (t.exponents[v] > 1) linear = false;
          if (t.exponents[v] == 1) {
            present = true;
            cost += is_constant_except(t, v) ? 0 : 1;
          }
        }
        if (!linear || !present) continue;
        if (cost < best_cost) {
          best_cost = cost;
          best_poly = i;
          best_var = v;
        }
      }
    }

    mpz_class result;
    if (best_var == n) {
      result = is_homogeneous(polys) ? count_by_scaling(polys, n) : enumerate(polys, n);
    } else {
      ReducedPoly a{n, field_.characteristic(), {}}, b{n, field_.characteristic(), {}};
      for (const auto& t : polys[best_poly].terms) (t.exponents[best_var] == 1 ? a : b).terms.push_back(t);
      for (auto& t : a.terms) t.exponents[best_var] = 0;
      std::vector<ReducedPoly> rest;
      for (std::size_t i = 0; i < polys.size(); ++i)
        if (i != best_poly) rest.push_back(polys[i]);
      drop_variable(a, best_var);
      drop_variable(b, best_var);
      for (auto& f : rest) drop_variable(f, best_var);

      result = count(rest, n - 1);
      if (!(a.terms.size() == 1 && is_constant(a.terms[0]))) {
        auto with_a = rest;
        with_a.push_back(a);
        auto with_ab = with_a;
        with_ab.push_back(b);
        result -= count(std::move(with_a), n - 1);
        result += field_.order() * count(std::move(with_ab), n - 1);
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  mpz_class enumerate(std::vector<ReducedPoly> reduced, std::size_t n) const {
    if (n == 0) {
      for (const auto& f : reduced)
        if (!f.is_zero()) return 0;
      return 1;
    }
    mpz_class points;
    mpz_pow_ui(points.get_mpz_t(), field_.order().get_mpz_t(), n);
    if (points > options_.max_evaluations)
      throw SizeLimitError("enumeration of q^" + std::to_string(n) + " = " + points.get_str() + " points over GF(" +
                           field_.order().get_str() + ") exceeds the ceiling of " +
                           options_.max_evaluations.get_str());
    if (points > (mpz_class(1) << 62)) throw SizeLimitError("enumeration exceeds 2^62 points");
    std::stable_sort(reduced.begin(), reduced.end(),
                     [](const ReducedPoly& a, const ReducedPoly& b) { return a.terms.size() < b.terms.size(); });
    if (field_.order() <= TableField::kMaxOrder) return run(TableArith(field_), reduced, n, options_.workers);
    if (field_.degree() == 1) return run(PrimeArith(field_), reduced, n, options_.workers);
    return run(GenericArith(field_), reduced, n, options_.workers);
  }

 private:
  static bool is_homogeneous(const std::vector<ReducedPoly>& polys) {
    for (const auto& f : polys) {
      const auto degree = [](const ReducedTerm& t) { return std::accumulate(t.exponents.begin(), t.exponents.end(), 0u); };
      const u32 d = degree(f.terms.front());
      if (d == 0) return false;
      for (const auto& t : f.terms)
        if (degree(t) != d) return false;
    }
    return true;
  }

  // A homogeneous system: the origin, plus q - 1 scalings of each zero whose
  // first nonzero coordinate is 1.  Each slice x_0 = .. = x_{i-1} = 0, x_i = 1
  // is no longer homogeneous and often admits elimination.
  mpz_class count_by_scaling(std::vector<ReducedPoly> polys, std::size_t n) {
    mpz_class slices = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<ReducedPoly> slice;
      for (const auto& f : polys) slice.push_back(specialize_first(f, 1));
      slices += count(std::move(slice), n - i - 1);
      for (auto& f : polys) f = specialize_first(f, 0);
    }
    return 1 + (field_.order() - 1) * slices;
  }

  // Substitutes 0 or 1 for the first variable and drops it.
  static ReducedPoly specialize_first(const ReducedPoly& f, u32 value) {
    std::map<Exponents, u64> merged;
    for (const auto& t : f.terms) {
      if (value == 0 && t.exponents[0] != 0) continue;
      Exponents rest(t.exponents.begin() + 1, t.exponents.end());
      auto& c = merged[std::move(rest)];
      c = (c + t.coef) % f.p;
    }
    ReducedPoly out{f.num_vars - 1, f.p, {}};
    for (auto& [e, c] : merged)
      if (c != 0) out.terms.push_back(ReducedTerm{e, static_cast<u32>(c)});
    return out;
  }

  static bool is_constant(const ReducedTerm& t) {
    return std::all_of(t.exponents.begin(), t.exponents.end(), [](u32 e) { return e == 0; });
  }
  static bool is_constant_except(const ReducedTerm& t, std::size_t v) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
      if (i != v && t.exponents[i] != 0) return false;
    return true;
  }
  static void drop_variable(ReducedPoly& f, std::size_t v) {
    for (auto& t : f.terms) t.exponents.erase(t.exponents.begin() + static_cast<std::ptrdiff_t>(v));
    --f.num_vars;
  }
  static std::string serialize(const std::vector<ReducedPoly>& polys, std::size_t n) {
    std::string out = std::to_string(n);
    for (const auto& f : polys) {
      out += '|';
      for (const auto& t : f.terms) {
        out += std::to_string(t.coef);
        for (u32 e : t.exponents) out += ',' + std::to_string(e);
        out += ';';
      }
    }
    return out;
  }

  const Field& field_;
  const CountOptions& options_;
  std::map<std::string, mpz_class> memo_;
};

}  // namespace

mpz_class count_zeros(const std::vector<MultiPoly>& polys, std::size_t num_vars, const Field& field,
                      const CountOptions& options) {
  std::vector<ReducedPoly> reduced;
  for (const auto& poly : polys) {
    if (poly.num_vars() != num_vars) throw InputError("polynomial has the wrong number of variables");
    reduced.push_back(reduce_mod(poly, field.characteristic()));
  }
  Eliminator eliminator(field, options);
  if (!options.eliminate) return eliminator.enumerate(std::move(reduced), num_vars);
  return eliminator.count(std::move(reduced), num_vars);
}

}  // namespace colevel

#include "colevel/bounds.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "colevel/error.hpp"

namespace colevel {

DegreeSequence::DegreeSequence(std::vector<Int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw InputError("degree sequence must be non-empty");
  for (Int d : degrees_)
    if (d < 1) throw InputError("degrees must be >= 1, got " + std::to_string(d));
  std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
}

Int DegreeSequence::sum() const { return std::accumulate(degrees_.begin(), degrees_.end(), Int{0}); }

DegreeSequence DegreeSequence::prefix(std::size_t r1) const {
  if (r1 == 0 || r1 > degrees_.size()) throw InputError("prefix length out of range");
  return DegreeSequence({degrees_.begin(), degrees_.begin() + static_cast<std::ptrdiff_t>(r1)});
}

void validate(const AmbientProblem& problem, const DegreeSequence& degrees) {
  const Int r = static_cast<Int>(degrees.size());
  if (problem.N < 1) throw InputError("ambient dimension N must be >= 1");
  if (problem.n > problem.N)
    throw InputError("dimension n = " + std::to_string(problem.n) + " exceeds N = " + std::to_string(problem.N));
  if (problem.n < 0 || problem.n < problem.N - r)
    throw InputError("dimension n = " + std::to_string(problem.n) + " is below N - r = " +
                     std::to_string(problem.N - r));
}

Int mu(Int j, Int N, const DegreeSequence& degrees) {
  return j + std::max<Int>(0, ceil_div(N - j - degrees.sum(), degrees.leading()));
}

std::vector<Int> d_star(const DegreeSequence& degrees, Int e) {
  std::vector<Int> out(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const Int index = static_cast<Int>(i) + 1;
    if (index <= e)
      out[i] = degrees[i];
    else
      out[i] = degrees[i] == degrees.leading() ? 1 : 0;
  }
  return out;
}

Int nu(Int j, Int e, Int N, const DegreeSequence& degrees) {
  const auto star = d_star(degrees, e);
  const Int sum = std::accumulate(star.begin(), star.end(), Int{0});
  return j + std::max<Int>(0, ceil_div(N - j - sum, degrees.leading()));
}

std::string to_string(BoundSource source) {
  switch (source) {
    case BoundSource::BeforeMiddle: return "before_middle";
    case BoundSource::BeyondMiddle: return "beyond_middle";
    case BoundSource::MaxOfBoth: return "max_of_both";
    case BoundSource::TopDegree: return "top_degree";
  }
  return "?";
}

std::string to_string(TableKind kind) {
  switch (kind) {
    case TableKind::Affine: return "affine";
    case TableKind::Projective: return "projective";
    case TableKind::AffineComplement: return "affine_complement";
    case TableKind::ProjectiveComplement: return "projective_complement";
  }
  return "?";
}

Int BoundTable::bound_at(Int degree) const {
  auto it = entries.find(degree);
  if (it == entries.end()) throw std::out_of_range("no bound at degree " + std::to_string(degree));
  return it->second.new_bound;
}

namespace {

// Shared body of the affine and projective tables; the projective case
// evaluates everything at N + 1.
BoundTable base_table(const AmbientProblem& problem, const DegreeSequence& degrees, TableKind kind) {
  validate(problem, degrees);
  const Int N = problem.N, n = problem.n;
  const Int r = static_cast<Int>(degrees.size());
  const Int M = kind == TableKind::Projective ? N + 1 : N;

  BoundTable table;
  table.kind = kind;
  table.problem = problem;
  table.degrees.assign(degrees.values().begin(), degrees.values().end());
  table.vanishing_range = {N - r, 2 * n};

  const Int ax_katz = mu(0, M, degrees);
  for (Int i = std::max<Int>(0, N - r); i <= 2 * n; ++i) {
    BoundEntry entry;
    entry.degree = i;
    std::optional<Int> before, beyond;
    const Int m = i - (N - r);
    if (m >= 0 && m <= r - (N - n)) before = nu(0, r - m, M, degrees);
    if (i >= n) beyond = nu(i - n, N - n, M, degrees);

    if (before && beyond) {
      if (*before != *beyond) throw std::logic_error("middle-degree candidates disagree");
      entry.new_bound = *before;
      entry.source = BoundSource::MaxOfBoth;
    } else if (before) {
      entry.new_bound = *before;
      entry.source = BoundSource::BeforeMiddle;
    } else {
      entry.new_bound = *beyond;
      entry.source = BoundSource::BeyondMiddle;
    }

    entry.deligne = std::max<Int>(0, i - n);
    entry.ax_katz = ax_katz;
    if (i >= N - 1 && i <= 2 * N - 2) entry.esnault_katz = mu(i - (N - 1), M, degrees);
    if (i >= n && i <= 2 * n) entry.question_mu = mu(i - n, M, degrees);
    table.entries.emplace(i, entry);
  }
  return table;
}

}  // namespace

BoundTable affine_bound_table(const AmbientProblem& problem, const DegreeSequence& degrees) {
  if (problem.projective) throw InputError("affine_bound_table called on a projective problem");
  return base_table(problem, degrees, TableKind::Affine);
}

BoundTable projective_bound_table(const AmbientProblem& problem, const DegreeSequence& degrees) {
  if (!problem.projective) throw InputError("projective_bound_table called on an affine problem");
  return base_table(problem, degrees, TableKind::Projective);
}

BoundTable complement_bound_table(const AmbientProblem& problem, const DegreeSequence& degrees) {
  const BoundTable base = problem.projective ? projective_bound_table(problem, degrees)
                                             : affine_bound_table(problem, degrees);
  const Int N = problem.N, n = problem.n;
  const Int r = static_cast<Int>(degrees.size());
  const Int M = problem.projective ? N + 1 : N;

  BoundTable table;
  table.kind = problem.projective ? TableKind::ProjectiveComplement : TableKind::AffineComplement;
  table.problem = problem;
  table.degrees = base.degrees;
  table.vanishing_range = {N - r + 1, 2 * N};

  auto fill_comparisons = [&](BoundEntry& entry) {
    const Int i = entry.degree;
    entry.deligne = std::max<Int>(0, i - N);
    entry.ax_katz = mu(0, M, degrees);
    entry.esnault_katz.reset();
    entry.question_mu.reset();
    if (i >= N && i <= 2 * N - 1) entry.esnault_katz = mu(i - N, M, degrees);
    if (i >= n + 1 && i <= 2 * n + 1) entry.question_mu = mu(i - n - 1, M, degrees);
  };

  for (const auto& [i, base_entry] : base.entries) {
    if (i + 1 > 2 * N) continue;  // beyond the top degree of an N-dimensional space
    BoundEntry entry = base_entry;
    entry.degree = i + 1;
    fill_comparisons(entry);
    table.entries.emplace(entry.degree, entry);
  }

  BoundEntry top;
  top.degree = 2 * N;
  top.new_bound = N;
  top.source = BoundSource::TopDegree;
  fill_comparisons(top);
  if (auto it = table.entries.find(top.degree); it != table.entries.end()) {
    it->second.new_bound = std::max(it->second.new_bound, N);
  } else {
    table.entries.emplace(top.degree, top);
  }
  return table;
}

PolarRequirement polar_requirement(const AmbientProblem& problem, const DegreeSequence& degrees) {
  if (problem.projective) throw InputError("polar requirement is defined for affine varieties");
  validate(problem, degrees);
  const Int N = problem.N, n = problem.n;
  const Int r = static_cast<Int>(degrees.size());

  PolarRequirement req;
  req.complete_intersection = r == N - n;
  req.exponent = req.complete_intersection ? mu(1, N, degrees) : nu(0, r - 1, N, degrees);
  req.parity_exponent = N - r + 1;
  req.zeta_power = (req.parity_exponent % 2 == 0) ? 1 : -1;
  return req;
}

}  // namespace colevel

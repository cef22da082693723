#pragma once

// Colevel lower bounds for compactly supported cohomology of varieties cut
// out by r equations of bounded degree.  All arithmetic is exact integer
// arithmetic; nothing in here touches floating point.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace colevel {

using Int = std::int64_t;

// ceil(a / b) for b > 0, correct for negative a.
constexpr Int ceil_div(Int a, Int b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

// d_1 >= d_2 >= ... >= d_r >= 1.  Unsorted input is sorted on construction.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<Int> degrees);

  std::span<const Int> values() const { return degrees_; }
  Int operator[](std::size_t i) const { return degrees_[i]; }
  std::size_t size() const { return degrees_.size(); }
  Int leading() const { return degrees_.front(); }
  Int sum() const;

  // First r1 entries (still non-increasing).
  DegreeSequence prefix(std::size_t r1) const;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<Int> degrees_;
};

struct AmbientProblem {
  Int N = 0;  // ambient dimension
  Int n = 0;  // dimension of X (or Y)
  bool projective = false;
};

// Rejects n < N - r, n > N, N < 1.
void validate(const AmbientProblem& problem, const DegreeSequence& degrees);

// mu_j(N; d) = j + max{0, ceil((N - j - sum d_i) / d_1)}
Int mu(Int j, Int N, const DegreeSequence& degrees);

// The modified degree sequence d_i^*(e), i = 1..r.
std::vector<Int> d_star(const DegreeSequence& degrees, Int e);

// nu_j^(e)(N; d) = j + max{0, ceil((N - j - sum d_i^*(e)) / d_1)}
Int nu(Int j, Int e, Int N, const DegreeSequence& degrees);

enum class BoundSource { BeforeMiddle, BeyondMiddle, MaxOfBoth, TopDegree };
std::string to_string(BoundSource source);

enum class TableKind { Affine, Projective, AffineComplement, ProjectiveComplement };
std::string to_string(TableKind kind);

struct BoundEntry {
  Int degree = 0;
  Int new_bound = 0;
  Int deligne = 0;
  Int ax_katz = 0;
  std::optional<Int> esnault_katz;
  std::optional<Int> question_mu;
  BoundSource source = BoundSource::BeforeMiddle;

  friend bool operator==(const BoundEntry&, const BoundEntry&) = default;
};

// Frobenius/Hodge colevel lower bounds per cohomological degree.
struct BoundTable {
  TableKind kind = TableKind::Affine;
  AmbientProblem problem;
  std::vector<Int> degrees;                  // declared, non-increasing
  std::optional<std::vector<Int>> measured;  // actual polynomial degrees, same order
  std::map<Int, BoundEntry> entries;
  // Cohomology outside [first, second] vanishes.
  std::pair<Int, Int> vanishing_range{0, 0};

  Int bound_at(Int degree) const;
};

BoundTable affine_bound_table(const AmbientProblem& problem, const DegreeSequence& degrees);
BoundTable projective_bound_table(const AmbientProblem& problem, const DegreeSequence& degrees);

// Bounds for A^N \ X (or P^N \ Y): the base table shifted up by one degree,
// plus the top degree 2N which has colevel N.
BoundTable complement_bound_table(const AmbientProblem& problem, const DegreeSequence& degrees);

struct PolarRequirement {
  Int exponent = 0;
  Int parity_exponent = 0;  // N - r + 1
  int zeta_power = 1;       // (-1)^(N - r + 1)
  bool complete_intersection = false;
};

// Exponent m such that all reciprocal poles of Z_X(t)^{(-1)^{N-r+1}} are
// divisible by q^m.
PolarRequirement polar_requirement(const AmbientProblem& problem, const DegreeSequence& degrees);

}  // namespace colevel

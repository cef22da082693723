#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "colevel/bounds.hpp"
#include "colevel/counting.hpp"
#include "colevel/zeta.hpp"

namespace colevel::examples {

enum class Kind { Det1, Det2, QuadricCone, CoordinateUnion, Fermat };

// Closed-form bounds: before_middle[m] is the bound at degree N - r + m,
// beyond_middle[j] the bound at degree n + j.
struct ExpectedBounds {
  std::map<Int, Int> before_middle;
  std::map<Int, Int> beyond_middle;
};

struct ExampleDescriptor {
  Kind kind = Kind::QuadricCone;
  std::string name;         // e.g. "det1:5"
  std::vector<Int> params;  // e for Det1/Det2, (N, k) or (N, d) otherwise
  AmbientProblem problem;
  std::vector<Int> degrees;
  std::optional<ExpectedBounds> expected_bounds;
  std::optional<std::string> note;

  DegreeSequence degree_sequence() const { return DegreeSequence(degrees); }

  // Builds the equations.  Determinantal examples are limited to e <= 8.
  VarietySpec variety() const;

  // The same homogeneous equations read in P^{N-1}.
  ExampleDescriptor projective_variant() const;
};

// X = {A in A^{e^2} : all principal (e-1)-minors vanish}, dimension e^2 - 4.
ExampleDescriptor det1(Int e);
// det1(e) plus det A = 0; degrees (e, e-1, ..., e-1).
ExampleDescriptor det2(Int e);
// x1*x2 - x3*x4 in A^4.
ExampleDescriptor quadric_cone();
// x1*...*xk = 0 in A^N.
ExampleDescriptor coordinate_union(Int N = 2, Int k = 2);
// x1^d + ... + xN^d in A^N.
ExampleDescriptor fermat(Int N, Int d);

std::vector<ExampleDescriptor> fixture_corpus();

// "det1:5", "det2:4", "cone", "coordunion[:N:k]", "fermat:N:d".
ExampleDescriptor by_name(const std::string& name);

// Known zeta function over GF(q) for QuadricCone and CoordinateUnion.
std::optional<std::pair<IntPoly, IntPoly>> expected_zeta(const ExampleDescriptor& example, const mpz_class& q);

// Generic e x e symbolic matrix determinant restricted to rows/cols in
// `keep`, as a polynomial in e^2 variables x_{ij} (row-major).
MultiPoly symbolic_minor(Int e, const std::vector<Int>& keep);
std::vector<std::string> matrix_variables(Int e);

}  // namespace colevel::examples

#pragma once

// Zeta functions reconstructed from point counts, and q-power divisibility
// of their reciprocal roots read off from p-adic coefficient valuations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "colevel/bounds.hpp"
#include "colevel/counting.hpp"

namespace colevel {

// Polynomial in t over Z, ascending coefficients, no trailing zeros
// (the zero polynomial is empty).
using IntPoly = std::vector<mpz_class>;
using RationalSeries = std::vector<mpq_class>;

std::string to_string(const IntPoly& f, const std::string& var = "t");
nlohmann::json to_json(const IntPoly& f);
IntPoly int_poly_from_json(const nlohmann::json& j);

// Z(t) = exp(sum_s N_s t^s / s), coefficients of t^0..t^S.
RationalSeries zeta_series(const PointCountRecord& record);

// Power series of num/den up to t^terms - 1.  den(0) must be nonzero.
RationalSeries expand(const IntPoly& num, const IntPoly& den, std::size_t terms);

struct ZetaFunction {
  IntPoly numerator;    // constant term 1
  IntPoly denominator;  // constant term 1, coprime to numerator over Q
  unsigned verified_up_to = 0;
};

nlohmann::json to_json(const ZetaFunction& z);

// Exact Pade reconstruction by the extended Euclidean algorithm over Q.
// Requires S >= deg_num + deg_den + 1 counts.  The result reproduces every
// supplied count, or ReconstructionError is thrown.
ZetaFunction reconstruct(const PointCountRecord& record, unsigned deg_num, unsigned deg_den);

struct DivisibilityCertificate {
  IntPoly factor;
  std::uint32_t p = 0;
  unsigned s_base = 1;
  std::optional<Int> certified_m;  // nullopt: infinity (factor is 1)
  std::optional<unsigned> witness; // index j attaining the minimum

  bool at_least(Int m) const { return !certified_m || *certified_m >= m; }
};

nlohmann::json to_json(const DivisibilityCertificate& c);

// Largest m with q^m | every reciprocal root (q = p^s_base):
// min over j >= 1, a_j != 0 of floor(v_p(a_j) / (j * s_base)).
DivisibilityCertificate certify_factor(const IntPoly& factor, std::uint32_t p, unsigned s_base);

struct PolarReport {
  int zeta_power = 1;        // which power of Z the statement is about
  std::string pole_side;     // "denominator" or "numerator" of Z
  DivisibilityCertificate certificate;
  Int required = 0;
  bool vacuous = false;      // pole side is 1 after cancellation
  bool pass = false;
};

nlohmann::json to_json(const PolarReport& r);

PolarReport verify_polar(const ZetaFunction& zeta, const AmbientProblem& problem, const DegreeSequence& degrees,
                         std::uint32_t p, unsigned s_base);

struct WholeZetaReport {
  Int required = 0;
  DivisibilityCertificate numerator;
  DivisibilityCertificate denominator;
  bool pass = false;
};

nlohmann::json to_json(const WholeZetaReport& r);

// Every surviving reciprocal zero and pole divisible by q^{mu_0(N; d)}.
WholeZetaReport verify_whole_zeta(const ZetaFunction& zeta, const DegreeSequence& degrees, Int N, std::uint32_t p,
                                  unsigned s_base);

}  // namespace colevel

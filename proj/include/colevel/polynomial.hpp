#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "colevel/finite_field.hpp"

namespace colevel {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exponents;  // dense, length num_vars
  mpz_class coef;       // never zero in a canonical polynomial

  unsigned degree() const;
};

// Sparse multivariate polynomial over Z in canonical form: exponent vectors
// distinct, coefficients nonzero, terms ordered by degree then lex (descending).
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}
  MultiPoly(std::size_t num_vars, std::vector<Term> terms);

  static MultiPoly constant(std::size_t num_vars, const mpz_class& c);
  static MultiPoly variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  bool is_homogeneous() const;

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly operator-() const;
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly&, const MultiPoly&);

 private:
  void canonicalize();

  std::size_t num_vars_;
  std::vector<Term> terms_;
};

bool operator==(const Term& a, const Term& b);

// Expressions in + - * ^, integer literals, parentheses and the given
// variable names.  Throws InputError with the offending position.
MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

// Prints in a form parse_polynomial reads back to the same polynomial.
std::string to_string(const MultiPoly& poly, const std::vector<std::string>& variables);

// {"vars": [...], "terms": [{"exp": [...], "coef": "decimal"}]}
nlohmann::json to_json(const MultiPoly& poly, const std::vector<std::string>& variables);
MultiPoly poly_from_json(const nlohmann::json& j, const std::vector<std::string>& variables);

// Polynomial with coefficients reduced into GF(p); zero terms dropped.
struct ReducedTerm {
  Exponents exponents;
  std::uint32_t coef;  // in [1, p)
};

struct ReducedPoly {
  std::size_t num_vars = 0;
  std::uint32_t p = 0;
  std::vector<ReducedTerm> terms;

  bool is_zero() const { return terms.empty(); }
};

ReducedPoly reduce_mod(const MultiPoly& poly, std::uint32_t p);

// Evaluation at a point of GF(q)^num_vars.  Throws InputError on a length
// mismatch.
Element evaluate(const MultiPoly& poly, std::span<const Element> point, const Field& field);
Element evaluate(const ReducedPoly& poly, std::span<const Element> point, const Field& field);

}  // namespace colevel

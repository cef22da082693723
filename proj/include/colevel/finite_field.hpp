#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace colevel {

bool is_prime(std::uint64_t n);

// Element of GF(p^s): coefficient vector c_0 + c_1 x + ... + c_{s-1} x^{s-1}
// modulo the field's defining polynomial.
struct Element {
  std::vector<std::uint32_t> coeffs;

  bool is_zero() const;
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

// GF(p^s) with a deterministic defining polynomial: the lexicographically
// smallest monic irreducible of degree s, comparing (c_0, c_1, ...) in order.
class Field {
 public:
  // Throws InputError if p is not prime, p >= 2^31 or s < 1.
  Field(std::uint32_t p, unsigned s);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return s_; }
  const mpz_class& order() const { return q_; }
  // Monic modulus coefficients, low to high, length s + 1.
  std::span<const std::uint32_t> modulus() const { return modulus_; }
  std::string modulus_string() const;

  Element zero() const;
  Element one() const;
  Element from_integer(const mpz_class& value) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;  // throws std::domain_error on zero
  Element pow(const Element& a, const mpz_class& e) const;
  Element frobenius(const Element& a) const { return pow(a, p_); }

  // Counting-order index: sum c_i p^i.  Requires q < 2^64.
  std::uint64_t index_of(const Element& a) const;
  Element element_at(std::uint64_t index) const;

  // All q elements in counting order (c_0 fastest).  Requires q <= 2^32.
  std::vector<Element> enumerate() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  std::uint32_t p_;
  unsigned s_;
  mpz_class q_;
  std::vector<std::uint32_t> modulus_;
};

Field make_field(std::uint32_t p, unsigned s);

// Irreducibility over GF(p) of a monic polynomial (coefficients low to high),
// via x^{p^s} = x mod f and gcd(x^{p^{s/l}} - x, f) = 1 for primes l | s.
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p);

// Index-based arithmetic for fields with q <= 2^16: elements are their
// counting-order indices, multiplication goes through log/antilog tables.
class TableField {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 16;

  explicit TableField(const Field& field);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (add_table_.empty()) return add_digits(a, b);
    return add_table_[static_cast<std::size_t>(a) * q_ + b];
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // Embedding of an integer residue c in [0, p).
  std::uint32_t from_residue(std::uint32_t c) const { return c; }

 private:
  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  unsigned s_;
  std::uint32_t q_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> add_table_;  // only when q <= 1024
};

}  // namespace colevel

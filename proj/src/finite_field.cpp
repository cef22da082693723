#include "colevel/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "colevel/error.hpp"

namespace colevel {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using Poly = std::vector<u32>;  // over GF(p), low to high, trimmed

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

u64 powmod64(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    e >>= 1;
  }
  return r;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      acc[i + j] = (acc[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
  }
  Poly out(acc.begin(), acc.end());
  trim(out);
  return out;
}

// Remainder of a modulo f over GF(p); f need not be monic but must be nonzero.
Poly poly_rem(Poly a, const Poly& f, u32 p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const u64 lead_inv = powmod64(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const u64 factor = mulmod64(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      const u64 sub = mulmod64(factor, f[i], p);
      a[shift + i] = static_cast<u32>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, u32 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, u32 p) {
  Poly r{1};
  base = poly_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base, p), f, p);
    base = poly_rem(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic witness set for all 64-bit n.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p) {
  Poly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned s = static_cast<unsigned>(f.size() - 1);
  if (s == 1) return true;

  // frob[k] = x^{p^k} mod f
  std::vector<Poly> frob(s + 1);
  frob[0] = poly_rem(Poly{0, 1}, f, p);
  for (unsigned k = 1; k <= s; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);

  auto minus_x = [&](Poly g) {
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    return g;
  };

  if (!minus_x(frob[s]).empty()) return false;
  for (u64 l : prime_factors(s)) {
    Poly g = poly_gcd(f, minus_x(frob[s / l]), p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool Element::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](u32 c) { return c == 0; });
}

Field::Field(std::uint32_t p, unsigned s) : p_(p), s_(s) {
  if (s < 1) throw InputError("extension degree must be >= 1");
  if (p >= (1u << 31)) throw InputError("characteristic " + std::to_string(p) + " exceeds 2^31");
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  mpz_ui_pow_ui(q_.get_mpz_t(), p, s);

  // Odometer over (c_0, ..., c_{s-1}) with c_0 most significant.
  std::vector<u32> low(s, 0);
  Poly candidate(s + 1);
  for (;;) {
    std::copy(low.begin(), low.end(), candidate.begin());
    candidate[s] = 1;
    if (is_irreducible(candidate, p)) break;
    int pos = static_cast<int>(s) - 1;
    while (pos >= 0 && ++low[pos] == p) low[pos--] = 0;
    if (pos < 0) throw std::logic_error("no irreducible polynomial found");
  }
  modulus_ = candidate;
}

Field make_field(std::uint32_t p, unsigned s) { return Field(p, s); }

std::string Field::modulus_string() const {
  std::string out;
  for (int i = static_cast<int>(s_); i >= 0; --i) {
    const u32 c = modulus_[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i > 0 && c != 1) out += "*";
    if (i >= 1) out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Element Field::zero() const { return Element{std::vector<u32>(s_, 0)}; }

Element Field::one() const {
  Element e = zero();
  e.coeffs[0] = 1;
  return e;
}

Element Field::from_integer(const mpz_class& value) const {
  mpz_class r = value % p_;
  if (r < 0) r += p_;
  Element e = zero();
  e.coeffs[0] = static_cast<u32>(r.get_ui());
  return e;
}

Element Field::add(const Element& a, const Element& b) const {
  Element out = zero();
  for (unsigned i = 0; i < s_; ++i) out.coeffs[i] = static_cast<u32>((static_cast<u64>(a.coeffs[i]) + b.coeffs[i]) % p_);
  return out;
}

Element Field::neg(const Element& a) const {
  Element out = zero();
  for (unsigned i = 0; i < s_; ++i) out.coeffs[i] = a.coeffs[i] == 0 ? 0 : p_ - a.coeffs[i];
  return out;
}

Element Field::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Field::mul(const Element& a, const Element& b) const {
  Poly pa(a.coeffs), pb(b.coeffs);
  trim(pa);
  trim(pb);
  Poly r = poly_rem(poly_mul(pa, pb, p_), modulus_, p_);
  Element out = zero();
  std::copy(r.begin(), r.end(), out.coeffs.begin());
  return out;
}

Element Field::pow(const Element& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), -e);
  Element result = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

Element Field::inv(const Element& a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero in GF(" + q_.get_str() + ")");
  return pow(a, q_ - 2);
}

std::uint64_t Field::index_of(const Element& a) const {
  if (mpz_sizeinbase(q_.get_mpz_t(), 2) > 64) throw std::out_of_range("field too large for index form");
  u64 idx = 0;
  for (unsigned i = s_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
  return idx;
}

Element Field::element_at(std::uint64_t index) const {
  Element e = zero();
  for (unsigned i = 0; i < s_; ++i) {
    e.coeffs[i] = static_cast<u32>(index % p_);
    index /= p_;
  }
  return e;
}

std::vector<Element> Field::enumerate() const {
  if (q_ > mpz_class("4294967296")) throw std::out_of_range("field too large to enumerate");
  const u64 q = q_.get_ui();
  std::vector<Element> out;
  out.reserve(q);
  for (u64 i = 0; i < q; ++i) out.push_back(element_at(i));
  return out;
}

TableField::TableField(const Field& field) : p_(field.characteristic()), s_(field.degree()) {
  if (field.order() > kMaxOrder) throw std::out_of_range("TableField requires q <= 2^16");
  q_ = static_cast<u32>(field.order().get_ui());

  // Primitive element search: g^{(q-1)/l} != 1 for every prime l | q - 1.
  const auto factors = prime_factors(q_ - 1);
  const Element one = field.one();
  Element generator = one;
  for (u32 candidate = 1; candidate < q_; ++candidate) {
    Element g = field.element_at(candidate);
    bool primitive = true;
    for (u64 l : factors) {
      if (field.pow(g, mpz_class(static_cast<unsigned long>((q_ - 1) / l))) == one) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }

  log_.assign(q_, 0);
  exp_.assign(q_, 0);
  Element x = one;
  for (u32 k = 0; k + 1 < q_; ++k) {
    const u32 idx = static_cast<u32>(field.index_of(x));
    exp_[k] = idx;
    log_[idx] = k;
    x = field.mul(x, generator);
  }
  exp_[q_ - 1] = exp_[0];

  if (q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (u32 a = 0; a < q_; ++a)
      for (u32 b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
  }
}

std::uint32_t TableField::add_digits(std::uint32_t a, std::uint32_t b) const {
  if (s_ == 1) return (a + b) % p_;
  if (p_ == 2) return a ^ b;
  u32 out = 0, scale = 1;
  for (unsigned i = 0; i < s_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t TableField::neg(std::uint32_t a) const {
  u32 out = 0, scale = 1;
  for (unsigned i = 0; i < s_; ++i) {
    const u32 c = a % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t TableField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t TableField::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<u64>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

}  // namespace colevel

#include <doctest.h>

#include <set>

#include "colevel/error.hpp"
#include "colevel/finite_field.hpp"

using namespace colevel;

namespace {

using Poly = std::vector<std::uint32_t>;  // low to high

// Remainder of a by b over GF(p), b monic.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  while (a.size() >= b.size()) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * b[i]) % p);
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_by_trial_division(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    Poly g(d + 1, 0);
    g[d] = 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= p;
    for (std::uint64_t k = 0; k < total; ++k) {
      std::uint64_t t = k;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// First monic irreducible of degree s with (c_0, c_1, ...) compared in order.
Poly smallest_irreducible(std::uint32_t p, unsigned s) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < s; ++i) total *= p;
  for (std::uint64_t k = 0; k < total; ++k) {
    Poly f(s + 1, 0);
    f[s] = 1;
    std::uint64_t t = k;
    for (unsigned i = s; i-- > 0;) {  // c_0 is the most significant digit
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    if (irreducible_by_trial_division(f, p)) return f;
  }
  return {};
}

const std::vector<std::pair<std::uint32_t, unsigned>> kSmallFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {2, 9}, {3, 1}, {3, 2},  {3, 3},
    {3, 4}, {3, 5}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {7, 3}, {11, 1}, {11, 2}, {13, 1}, {13, 2},
    {17, 1}, {17, 2}, {19, 1}, {19, 2}, {23, 1}, {29, 1}, {31, 1}, {37, 1}, {101, 1}, {509, 1}};

}  // namespace

TEST_CASE("primality") {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    REQUIRE(is_prime(n) == prime);
  }
  CHECK(is_prime(2147483647ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(18446744073709551557ull));
}

TEST_CASE("field construction") {
  CHECK(make_field(2, 1).modulus_string() == "x");
  CHECK(make_field(2, 2).modulus_string() == "x^2 + x + 1");
  CHECK(make_field(3, 2).modulus_string() == "x^2 + 1");
  CHECK_THROWS_AS(make_field(4, 1), InputError);
  CHECK_THROWS_AS(make_field(2, 0), InputError);
  CHECK_THROWS_AS(make_field(2147483659u, 1), InputError);
}

TEST_CASE("modulus is the smallest irreducible found by exhaustive scan") {
  for (const auto& [p, s] : kSmallFields) {
    if (p > 13) continue;
    const Field field(p, s);
    const Poly modulus(field.modulus().begin(), field.modulus().end());
    CAPTURE(p);
    CAPTURE(s);
    CHECK(modulus == smallest_irreducible(p, s));
  }
}

TEST_CASE("Rabin test agrees with trial division") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned s = 1; s <= 6; ++s) {
      std::uint64_t total = 1;
      for (unsigned i = 0; i < s; ++i) total *= p;
      if (total > 4000) continue;
      for (std::uint64_t k = 0; k < total; ++k) {
        Poly f(s + 1, 0);
        f[s] = 1;
        std::uint64_t t = k;
        for (unsigned i = 0; i < s; ++i, t /= p) f[i] = static_cast<std::uint32_t>(t % p);
        REQUIRE(is_irreducible(f, p) == irreducible_by_trial_division(f, p));
      }
    }
  }
}

TEST_CASE("enumeration") {
  CHECK(make_field(2, 1).enumerate().size() == 2);
  const auto gf4 = make_field(2, 2).enumerate();
  CHECK(gf4.size() == 4);
  CHECK(gf4.front().is_zero());
  const Field gf9(3, 2);
  const auto all = gf9.enumerate();
  CHECK(std::set<Element>(all.begin(), all.end()).size() == 9);
  for (std::uint64_t i = 0; i < 9; ++i) CHECK(gf9.index_of(gf9.element_at(i)) == i);
}

TEST_CASE("arithmetic examples") {
  const Field gf4(2, 2);
  const Element x = gf4.element_at(2);  // the class of x
  CHECK(gf4.mul(x, x) == gf4.element_at(3));  // x + 1
  const Field gf9(3, 2);
  for (const auto& a : gf9.enumerate()) {
    if (a.is_zero()) {
      CHECK_THROWS_AS(gf9.inv(a), std::domain_error);
      continue;
    }
    CHECK(gf9.mul(a, gf9.inv(a)) == gf9.one());
  }
  CHECK(gf9.from_integer(-1) == gf9.element_at(2));
  CHECK(gf9.from_integer(7) == gf9.one());
}

TEST_CASE("field axioms hold exhaustively for q <= 512") {
  for (const auto& [p, s] : kSmallFields) {
    const Field field(p, s);
    const std::uint32_t q = static_cast<std::uint32_t>(field.order().get_ui());
    if (q > 512) continue;
    CAPTURE(q);
    const auto elems = field.enumerate();
    std::vector<std::uint32_t> add(static_cast<std::size_t>(q) * q), mul(add.size());
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        add[a * q + b] = static_cast<std::uint32_t>(field.index_of(field.add(elems[a], elems[b])));
        mul[a * q + b] = static_cast<std::uint32_t>(field.index_of(field.mul(elems[a], elems[b])));
      }
    bool ok = true;
    for (std::uint32_t a = 0; a < q && ok; ++a) {
      ok = ok && add[a * q] == a && mul[a * q + 1] == a && mul[a * q] == 0;
      for (std::uint32_t b = 0; b < q && ok; ++b) {
        ok = ok && add[a * q + b] == add[b * q + a] && mul[a * q + b] == mul[b * q + a];
        for (std::uint32_t c = 0; c < q && ok; ++c) {
          ok = ok && add[add[a * q + b] * q + c] == add[a * q + add[b * q + c]];
          ok = ok && mul[mul[a * q + b] * q + c] == mul[a * q + mul[b * q + c]];
          ok = ok && mul[a * q + add[b * q + c]] == add[mul[a * q + b] * q + mul[a * q + c]];
        }
      }
    }
    CHECK(ok);

    // Every nonzero element has an inverse and the multiplicative group is cyclic of order q - 1.
    std::uint32_t best_order = 0;
    for (std::uint32_t a = 1; a < q; ++a) {
      std::uint32_t x = a, order = 1;
      while (x != 1) {
        x = mul[x * q + a];
        ++order;
        if (order > q) break;
      }
      REQUIRE((q - 1) % order == 0);
      best_order = std::max(best_order, order);
    }
    CHECK(best_order == q - 1);
  }
}

TEST_CASE("Frobenius is additive and multiplicative") {
  for (const auto& [p, s] : kSmallFields) {
    const Field field(p, s);
    if (field.order() > 256) continue;
    const auto elems = field.enumerate();
    for (const auto& a : elems)
      for (const auto& b : elems) {
        REQUIRE(field.frobenius(field.add(a, b)) == field.add(field.frobenius(a), field.frobenius(b)));
        REQUIRE(field.frobenius(field.mul(a, b)) == field.mul(field.frobenius(a), field.frobenius(b)));
      }
    for (const auto& a : elems) REQUIRE(field.pow(a, field.order()) == a);
  }
}

TEST_CASE("table arithmetic matches the reference field") {
  for (const auto& [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 5}, {3, 3}, {5, 2}, {2, 11}, {251, 1}}) {
    const Field field(p, s);
    const TableField table(field);
    const std::uint32_t q = table.order();
    const std::uint32_t step = q > 300 ? 7 : 1;
    for (std::uint32_t a = 0; a < q; a += step)
      for (std::uint32_t b = 0; b < q; b += step) {
        const Element ea = field.element_at(a), eb = field.element_at(b);
        REQUIRE(table.add(a, b) == field.index_of(field.add(ea, eb)));
        REQUIRE(table.mul(a, b) == field.index_of(field.mul(ea, eb)));
      }
    for (std::uint32_t a = 1; a < q; a += step) {
      REQUIRE(table.mul(a, table.inv(a)) == 1);
      REQUIRE(table.add(a, table.neg(a)) == 0);
      REQUIRE(table.pow(a, q - 1) == 1);
    }
  }
}

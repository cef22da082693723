#include <doctest.h>

#include <filesystem>
#include <random>

#include "colevel/counting.hpp"
#include "colevel/error.hpp"
#include "colevel/examples.hpp"
#include "oracles.hpp"

using namespace colevel;

namespace {

MultiPoly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_exp = 3) {
  std::uniform_int_distribution<int> coef(-3, 3), count(1, 4);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::vector<Term> terms;
  for (int t = count(rng); t > 0; --t) {
    Exponents e(nvars);
    for (auto& x : e) x = exp(rng);
    terms.push_back(Term{e, coef(rng)});
  }
  return MultiPoly(nvars, std::move(terms));
}

mpz_class power(std::uint64_t base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("colevel-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("affine counts") {
  const VarietySpec cone = examples::quadric_cone().variety();
  CHECK(count_affine(cone, Field(2, 1)) == 10);
  CHECK(count_affine(cone, Field(3, 1)) == 33);
  CHECK(count_affine(examples::coordinate_union().variety(), Field(2, 1)) == 3);
}

TEST_CASE("engine agrees with the naive odometer") {
  std::mt19937_64 rng(2024);
  for (const auto& [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {7, 1}}) {
    const Field field(p, s);
    for (int k = 0; k < 25; ++k) {
      const std::size_t n = 1 + k % 3;
      std::vector<MultiPoly> polys;
      for (int i = 0; i <= k % 3; ++i) polys.push_back(random_poly(rng, n));
      for (unsigned workers : {1u, 3u}) {
        CountOptions options;
        options.workers = workers;
        REQUIRE(count_zeros(polys, n, field, options) == oracle::naive_count(polys, n, field));
      }
    }
  }
}

TEST_CASE("linear elimination agrees with the naive odometer") {
  std::mt19937_64 rng(77);
  for (const auto& [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field field(p, s);
    for (int k = 0; k < 60; ++k) {
      const std::size_t n = 2 + k % 4;
      std::vector<MultiPoly> polys;
      for (int i = 0; i <= k % 3; ++i) polys.push_back(random_poly(rng, n, 1 + (i + k) % 2));
      REQUIRE(count_zeros(polys, n, field) == oracle::naive_count(polys, n, field));
    }
  }
}

TEST_CASE("homogeneous systems agree with the naive odometer") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> coef(-3, 3), count(1, 4);
  for (const auto& [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field field(p, s);
    for (int k = 0; k < 40; ++k) {
      const std::size_t n = 2 + k % 3;
      std::vector<MultiPoly> polys;
      for (int i = 0; i <= k % 2; ++i) {
        const unsigned d = 2 + (i + k) % 2;
        std::vector<Term> terms;
        for (int t = count(rng); t > 0; --t) {
          Exponents e(n, 0);
          for (unsigned j = 0; j < d; ++j) ++e[rng() % n];
          terms.push_back(Term{e, coef(rng)});
        }
        polys.push_back(MultiPoly(n, std::move(terms)));
      }
      REQUIRE(count_zeros(polys, n, field) == oracle::naive_count(polys, n, field));
    }
  }
  // det1(4) over GF(2): scaling slices against plain enumeration
  const VarietySpec det = examples::det1(4).variety();
  CountOptions plain;
  plain.eliminate = false;
  CHECK(count_affine(det, Field(2, 1)) == count_affine(det, Field(2, 1), plain));
}

TEST_CASE("fixture corpus against the naive odometer") {
  for (const auto& desc : examples::fixture_corpus()) {
    const VarietySpec v = desc.variety();
    for (auto [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}}) {
      const Field field(p, s);
      CAPTURE(desc.name);
      CHECK(count_affine(v, field) == oracle::naive_count(v.polys, v.variables.size(), field));
    }
  }
}

TEST_CASE("projective counts") {
  const std::vector<std::string> vars{"x0", "x1", "x2"};
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Field field(p, 1);
    const VarietySpec line = make_variety(2, vars, {parse_polynomial("x0", vars)}, {1}, 1, true, "line");
    CHECK(count_projective(line, field) == p + 1);
    const VarietySpec conic = make_variety(2, vars, {parse_polynomial("x0*x1 - x2^2", vars)}, {2}, 1, true, "conic");
    CHECK(count_projective(conic, field) == p + 1);
    // (q - 1) * |Y| + 1 = affine cone count
    const VarietySpec cone = make_variety(3, vars, conic.polys, {2}, 2, false, "cone");
    CHECK((p - 1) * count_projective(conic, field) + 1 == count_affine(cone, field));
  }
}

TEST_CASE("worker count does not change results") {
  for (const auto& desc : examples::fixture_corpus()) {
    const VarietySpec v = desc.variety();
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const Field field(p, 1);
      CountOptions one;
      const mpz_class reference = count_affine(v, field, one);
      for (unsigned w : {2u, 8u}) {
        CountOptions many;
        many.workers = w;
        CHECK(count_affine(v, field, many) == reference);
      }
    }
  }
}

TEST_CASE("towers and closed forms") {
  const PointCountRecord cone = count_tower(examples::quadric_cone().variety(), 2, 1, 6);
  const std::vector<long> expected{10, 76, 568, 4336, 33760, 266176};
  for (unsigned s = 1; s <= 6; ++s) CHECK(cone.counts.at(s) == expected[s - 1]);
  CHECK(cone.tower_length() == 6);

  const PointCountRecord union3 = count_tower(examples::coordinate_union().variety(), 3, 1, 4);
  for (unsigned s = 1; s <= 4; ++s) CHECK(union3.counts.at(s) == 2 * power(3, s) - 1);

  // Tower over a base extension: GF(4)^s reproduces GF(2)^{2s}.
  const PointCountRecord over4 = count_tower(examples::quadric_cone().variety(), 2, 2, 2);
  CHECK(over4.counts.at(1) == expected[1]);
  CHECK(over4.counts.at(2) == expected[3]);
  CHECK(over4.q() == 4);
}

TEST_CASE("size ceiling") {
  CountOptions options;
  options.max_evaluations = 1000;
  // x^3 + y^3 + z^3 + 1 is neither linear in a variable nor homogeneous: q^3 points are enumerated
  const std::vector<std::string> xyz{"x", "y", "z"};
  const VarietySpec cubic =
      make_variety(3, xyz, {parse_polynomial("x^3 + y^3 + z^3 + 1", xyz)}, {3}, 2, false, "cubic");
  CHECK_THROWS_AS(count_affine(cubic, Field(11, 1), options), SizeLimitError);
  CHECK_NOTHROW(count_affine(cubic, Field(7, 1), options));
  // the homogeneous cubic is sliced by scaling: at most 11^2 points per slice
  CHECK(count_affine(examples::fermat(3, 3).variety(), Field(11, 1), options) ==
        oracle::naive_count(examples::fermat(3, 3).variety().polys, 3, Field(11, 1)));
  // the cone is counted by elimination alone
  CHECK(count_affine(examples::quadric_cone().variety(), Field(5, 6), options) ==
        power(5, 18) + power(5, 12) - power(5, 6));
}

TEST_CASE("variety validation") {
  const std::vector<std::string> vars{"x", "y"};
  const auto f = parse_polynomial("x*y", vars);
  CHECK_THROWS_AS(make_variety(2, vars, {}, {}, 1, false, "empty"), InputError);
  CHECK_THROWS_AS(make_variety(3, vars, {f}, {2}, 2, false, "wrong arity"), InputError);
  CHECK_THROWS_AS(make_variety(2, vars, {f}, {1}, 1, false, "degree below measured"), InputError);
  CHECK_THROWS_AS(make_variety(2, vars, {f}, {2}, 0, false, "n below N - r"), InputError);
  CHECK_THROWS_AS(make_variety(2, {"x0", "x1", "x2"}, {parse_polynomial("x0 + 1", {"x0", "x1", "x2"})}, {1}, 1, true,
                               "inhomogeneous"),
                  InputError);

  const std::vector<std::string> three{"x1", "x2", "x3"};
  const VarietySpec sorted = make_variety(
      3, three, {parse_polynomial("x1", three), parse_polynomial("x2^3", three)}, {}, 1, false, "sorted");
  CHECK(sorted.declared_degrees == std::vector<Int>{3, 1});
  CHECK(sorted.polys[0] == parse_polynomial("x2^3", three));
}

TEST_CASE("variety JSON round trip") {
  for (const auto& desc : examples::fixture_corpus()) {
    const VarietySpec v = desc.variety();
    const VarietySpec back = variety_from_json(to_json(v));
    CHECK(back.polys == v.polys);
    CHECK(back.declared_degrees == v.declared_degrees);
    CHECK(back.dimension_n == v.dimension_n);
    CHECK(content_hash(back) == content_hash(v));
  }
  const auto j = nlohmann::json::parse(R"({"N": 2, "dimension_n": 1, "polys": ["x1*x2"]})");
  CHECK(count_affine(variety_from_json(j), Field(5, 1)) == 9);
  CHECK_THROWS_AS(variety_from_json(nlohmann::json::parse(R"({"N": 2, "dimension_n": 1, "polys": ["x1*z"]})")),
                  InputError);
}

TEST_CASE("count cache") {
  TempDir dir;
  const auto path = dir.path / "sub" / "counts.json";
  const VarietySpec v = examples::quadric_cone().variety();
  {
    CountCache cache(path);
    TowerStats stats;
    count_tower(v, 3, 1, 3, {}, &cache, &stats);
    CHECK(stats.computed == 3);
    CHECK(stats.cache_hits == 0);
  }
  CountCache reopened(path);
  CHECK(reopened.size() == 3);
  const auto hit = reopened.lookup(content_hash(v), 3, 2);
  REQUIRE(hit);
  CHECK(hit->count == "801");  // 729 + 81 - 9
  TowerStats stats;
  const PointCountRecord again = count_tower(v, 3, 1, 4, {}, &reopened, &stats);
  CHECK(stats.cache_hits == 3);
  CHECK(stats.computed == 1);
  CHECK(again.counts.at(4) == power(3, 12) + power(3, 8) - power(3, 4));

  // Base extensions share entries keyed by the full extension degree.
  TowerStats base2;
  count_tower(v, 3, 2, 2, {}, &reopened, &base2);
  CHECK(base2.cache_hits == 2);

  const PointCountRecord round = record_from_json(to_json(again));
  CHECK(round.counts == again.counts);
  CHECK(round.moduli == again.moduli);
}

TEST_CASE("valuations and Ax-Katz") {
  CHECK(p_adic_valuation(mpz_class(48), 2) == 4u);
  CHECK(p_adic_valuation(mpz_class(-27), 3) == 3u);
  CHECK_FALSE(p_adic_valuation(mpz_class(0), 5).has_value());

  const auto desc = examples::det1(4);
  const PointCountRecord det = count_tower(desc.variety(), 2, 1, 1);
  const AxKatzReport report = ax_katz_check(det, desc.degree_sequence(), desc.problem.N);
  CHECK(report.mu0 == 2);
  CHECK(report.pass);
  CHECK(det.counts.at(1) % 4 == 0);

  const PointCountRecord cone = count_tower(examples::quadric_cone().variety(), 5, 1, 3);
  const AxKatzReport cone_report = ax_katz_check(cone, DegreeSequence({2}), 4);
  CHECK(cone_report.mu0 == 1);
  for (const auto& row : cone_report.rows) CHECK(row.valuation == row.s);

  // sum of degrees >= N: requirement 0
  const auto fermat = examples::fermat(3, 3);
  const PointCountRecord f = count_tower(fermat.variety(), 2, 1, 2);
  CHECK(ax_katz_check(f, fermat.degree_sequence(), 3).mu0 == 0);
  CHECK(ax_katz_check(f, fermat.degree_sequence(), 3).pass);
}

TEST_CASE("det1(4) equations") {
  const VarietySpec v = examples::det1(4).variety();
  CHECK(v.polys.size() == 4);
  CHECK(v.variables.size() == 16);
  for (const auto& f : v.polys) {
    CHECK(f.terms().size() == 6);
    CHECK(f.total_degree() == 3);
  }
}

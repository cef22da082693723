#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "colevel/bounds.hpp"
#include "colevel/finite_field.hpp"
#include "colevel/polynomial.hpp"

namespace colevel {

// A variety given by equations.  Polynomials live in N variables (affine) or
// N + 1 homogeneous variables (projective).
struct VarietySpec {
  Int N = 0;
  std::vector<std::string> variables;
  std::vector<MultiPoly> polys;
  std::vector<Int> declared_degrees;  // co-sorted with polys, non-increasing
  Int dimension_n = 0;
  bool projective = false;
  std::string label;

  std::size_t num_equations() const { return polys.size(); }
  DegreeSequence degrees() const { return DegreeSequence(declared_degrees); }
  std::vector<Int> measured_degrees() const;
  AmbientProblem problem() const { return AmbientProblem{N, dimension_n, projective}; }
};

// Sorts (degree, polynomial) pairs by non-increasing declared degree and
// checks every invariant.  Missing declared degrees default to the measured
// ones.  Throws InputError.
VarietySpec make_variety(Int N, std::vector<std::string> variables, std::vector<MultiPoly> polys,
                         std::vector<Int> declared_degrees, Int dimension_n, bool projective, std::string label);

// Variety spec JSON: {"label", "N", "variables" (optional), "dimension_n",
// "projective", "polys": [text | term-list], "declared_degrees" (optional)}.
VarietySpec variety_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VarietySpec& v);

// Stable 64-bit content hash of the canonical equations (hex string).
std::string content_hash(const VarietySpec& v);

struct CountOptions {
  unsigned workers = 1;
  // Maximum number of enumerated points q^N (q^{N+1} for the projective cone).
  mpz_class max_evaluations = mpz_class(1) << 36;
  // Eliminate variables occurring linearly in a single equation before
  // enumerating.  Off: plain enumeration of all q^N points.
  bool eliminate = true;
};

// Number of common zeros in GF(q)^N.  Deterministic and independent of the
// worker count.  Throws SizeLimitError above the ceiling.
mpz_class count_affine(const VarietySpec& v, const Field& field, const CountOptions& options = {});

// Number of points of the projective variety: nonzero cone solutions / (q - 1).
mpz_class count_projective(const VarietySpec& v, const Field& field, const CountOptions& options = {});

// Count of common zeros of arbitrary polynomials in GF(q)^k (no variety
// invariants required); the engine behind both counts above.
mpz_class count_zeros(const std::vector<MultiPoly>& polys, std::size_t num_vars, const Field& field,
                      const CountOptions& options = {});

struct PointCountRecord {
  std::uint32_t p = 0;
  unsigned s_base = 1;
  std::string label;
  std::string variety_hash;
  bool projective = false;
  std::map<unsigned, mpz_class> counts;     // s -> N_s over GF(p^{s_base * s})
  std::map<unsigned, std::string> moduli;   // s -> defining polynomial used
  std::map<unsigned, std::string> timestamps;

  // Count of the base field q = p^s_base.
  mpz_class q() const;
  unsigned tower_length() const;  // largest S with counts 1..S all present
};

nlohmann::json to_json(const PointCountRecord& r);
PointCountRecord record_from_json(const nlohmann::json& j);

// Persistent JSON map keyed by "<hash>:<p>:<s>" -> decimal count plus the
// modulus description.  Single writer; saves atomically via rename.
class CountCache {
 public:
  struct Entry {
    std::string count;
    std::string modulus;
    std::string label;
    std::string timestamp;
  };

  CountCache() = default;
  explicit CountCache(std::filesystem::path path);

  std::optional<Entry> lookup(const std::string& hash, std::uint32_t p, unsigned s) const;
  void store(const std::string& hash, std::uint32_t p, unsigned s, Entry entry);
  void save() const;
  std::size_t size() const { return entries_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  static std::string key(const std::string& hash, std::uint32_t p, unsigned s);

  std::filesystem::path path_;
  std::map<std::string, Entry> entries_;
};

struct TowerStats {
  unsigned cache_hits = 0;
  unsigned computed = 0;
};

// Counts over GF(p^{s_base * s}) for s = 1..S.  Already cached extensions are
// skipped; fresh results are stored (and saved) as they complete.
PointCountRecord count_tower(const VarietySpec& v, std::uint32_t p, unsigned s_base, unsigned S,
                             const CountOptions& options = {}, CountCache* cache = nullptr,
                             TowerStats* stats = nullptr);

// p-adic valuation; nullopt for zero (infinite valuation).
std::optional<unsigned long> p_adic_valuation(const mpz_class& value, std::uint32_t p);

struct AxKatzRow {
  unsigned s = 0;
  std::optional<unsigned long> valuation;  // nullopt: N_s = 0
  Int required = 0;
  bool pass = true;
};

struct AxKatzReport {
  Int mu0 = 0;
  std::vector<AxKatzRow> rows;
  bool pass = true;
};

// v_p(N_s) >= s * s_base * mu_0(N; d) for every s with N_s != 0.
AxKatzReport ax_katz_check(const PointCountRecord& record, const DegreeSequence& degrees, Int N);

// Advisory dimension estimate log_q(N_s) / s for the largest available s.
double dimension_estimate(const PointCountRecord& record);

}  // namespace colevel

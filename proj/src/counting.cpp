#include "colevel/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>

#include "colevel/error.hpp"

namespace colevel {

std::vector<Int> VarietySpec::measured_degrees() const {
  std::vector<Int> out;
  for (const auto& p : polys) out.push_back(p.total_degree());
  return out;
}

VarietySpec make_variety(Int N, std::vector<std::string> variables, std::vector<MultiPoly> polys,
                         std::vector<Int> declared_degrees, Int dimension_n, bool projective, std::string label) {
  if (N < 1) throw InputError("ambient dimension N must be >= 1");
  const std::size_t nvars = static_cast<std::size_t>(projective ? N + 1 : N);
  if (variables.size() != nvars)
    throw InputError("expected " + std::to_string(nvars) + " variables, got " + std::to_string(variables.size()));
  if (polys.empty()) throw InputError("at least one equation is required");
  if (declared_degrees.empty()) {
    for (const auto& p : polys) declared_degrees.push_back(std::max<Int>(1, p.total_degree()));
  }
  if (declared_degrees.size() != polys.size())
    throw InputError("got " + std::to_string(declared_degrees.size()) + " declared degrees for " +
                     std::to_string(polys.size()) + " equations");

  std::vector<std::size_t> perm(polys.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return declared_degrees[a] > declared_degrees[b]; });

  VarietySpec v;
  v.N = N;
  v.variables = std::move(variables);
  v.dimension_n = dimension_n;
  v.projective = projective;
  v.label = std::move(label);
  for (std::size_t idx : perm) {
    const MultiPoly& p = polys[idx];
    const Int declared = declared_degrees[idx];
    if (p.num_vars() != nvars) throw InputError("equation " + std::to_string(idx + 1) + " has the wrong variable count");
    if (declared < 1) throw InputError("declared degree of equation " + std::to_string(idx + 1) + " must be >= 1");
    if (declared < static_cast<Int>(p.total_degree()))
      throw InputError("equation " + std::to_string(idx + 1) + " has degree " + std::to_string(p.total_degree()) +
                       " above its declared degree " + std::to_string(declared));
    if (projective && !p.is_homogeneous())
      throw InputError("equation " + std::to_string(idx + 1) + " is not homogeneous");
    v.polys.push_back(p);
    v.declared_degrees.push_back(declared);
  }
  validate(v.problem(), v.degrees());
  return v;
}

namespace {

std::vector<std::string> default_variables(Int N, bool projective) {
  std::vector<std::string> out;
  for (Int i = projective ? 0 : 1; i <= N; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

VarietySpec variety_from_json(const nlohmann::json& j) {
  try {
    const Int N = j.at("N").get<Int>();
    const bool projective = j.value("projective", false);
    auto variables = j.contains("variables") ? j.at("variables").get<std::vector<std::string>>()
                                             : default_variables(N, projective);
    std::vector<MultiPoly> polys;
    for (const auto& eq : j.at("polys")) polys.push_back(poly_from_json(eq, variables));
    std::vector<Int> declared;
    if (j.contains("declared_degrees")) declared = j.at("declared_degrees").get<std::vector<Int>>();
    return make_variety(N, std::move(variables), std::move(polys), std::move(declared), j.at("dimension_n").get<Int>(),
                        projective, j.value("label", std::string("variety")));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("variety spec: ") + e.what());
  }
}

nlohmann::json to_json(const VarietySpec& v) {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : v.polys) polys.push_back(to_string(p, v.variables));
  return {{"label", v.label},
          {"N", v.N},
          {"variables", v.variables},
          {"polys", polys},
          {"declared_degrees", v.declared_degrees},
          {"dimension_n", v.dimension_n},
          {"projective", v.projective}};
}

std::string content_hash(const VarietySpec& v) {
  std::ostringstream canon;
  canon << (v.projective ? "P" : "A") << v.N << '|';
  for (const auto& p : v.polys) {
    for (const auto& t : p.terms()) {
      canon << t.coef.get_str() << ':';
      for (auto e : t.exponents) canon << e << ',';
      canon << ';';
    }
    canon << '|';
  }
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : canon.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

mpz_class count_affine(const VarietySpec& v, const Field& field, const CountOptions& options) {
  if (v.projective) throw InputError("count_affine called on a projective variety");
  return count_zeros(v.polys, static_cast<std::size_t>(v.N), field, options);
}

mpz_class count_projective(const VarietySpec& v, const Field& field, const CountOptions& options) {
  if (!v.projective) throw InputError("count_projective called on an affine variety");
  const mpz_class cone = count_zeros(v.polys, static_cast<std::size_t>(v.N + 1), field, options);
  // The origin lies on the cone iff every constant term vanishes mod p.
  const bool origin = std::all_of(v.polys.begin(), v.polys.end(), [&](const MultiPoly& p) {
    return std::none_of(p.terms().begin(), p.terms().end(), [&](const Term& t) {
      return t.degree() == 0 && t.coef % field.characteristic() != 0;
    });
  });
  const mpz_class nonzero = cone - (origin ? 1 : 0);
  const mpz_class units = field.order() - 1;
  if (nonzero % units != 0) throw std::logic_error("cone count not divisible by q - 1");
  return nonzero / units;
}

mpz_class PointCountRecord::q() const {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, s_base);
  return q;
}

unsigned PointCountRecord::tower_length() const {
  unsigned s = 0;
  while (counts.count(s + 1)) ++s;
  return s;
}

nlohmann::json to_json(const PointCountRecord& r) {
  nlohmann::json counts = nlohmann::json::object(), moduli = nlohmann::json::object();
  for (const auto& [s, c] : r.counts) counts[std::to_string(s)] = c.get_str();
  for (const auto& [s, m] : r.moduli) moduli[std::to_string(s)] = m;
  return {{"p", r.p},         {"s_base", r.s_base}, {"label", r.label}, {"variety_hash", r.variety_hash},
          {"projective", r.projective}, {"counts", counts}, {"moduli", moduli}};
}

PointCountRecord record_from_json(const nlohmann::json& j) {
  PointCountRecord r;
  r.p = j.at("p").get<std::uint32_t>();
  r.s_base = j.at("s_base").get<unsigned>();
  r.label = j.value("label", std::string());
  r.variety_hash = j.value("variety_hash", std::string());
  r.projective = j.value("projective", false);
  for (const auto& [s, c] : j.at("counts").items()) r.counts[static_cast<unsigned>(std::stoul(s))] = mpz_class(c.get<std::string>());
  if (j.contains("moduli"))
    for (const auto& [s, m] : j.at("moduli").items()) r.moduli[static_cast<unsigned>(std::stoul(s))] = m.get<std::string>();
  if (j.contains("timestamps"))
    for (const auto& [s, t] : j.at("timestamps").items())
      r.timestamps[static_cast<unsigned>(std::stoul(s))] = t.get<std::string>();
  return r;
}

CountCache::CountCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("count cache " + path_.string() + " is not valid JSON: " + e.what());
  }
  const nlohmann::json entries = j.value("entries", nlohmann::json::object());
  for (const auto& [k, v] : entries.items()) {
    entries_[k] = Entry{v.at("count").get<std::string>(), v.value("modulus", std::string()),
                        v.value("label", std::string()), v.value("timestamp", std::string())};
  }
}

std::string CountCache::key(const std::string& hash, std::uint32_t p, unsigned s) {
  return hash + ":" + std::to_string(p) + ":" + std::to_string(s);
}

std::optional<CountCache::Entry> CountCache::lookup(const std::string& hash, std::uint32_t p, unsigned s) const {
  auto it = entries_.find(key(hash, p, s));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CountCache::store(const std::string& hash, std::uint32_t p, unsigned s, Entry entry) {
  entries_[key(hash, p, s)] = std::move(entry);
}

void CountCache::save() const {
  if (path_.empty()) return;
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [k, e] : entries_)
    entries[k] = {{"count", e.count}, {"modulus", e.modulus}, {"label", e.label}, {"timestamp", e.timestamp}};
  nlohmann::json j = {{"version", 1}, {"entries", entries}};
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write count cache " + tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

PointCountRecord count_tower(const VarietySpec& v, std::uint32_t p, unsigned s_base, unsigned S,
                             const CountOptions& options, CountCache* cache, TowerStats* stats) {
  if (s_base < 1 || S < 1) throw InputError("s_base and S must be positive");
  PointCountRecord record;
  record.p = p;
  record.s_base = s_base;
  record.label = v.label;
  record.variety_hash = content_hash(v);
  record.projective = v.projective;

  for (unsigned s = 1; s <= S; ++s) {
    const unsigned ext = s_base * s;
    const Field field = make_field(p, ext);
    if (cache) {
      if (auto hit = cache->lookup(record.variety_hash, p, ext)) {
        record.counts[s] = mpz_class(hit->count);
        record.moduli[s] = hit->modulus;
        record.timestamps[s] = hit->timestamp;
        if (stats) ++stats->cache_hits;
        continue;
      }
    }
    const mpz_class count = v.projective ? count_projective(v, field, options) : count_affine(v, field, options);
    record.counts[s] = count;
    record.moduli[s] = field.modulus_string();
    record.timestamps[s] = utc_now();
    if (stats) ++stats->computed;
    if (cache) {
      cache->store(record.variety_hash, p, ext, {count.get_str(), record.moduli[s], v.label, record.timestamps[s]});
      cache->save();
    }
  }
  return record;
}

std::optional<unsigned long> p_adic_valuation(const mpz_class& value, std::uint32_t p) {
  if (value == 0) return std::nullopt;
  mpz_class x = abs(value);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    x /= p;
    ++v;
  }
  return v;
}

AxKatzReport ax_katz_check(const PointCountRecord& record, const DegreeSequence& degrees, Int N) {
  if (record.projective) throw InputError("Ax-Katz count check applies to affine records");
  AxKatzReport report;
  report.mu0 = mu(0, N, degrees);
  for (const auto& [s, count] : record.counts) {
    AxKatzRow row;
    row.s = s;
    row.valuation = p_adic_valuation(count, record.p);
    row.required = static_cast<Int>(s) * record.s_base * report.mu0;
    row.pass = !row.valuation || static_cast<Int>(*row.valuation) >= row.required;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

double dimension_estimate(const PointCountRecord& record) {
  if (record.counts.empty()) return 0.0;
  const auto& [s, count] = *record.counts.rbegin();
  if (count <= 0) return 0.0;
  const double logq = std::log(record.q().get_d());
  return std::log(count.get_d()) / (static_cast<double>(s) * logq);
}

}  // namespace colevel

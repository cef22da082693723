#include "colevel/zeta.hpp"

#include <algorithm>

#include "colevel/error.hpp"

namespace colevel {

namespace {

using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const RatPoly& f) { return static_cast<int>(f.size()) - 1; }

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

// a = quot * b + rem
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  RatPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class factor = a.back() / b.back();
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

std::string to_string(const IntPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    mpz_class c = f[i];
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    c = abs(c);
    if (i == 0) {
      out += c.get_str();
      continue;
    }
    if (c != 1) out += c.get_str() + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

nlohmann::json to_json(const IntPoly& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : f) out.push_back(c.get_str());
  return out;
}

IntPoly int_poly_from_json(const nlohmann::json& j) {
  IntPoly f;
  for (const auto& c : j) f.emplace_back(c.get<std::string>());
  trim(f);
  return f;
}

RationalSeries zeta_series(const PointCountRecord& record) {
  const unsigned S = record.tower_length();
  if (S != record.counts.size()) throw InputError("point counts must cover s = 1..S without gaps");
  std::vector<mpz_class> counts(S + 1);
  for (unsigned s = 1; s <= S; ++s) counts[s] = record.counts.at(s);

  // s z_s = sum_{k=1}^{s} N_k z_{s-k}, from Z' = (sum_k N_k t^{k-1}) Z.
  RationalSeries z(S + 1);
  z[0] = 1;
  for (unsigned s = 1; s <= S; ++s) {
    mpq_class acc = 0;
    for (unsigned k = 1; k <= s; ++k) acc += counts[k] * z[s - k];
    z[s] = acc / s;
  }
  return z;
}

RationalSeries expand(const IntPoly& num, const IntPoly& den, std::size_t terms) {
  if (den.empty() || den[0] == 0) throw std::domain_error("denominator must have nonzero constant term");
  RationalSeries out(terms);
  for (std::size_t k = 0; k < terms; ++k) {
    mpq_class acc = k < num.size() ? mpq_class(num[k]) : mpq_class(0);
    for (std::size_t i = 1; i < den.size() && i <= k; ++i) acc -= den[i] * out[k - i];
    out[k] = acc / den[0];
  }
  return out;
}

ZetaFunction reconstruct(const PointCountRecord& record, unsigned deg_num, unsigned deg_den) {
  const RationalSeries series = zeta_series(record);
  const unsigned S = static_cast<unsigned>(series.size() - 1);
  if (S < deg_num + deg_den + 1)
    throw ReconstructionError("degree bounds (" + std::to_string(deg_num) + ", " + std::to_string(deg_den) +
                              ") need at least " + std::to_string(deg_num + deg_den + 1) + " counts, have " +
                              std::to_string(S));

  // Remainder sequence of (t^{S+1}, Z mod t^{S+1}); cofactor v tracks
  // v * Z = r (mod t^{S+1}).
  RatPoly r0(S + 2, mpq_class(0));
  r0.back() = 1;
  RatPoly r1(series.begin(), series.end());
  trim(r1);
  RatPoly v0, v1{mpq_class(1)};
  while (degree(r1) > static_cast<int>(deg_num)) {
    auto [quot, rem] = divmod(r0, r1);
    RatPoly v2 = sub(v0, mul(quot, v1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  RatPoly P = r1, Q = v1;
  if (Q.empty() || Q[0] == 0)
    throw ReconstructionError("reconstructed denominator has zero constant term (malformed counts)");

  RatPoly g = gcd(P, Q);
  if (degree(g) > 0) {
    P = divmod(P, g).first;
    Q = divmod(Q, g).first;
  }
  const mpq_class q0 = Q[0];
  for (auto& c : P) c /= q0;
  for (auto& c : Q) c /= q0;
  if (degree(P) > static_cast<int>(deg_num) || degree(Q) > static_cast<int>(deg_den))
    throw ReconstructionError("insufficient degree bound or inconsistent counts: best fit has degrees (" +
                              std::to_string(degree(P)) + ", " + std::to_string(degree(Q)) + ")");

  ZetaFunction zeta;
  for (const auto& c : P) {
    if (c.get_den() != 1) throw ReconstructionError("insufficient degree bound or inconsistent counts: non-integral numerator");
    zeta.numerator.push_back(c.get_num());
  }
  for (const auto& c : Q) {
    if (c.get_den() != 1)
      throw ReconstructionError("insufficient degree bound or inconsistent counts: non-integral denominator");
    zeta.denominator.push_back(c.get_num());
  }

  if (expand(zeta.numerator, zeta.denominator, S + 1) != series)
    throw ReconstructionError("insufficient degree bound or inconsistent counts: candidate does not reproduce the counts");
  zeta.verified_up_to = S;
  return zeta;
}

nlohmann::json to_json(const ZetaFunction& z) {
  return {{"numerator", to_json(z.numerator)},
          {"denominator", to_json(z.denominator)},
          {"numerator_text", to_string(z.numerator)},
          {"denominator_text", to_string(z.denominator)},
          {"verified_up_to", z.verified_up_to}};
}

DivisibilityCertificate certify_factor(const IntPoly& factor, std::uint32_t p, unsigned s_base) {
  IntPoly f = factor;
  trim(f);
  if (f.empty() || f[0] != 1) throw InputError("certify_factor needs constant term 1, got " + to_string(f));
  if (s_base < 1) throw InputError("s_base must be positive");
  DivisibilityCertificate cert;
  cert.factor = f;
  cert.p = p;
  cert.s_base = s_base;
  for (unsigned j = 1; j < f.size(); ++j) {
    const auto v = p_adic_valuation(f[j], p);
    if (!v) continue;
    const Int m = static_cast<Int>(*v / (static_cast<unsigned long>(j) * s_base));
    if (!cert.certified_m || m < *cert.certified_m) {
      cert.certified_m = m;
      cert.witness = j;
    }
  }
  return cert;
}

nlohmann::json to_json(const DivisibilityCertificate& c) {
  nlohmann::json j = {{"factor", to_json(c.factor)},
                      {"factor_text", to_string(c.factor)},
                      {"p", c.p},
                      {"s_base", c.s_base}};
  j["certified_m"] = c.certified_m ? nlohmann::json(*c.certified_m) : nlohmann::json("infinity");
  j["witness"] = c.witness ? nlohmann::json(*c.witness) : nlohmann::json(nullptr);
  return j;
}

PolarReport verify_polar(const ZetaFunction& zeta, const AmbientProblem& problem, const DegreeSequence& degrees,
                         std::uint32_t p, unsigned s_base) {
  const PolarRequirement req = polar_requirement(problem, degrees);
  PolarReport report;
  report.zeta_power = req.zeta_power;
  report.required = req.exponent;
  // Poles of Z are zeros of its denominator; poles of 1/Z are zeros of its numerator.
  const IntPoly& side = req.zeta_power == 1 ? zeta.denominator : zeta.numerator;
  report.pole_side = req.zeta_power == 1 ? "denominator" : "numerator";
  report.certificate = certify_factor(side, p, s_base);
  report.vacuous = !report.certificate.certified_m.has_value();
  report.pass = report.certificate.at_least(report.required);
  return report;
}

nlohmann::json to_json(const PolarReport& r) {
  return {{"zeta_power", r.zeta_power}, {"pole_side", r.pole_side},
          {"certificate", to_json(r.certificate)}, {"required", r.required},
          {"vacuous", r.vacuous}, {"pass", r.pass}};
}

WholeZetaReport verify_whole_zeta(const ZetaFunction& zeta, const DegreeSequence& degrees, Int N, std::uint32_t p,
                                  unsigned s_base) {
  WholeZetaReport report;
  report.required = mu(0, N, degrees);
  report.numerator = certify_factor(zeta.numerator, p, s_base);
  report.denominator = certify_factor(zeta.denominator, p, s_base);
  report.pass = report.numerator.at_least(report.required) && report.denominator.at_least(report.required);
  return report;
}

nlohmann::json to_json(const WholeZetaReport& r) {
  return {{"required", r.required},
          {"numerator", to_json(r.numerator)},
          {"denominator", to_json(r.denominator)},
          {"pass", r.pass}};
}

}  // namespace colevel

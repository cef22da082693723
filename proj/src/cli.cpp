#include "colevel/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "colevel/error.hpp"
#include "colevel/examples.hpp"
#include "colevel/selftest.hpp"
#include "colevel/zeta.hpp"

namespace colevel::cli {

namespace {

constexpr const char* kBoundLabel = "Frobenius/Hodge colevel >=";

struct Subject {
  std::string label;
  AmbientProblem problem;
  std::vector<Int> degrees;
  std::optional<std::vector<Int>> measured;
  std::optional<examples::ExampleDescriptor> example;
  std::optional<VarietySpec> variety;  // materialized lazily

  const VarietySpec& equations() {
    if (!variety) variety = example->variety();
    return *variety;
  }
};

Subject resolve_subject(const RunConfig& config) {
  if (config.spec_path && config.example) throw InputError("give either --spec or --example, not both");
  Subject subject;
  if (config.example) {
    auto desc = examples::by_name(*config.example);
    if (config.projective) desc = desc.projective_variant();
    subject.label = desc.name;
    subject.problem = desc.problem;
    subject.degrees = desc.degrees;
    subject.example = desc;
    return subject;
  }
  if (!config.spec_path) throw InputError("a variety is required: --spec FILE or --example NAME");
  std::ifstream in(*config.spec_path);
  if (!in) throw InputError("cannot open variety spec " + *config.spec_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(*config.spec_path + ": " + e.what());
  }
  VarietySpec v = variety_from_json(j);
  if (config.projective && !v.projective) throw InputError("--projective given but the spec is affine");
  subject.label = v.label;
  subject.problem = v.problem();
  subject.degrees = v.declared_degrees;
  subject.measured = v.measured_degrees();
  subject.variety = std::move(v);
  return subject;
}

nlohmann::json empty_report(const RunConfig& config, const std::string& label) {
  return {{"bounds", nullptr},
          {"counts", nullptr},
          {"zeta", nullptr},
          {"certificates", nlohmann::json::array()},
          {"verdicts", nlohmann::json::array()},
          {"subject", label},
          {"metadata", {{"tool", "colevel"}, {"command", config.command}}}};
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) throw InputError("cannot write " + *config.output_path);
    file << text;
  } else {
    out << text;
  }
}

nlohmann::json verdict(const std::string& check, bool pass, nlohmann::json detail) {
  return {{"check", check}, {"pass", pass}, {"detail", std::move(detail)}};
}

std::string field_name(std::uint32_t p, unsigned s_base, const std::string& exponent) {
  if (s_base == 1) return "GF(" + std::to_string(p) + (exponent.empty() ? "" : "^" + exponent) + ")";
  return "GF(" + std::to_string(p) + "^" + std::to_string(s_base) + (exponent.empty() ? "" : exponent) + ")";
}

std::string optional_cell(const std::optional<Int>& v) { return v ? std::to_string(*v) : ""; }

CountOptions count_options(const RunConfig& config) {
  CountOptions options;
  options.workers = config.workers;
  options.max_evaluations = config.max_evaluations;
  return options;
}

std::optional<CountCache> open_cache(const RunConfig& config) {
  if (!config.use_cache) return std::nullopt;
  return CountCache(config.cache_path ? *config.cache_path : default_cache_path());
}

PointCountRecord tower(const RunConfig& config, Subject& subject, unsigned S, nlohmann::json& report) {
  auto cache = open_cache(config);
  TowerStats stats;
  PointCountRecord record = count_tower(subject.equations(), config.p, config.s_base, S, count_options(config),
                                        cache ? &*cache : nullptr, &stats);
  report["counts"] = to_json(record);
  report["counts"].erase("timestamps");
  nlohmann::json timestamps = nlohmann::json::object();
  for (const auto& [s, t] : record.timestamps) timestamps[std::to_string(s)] = t;
  report["metadata"]["count_timestamps"] = timestamps;
  report["metadata"]["cache"] = {{"path", cache ? cache->path().string() : ""},
                                 {"hits", stats.cache_hits},
                                 {"computed", stats.computed}};
  return record;
}

}  // namespace

std::string default_cache_path() {
  if (const char* dir = std::getenv("COLEVEL_CACHE_DIR"); dir && *dir) return std::string(dir) + "/counts.json";
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/colevel/counts.json";
  return ".colevel-cache/counts.json";
}

std::pair<unsigned, std::pair<unsigned, unsigned>> resolve_tower(const RunConfig& config) {
  if (config.degree_bounds) {
    const auto [dp, dq] = *config.degree_bounds;
    const unsigned S = config.S ? *config.S : 2 * (dp + dq) + 1;
    return {S, {dp, dq}};
  }
  const unsigned S = config.S ? *config.S : 7;
  if (S < 1) throw InputError("S must be positive");
  const unsigned dp = (S - 1) / 2;
  return {S, {dp, S - 1 - dp}};
}

nlohmann::json to_json(const BoundTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [i, e] : table.entries) {
    entries.push_back({{"degree", e.degree},
                       {"new_bound", e.new_bound},
                       {"deligne", e.deligne},
                       {"ax_katz", e.ax_katz},
                       {"esnault_katz", e.esnault_katz ? nlohmann::json(*e.esnault_katz) : nlohmann::json(nullptr)},
                       {"question_mu", e.question_mu ? nlohmann::json(*e.question_mu) : nlohmann::json(nullptr)},
                       {"source", to_string(e.source)}});
  }
  return {{"kind", to_string(table.kind)},
          {"label", kBoundLabel},
          {"N", table.problem.N},
          {"n", table.problem.n},
          {"r", table.degrees.size()},
          {"declared_degrees", table.degrees},
          {"measured_degrees", table.measured ? nlohmann::json(*table.measured) : nlohmann::json(nullptr)},
          {"vanishing_range", {table.vanishing_range.first, table.vanishing_range.second}},
          {"entries", entries}};
}

std::string to_csv(const std::vector<const BoundTable*>& tables) {
  std::ostringstream out;
  out << "table,degree,new_bound,deligne,ax_katz,esnault_katz,question_mu,source\n";
  for (const BoundTable* t : tables) {
    for (const auto& [i, e] : t->entries) {
      out << to_string(t->kind) << ',' << e.degree << ',' << e.new_bound << ',' << e.deligne << ',' << e.ax_katz
          << ',' << optional_cell(e.esnault_katz) << ',' << optional_cell(e.question_mu) << ','
          << to_string(e.source) << '\n';
    }
  }
  return out.str();
}

std::vector<std::pair<std::string, BoundEntry>> parse_bounds_csv(const std::string& csv) {
  std::vector<std::pair<std::string, BoundEntry>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 8) throw InputError("bad bounds CSV row: " + line);
    BoundEntry e;
    e.degree = std::stoll(cells[1]);
    e.new_bound = std::stoll(cells[2]);
    e.deligne = std::stoll(cells[3]);
    e.ax_katz = std::stoll(cells[4]);
    if (!cells[5].empty()) e.esnault_katz = std::stoll(cells[5]);
    if (!cells[6].empty()) e.question_mu = std::stoll(cells[6]);
    const std::string& src = cells[7];
    if (src == "before_middle") e.source = BoundSource::BeforeMiddle;
    else if (src == "beyond_middle") e.source = BoundSource::BeyondMiddle;
    else if (src == "max_of_both") e.source = BoundSource::MaxOfBoth;
    else if (src == "top_degree") e.source = BoundSource::TopDegree;
    else throw InputError("bad bound source: " + src);
    rows.emplace_back(cells[0], e);
  }
  return rows;
}

std::string to_text(const BoundTable& table) {
  std::ostringstream out;
  out << to_string(table.kind) << " bounds, N=" << table.problem.N << " n=" << table.problem.n
      << " r=" << table.degrees.size() << " d=(";
  for (std::size_t i = 0; i < table.degrees.size(); ++i) out << (i ? "," : "") << table.degrees[i];
  out << ")";
  if (table.measured) {
    out << " measured=(";
    for (std::size_t i = 0; i < table.measured->size(); ++i) out << (i ? "," : "") << (*table.measured)[i];
    out << ")";
  }
  out << "\n  " << kBoundLabel << " per degree; cohomology vanishes outside [" << table.vanishing_range.first << ", "
      << table.vanishing_range.second << "]\n";
  out << "  " << std::setw(6) << "degree" << std::setw(8) << "new" << std::setw(9) << "deligne" << std::setw(9)
      << "ax-katz" << std::setw(14) << "esnault-katz" << std::setw(12) << "question" << "  source\n";
  for (const auto& [i, e] : table.entries) {
    out << "  " << std::setw(6) << e.degree << std::setw(8) << e.new_bound << std::setw(9) << e.deligne
        << std::setw(9) << e.ax_katz << std::setw(14) << (e.esnault_katz ? std::to_string(*e.esnault_katz) : "-")
        << std::setw(12) << (e.question_mu ? std::to_string(*e.question_mu) : "-") << "  " << to_string(e.source)
        << '\n';
  }
  return out.str();
}

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream&) {
  Subject subject = resolve_subject(config);
  const DegreeSequence degrees(subject.degrees);
  BoundTable table = subject.problem.projective ? projective_bound_table(subject.problem, degrees)
                                                : affine_bound_table(subject.problem, degrees);
  table.measured = subject.measured;
  std::optional<BoundTable> complement;
  if (config.complement) {
    complement = complement_bound_table(subject.problem, degrees);
    complement->measured = subject.measured;
  }

  nlohmann::json report = empty_report(config, subject.label);
  report["bounds"] = {{"table", to_json(table)},
                      {"complement", complement ? to_json(*complement) : nlohmann::json(nullptr)}};
  if (subject.example && subject.example->note) report["metadata"]["interpretation"] = *subject.example->note;

  switch (config.format) {
    case Format::Json: emit(config, out, report.dump(2) + "\n"); break;
    case Format::Csv: {
      std::vector<const BoundTable*> tables{&table};
      if (complement) tables.push_back(&*complement);
      emit(config, out, to_csv(tables));
      break;
    }
    case Format::Text: {
      std::string text = subject.label + "\n" + to_text(table);
      if (complement) text += to_text(*complement);
      emit(config, out, text);
      break;
    }
  }
  return kExitOk;
}

int cmd_count(const RunConfig& config, std::ostream& out, std::ostream&) {
  Subject subject = resolve_subject(config);
  const unsigned S = config.S ? *config.S : 1;
  nlohmann::json report = empty_report(config, subject.label);
  const PointCountRecord record = tower(config, subject, S, report);

  bool pass = true;
  std::optional<AxKatzReport> ax;
  if (!record.projective) {
    ax = ax_katz_check(record, DegreeSequence(subject.degrees), subject.problem.N);
    pass = ax->pass;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : ax->rows)
      rows.push_back({{"s", row.s},
                      {"valuation", row.valuation ? nlohmann::json(*row.valuation) : nlohmann::json("infinity")},
                      {"required", row.required},
                      {"pass", row.pass}});
    report["verdicts"].push_back(verdict("ax_katz_counts", ax->pass, {{"mu0", ax->mu0}, {"rows", rows}}));
  }
  report["metadata"]["dimension_estimate"] = dimension_estimate(record);

  std::ostringstream text;
  switch (config.format) {
    case Format::Json: text << report.dump(2) << '\n'; break;
    case Format::Csv:
      text << "s,field_order,count,valuation\n";
      for (const auto& [s, c] : record.counts) {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), record.p, record.s_base * s);
        const auto v = p_adic_valuation(c, record.p);
        text << s << ',' << q.get_str() << ',' << c.get_str() << ',' << (v ? std::to_string(*v) : "inf") << '\n';
      }
      break;
    case Format::Text: {
      text << subject.label << " over " << field_name(record.p, record.s_base, "s") << ", s = 1.."
           << S << (record.projective ? " (projective)" : "") << '\n';
      for (const auto& [s, c] : record.counts) {
        const auto v = p_adic_valuation(c, record.p);
        text << "  s=" << s << "  N_s=" << c.get_str() << "  v_" << record.p << "="
             << (v ? std::to_string(*v) : "inf") << "  modulus " << record.moduli.at(s) << '\n';
      }
      if (ax) text << "  Ax-Katz divisibility (mu_0 = " << ax->mu0 << "): " << (ax->pass ? "pass" : "FAIL") << '\n';
      text << "  dimension estimate (advisory): " << std::fixed << std::setprecision(3) << dimension_estimate(record)
           << '\n';
      const auto& cache = report["metadata"]["cache"];
      text << "  cache: " << cache["hits"].get<unsigned>() << " hit(s), " << cache["computed"].get<unsigned>()
           << " computed\n";
      break;
    }
  }
  emit(config, out, text.str());
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Subject subject = resolve_subject(config);
  if (subject.problem.projective) throw InputError("verify applies to affine varieties");
  const auto [S, bounds] = resolve_tower(config);
  const auto [dp, dq] = bounds;
  const DegreeSequence degrees(subject.degrees);

  nlohmann::json report = empty_report(config, subject.label);
  const PointCountRecord record = tower(config, subject, S, report);

  const AxKatzReport ax = ax_katz_check(record, degrees, subject.problem.N);
  report["verdicts"].push_back(verdict("ax_katz_counts", ax.pass, {{"mu0", ax.mu0}}));

  ZetaFunction zeta;
  try {
    zeta = reconstruct(record, dp, dq);
  } catch (const ReconstructionError& e) {
    err << "reconstruction failed: " << e.what() << '\n';
    return kExitInputError;
  }
  report["zeta"] = to_json(zeta);
  report["zeta"]["degree_bounds"] = {dp, dq};

  const WholeZetaReport whole = verify_whole_zeta(zeta, degrees, subject.problem.N, record.p, record.s_base);
  const PolarReport polar = verify_polar(zeta, subject.problem, degrees, record.p, record.s_base);
  report["certificates"].push_back({{"role", "numerator"}, {"certificate", to_json(whole.numerator)}});
  report["certificates"].push_back({{"role", "denominator"}, {"certificate", to_json(whole.denominator)}});
  report["verdicts"].push_back(verdict("whole_zeta", whole.pass, to_json(whole)));
  report["verdicts"].push_back(verdict("polar", polar.pass, to_json(polar)));

  const bool pass = ax.pass && whole.pass && polar.pass;
  auto cert_str = [](const DivisibilityCertificate& c) {
    return c.certified_m ? std::to_string(*c.certified_m) : std::string("infinity");
  };

  std::ostringstream text;
  switch (config.format) {
    case Format::Json: text << report.dump(2) << '\n'; break;
    case Format::Csv:
      text << "check,pass,required,certified\n";
      text << "ax_katz_counts," << ax.pass << ',' << ax.mu0 << ",\n";
      text << "whole_zeta_numerator," << whole.numerator.at_least(whole.required) << ',' << whole.required << ','
           << cert_str(whole.numerator) << '\n';
      text << "whole_zeta_denominator," << whole.denominator.at_least(whole.required) << ',' << whole.required << ','
           << cert_str(whole.denominator) << '\n';
      text << "polar," << polar.pass << ',' << polar.required << ',' << cert_str(polar.certificate) << '\n';
      break;
    case Format::Text:
      text << subject.label << " over " << field_name(record.p, record.s_base, "") << ", S=" << S << ", degree bounds ("
           << dp << ", " << dq << ")\n";
      text << "  Z(t) = (" << to_string(zeta.numerator) << ") / (" << to_string(zeta.denominator)
           << ")  [reproduces all " << zeta.verified_up_to << " counts]\n";
      text << "  Ax-Katz on counts: v_p(N_s) >= s*" << record.s_base << "*" << ax.mu0 << ": "
           << (ax.pass ? "pass" : "FAIL") << '\n';
      text << "  whole zeta: numerator certified " << cert_str(whole.numerator) << ", denominator certified "
           << cert_str(whole.denominator) << ", required " << whole.required << ": "
           << (whole.pass ? "pass" : "FAIL") << '\n';
      text << "  polar: Z^" << (polar.zeta_power == 1 ? "(+1)" : "(-1)") << ", poles from the " << polar.pole_side
           << " of Z, certified " << cert_str(polar.certificate) << " >= required " << polar.required << ": "
           << (polar.vacuous ? "vacuously true" : (polar.pass ? "pass" : "FAIL")) << '\n';
      break;
  }
  emit(config, out, text.str());
  if (!pass) err << "verification FAILED: a divisibility statement is contradicted\n";
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_selftest(const RunConfig& config, std::ostream& out, std::ostream&) {
  nlohmann::json checks = nlohmann::json::array();
  std::uint64_t violations = 0;
  auto add = [&](const PropertyCheck& c) {
    violations += c.violations;
    checks.push_back({{"name", c.name},
                      {"cases", c.cases},
                      {"violations", c.violations},
                      {"first_counterexample", c.first_counterexample}});
  };
  for (const auto& c : run_property_grid()) add(c);

  // Closed-form tables of the determinantal examples.
  for (Int e = 4; e <= 10; ++e) {
    for (const auto& desc : {examples::det1(e), examples::det2(e)}) {
      const BoundTable table = affine_bound_table(desc.problem, desc.degree_sequence());
      const Int base = desc.problem.N - static_cast<Int>(desc.degrees.size());
      PropertyCheck c{"closed form " + desc.name, 0, 0, {}};
      for (const auto& [m, expected] : desc.expected_bounds->before_middle) {
        ++c.cases;
        if (table.bound_at(base + m) != expected && c.violations++ == 0)
          c.first_counterexample = "m=" + std::to_string(m);
      }
      for (const auto& [j, expected] : desc.expected_bounds->beyond_middle) {
        ++c.cases;
        if (table.bound_at(desc.problem.n + j) != expected && c.violations++ == 0)
          c.first_counterexample = "j=" + std::to_string(j);
      }
      add(c);
    }
  }

  // Zeta regressions on the fixture corpus.
  for (const auto& desc : {examples::quadric_cone(), examples::coordinate_union()}) {
    for (std::uint32_t p : {2u, 3u}) {
      PropertyCheck c{"zeta " + desc.name + " over GF(" + std::to_string(p) + ")", 1, 0, {}};
      const PointCountRecord record = count_tower(desc.variety(), p, 1, 6);
      const ZetaFunction zeta = reconstruct(record, 1, 2);
      const auto expected = examples::expected_zeta(desc, p);
      const bool ok = expected && zeta.numerator == expected->first && zeta.denominator == expected->second &&
                      verify_polar(zeta, desc.problem, desc.degree_sequence(), p, 1).pass &&
                      verify_whole_zeta(zeta, desc.degree_sequence(), desc.problem.N, p, 1).pass;
      if (!ok) {
        c.violations = 1;
        c.first_counterexample = "got (" + to_string(zeta.numerator) + ")/(" + to_string(zeta.denominator) + ")";
      }
      add(c);
    }
  }

  nlohmann::json report = empty_report(config, "selftest");
  report["verdicts"] = checks;
  std::ostringstream text;
  if (config.format == Format::Json) {
    text << report.dump(2) << '\n';
  } else {
    for (const auto& c : checks) {
      text << (c["violations"].get<std::uint64_t>() == 0 ? "ok    " : "FAIL  ") << c["name"].get<std::string>()
           << ": " << c["cases"].get<std::uint64_t>() << " cases, " << c["violations"].get<std::uint64_t>()
           << " violations";
      if (!c["first_counterexample"].get<std::string>().empty())
        text << " (first: " << c["first_counterexample"].get<std::string>() << ")";
      text << '\n';
    }
    text << "total violations: " << violations << '\n';
  }
  emit(config, out, text.str());
  return violations == 0 ? kExitOk : kExitVerificationFailure;
}

int cmd_export(const RunConfig& config, std::ostream& out, std::ostream&) {
  Subject subject = resolve_subject(config);
  emit(config, out, to_json(subject.equations()).dump(2) + "\n");
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "bounds") return cmd_bounds(config, out, err);
    if (config.command == "count") return cmd_count(config, out, err);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "selftest") return cmd_selftest(config, out, err);
    if (config.command == "export") return cmd_export(config, out, err);
    err << "unknown command '" << config.command << "'\n";
    return kExitInputError;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ReconstructionError& e) {
    err << "reconstruction failed: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace colevel::cli

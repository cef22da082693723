#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colevel/cli.hpp"

namespace {

using colevel::cli::Format;
using colevel::cli::RunConfig;

// Options shared by the variety-taking subcommands.
void add_variety_options(CLI::App* sub, RunConfig& config) {
  auto* spec = sub->add_option("--spec", config.spec_path, "variety spec JSON file")->check(CLI::ExistingFile);
  sub->add_option("--example", config.example, "det1:e, det2:e, cone, coordunion[:N:k], fermat:N:d")
      ->excludes(spec);
  sub->add_flag("--projective", config.projective, "read the example's equations in P^{N-1}");
}

void add_field_options(CLI::App* sub, RunConfig& config, std::vector<unsigned>& deg, std::string& max_eval) {
  sub->add_option("--p", config.p, "characteristic")->check(CLI::PositiveNumber);
  sub->add_option("--s-base", config.s_base, "base field is GF(p^s_base)")->check(CLI::PositiveNumber);
  sub->add_option("--S", config.S, "number of extensions s = 1..S")->check(CLI::PositiveNumber);
  sub->add_option("--cache", config.cache_path, "count cache file");
  sub->add_flag("!--no-cache", config.use_cache, "do not read or write the count cache");
  sub->add_option("--workers", config.workers, "counting threads")->check(CLI::PositiveNumber);
  sub->add_option("--max-evaluations", max_eval, "size ceiling on enumerated points");
  if (sub->get_name() == "verify")
    sub->add_option("--deg", deg, "degree bounds D_P D_Q for the reconstruction")->expected(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colevel: Frobenius colevel bounds and zeta-function checks"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<unsigned> deg;
  std::string max_eval;
  std::string format = "text";
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};

  auto* bounds = app.add_subcommand("bounds", "colevel lower bounds per cohomological degree");
  auto* count = app.add_subcommand("count", "point counts over GF(p^{s_base s}), s = 1..S");
  auto* verify = app.add_subcommand("verify", "count, reconstruct the zeta function, check divisibility");
  auto* selftest = app.add_subcommand("selftest", "property grid and fixture regressions");
  auto* exporter = app.add_subcommand("export", "write an example as variety spec JSON");

  for (auto* sub : {bounds, count, verify, selftest, exporter}) {
    sub->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", config.output_path, "write the report here instead of stdout");
  }
  for (auto* sub : {bounds, count, verify, exporter}) add_variety_options(sub, config);
  bounds->add_flag("--complement", config.complement, "also print the table for the complement");
  for (auto* sub : {count, verify}) add_field_options(sub, config, deg, max_eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : colevel::cli::kExitInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.format = formats.at(format);
  if (deg.size() == 2) config.degree_bounds = std::pair{deg[0], deg[1]};
  if (!max_eval.empty()) {
    if (config.max_evaluations.set_str(max_eval, 10) != 0 || config.max_evaluations <= 0) {
      std::cerr << "error: --max-evaluations must be a positive integer\n";
      return colevel::cli::kExitInputError;
    }
  }
  return colevel::cli::run(config, std::cout, std::cerr);
}

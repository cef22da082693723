#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "colevel/bounds.hpp"
#include "colevel/counting.hpp"

namespace colevel::cli {

// Exit status contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 2;
inline constexpr int kExitInputError = 3;

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::string command;
  std::optional<std::string> spec_path;
  std::optional<std::string> example;
  std::uint32_t p = 2;
  unsigned s_base = 1;
  std::optional<unsigned> S;
  std::optional<std::pair<unsigned, unsigned>> degree_bounds;  // (D_P, D_Q)
  Format format = Format::Text;
  std::optional<std::string> cache_path;
  bool use_cache = true;
  unsigned workers = 1;
  mpz_class max_evaluations = mpz_class(1) << 36;
  bool projective = false;  // examples: read the equations in P^{N-1}
  bool complement = false;
  std::optional<std::string> output_path;
};

// Cache file location: --cache, else $COLEVEL_CACHE_DIR/counts.json, else
// $HOME/.cache/colevel/counts.json.
std::string default_cache_path();

// Resolved (tolerance-free) defaults for tower length and degree bounds:
// explicit degree bounds without S give S = 2 (D_P + D_Q) + 1; S without
// bounds gives D_P = floor((S - 1) / 2), D_Q = S - 1 - D_P.
std::pair<unsigned, std::pair<unsigned, unsigned>> resolve_tower(const RunConfig& config);

nlohmann::json to_json(const BoundTable& table);
std::string to_csv(const std::vector<const BoundTable*>& tables);
// Parses to_csv output back into (kind, entry) rows.
std::vector<std::pair<std::string, BoundEntry>> parse_bounds_csv(const std::string& csv);
std::string to_text(const BoundTable& table);

// Each command writes its report to `out`, diagnostics to `err`, and returns
// the exit status.
int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunConfig& config, std::ostream& out, std::ostream& err);
// Writes the example's VarietySpec JSON.
int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace colevel::cli

#ifndef BLOCKGAME_RUNNER_HPP
#define BLOCKGAME_RUNNER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "blockgame/config.hpp"
#include "blockgame/ess.hpp"

namespace blockgame {

// Rendered outputs of one run: the per-round CSV and the JSON summary.
struct RunArtifacts {
  std::string trajectory_csv;
  std::string summary_json;
};

RunArtifacts run_replicate(const RunConfig& config);
RunArtifacts run_simulate(const RunConfig& config);

// ESS verdicts for every scheme x incumbent combination under the
// deterministic quorum model.
std::string ess_table_json(const EconomicParams& params);

enum class SweepParam { InitialHonest, Penalty };

struct SweepPoint {
  double value;
  Verdict verdict;
  std::size_t rounds_to_converge;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  // Adjacent grid values bracketing the malicious/honest basin boundary.
  std::optional<std::pair<double, double>> boundary;
  std::string csv;
  std::string summary_json;
};

SweepResult run_sweep(RunConfig base, SweepParam param, double from, double to,
                      int steps);

void write_file(const std::string& path, const std::string& content);

}  // namespace blockgame

#endif  // BLOCKGAME_RUNNER_HPP

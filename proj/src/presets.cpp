#include "blockgame/presets.hpp"

#include <stdexcept>
#include <vector>

namespace blockgame {

namespace {

RunConfig base_config(RewardScheme scheme, double x0, double penalty) {
  RunConfig c;
  c.scheme = scheme;
  c.x0_honest = x0;
  c.econ.penalty = penalty;
  return c;
}

std::vector<ScenarioPreset> make_presets() {
  std::vector<ScenarioPreset> presets;
  presets.push_back({"fig2a", base_config(RewardScheme::UniversalReward, 0.9, 100.0)});
  presets.push_back({"fig2b", base_config(RewardScheme::RewardForWork, 0.9, 100.0)});
  presets.push_back({"fig2c", base_config(RewardScheme::RewardForWork, 0.667, 100.0)});
  presets.push_back({"fig2d", base_config(RewardScheme::Penalty, 0.667, 500.0)});
  presets.push_back({"fig2e", base_config(RewardScheme::Penalty, 0.667, 1000.0)});
  presets.push_back({"fig2f", base_config(RewardScheme::Penalty, 0.51, 100.0)});
  presets.push_back({"fig3", base_config(RewardScheme::Penalty, 0.667, 100.0)});
  return presets;
}

}  // namespace

std::span<const ScenarioPreset> all_presets() {
  static const std::vector<ScenarioPreset> presets = make_presets();
  return presets;
}

const ScenarioPreset& find_preset(const std::string& name) {
  for (const ScenarioPreset& p : all_presets()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown scenario preset: " + name);
}

}  // namespace blockgame

#ifndef BLOCKGAME_PRESETS_HPP
#define BLOCKGAME_PRESETS_HPP

#include <span>
#include <string>

#include "blockgame/config.hpp"

namespace blockgame {

// Fully resolved scenario configurations, one per reproduced experiment:
//   fig2a  universal reward, 90/10
//   fig2b  reward-for-work, 90/10
//   fig2c  reward-for-work, 67/33
//   fig2d  penalty p=500 (50% of the baseline stake), 67/33
//   fig2e  penalty p=1000 (100% of the baseline stake), 67/33
//   fig2f  penalty p=100, 51/49
//   fig3   penalty p=100, 67/33
struct ScenarioPreset {
  std::string name;
  RunConfig config;
};

std::span<const ScenarioPreset> all_presets();

// Throws std::invalid_argument for an unknown name.
const ScenarioPreset& find_preset(const std::string& name);

}  // namespace blockgame

#endif  // BLOCKGAME_PRESETS_HPP

#include "blockgame/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace blockgame {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("bad integer value for '" + key + "': " + value);
  }
  return v;
}

// Shortest representation that parses back to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

RewardScheme parse_scheme(const std::string& name) {
  if (name == "universal" || name == "universal_reward") {
    return RewardScheme::UniversalReward;
  }
  if (name == "reward_for_work" || name == "reward-for-work" || name == "rfw") {
    return RewardScheme::RewardForWork;
  }
  if (name == "penalty") return RewardScheme::Penalty;
  throw ConfigError("unknown reward scheme: " + name);
}

FitnessModel parse_model(const std::string& name) {
  if (name == "matching") return FitnessModel::PairwiseMatching;
  if (name == "quorum") return FitnessModel::QuorumDeterministic;
  throw ConfigError("unknown fitness model: " + name);
}

SimConfig RunConfig::to_sim_config() const {
  SimConfig sim;
  sim.n_validators = n_validators;
  sim.initial_honest_fraction = x0_honest;
  sim.scheme = scheme;
  sim.params = econ;
  sim.baseline_stake = baseline_stake;
  sim.imitation_rate = imitation_rate;
  sim.mutation_rate = mutation_rate;
  sim.rounds = rounds;
  sim.seed = seed;
  sim.revision_model = model;
  sim.shift.background_fitness = background_fitness;
  sim.convergence_tol = convergence_tol;
  return sim;
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = section.empty() ? key : section + "." + key;

    if (qualified == "game.scheme") {
      config.scheme = parse_scheme(value);
    } else if (qualified == "game.model") {
      config.model = parse_model(value);
    } else if (qualified == "game.x0") {
      config.x0_honest = parse_double(qualified, value);
    } else if (qualified == "game.rounds") {
      config.rounds = parse_u64(qualified, value);
    } else if (qualified == "game.seed") {
      config.seed = parse_u64(qualified, value);
    } else if (qualified == "game.background_fitness") {
      config.background_fitness = parse_double(qualified, value);
    } else if (qualified == "game.convergence_tol") {
      config.convergence_tol = parse_double(qualified, value);
    } else if (qualified == "economics.expense") {
      config.econ.expense = parse_double(qualified, value);
    } else if (qualified == "economics.saved_expense") {
      config.econ.saved_expense = parse_double(qualified, value);
    } else if (qualified == "economics.reward") {
      config.econ.reward = parse_double(qualified, value);
    } else if (qualified == "economics.block_reward") {
      config.econ.block_reward = parse_double(qualified, value);
    } else if (qualified == "economics.benefit") {
      config.econ.byzantine_benefit = parse_double(qualified, value);
    } else if (qualified == "economics.max_benefit") {
      config.econ.max_benefit = parse_double(qualified, value);
    } else if (qualified == "economics.penalty") {
      config.econ.penalty = parse_double(qualified, value);
    } else if (qualified == "economics.quorum") {
      config.econ.quorum_threshold = parse_double(qualified, value);
    } else if (qualified == "simulation.validators") {
      config.n_validators = parse_u64(qualified, value);
    } else if (qualified == "simulation.imitation_rate") {
      config.imitation_rate = parse_double(qualified, value);
    } else if (qualified == "simulation.mutation_rate") {
      config.mutation_rate = parse_double(qualified, value);
    } else if (qualified == "simulation.baseline_stake") {
      config.baseline_stake = parse_double(qualified, value);
    } else {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": unknown key '" + qualified + "'");
    }
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[game]\n";
  out << "scheme = " << to_string(c.scheme) << "\n";
  out << "model = " << to_string(c.model) << "\n";
  out << "x0 = " << fmt(c.x0_honest) << "\n";
  out << "rounds = " << c.rounds << "\n";
  out << "seed = " << c.seed << "\n";
  out << "background_fitness = " << fmt(c.background_fitness) << "\n";
  out << "convergence_tol = " << fmt(c.convergence_tol) << "\n";
  out << "\n[economics]\n";
  out << "expense = " << fmt(c.econ.expense) << "\n";
  out << "saved_expense = " << fmt(c.econ.saved_expense) << "\n";
  out << "reward = " << fmt(c.econ.reward) << "\n";
  out << "block_reward = " << fmt(c.econ.block_reward) << "\n";
  out << "benefit = " << fmt(c.econ.byzantine_benefit) << "\n";
  out << "max_benefit = " << fmt(c.econ.max_benefit) << "\n";
  out << "penalty = " << fmt(c.econ.penalty) << "\n";
  out << "quorum = " << fmt(c.econ.quorum_threshold) << "\n";
  out << "\n[simulation]\n";
  out << "validators = " << c.n_validators << "\n";
  out << "imitation_rate = " << fmt(c.imitation_rate) << "\n";
  out << "mutation_rate = " << fmt(c.mutation_rate) << "\n";
  out << "baseline_stake = " << fmt(c.baseline_stake) << "\n";
  return out.str();
}

}  // namespace blockgame

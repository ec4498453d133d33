#include "aivat/strategy.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace aivat {

namespace {

std::string format_prob(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void StrategyTable::set(const std::string& key, Dist dist) {
  table_[key] = std::move(dist);
}

const StrategyTable::Dist* StrategyTable::find(const std::string& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<double> StrategyTable::action_probs(const GameState& s) const {
  const std::string key = s.infoset_key();
  const Dist* dist = find(key);
  if (dist == nullptr) {
    throw UsageError("strategy has no entry for infoset '" + key + "'");
  }
  const auto actions = s.legal_actions();
  if (dist->size() != actions.size()) {
    throw DataCorruptionError("strategy entry for '" + key + "' has " +
                              std::to_string(dist->size()) + " actions, state has " +
                              std::to_string(actions.size()));
  }
  std::vector<double> probs(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if ((*dist)[i].first != actions[i]) {
      throw DataCorruptionError("strategy entry for '" + key +
                                "' lists actions out of order");
    }
    probs[i] = (*dist)[i].second;
  }
  return probs;
}

void StrategyTable::save(const std::string& path,
                         const GameDescriptor& game) const {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write strategy file '" + path + "'");
  out << "# aivat-strategy v1 game=" << game_id_name(game.id) << "\n";
  for (const auto& [key, dist] : table_) {
    out << key;
    for (const auto& [action, prob] : dist) {
      out << ' ' << game.action_name(action) << ':' << format_prob(prob);
    }
    out << "\n";
  }
  if (!out) throw UsageError("failed writing strategy file '" + path + "'");
}

StrategyTable StrategyTable::load(const std::string& path,
                                  const GameDescriptor& game) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read strategy file '" + path + "'");
  StrategyTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    Dist dist;
    std::string tok;
    double total = 0.0;
    while (ss >> tok) {
      const auto colon = tok.rfind(':');
      if (colon == std::string::npos) {
        throw DataCorruptionError(path + ":" + std::to_string(lineno) +
                                  ": expected <action>:<prob>, got '" + tok + "'");
      }
      const Action a = game.parse_action(tok.substr(0, colon));
      const double p = std::stod(tok.substr(colon + 1));
      if (p < -1e-12 || p > 1.0 + 1e-9) {
        throw DataCorruptionError(path + ":" + std::to_string(lineno) +
                                  ": probability out of range");
      }
      total += p;
      dist.emplace_back(a, p);
    }
    if (dist.empty() || std::abs(total - 1.0) > 1e-6) {
      throw DataCorruptionError(path + ":" + std::to_string(lineno) +
                                ": probabilities do not sum to 1");
    }
    table.set(key, std::move(dist));
  }
  return table;
}

AgentKind parse_agent_kind(const std::string& name) {
  if (name == "uniform" || name == "uniform_random") {
    return AgentKind::uniform_random;
  }
  if (name == "callraise" || name == "call_raise") return AgentKind::call_raise;
  throw UsageError("unknown agent kind '" + name + "'");
}

namespace {

void collect_decision_states(const GameState& s,
                             const std::function<void(const GameState&)>& fn) {
  if (s.is_terminal()) return;
  if (!s.is_chance()) fn(s);
  for (const Action& a : s.legal_actions()) {
    collect_decision_states(s.apply(a), fn);
  }
}

}  // namespace

StrategyTable make_fixed_agent(const GameDescriptor& game, AgentKind kind) {
  StrategyTable table;
  std::set<std::string> seen;
  collect_decision_states(initial_state(game), [&](const GameState& s) {
    const std::string key = s.infoset_key();
    if (!seen.insert(key).second) return;
    const auto actions = s.legal_actions();
    StrategyTable::Dist dist;
    if (kind == AgentKind::uniform_random) {
      const double p = 1.0 / static_cast<double>(actions.size());
      for (const Action& a : actions) dist.emplace_back(a, p);
    } else {
      bool has_raise = false;
      for (const Action& a : actions) {
        has_raise = has_raise || a.kind == ActionKind::kRaise;
      }
      for (const Action& a : actions) {
        double p = 0.0;
        if (a.kind == ActionKind::kCall) p = has_raise ? 0.5 : 1.0;
        if (a.kind == ActionKind::kRaise) p = 0.5;
        dist.emplace_back(a, p);
      }
    }
    table.set(key, std::move(dist));
  });
  return table;
}

std::vector<std::string> missing_infosets(const GameDescriptor& game,
                                          const StrategyTable& table,
                                          Player player) {
  std::set<std::string> missing;
  collect_decision_states(initial_state(game), [&](const GameState& s) {
    if (s.acting_player() != player) return;
    const std::string key = s.infoset_key();
    if (table.find(key) == nullptr) missing.insert(key);
  });
  return {missing.begin(), missing.end()};
}

std::vector<double> Profile::action_probs(const GameState& s) const {
  if (s.is_chance()) return s.chance_probs();
  const Player p = s.acting_player();
  if (tables_[p] == nullptr) {
    throw UsageError("profile has no strategy for player " + std::to_string(p));
  }
  return tables_[p]->action_probs(s);
}

double Profile::action_prob(const GameState& s, const Action& a) const {
  const auto actions = s.legal_actions();
  const auto probs = action_probs(s);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] == a) return probs[i];
  }
  return 0.0;
}

ReachVector reach_vector(const GameState& s, const Profile& profile) {
  ReachVector reach;
  GameState cur(s.game());
  for (const Action& a : s.history()) {
    const double p = profile.action_prob(cur, a);
    if (cur.is_chance()) {
      reach.chance *= p;
    } else {
      reach.player[cur.acting_player()] *= p;
    }
    cur = cur.apply(a);
  }
  return reach;
}

namespace {

void walk_states(const GameState& s,
                 const std::function<void(const GameState&)>& fn) {
  fn(s);
  if (s.is_terminal()) return;
  for (const Action& a : s.legal_actions()) {
    walk_states(s.apply(a), fn);
  }
}

void walk_terminals(
    const GameState& s, const Profile& profile, ReachVector reach,
    const std::function<void(const GameState&, const ReachVector&)>& fn) {
  if (s.is_terminal()) {
    fn(s, reach);
    return;
  }
  const auto actions = s.legal_actions();
  const auto probs = profile.action_probs(s);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    ReachVector next = reach;
    if (s.is_chance()) {
      next.chance *= probs[i];
    } else {
      next.player[s.acting_player()] *= probs[i];
    }
    walk_terminals(s.apply(actions[i]), profile, next, fn);
  }
}

}  // namespace

void for_each_state(const GameDescriptor& game,
                    const std::function<void(const GameState&)>& fn) {
  walk_states(initial_state(game), fn);
}

void for_each_terminal(
    const GameDescriptor& game, const Profile& profile,
    const std::function<void(const GameState&, const ReachVector&)>& fn) {
  walk_terminals(initial_state(game), profile, ReachVector{}, fn);
}

std::vector<std::pair<GameState, double>> enumerate_terminals(
    const GameDescriptor& game, const Profile& profile) {
  std::vector<std::pair<GameState, double>> out;
  for_each_terminal(game, profile,
                    [&](const GameState& z, const ReachVector& reach) {
                      out.emplace_back(z, reach.product());
                    });
  return out;
}

double enumerated_value(const GameDescriptor& game, const Profile& profile,
                        Player p) {
  double value = 0.0;
  for_each_terminal(game, profile,
                    [&](const GameState& z, const ReachVector& reach) {
                      value += reach.product() * z.utility(p);
                    });
  return value;
}

StrategyTable random_strategy(const GameDescriptor& game, Rng& rng) {
  StrategyTable table;
  std::set<std::string> seen;
  collect_decision_states(initial_state(game), [&](const GameState& s) {
    const std::string key = s.infoset_key();
    if (!seen.insert(key).second) return;
    const auto actions = s.legal_actions();
    StrategyTable::Dist dist;
    double total = 0.0;
    for (const Action& a : actions) {
      // Strictly positive weights keep every line of play reachable.
      const double w = 0.05 + rng.next_double();
      dist.emplace_back(a, w);
      total += w;
    }
    for (auto& [a, w] : dist) w /= total;
    table.set(key, std::move(dist));
  });
  return table;
}

}  // namespace aivat

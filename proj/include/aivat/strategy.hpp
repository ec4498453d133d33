#ifndef AIVAT_STRATEGY_HPP
#define AIVAT_STRATEGY_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aivat/game.hpp"
#include "aivat/types.hpp"

namespace aivat {

// A behavior strategy: information-set key -> distribution over the
// infoset's legal actions, kept in canonical action order. Tables are
// seat-keyed, so one table serves an agent in either seat of the
// seat-extended game.
class StrategyTable {
 public:
  using Dist = std::vector<std::pair<Action, double>>;

  void set(const std::string& key, Dist dist);
  const Dist* find(const std::string& key) const;
  bool empty() const { return table_.empty(); }
  std::size_t size() const { return table_.size(); }

  // Probabilities aligned with s.legal_actions(). Throws UsageError naming
  // the infoset if the table has no entry for it.
  std::vector<double> action_probs(const GameState& s) const;

  // One line per infoset: `<key> <action>:<prob> ...`, keys sorted,
  // probabilities with 17 significant digits so files round-trip losslessly.
  void save(const std::string& path, const GameDescriptor& game) const;
  static StrategyTable load(const std::string& path,
                            const GameDescriptor& game);

  const std::map<std::string, Dist>& entries() const { return table_; }

 private:
  std::map<std::string, Dist> table_;
};

enum class AgentKind { uniform_random, call_raise };
AgentKind parse_agent_kind(const std::string& name);

// uniform_random mixes all legal actions equally; call_raise mixes
// call/check and raise equally and never folds (call with probability 1
// when raising is unavailable).
StrategyTable make_fixed_agent(const GameDescriptor& game, AgentKind kind);

// Infoset keys of `player` reachable under some play that have no table
// entry. Empty result means full coverage.
std::vector<std::string> missing_infosets(const GameDescriptor& game,
                                          const StrategyTable& table,
                                          Player player);

// A full profile: one strategy table per non-chance player id.
class Profile {
 public:
  Profile() : tables_{nullptr, nullptr} {}
  Profile(const StrategyTable* p0, const StrategyTable* p1)
      : tables_{p0, p1} {}

  const StrategyTable* table(Player p) const { return tables_[p]; }

  // Distribution at any non-terminal state (chance included), aligned with
  // legal_actions().
  std::vector<double> action_probs(const GameState& s) const;
  double action_prob(const GameState& s, const Action& a) const;

 private:
  std::array<const StrategyTable*, 2> tables_;
};

// Per-contributor reach probabilities; the product over all contributors
// is pi(h), the product over a subset T is pi_T(h).
struct ReachVector {
  double chance = 1.0;
  std::array<double, 2> player = {1.0, 1.0};

  double product() const { return chance * player[0] * player[1]; }
  double product_for(bool include_chance, bool include_p0,
                     bool include_p1) const {
    double r = include_chance ? chance : 1.0;
    if (include_p0) r *= player[0];
    if (include_p1) r *= player[1];
    return r;
  }
  double restricted_to(const PaSpec& pa) const {
    return product_for(true, pa.knows_x, pa.knows_y);
  }
};

ReachVector reach_vector(const GameState& s, const Profile& profile);

// Depth-first visit of every state in history order (root included,
// terminals included).
void for_each_state(const GameDescriptor& game,
                    const std::function<void(const GameState&)>& fn);

// Every terminal exactly once with its reach under `profile`.
void for_each_terminal(
    const GameDescriptor& game, const Profile& profile,
    const std::function<void(const GameState&, const ReachVector&)>& fn);

std::vector<std::pair<GameState, double>> enumerate_terminals(
    const GameDescriptor& game, const Profile& profile);

// Exact expected utility for `p` under the profile, by full enumeration.
double enumerated_value(const GameDescriptor& game, const Profile& profile,
                        Player p);

// Random full-support behavior strategy for every infoset of the game
// (both seats), for property tests and oracles.
StrategyTable random_strategy(const GameDescriptor& game, Rng& rng);

}  // namespace aivat

#endif  // AIVAT_STRATEGY_HPP

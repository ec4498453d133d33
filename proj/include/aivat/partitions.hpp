#ifndef AIVAT_PARTITIONS_HPP
#define AIVAT_PARTITIONS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "aivat/game.hpp"
#include "aivat/strategy.hpp"
#include "aivat/types.hpp"

namespace aivat {

// One part H of the correction-term partition: the non-terminal states whose
// acting player is in P_a and that share (public sequence, P_o private
// cards). Members differ only in the private cards of P_a's non-chance
// players, so every opponent reaches all of them with the same probability.
struct HPart {
  std::string key;
  std::string pub;                // shared public-sequence string
  std::vector<GameState> members;
  std::vector<Action> actions;    // A(H): union of member actions, canonical
  bool chance = false;            // members are chance nodes
};

// One part W of the matching terminal partition: terminal states sharing
// (public sequence, P_o private cards). All members pass through the same
// sequence of H parts, ending at h_part with the same observed action.
struct WPart {
  std::string key;
  std::vector<GameState> members;
  int h_part = -1;  // part holding the longest P_a-acted prefixes
};

// The decomposition of an observed terminal: for every H part intersecting
// its history, the on-path member and the observed action; all other parts
// contribute a zero correction.
struct PathStep {
  int h_part = -1;
  GameState member;
  Action observed;
};

struct PathDecomposition {
  std::vector<PathStep> steps;
  int w_part = -1;
};

class Partitions {
 public:
  Partitions(GameDescriptor game, PaSpec pa);

  // Raw constructor from prebuilt parts, without any checking. Lets tests
  // feed deliberately broken partitions to the validator.
  Partitions(GameDescriptor game, PaSpec pa, std::vector<HPart> h_parts,
             std::vector<WPart> w_parts);

  const GameDescriptor& game() const { return game_; }
  const PaSpec& pa() const { return pa_; }
  const std::vector<HPart>& h_parts() const { return h_parts_; }
  const std::vector<WPart>& w_parts() const { return w_parts_; }

  // Part key of any state: <pa>|<public tokens '.'-joined>|<P_o cards>.
  // Terminal states get a "W!" prefix. O(history) — replays from the root.
  std::string key_of(const GameState& s) const;

  int h_index(const std::string& key) const;  // -1 when absent
  int w_index(const std::string& key) const;

  // Part containing a P_a-acted state (-1 for P_o decision states).
  int h_part_of(const GameState& h) const;
  int w_part_of(const GameState& z) const;

  PathDecomposition decompose_path(const GameState& z) const;

  // Writes every part with its members, one per line.
  void dump(std::ostream& out) const;

 private:
  friend class PartKeyWalker;
  GameDescriptor game_;
  PaSpec pa_;
  std::vector<HPart> h_parts_;
  std::vector<WPart> w_parts_;
  std::unordered_map<std::string, int> h_index_;
  std::unordered_map<std::string, int> w_index_;
};

// Incrementally builds part keys while replaying a history from the root;
// used wherever per-prefix lookups must stay O(1).
class PartKeyWalker {
 public:
  explicit PartKeyWalker(const Partitions& parts);

  // Key of the current state (terminal keys carry the "W!" prefix).
  const std::string& key() const { return key_; }
  const GameState& state() const { return state_; }

  void advance(const Action& a);
  void reset();

 private:
  void rebuild_key();
  const Partitions* parts_;
  GameState state_;
  std::string pub_;
  std::string key_;
};

struct PartitionDiagnostics {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks the partition properties directly: pi_{P_o} equality within every
// part for `trials` random opponent strategies (tolerance 1e-12),
// prefix-freeness, A(H) consistency, coverage of all P_a states and all
// terminals, and the three terminal-partition conditions.
PartitionDiagnostics validate_partitions(const Partitions& parts, int trials,
                                         std::uint64_t seed);

}  // namespace aivat

#endif  // AIVAT_PARTITIONS_HPP

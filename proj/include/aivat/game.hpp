#ifndef AIVAT_GAME_HPP
#define AIVAT_GAME_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aivat/types.hpp"

namespace aivat {

enum class GameId { kuhn, leduc };

std::string game_id_name(GameId id);
GameId parse_game_id(const std::string& name);

// Immutable description of a game variant. Kuhn: 3-card deck, ante 1, one
// round with a 1-chip bet and a single raise. Leduc: 6-card deck (3 ranks x 2
// suits), ante 1, two rounds with 2- and 4-chip bets, at most two raises per
// round. The seat-extended form adds a root 50/50 chance node assigning agent
// x to seat 0 or 1; utilities are then reported per agent.
struct GameDescriptor {
  GameId id = GameId::kuhn;
  bool seat_extended = false;

  int deck_size() const { return id == GameId::kuhn ? 3 : 6; }
  int num_ranks() const { return 3; }
  int num_rounds() const { return id == GameId::kuhn ? 1 : 2; }
  int ante() const { return 1; }
  int bet_size(int round) const {
    if (id == GameId::kuhn) return 1;
    return round == 0 ? 2 : 4;
  }
  int max_raises([[maybe_unused]] int round) const {
    return id == GameId::kuhn ? 1 : 2;
  }
  bool has_board() const { return id == GameId::leduc; }
  // Largest possible single-player commitment, bounding every utility.
  int max_pot() const { return id == GameId::kuhn ? 2 : 13; }

  int card_rank(Card c) const { return id == GameId::kuhn ? c : c / 2; }
  std::string card_name(Card c) const;
  Card parse_card(const std::string& s) const;

  std::string action_name(const Action& a) const;
  Action parse_action(const std::string& s) const;

  friend bool operator==(const GameDescriptor&, const GameDescriptor&) =
      default;
};

GameDescriptor make_game(GameId id);
GameDescriptor extend_with_seat_chance(const GameDescriptor& game);

// A game state is a history of actions from the root. States are immutable
// values: apply() returns the successor and leaves the input untouched.
class GameState {
 public:
  explicit GameState(const GameDescriptor& game);

  const GameDescriptor& game() const { return *game_; }
  const std::vector<Action>& history() const { return history_; }

  bool is_terminal() const { return phase_ == Phase::kTerminal; }
  bool is_chance() const {
    return !is_terminal() && acting_seat_ == kChance;
  }
  // Acting player id: agent id in seat-extended games, seat otherwise.
  Player acting_player() const;
  // Seat currently acting (kChance for chance nodes). Valid when non-terminal.
  int acting_seat() const { return acting_seat_; }

  std::vector<Action> legal_actions() const;
  GameState apply(const Action& a) const;
  bool is_legal(const Action& a) const;

  // Chance outcome distribution, aligned with legal_actions().
  std::vector<double> chance_probs() const;

  // Terminal utility for a player id (agent id when seat-extended).
  double utility(Player p) const;

  // Information-set key of the acting player:
  //   <seat>|<private cards>|<board>|<betting>
  // with 1-based seats, betting letters k/c/r/f and '/' between rounds.
  std::string infoset_key() const;

  // Space-separated action names from the root; diagnostics only.
  std::string history_string() const;

  // The next public token appended by `a` from this state: "s1"/"s2" for the
  // seat outcome, "d?" for a private deal, "b<card>" for the board, or the
  // betting letter. Used to build partition keys.
  std::string public_token(const Action& a) const;

  // Seat occupied by agent x (0-based); only meaningful after the seat
  // outcome of a seat-extended game. Plain games fix x in seat 0.
  int seat_of_x() const { return seat_of_x_; }
  int commitment(int seat) const { return commitment_[seat]; }
  int pot() const { return commitment_[0] + commitment_[1]; }
  Card private_card(int seat) const { return private_[seat]; }
  Card board_card() const { return board_; }

 private:
  enum class Phase : std::uint8_t {
    kSeat,
    kDealPair,
    kDealSeat0,
    kDealSeat1,
    kBetting,
    kBoard,
    kTerminal,
  };

  bool card_in_use(Card c) const;
  void enter_betting_round(int round);
  void finish_round();
  void apply_in_place(const Action& a);
  double seat_utility(int seat) const;
  // Winning seat at showdown, or kNoShowdownWinner on a tie.
  int showdown_winner() const;

  static constexpr int kNoShowdownWinner = -3;

  const GameDescriptor* game_;
  std::vector<Action> history_;
  Phase phase_;
  int acting_seat_ = kChance;
  int seat_of_x_ = 0;
  std::array<Card, 2> private_ = {kNoCard, kNoCard};
  Card board_ = kNoCard;
  int round_ = 0;
  int raises_this_round_ = 0;
  int checks_this_round_ = 0;
  std::array<int, 2> commitment_ = {0, 0};
  int folded_seat_ = -1;
  std::string betting_;  // k/c/r/f letters with '/' between rounds
};

// Free-function surface mirroring the descriptor/state operations.
GameState initial_state(const GameDescriptor& game);
std::vector<Action> legal_actions(const GameState& s);
GameState apply_action(const GameState& s, const Action& a);

struct StateInfo {
  bool is_terminal = false;
  Player acting_player = kTerminalPlayer;
  std::array<double, 2> utility = {0.0, 0.0};  // terminal only
  std::string infoset_key;                     // non-terminal decisions only
};
StateInfo state_info(const GameState& s);

// Chance outcome distribution as (action, probability) pairs.
std::vector<std::pair<Action, double>> chance_distribution(const GameState& s);

}  // namespace aivat

#endif  // AIVAT_GAME_HPP

#include "aivat/game.hpp"

#include <algorithm>
#include <sstream>

namespace aivat {

namespace {
constexpr const char* kRankLetters = "JQK";
}  // namespace

std::string game_id_name(GameId id) {
  return id == GameId::kuhn ? "kuhn" : "leduc";
}

GameId parse_game_id(const std::string& name) {
  if (name == "kuhn") return GameId::kuhn;
  if (name == "leduc") return GameId::leduc;
  throw UsageError("unknown game '" + name + "' (expected kuhn or leduc)");
}

std::string GameDescriptor::card_name(Card c) const {
  if (c < 0 || c >= deck_size()) throw UsageError("card index out of range");
  if (id == GameId::kuhn) return std::string(1, kRankLetters[c]);
  std::string s(1, kRankLetters[c / 2]);
  s += (c % 2 == 0) ? 's' : 'h';
  return s;
}

Card GameDescriptor::parse_card(const std::string& s) const {
  for (Card c = 0; c < deck_size(); ++c) {
    if (card_name(c) == s) return c;
  }
  throw UsageError("unknown card '" + s + "'");
}

std::string GameDescriptor::action_name(const Action& a) const {
  switch (a.kind) {
    case ActionKind::kFold:
      return "f";
    case ActionKind::kCall:
      return "c";
    case ActionKind::kRaise:
      return "r";
    case ActionKind::kSeat:
      return a.a == 0 ? "s1" : "s2";
    case ActionKind::kDealCard:
      return card_name(a.a);
    case ActionKind::kDealPair:
      return card_name(a.a) + card_name(a.b);
  }
  throw UsageError("bad action kind");
}

Action GameDescriptor::parse_action(const std::string& s) const {
  if (s == "f") return fold_action();
  if (s == "c") return call_action();
  if (s == "r") return raise_action();
  if (s == "s1") return seat_action(0);
  if (s == "s2") return seat_action(1);
  if (id == GameId::kuhn && s.size() == 2) {
    return deal_pair_action(parse_card(s.substr(0, 1)), parse_card(s.substr(1)));
  }
  return deal_action(parse_card(s));
}

GameDescriptor make_game(GameId id) { return GameDescriptor{id, false}; }

GameDescriptor extend_with_seat_chance(const GameDescriptor& game) {
  GameDescriptor g = game;
  g.seat_extended = true;
  return g;
}

GameState::GameState(const GameDescriptor& game) : game_(&game) {
  commitment_ = {game.ante(), game.ante()};
  if (game.seat_extended) {
    phase_ = Phase::kSeat;
  } else {
    phase_ = game.id == GameId::kuhn ? Phase::kDealPair : Phase::kDealSeat0;
  }
  acting_seat_ = kChance;
}

Player GameState::acting_player() const {
  if (is_terminal()) return kTerminalPlayer;
  if (acting_seat_ == kChance) return kChance;
  if (!game_->seat_extended) return acting_seat_;
  return acting_seat_ == seat_of_x_ ? kPlayerX : kPlayerY;
}

bool GameState::card_in_use(Card c) const {
  return c == private_[0] || c == private_[1] || c == board_;
}

std::vector<Action> GameState::legal_actions() const {
  std::vector<Action> out;
  switch (phase_) {
    case Phase::kSeat:
      out = {seat_action(0), seat_action(1)};
      break;
    case Phase::kDealPair:
      for (Card c1 = 0; c1 < game_->deck_size(); ++c1) {
        for (Card c2 = 0; c2 < game_->deck_size(); ++c2) {
          if (c1 != c2) out.push_back(deal_pair_action(c1, c2));
        }
      }
      break;
    case Phase::kDealSeat0:
    case Phase::kDealSeat1:
    case Phase::kBoard:
      for (Card c = 0; c < game_->deck_size(); ++c) {
        if (!card_in_use(c)) out.push_back(deal_action(c));
      }
      break;
    case Phase::kBetting: {
      const int other = 1 - acting_seat_;
      if (commitment_[other] > commitment_[acting_seat_]) {
        out.push_back(fold_action());
      }
      out.push_back(call_action());
      if (raises_this_round_ < game_->max_raises(round_)) {
        out.push_back(raise_action());
      }
      break;
    }
    case Phase::kTerminal:
      throw UsageError("legal_actions called on a terminal state");
  }
  return out;
}

bool GameState::is_legal(const Action& a) const {
  if (is_terminal()) return false;
  const auto actions = legal_actions();
  return std::find(actions.begin(), actions.end(), a) != actions.end();
}

std::vector<double> GameState::chance_probs() const {
  if (!is_chance()) {
    throw UsageError("chance_probs called on a non-chance state");
  }
  if (phase_ == Phase::kSeat) return {0.5, 0.5};
  const auto n = legal_actions().size();
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void GameState::enter_betting_round(int round) {
  round_ = round;
  raises_this_round_ = 0;
  checks_this_round_ = 0;
  phase_ = Phase::kBetting;
  acting_seat_ = 0;
  if (round > 0) betting_ += '/';
}

void GameState::finish_round() {
  if (round_ + 1 >= game_->num_rounds()) {
    phase_ = Phase::kTerminal;
    acting_seat_ = kChance;
  } else {
    phase_ = Phase::kBoard;
    acting_seat_ = kChance;
  }
}

void GameState::apply_in_place(const Action& a) {
  switch (phase_) {
    case Phase::kSeat:
      seat_of_x_ = a.a;
      phase_ = game_->id == GameId::kuhn ? Phase::kDealPair : Phase::kDealSeat0;
      acting_seat_ = kChance;
      break;
    case Phase::kDealPair:
      private_[0] = a.a;
      private_[1] = a.b;
      enter_betting_round(0);
      break;
    case Phase::kDealSeat0:
      private_[0] = a.a;
      phase_ = Phase::kDealSeat1;
      break;
    case Phase::kDealSeat1:
      private_[1] = a.a;
      enter_betting_round(0);
      break;
    case Phase::kBoard:
      board_ = a.a;
      enter_betting_round(round_ + 1);
      break;
    case Phase::kBetting: {
      const int me = acting_seat_;
      const int other = 1 - me;
      if (a.kind == ActionKind::kFold) {
        betting_ += 'f';
        folded_seat_ = me;
        phase_ = Phase::kTerminal;
        acting_seat_ = kChance;
      } else if (a.kind == ActionKind::kCall) {
        if (commitment_[other] > commitment_[me]) {
          betting_ += 'c';
          commitment_[me] = commitment_[other];
          finish_round();
        } else {
          betting_ += 'k';
          ++checks_this_round_;
          if (checks_this_round_ == 2) {
            finish_round();
          } else {
            acting_seat_ = other;
          }
        }
      } else {
        betting_ += 'r';
        commitment_[me] = commitment_[other] + game_->bet_size(round_);
        ++raises_this_round_;
        acting_seat_ = other;
      }
      break;
    }
    case Phase::kTerminal:
      break;  // unreachable; legality is checked by apply()
  }
  history_.push_back(a);
}

std::string GameState::history_string() const {
  std::string out;
  for (const Action& a : history_) {
    if (!out.empty()) out += ' ';
    out += game_->action_name(a);
  }
  return out;
}

GameState GameState::apply(const Action& a) const {
  if (is_terminal()) {
    throw UsageError("apply on terminal state (history '" + history_string() +
                     "')");
  }
  if (!is_legal(a)) {
    throw UsageError("illegal action '" + game_->action_name(a) +
                     "' at state '" + history_string() + "'");
  }
  GameState next = *this;
  next.apply_in_place(a);
  return next;
}

int GameState::showdown_winner() const {
  if (game_->id == GameId::kuhn) {
    return private_[0] > private_[1] ? 0 : 1;
  }
  const int r0 = game_->card_rank(private_[0]);
  const int r1 = game_->card_rank(private_[1]);
  const int rb = game_->card_rank(board_);
  const bool pair0 = r0 == rb;
  const bool pair1 = r1 == rb;
  if (pair0 != pair1) return pair0 ? 0 : 1;
  if (r0 == r1) return kNoShowdownWinner;
  return r0 > r1 ? 0 : 1;
}

double GameState::seat_utility(int seat) const {
  if (folded_seat_ >= 0) {
    return seat == folded_seat_ ? -commitment_[seat]
                                : +commitment_[folded_seat_];
  }
  const int w = showdown_winner();
  if (w == kNoShowdownWinner) return 0.0;
  return seat == w ? +commitment_[1 - w] : -commitment_[seat];
}

double GameState::utility(Player p) const {
  if (!is_terminal()) throw UsageError("utility on non-terminal state");
  const int seat = (p == kPlayerX) ? seat_of_x_ : 1 - seat_of_x_;
  return seat_utility(seat);
}

std::string GameState::infoset_key() const {
  if (is_terminal() || acting_seat_ == kChance) {
    throw UsageError("infoset_key on a non-decision state");
  }
  std::string key;
  key += static_cast<char>('1' + acting_seat_);
  key += '|';
  key += game_->card_name(private_[acting_seat_]);
  key += '|';
  if (board_ != kNoCard) key += game_->card_name(board_);
  key += '|';
  key += betting_;
  return key;
}

std::string GameState::public_token(const Action& a) const {
  switch (phase_) {
    case Phase::kSeat:
      return a.a == 0 ? "s1" : "s2";
    case Phase::kDealPair:
    case Phase::kDealSeat0:
    case Phase::kDealSeat1:
      return "d?";
    case Phase::kBoard:
      return "b" + game_->card_name(a.a);
    case Phase::kBetting:
      if (a.kind == ActionKind::kFold) return "f";
      if (a.kind == ActionKind::kRaise) return "r";
      return commitment_[1 - acting_seat_] > commitment_[acting_seat_] ? "c"
                                                                       : "k";
    case Phase::kTerminal:
      break;
  }
  throw UsageError("public_token on terminal state");
}

GameState initial_state(const GameDescriptor& game) { return GameState(game); }

std::vector<Action> legal_actions(const GameState& s) {
  return s.legal_actions();
}

GameState apply_action(const GameState& s, const Action& a) {
  return s.apply(a);
}

StateInfo state_info(const GameState& s) {
  StateInfo info;
  info.is_terminal = s.is_terminal();
  if (info.is_terminal) {
    info.acting_player = kTerminalPlayer;
    info.utility = {s.utility(kPlayerX), s.utility(kPlayerY)};
  } else {
    info.acting_player = s.acting_player();
    if (!s.is_chance()) info.infoset_key = s.infoset_key();
  }
  return info;
}

std::vector<std::pair<Action, double>> chance_distribution(
    const GameState& s) {
  const auto actions = s.legal_actions();
  const auto probs = s.chance_probs();
  std::vector<std::pair<Action, double>> out;
  out.reserve(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    out.emplace_back(actions[i], probs[i]);
  }
  return out;
}

}  // namespace aivat

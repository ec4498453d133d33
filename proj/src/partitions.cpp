#include "aivat/partitions.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>

namespace aivat {

PaSpec PaSpec::parse(const std::string& tag) {
  PaSpec pa;
  if (tag.empty() || tag[0] != 'c') {
    throw UsageError("bad P_a spec '" + tag + "' (expected c, cx, cy, or cxy)");
  }
  for (std::size_t i = 1; i < tag.size(); ++i) {
    if (tag[i] == 'x' && !pa.knows_x) {
      pa.knows_x = true;
    } else if (tag[i] == 'y' && !pa.knows_y) {
      pa.knows_y = true;
    } else {
      throw UsageError("bad P_a spec '" + tag +
                       "' (expected c, cx, cy, or cxy)");
    }
  }
  return pa;
}

namespace {

// Private cards of the opponents P_o visible in this state, e.g. "y=Qh".
std::string po_cards(const GameState& s, const PaSpec& pa) {
  std::string out;
  const auto& game = s.game();
  for (Player p : {kPlayerX, kPlayerY}) {
    if (pa.contains(p)) continue;
    const int seat = p == kPlayerX ? s.seat_of_x() : 1 - s.seat_of_x();
    const Card c = s.private_card(seat);
    if (c == kNoCard) continue;
    if (!out.empty()) out += ',';
    out += (p == kPlayerX ? "x=" : "y=");
    out += game.card_name(c);
  }
  return out;
}

std::string make_key(const PaSpec& pa, const GameState& s,
                     const std::string& pub) {
  std::string key;
  if (s.is_terminal()) key += "W!";
  key += pa.tag();
  key += '|';
  key += pub;
  key += '|';
  key += po_cards(s, pa);
  return key;
}

}  // namespace

Partitions::Partitions(GameDescriptor game, PaSpec pa)
    : game_(game), pa_(pa) {
  std::function<void(const GameState&, const std::string&, int)> walk =
      [&](const GameState& s, const std::string& pub, int last_h_part) {
        const std::string key = make_key(pa_, s, pub);
        if (s.is_terminal()) {
          auto [it, inserted] = w_index_.try_emplace(
              key, static_cast<int>(w_parts_.size()));
          if (inserted) {
            w_parts_.push_back(WPart{key, {}, last_h_part});
          }
          w_parts_[it->second].members.push_back(s);
          return;
        }
        int here = last_h_part;
        if (pa_.contains(s.acting_player())) {
          auto [it, inserted] = h_index_.try_emplace(
              key, static_cast<int>(h_parts_.size()));
          if (inserted) {
            h_parts_.push_back(HPart{key, pub, {}, {}, s.is_chance()});
          }
          h_parts_[it->second].members.push_back(s);
          here = it->second;
        }
        for (const Action& a : s.legal_actions()) {
          std::string next_pub = pub;
          if (!next_pub.empty()) next_pub += '.';
          next_pub += s.public_token(a);
          walk(s.apply(a), next_pub, here);
        }
      };
  walk(initial_state(game_), "", -1);

  for (HPart& part : h_parts_) {
    std::set<Action> actions;
    for (const GameState& h : part.members) {
      for (const Action& a : h.legal_actions()) actions.insert(a);
    }
    part.actions.assign(actions.begin(), actions.end());
  }
}

Partitions::Partitions(GameDescriptor game, PaSpec pa,
                       std::vector<HPart> h_parts, std::vector<WPart> w_parts)
    : game_(game),
      pa_(pa),
      h_parts_(std::move(h_parts)),
      w_parts_(std::move(w_parts)) {
  for (std::size_t i = 0; i < h_parts_.size(); ++i) {
    h_index_[h_parts_[i].key] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < w_parts_.size(); ++i) {
    w_index_[w_parts_[i].key] = static_cast<int>(i);
  }
}

std::string Partitions::key_of(const GameState& s) const {
  PartKeyWalker walker(*this);
  for (const Action& a : s.history()) walker.advance(a);
  return walker.key();
}

int Partitions::h_index(const std::string& key) const {
  auto it = h_index_.find(key);
  return it == h_index_.end() ? -1 : it->second;
}

int Partitions::w_index(const std::string& key) const {
  auto it = w_index_.find(key);
  return it == w_index_.end() ? -1 : it->second;
}

int Partitions::h_part_of(const GameState& h) const {
  if (h.is_terminal() || !pa_.contains(h.acting_player())) return -1;
  return h_index(key_of(h));
}

int Partitions::w_part_of(const GameState& z) const {
  if (!z.is_terminal()) return -1;
  return w_index(key_of(z));
}

PathDecomposition Partitions::decompose_path(const GameState& z) const {
  if (!z.is_terminal()) {
    throw UsageError("decompose_path requires a terminal state");
  }
  PathDecomposition out;
  PartKeyWalker walker(*this);
  for (const Action& a : z.history()) {
    const GameState& here = walker.state();
    if (pa_.contains(here.acting_player())) {
      const int idx = h_index(walker.key());
      if (idx < 0) {
        throw DataCorruptionError("state '" + here.history_string() +
                                  "' missing from the H partition");
      }
      out.steps.push_back(PathStep{idx, here, a});
    }
    walker.advance(a);
  }
  out.w_part = w_index(walker.key());
  if (out.w_part < 0) {
    throw DataCorruptionError("terminal '" + z.history_string() +
                              "' missing from the W partition");
  }
  return out;
}

void Partitions::dump(std::ostream& out) const {
  for (const HPart& part : h_parts_) {
    out << part.key << " actions=";
    for (std::size_t i = 0; i < part.actions.size(); ++i) {
      if (i > 0) out << ',';
      out << game_.action_name(part.actions[i]);
    }
    out << "\n";
    for (const GameState& h : part.members) {
      out << "  " << h.history_string() << "\n";
    }
  }
  for (const WPart& part : w_parts_) {
    out << part.key << " h_part="
        << (part.h_part >= 0 ? h_parts_[part.h_part].key : "-") << "\n";
    for (const GameState& z : part.members) {
      out << "  " << z.history_string() << "\n";
    }
  }
}

PartKeyWalker::PartKeyWalker(const Partitions& parts)
    : parts_(&parts), state_(initial_state(parts.game())) {
  rebuild_key();
}

void PartKeyWalker::reset() {
  state_ = initial_state(parts_->game());
  pub_.clear();
  rebuild_key();
}

void PartKeyWalker::advance(const Action& a) {
  if (!pub_.empty()) pub_ += '.';
  pub_ += state_.public_token(a);
  state_ = state_.apply(a);
  rebuild_key();
}

void PartKeyWalker::rebuild_key() {
  key_ = make_key(parts_->pa(), state_, pub_);
}

namespace {

double po_reach(const GameState& s, const PaSpec& pa, const Profile& profile) {
  double r = 1.0;
  GameState cur(s.game());
  for (const Action& a : s.history()) {
    if (!cur.is_terminal() && !cur.is_chance() &&
        !pa.contains(cur.acting_player())) {
      r *= profile.action_prob(cur, a);
    }
    cur = cur.apply(a);
  }
  return r;
}

bool has_pa_action(const GameState& z, const PaSpec& pa) {
  GameState cur(z.game());
  bool found = false;
  for (const Action& a : z.history()) {
    if (pa.contains(cur.acting_player())) found = true;
    cur = cur.apply(a);
  }
  return found;
}

}  // namespace

PartitionDiagnostics validate_partitions(const Partitions& parts, int trials,
                                         std::uint64_t seed) {
  PartitionDiagnostics diag;
  auto fail = [&](const std::string& msg) {
    diag.ok = false;
    if (diag.violations.size() < 50) diag.violations.push_back(msg);
  };

  const GameDescriptor& game = parts.game();
  const PaSpec& pa = parts.pa();
  Rng rng(seed);

  // Property 1 (and the first terminal condition): every opponent reaches
  // all members of a part with identical probability, for any strategy.
  for (int t = 0; t < trials; ++t) {
    StrategyTable s0 = random_strategy(game, rng);
    StrategyTable s1 = random_strategy(game, rng);
    Profile profile(&s0, &s1);
    for (const HPart& part : parts.h_parts()) {
      if (part.members.empty()) {
        fail("empty part " + part.key);
        continue;
      }
      const double first = po_reach(part.members.front(), pa, profile);
      for (const GameState& h : part.members) {
        if (std::abs(po_reach(h, pa, profile) - first) > 1e-12) {
          fail("pi_{P_o} differs inside part " + part.key);
          break;
        }
      }
    }
    for (const WPart& part : parts.w_parts()) {
      if (part.members.empty()) {
        fail("empty terminal part " + part.key);
        continue;
      }
      const double first = po_reach(part.members.front(), pa, profile);
      for (const GameState& z : part.members) {
        if (std::abs(po_reach(z, pa, profile) - first) > 1e-12) {
          fail("pi_{P_o} differs inside terminal part " + part.key);
          break;
        }
      }
    }
  }

  // Property 2: members share their depth and are distinct, so none is a
  // proper prefix of another.
  for (const HPart& part : parts.h_parts()) {
    std::set<std::string> seen;
    if (part.members.empty()) continue;
    for (const GameState& h : part.members) {
      if (h.history().size() != part.members.front().history().size()) {
        fail("member depths differ inside part " + part.key);
      }
      if (!seen.insert(h.history_string()).second) {
        fail("duplicate member inside part " + part.key);
      }
    }
  }

  // Property 3: A(H) is exactly the union of member action sets.
  for (const HPart& part : parts.h_parts()) {
    std::set<Action> expect;
    for (const GameState& h : part.members) {
      for (const Action& a : h.legal_actions()) expect.insert(a);
    }
    if (std::vector<Action>(expect.begin(), expect.end()) != part.actions) {
      fail("A(H) mismatch for part " + part.key);
    }
  }

  // Coverage: every P_a-acted state in exactly one part, every terminal in
  // exactly one terminal part.
  std::size_t pa_states = 0, terminals = 0;
  for_each_state(game, [&](const GameState& s) {
    if (s.is_terminal()) {
      ++terminals;
    } else if (pa.contains(s.acting_player())) {
      ++pa_states;
    }
  });
  std::size_t h_members = 0, w_members = 0;
  for (const HPart& part : parts.h_parts()) h_members += part.members.size();
  for (const WPart& part : parts.w_parts()) w_members += part.members.size();
  if (h_members != pa_states) {
    fail("H partition covers " + std::to_string(h_members) + " of " +
         std::to_string(pa_states) + " P_a states");
  }
  if (w_members != terminals) {
    fail("W partition covers " + std::to_string(w_members) + " of " +
         std::to_string(terminals) + " terminals");
  }

  // Terminal conditions 2 and 3: the P_a-acted flag agrees inside each part
  // and the longest P_a prefixes share one H part.
  for (const WPart& part : parts.w_parts()) {
    for (const GameState& z : part.members) {
      if (has_pa_action(z, pa) != (part.h_part >= 0)) {
        fail("P_a-acted flag differs inside terminal part " + part.key);
      }
      if (part.h_part < 0) continue;
      GameState cur(game);
      int last = -1;
      GameState last_state(game);
      for (const Action& a : z.history()) {
        if (!cur.is_terminal() && pa.contains(cur.acting_player())) {
          last_state = cur;
        }
        cur = cur.apply(a);
      }
      last = parts.h_part_of(last_state);
      if (last != part.h_part) {
        fail("longest P_a prefix of '" + z.history_string() +
             "' is outside the part's H part");
      }
    }
  }

  return diag;
}

}  // namespace aivat

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "aivat/game.hpp"
#include "aivat/strategy.hpp"

using namespace aivat;

namespace {

// Independent Kuhn rules table: utility for seat 0 given both cards and the
// betting string. Kept separate from the engine on purpose.
double kuhn_oracle_u0(Card c0, Card c1, const std::string& betting) {
  const double high = c0 > c1 ? 1.0 : -1.0;
  if (betting == "kk") return high;
  if (betting == "krf") return -1.0;
  if (betting == "krc") return 2.0 * high;
  if (betting == "rf") return 1.0;
  if (betting == "rc") return 2.0 * high;
  FAIL("unexpected kuhn betting string ", betting);
  return 0.0;
}

// Independent Leduc betting oracle: legal letters given the current round's
// action string and the raise cap, derived from the written rules rather
// than from pot arithmetic.
std::string leduc_oracle_legal(const std::string& round_actions, int cap) {
  const bool facing =
      !round_actions.empty() && round_actions.back() == 'r';
  int raises = 0;
  for (char ch : round_actions) {
    if (ch == 'r') ++raises;
  }
  std::string legal;
  if (facing) legal += 'f';
  legal += facing ? 'c' : 'k';
  if (raises < cap) legal += 'r';
  return legal;
}

std::string letters_for(const GameState& s) {
  std::string out;
  for (const Action& a : s.legal_actions()) out += s.public_token(a)[0];
  return out;
}

GameState play(GameState s, const std::string& betting) {
  for (char ch : betting) {
    Action a = ch == 'f' ? fold_action()
                         : (ch == 'r' ? raise_action() : call_action());
    s = s.apply(a);
  }
  return s;
}

}  // namespace

TEST_CASE("initial states") {
  const auto kuhn = make_game(GameId::kuhn);
  const auto leduc = make_game(GameId::leduc);

  GameState ks = initial_state(kuhn);
  CHECK(ks.history().empty());
  CHECK(ks.acting_player() == kChance);

  GameState ls = initial_state(leduc);
  CHECK(ls.pot() == 2);  // both antes posted at the root

  const auto ext = extend_with_seat_chance(leduc);
  GameState es = initial_state(ext);
  const auto probs = es.chance_probs();
  REQUIRE(probs.size() == 2);
  CHECK(probs[0] == doctest::Approx(0.5));
  CHECK(probs[1] == doctest::Approx(0.5));
}

TEST_CASE("kuhn root deals are the 6 ordered pairs") {
  const auto kuhn = make_game(GameId::kuhn);
  GameState s = initial_state(kuhn);
  const auto deals = s.legal_actions();
  REQUIRE(deals.size() == 6);
  CHECK(deals[0] == deal_pair_action(0, 1));
  CHECK(deals[1] == deal_pair_action(0, 2));
  CHECK(deals[2] == deal_pair_action(1, 0));
  CHECK(deals[5] == deal_pair_action(2, 1));
  for (double p : s.chance_probs()) CHECK(p == doctest::Approx(1.0 / 6));
}

TEST_CASE("kuhn utilities match the rules oracle") {
  const auto kuhn = make_game(GameId::kuhn);
  for (Card c0 = 0; c0 < 3; ++c0) {
    for (Card c1 = 0; c1 < 3; ++c1) {
      if (c0 == c1) continue;
      GameState dealt = initial_state(kuhn).apply(deal_pair_action(c0, c1));
      for (const char* betting : {"kk", "krf", "krc", "rf", "rc"}) {
        GameState z = play(dealt, betting);
        REQUIRE(z.is_terminal());
        const double expect = kuhn_oracle_u0(c0, c1, betting);
        CHECK(z.utility(0) == doctest::Approx(expect));
        CHECK(z.utility(0) + z.utility(1) == 0.0);
      }
    }
  }
}

TEST_CASE("leduc legal actions match the betting oracle") {
  const auto leduc = make_game(GameId::leduc);
  GameState dealt =
      initial_state(leduc).apply(deal_action(0)).apply(deal_action(2));

  // Walk every round-1 betting prefix and compare.
  std::vector<std::string> prefixes = {"", "k", "r", "kr", "rr", "krr"};
  for (const auto& pre : prefixes) {
    GameState s = play(dealt, pre);
    REQUIRE(!s.is_terminal());
    REQUIRE(!s.is_chance());
    CHECK(letters_for(s) == leduc_oracle_legal(pre, 2));
  }

  // Raise cap reached: only fold and call remain.
  GameState capped = play(dealt, "rr");
  const auto actions = capped.legal_actions();
  REQUIRE(actions.size() == 2);
  CHECK(actions[0] == fold_action());
  CHECK(actions[1] == call_action());
}

TEST_CASE("leduc board node reveals one of 4 remaining cards") {
  const auto leduc = make_game(GameId::leduc);
  GameState s = play(
      initial_state(leduc).apply(deal_action(0)).apply(deal_action(2)), "kk");
  REQUIRE(s.is_chance());
  const auto outcomes = s.legal_actions();
  CHECK(outcomes.size() == 4);
  for (double p : s.chance_probs()) CHECK(p == doctest::Approx(0.25));
  for (const Action& a : outcomes) {
    CHECK(a.a != 0);
    CHECK(a.a != 2);
  }
}

TEST_CASE("leduc showdown pair beats high card, pot tracked") {
  const auto leduc = make_game(GameId::leduc);
  // Seat 0 holds Js, seat 1 holds Kh; board Jh pairs seat 0.
  // Betting: r c | board | r c -> commitments 1+2+4 = 7? ante 1 + 2 + 4.
  GameState s = initial_state(leduc).apply(deal_action(0)).apply(deal_action(5));
  s = play(s, "rc");
  s = s.apply(deal_action(1));
  s = play(s, "rc");
  REQUIRE(s.is_terminal());
  CHECK(s.commitment(0) == 7);
  CHECK(s.utility(0) == doctest::Approx(7.0));
  CHECK(s.utility(1) == doctest::Approx(-7.0));

  // Pair vs no pair with pot 6 each: check k r c round 1, raise-call round 2.
  GameState t = initial_state(leduc).apply(deal_action(2)).apply(deal_action(4));
  t = play(t, "krc");  // commitments 3 each
  t = t.apply(deal_action(3));
  t = play(t, "kk");
  REQUIRE(t.is_terminal());
  CHECK(t.commitment(0) == 3);
  // Qs pairs the Qh board and beats the king.
  CHECK(t.utility(0) == doctest::Approx(3.0));

  // Tie: both players hold jacks, board is a queen.
  GameState tie =
      initial_state(leduc).apply(deal_action(0)).apply(deal_action(1));
  tie = play(tie, "kk");
  tie = tie.apply(deal_action(2));
  tie = play(tie, "kk");
  REQUIRE(tie.is_terminal());
  CHECK(tie.utility(0) == 0.0);
  CHECK(tie.utility(1) == 0.0);
}

TEST_CASE("fold loses the folder's committed chips") {
  const auto leduc = make_game(GameId::leduc);
  GameState s = initial_state(leduc).apply(deal_action(0)).apply(deal_action(2));
  s = play(s, "rf");  // seat 1 folds facing a bet, having only the ante in
  REQUIRE(s.is_terminal());
  CHECK(s.utility(0) == doctest::Approx(1.0));
  CHECK(s.utility(1) == doctest::Approx(-1.0));
}

TEST_CASE("terminal states reject further actions") {
  const auto kuhn = make_game(GameId::kuhn);
  GameState z = play(initial_state(kuhn).apply(deal_pair_action(0, 1)), "kk");
  REQUIRE(z.is_terminal());
  CHECK_THROWS_AS(z.apply(call_action()), UsageError);
  CHECK_THROWS_AS(z.legal_actions(), UsageError);
}

TEST_CASE("infoset keys hide the opponent card") {
  const auto leduc = make_game(GameId::leduc);
  GameState a = initial_state(leduc).apply(deal_action(0)).apply(deal_action(2));
  GameState b = initial_state(leduc).apply(deal_action(0)).apply(deal_action(4));
  CHECK(a.infoset_key() == b.infoset_key());
  CHECK(a.infoset_key() == "1|Js||");

  GameState c = play(a, "k");
  GameState d = play(b, "k");
  CHECK(c.infoset_key() != d.infoset_key());  // acting player sees own card
  CHECK(c.infoset_key() == "2|Qs||k");

  GameState e = play(a, "kk").apply(deal_action(5));
  CHECK(e.infoset_key() == "1|Js|Kh|kk/");
}

TEST_CASE("zero-sum at every terminal of every game") {
  for (GameId id : {GameId::kuhn, GameId::leduc}) {
    for (const bool extended : {false, true}) {
      GameDescriptor g = make_game(id);
      if (extended) g = extend_with_seat_chance(g);
      for_each_state(g, [](const GameState& s) {
        if (s.is_terminal()) {
          CHECK(s.utility(kPlayerX) + s.utility(kPlayerY) == 0.0);
        }
      });
    }
  }
}

TEST_CASE("apply and legal_actions are pure") {
  const auto leduc = make_game(GameId::leduc);
  GameState s = initial_state(leduc).apply(deal_action(1)).apply(deal_action(3));
  const auto before = s.history();
  GameState t = s.apply(raise_action());
  CHECK(s.history() == before);
  CHECK(s.legal_actions() == s.legal_actions());
  CHECK(t.history().size() == before.size() + 1);
}

TEST_CASE("reach vectors multiply to pi(h)") {
  const auto kuhn = make_game(GameId::kuhn);
  Rng rng(17);
  StrategyTable s0 = random_strategy(kuhn, rng);
  StrategyTable s1 = random_strategy(kuhn, rng);
  Profile profile(&s0, &s1);

  GameState root = initial_state(kuhn);
  ReachVector r = reach_vector(root, profile);
  CHECK(r.chance == 1.0);
  CHECK(r.player[0] == 1.0);
  CHECK(r.player[1] == 1.0);

  GameState dealt = root.apply(deal_pair_action(0, 1));
  r = reach_vector(dealt, profile);
  CHECK(r.chance == doctest::Approx(1.0 / 6));
  CHECK(r.player[0] == 1.0);
  CHECK(r.player[1] == 1.0);

  // Full product equals a direct recomputation along every history.
  for_each_state(kuhn, [&](const GameState& s) {
    ReachVector rv = reach_vector(s, profile);
    double direct = 1.0;
    GameState cur = root;
    for (const Action& a : s.history()) {
      direct *= profile.action_prob(cur, a);
      cur = cur.apply(a);
    }
    CHECK(rv.product() == doctest::Approx(direct).epsilon(1e-12));
    CHECK(rv.product() ==
          doctest::Approx(rv.product_for(true, true, false) * rv.player[1])
              .epsilon(1e-12));
  });
}

TEST_CASE("strategy distributions sum to one everywhere") {
  const auto leduc = make_game(GameId::leduc);
  Rng rng(3);
  StrategyTable s0 = random_strategy(leduc, rng);
  for (const auto& [key, dist] : s0.entries()) {
    double total = 0.0;
    for (const auto& [a, p] : dist) total += p;
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("enumeration reaches every terminal exactly once, probs sum to 1") {
  const auto kuhn = make_game(GameId::kuhn);
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    StrategyTable s0 = random_strategy(kuhn, rng);
    StrategyTable s1 = random_strategy(kuhn, rng);
    Profile profile(&s0, &s1);
    auto terms = enumerate_terminals(kuhn, profile);
    CHECK(terms.size() == 30);
    double total = 0.0;
    std::set<std::string> seen;
    for (const auto& [z, pi] : terms) {
      total += pi;
      CHECK(seen.insert(z.history_string()).second);
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }

  const auto leduc = make_game(GameId::leduc);
  for (int trial = 0; trial < 10; ++trial) {
    StrategyTable s0 = random_strategy(leduc, rng);
    StrategyTable s1 = random_strategy(leduc, rng);
    Profile profile(&s0, &s1);
    double total = 0.0;
    std::size_t count = 0;
    for_each_terminal(leduc, profile,
                      [&](const GameState&, const ReachVector& r) {
                        total += r.product();
                        ++count;
                      });
    CHECK(count == 5520);
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}

TEST_CASE("zero-probability action zeroes all terminals below it") {
  const auto leduc = make_game(GameId::leduc);
  StrategyTable s0 = make_fixed_agent(leduc, AgentKind::call_raise);
  StrategyTable s1 = make_fixed_agent(leduc, AgentKind::uniform_random);
  Profile profile(&s0, &s1);
  // call_raise never folds, so fold-by-seat-0 terminals have pi = 0.
  bool saw_seat0_fold = false;
  for_each_terminal(leduc, profile,
                    [&](const GameState& z, const ReachVector& r) {
                      const auto& h = z.history();
                      if (h.back().kind == ActionKind::kFold &&
                          z.utility(0) < 0) {
                        saw_seat0_fold = true;
                        CHECK(r.product() == 0.0);
                      }
                    });
  CHECK(saw_seat0_fold);
}

TEST_CASE("enumeration agrees with a large simulation") {
  const auto kuhn = make_game(GameId::kuhn);
  StrategyTable u = make_fixed_agent(kuhn, AgentKind::uniform_random);
  Profile profile(&u, &u);
  const double exact = enumerated_value(kuhn, profile, 0);

  Rng rng(2024);
  const int n = 1000000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    GameState s = initial_state(kuhn);
    while (!s.is_terminal()) {
      const auto actions = s.legal_actions();
      const auto probs = profile.action_probs(s);
      double x = rng.next_double(), acc = 0.0;
      std::size_t pick = actions.size() - 1;
      for (std::size_t k = 0; k < actions.size(); ++k) {
        acc += probs[k];
        if (x < acc) {
          pick = k;
          break;
        }
      }
      s = s.apply(actions[pick]);
    }
    const double v = s.utility(0);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1));
  const double se = sd / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - exact) <= 3.0 * se);
}

TEST_CASE("seat extension doubles the tree and keeps symmetry") {
  const auto leduc = make_game(GameId::leduc);
  const auto ext = extend_with_seat_chance(leduc);

  std::size_t inner = 0, extended = 0;
  for_each_state(leduc, [&](const GameState& s) {
    if (s.is_terminal()) ++inner;
  });
  for_each_state(ext, [&](const GameState& s) {
    if (s.is_terminal()) ++extended;
  });
  CHECK(extended == 2 * inner);

  // Symmetric self-play has exact value 0 for agent x.
  Rng rng(5);
  StrategyTable shared = random_strategy(leduc, rng);
  Profile profile(&shared, &shared);
  CHECK(std::abs(enumerated_value(ext, profile, kPlayerX)) <= 1e-12);

  // The chance entry of a post-seat state includes the 0.5 factor.
  GameState s = initial_state(ext).apply(seat_action(1));
  ReachVector r = reach_vector(s, profile);
  CHECK(r.chance == doctest::Approx(0.5));
}

TEST_CASE("fixed agents") {
  const auto leduc = make_game(GameId::leduc);
  StrategyTable cr = make_fixed_agent(leduc, AgentKind::call_raise);
  StrategyTable ur = make_fixed_agent(leduc, AgentKind::uniform_random);

  GameState s = initial_state(leduc).apply(deal_action(0)).apply(deal_action(2));
  GameState facing = play(s, "r");  // fold, call, raise all legal
  auto probs = cr.action_probs(facing);
  REQUIRE(probs.size() == 3);
  CHECK(probs[0] == 0.0);
  CHECK(probs[1] == doctest::Approx(0.5));
  CHECK(probs[2] == doctest::Approx(0.5));

  auto uprobs = ur.action_probs(facing);
  for (double p : uprobs) CHECK(p == doctest::Approx(1.0 / 3));

  GameState capped = play(s, "rr");  // only fold and call
  auto cprobs = cr.action_probs(capped);
  REQUIRE(cprobs.size() == 2);
  CHECK(cprobs[0] == 0.0);
  CHECK(cprobs[1] == doctest::Approx(1.0));

  CHECK(missing_infosets(leduc, cr, 0).empty());
  CHECK(missing_infosets(leduc, cr, 1).empty());
}

TEST_CASE("strategy files round-trip losslessly") {
  const auto leduc = make_game(GameId::leduc);
  Rng rng(11);
  StrategyTable t = random_strategy(leduc, rng);
  const std::string path = "test_strategy_roundtrip.txt";
  t.save(path, leduc);
  StrategyTable back = StrategyTable::load(path, leduc);
  REQUIRE(back.size() == t.size());
  for (const auto& [key, dist] : t.entries()) {
    const auto* loaded = back.find(key);
    REQUIRE(loaded != nullptr);
    REQUIRE(loaded->size() == dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
      CHECK((*loaded)[i].first == dist[i].first);
      CHECK((*loaded)[i].second == dist[i].second);  // bit-exact
    }
  }
  std::remove(path.c_str());
}

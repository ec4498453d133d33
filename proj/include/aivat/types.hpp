#ifndef AIVAT_TYPES_HPP
#define AIVAT_TYPES_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aivat {

// Player ids. In the inner games 0/1 are the seats; in the seat-extended
// game 0/1 are the agents (x and y). Chance is its own id.
using Player = int;
inline constexpr Player kChance = -1;
inline constexpr Player kTerminalPlayer = -2;
inline constexpr Player kPlayerX = 0;
inline constexpr Player kPlayerY = 1;

// Cards are small indices into the game's deck, ordered by rank then suit.
// Kuhn: J=0, Q=1, K=2 (no suits). Leduc: Js=0, Jh=1, Qs=2, Qh=3, Ks=4, Kh=5.
using Card = int;
inline constexpr Card kNoCard = -1;

enum class ActionKind : std::uint8_t {
  kFold = 0,
  kCall = 1,   // call when facing a bet, check otherwise
  kRaise = 2,
  kSeat = 3,   // seat-assignment chance outcome, payload = seat of agent x
  kDealCard = 4,  // single-card chance outcome (private or board)
  kDealPair = 5,  // composite two-card deal (Kuhn root), payloads = (p1, p2)
};

struct Action {
  ActionKind kind = ActionKind::kCall;
  std::int16_t a = 0;  // seat index, card, or first card of a pair
  std::int16_t b = 0;  // second card of a pair

  friend auto operator<=>(const Action&, const Action&) = default;
};

inline Action fold_action() { return {ActionKind::kFold, 0, 0}; }
inline Action call_action() { return {ActionKind::kCall, 0, 0}; }
inline Action raise_action() { return {ActionKind::kRaise, 0, 0}; }
inline Action seat_action(int x_seat) {
  return {ActionKind::kSeat, static_cast<std::int16_t>(x_seat), 0};
}
inline Action deal_action(Card c) {
  return {ActionKind::kDealCard, static_cast<std::int16_t>(c), 0};
}
inline Action deal_pair_action(Card c1, Card c2) {
  return {ActionKind::kDealPair, static_cast<std::int16_t>(c1),
          static_cast<std::int16_t>(c2)};
}

inline bool is_chance_action(const Action& a) {
  return a.kind == ActionKind::kSeat || a.kind == ActionKind::kDealCard ||
         a.kind == ActionKind::kDealPair;
}

// Which players' strategies the estimator knows. Chance is always a member.
struct PaSpec {
  bool knows_x = false;
  bool knows_y = false;

  bool contains(Player p) const {
    if (p == kChance) return true;
    return p == kPlayerX ? knows_x : knows_y;
  }
  // Canonical tag used in part keys and on the command line.
  std::string tag() const {
    std::string t = "c";
    if (knows_x) t += 'x';
    if (knows_y) t += 'y';
    return t;
  }
  static PaSpec parse(const std::string& tag);

  friend bool operator==(const PaSpec&, const PaSpec&) = default;
};

// Thrown on bad CLI arguments or API misuse (exit code 1).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a log, file, or episode fails consistency checks (exit code 2).
class DataCorruptionError : public std::runtime_error {
 public:
  explicit DataCorruptionError(const std::string& what)
      : std::runtime_error(what) {}
};

// Deterministic, platform-stable RNG (splitmix64 seeding + xoshiro256**).
// std::uniform_real_distribution is implementation-defined, so uniforms are
// produced directly from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { seed_state(seed); }
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = stream + 1;
    seed_state(seed * 0x9e3779b97f4a7c15ULL + splitmix(s));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int next_below(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  void seed_state(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix(x);
  }
  std::uint64_t s_[4];
};

// Compensated (Kahan) accumulator for summing correction terms in a stable,
// order-specified way.
class KahanSum {
 public:
  void add(double v) {
    double y = v - c_;
    double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace aivat

#endif  // AIVAT_TYPES_HPP

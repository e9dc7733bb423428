#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "canonical_braid.hpp"

namespace braidnt {

struct UndefinedForZeroLength : std::domain_error {
  using std::domain_error::domain_error;
};

// p(x) = iota(x) ^ d(phi(x))
inline SimpleBraid preferred_prefix(const CanonicalBraid& x) {
  if (x.factors().empty()) return SimpleBraid::identity(x.strands());
  return meet(initial_factor(x), complement(final_factor(x)));
}

// (s(x), p(x))
inline std::pair<CanonicalBraid, SimpleBraid> cyclic_sliding(const CanonicalBraid& x) {
  SimpleBraid p = preferred_prefix(x);
  if (p.is_identity()) return {x, p};
  return {conjugate(x, p), p};
}

struct SlidingStep {
  CanonicalBraid element;
  SimpleBraid prefix;
};

struct SlidingTrajectory {
  std::vector<SlidingStep> tail;
  std::vector<SlidingStep> circuit;
  int t = 0;  // slidings performed before the first repetition
};

inline SlidingTrajectory sliding_trajectory(const CanonicalBraid& x) {
  std::unordered_map<CanonicalBraid, std::size_t, CanonicalBraidHash> seen;
  std::vector<SlidingStep> seq;
  CanonicalBraid cur = x;
  std::size_t entry = 0;
  for (;;) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      entry = it->second;
      break;
    }
    seen.emplace(cur, seq.size());
    auto [next, p] = cyclic_sliding(cur);
    seq.push_back({std::move(cur), p});
    cur = std::move(next);
  }
  SlidingTrajectory tr;
  tr.t = static_cast<int>(seq.size());
  tr.tail.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(entry));
  tr.circuit.assign(seq.begin() + static_cast<std::ptrdiff_t>(entry), seq.end());
  return tr;
}

inline bool in_sliding_circuit(const CanonicalBraid& x) { return sliding_trajectory(x).tail.empty(); }

// P(y): product of the preferred prefixes met before the first repetition.
inline CanonicalBraid preferred_conjugator(const CanonicalBraid& y) {
  SlidingTrajectory tr = sliding_trajectory(y);
  CanonicalBraid c = CanonicalBraid::identity(y.strands());
  for (const auto* part : {&tr.tail, &tr.circuit})
    for (const SlidingStep& s : *part)
      if (!s.prefix.is_identity()) c = right_multiply(c, s.prefix);
  return c;
}

struct Rigidity {
  int k = 0;
  int r = 0;
  double value() const { return static_cast<double>(k) / r; }
  friend bool operator==(const Rigidity&, const Rigidity&) = default;
};

// Largest k such that NF(x^2) starts Delta^{2p} tau^p(x_1) ... tau^p(x_k).
inline Rigidity rigidity(const CanonicalBraid& x) {
  if (x.factors().empty()) throw UndefinedForZeroLength("rigidity of a power of Delta is undefined");
  CanonicalBraid sq = multiply(x, x);
  Rigidity out{0, x.canonical_length()};
  if (sq.inf() != 2 * x.inf()) return out;
  while (out.k < out.r && out.k < sq.canonical_length() &&
         sq.factors()[out.k] == tau(x.factors()[out.k], x.inf()))
    ++out.k;
  return out;
}

// x is rigid iff (x_r, tau^-p(x_1)) is left-weighted; Delta^p counts as rigid.
inline bool is_rigid(const CanonicalBraid& x) {
  if (x.factors().empty()) return true;
  return is_left_weighted(final_factor(x), initial_factor(x));
}

inline bool has_two_sided_rigidity(const CanonicalBraid& y) {
  CanonicalBraid sq = multiply(y, y);
  return sq.inf() == 2 * y.inf() && initial_factor(sq) == initial_factor(y) && sq.sup() == 2 * y.sup() &&
         final_factor(sq) == final_factor(y);
}

inline std::optional<int> power_with_two_sided_rigidity(const CanonicalBraid& y, int cap) {
  CanonicalBraid pw = y;
  for (int m = 1; m <= cap; ++m) {
    if (m > 1) pw = multiply(pw, y);
    if (has_two_sided_rigidity(pw)) return m;
  }
  return std::nullopt;
}

struct StabilizedResult {
  CanonicalBraid y;          // y = c^-1 x c
  CanonicalBraid conjugator;
  long long slidings = 0;
  int stages = 0;            // recursion steps actually run
};

// x_[0] = x, x_[i] = x_[i-1]^{P(x_[i-1]^i)}. The power x_[i-1]^i is kept up to
// date by conjugating it along with the base element, as slidings are applied.
// With early_exit, the recursion stops once x_[i] (i >= 1) has two-sided
// rigidity: then every power lies in a sliding circuit and P fixes all of them.
inline StabilizedResult stabilized_representative(const CanonicalBraid& x, int m, bool early_exit = false) {
  if (m < 1) throw std::invalid_argument("stabilized_representative needs m >= 1");
  StabilizedResult res{x, CanonicalBraid::identity(x.strands()), 0, 0};
  CanonicalBraid prev_power = CanonicalBraid::identity(x.strands());  // alpha^{i-1}
  for (int i = 1; i <= m; ++i) {
    CanonicalBraid pw = multiply(prev_power, res.y);
    std::unordered_set<CanonicalBraid, CanonicalBraidHash> seen;
    while (seen.insert(pw).second) {
      SimpleBraid p = preferred_prefix(pw);
      ++res.slidings;
      if (p.is_identity()) break;
      pw = conjugate(pw, p);
      res.y = conjugate(res.y, p);
      res.conjugator = right_multiply(res.conjugator, p);
    }
    prev_power = std::move(pw);
    res.stages = i;
    if (early_exit && has_two_sided_rigidity(res.y)) break;
  }
  return res;
}

}  // namespace braidnt

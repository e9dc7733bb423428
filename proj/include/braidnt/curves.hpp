#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "canonical_braid.hpp"

namespace braidnt {

// Puncture interval [lo, hi], 1-based, enclosing between 2 and n-1 punctures.
struct RoundCurve {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
  bool contains(int puncture) const { return lo <= puncture && puncture <= hi; }
  friend auto operator<=>(const RoundCurve&, const RoundCurve&) = default;
};

inline bool disjoint_or_nested(const RoundCurve& a, const RoundCurve& b) {
  if (a.hi < b.lo || b.hi < a.lo) return true;
  return (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
}

inline bool strictly_inside(const RoundCurve& inner, const RoundCurve& outer) {
  return inner != outer && outer.lo <= inner.lo && inner.hi <= outer.hi;
}

inline std::vector<RoundCurve> all_round_curves(int n) {
  std::vector<RoundCurve> out;
  for (int lo = 1; lo <= n; ++lo)
    for (int hi = lo + 1; hi <= n; ++hi)
      if (!(lo == 1 && hi == n)) out.push_back({lo, hi});
  return out;
}

struct CurveTooComplex : std::length_error {
  using std::length_error::length_error;
};

// Isotopy class of a simple closed curve, stored as the free homotopy class of
// the curve in pi_1 of the punctured disc: a cyclically reduced word in the
// loops x_1..x_n around the punctures (letter +-j), normalized to the least
// rotation of the word or its inverse. Braids act by Artin substitution.
struct CurveCoord {
  int n = 0;
  std::vector<int> word;
  friend bool operator==(const CurveCoord&, const CurveCoord&) = default;
  friend bool operator<(const CurveCoord& a, const CurveCoord& b) {
    return a.n != b.n ? a.n < b.n : a.word < b.word;
  }
};

inline constexpr std::size_t kMaxCurveWord = std::size_t{1} << 22;

namespace detail {

inline void push_reduced(std::vector<int>& w, int letter) {
  if (!w.empty() && w.back() == -letter)
    w.pop_back();
  else
    w.push_back(letter);
}

inline void cyclically_reduce(std::vector<int>& w) {
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) {
    ++a;
    --b;
  }
  if (a > 0) w = std::vector<int>(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

// Booth's least-rotation algorithm.
inline std::vector<int> least_rotation(const std::vector<int>& s) {
  std::size_t n = s.size();
  if (n == 0) return s;
  std::vector<int> ss(s);
  ss.insert(ss.end(), s.begin(), s.end());
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    int sj = ss[j];
    long i = f[j - k - 1];
    while (i != -1 && sj != ss[k + static_cast<std::size_t>(i) + 1]) {
      if (sj < ss[k + static_cast<std::size_t>(i) + 1]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (sj != ss[k + static_cast<std::size_t>(i) + 1]) {
      if (sj < ss[k]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return std::vector<int>(ss.begin() + static_cast<std::ptrdiff_t>(k),
                          ss.begin() + static_cast<std::ptrdiff_t>(k + n));
}

inline CurveCoord canonical_curve(int n, std::vector<int> w) {
  cyclically_reduce(w);
  std::vector<int> inv;
  inv.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(-*it);
  auto a = least_rotation(w), b = least_rotation(inv);
  return {n, std::min(a, b)};
}

// Artin substitution for sigma_g (g > 0) or its inverse (g < 0):
//   sigma_i:    x_i -> x_i x_{i+1} x_i^-1,  x_{i+1} -> x_i
//   sigma_i^-1: x_i -> x_{i+1},             x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
inline void substitute(std::vector<int>& w, int g) {
  int i = g > 0 ? g : -g;
  bool touches = false;
  for (int l : w)
    if (l == i || l == -i || l == i + 1 || l == -(i + 1)) {
      touches = true;
      break;
    }
  if (!touches) return;
  std::vector<int> out;
  out.reserve(w.size() + 8);
  auto emit = [&](std::initializer_list<int> piece, bool inverted) {
    if (!inverted) {
      for (int l : piece) push_reduced(out, l);
    } else {
      for (auto it = std::rbegin(piece); it != std::rend(piece); ++it) push_reduced(out, -*it);
    }
  };
  for (int l : w) {
    int j = l > 0 ? l : -l;
    bool inv = l < 0;
    if (j == i) {
      if (g > 0)
        emit({i, i + 1, -i}, inv);
      else
        emit({i + 1}, inv);
    } else if (j == i + 1) {
      if (g > 0)
        emit({i}, inv);
      else
        emit({-(i + 1), i, i + 1}, inv);
    } else {
      push_reduced(out, l);
    }
  }
  cyclically_reduce(out);
  if (out.size() > kMaxCurveWord) throw CurveTooComplex("curve word exceeds size limit");
  w = std::move(out);
}

inline void apply_letters(std::vector<int>& w, const std::vector<int>& letters) {
  for (int g : letters) substitute(w, g);
}

}  // namespace detail

inline CurveCoord coord_of_round(const RoundCurve& c, int n) {
  if (c.lo < 1 || c.hi > n || c.lo >= c.hi || (c.lo == 1 && c.hi == n))
    throw MalformedInput("not a non-degenerate round curve");
  std::vector<int> w;
  for (int j = c.lo; j <= c.hi; ++j) w.push_back(j);
  return detail::canonical_curve(n, std::move(w));
}

inline std::optional<RoundCurve> roundness(const CurveCoord& c) {
  int m = static_cast<int>(c.word.size());
  if (m < 2 || m >= c.n) return std::nullopt;
  int lo = c.n + 1;
  for (int l : c.word) lo = std::min(lo, l > 0 ? l : -l);
  RoundCurve r{lo, lo + m - 1};
  if (r.hi > c.n) return std::nullopt;
  if (coord_of_round(r, c.n) == c) return r;
  return std::nullopt;
}

inline CurveCoord act(const CurveCoord& c, const GeneratorWord& w) {
  same_strands(c.n, w.n);
  std::vector<int> word = c.word;
  detail::apply_letters(word, w.expanded());
  return detail::canonical_curve(c.n, std::move(word));
}

// Delta^2 is central and acts on curves by an inner automorphism, so only the
// parity of the Delta exponent matters.
inline CurveCoord act(const CurveCoord& c, const CanonicalBraid& x) {
  same_strands(c.n, x.strands());
  std::vector<int> word = c.word;
  if (x.inf() % 2 != 0) detail::apply_letters(word, SimpleBraid::delta(c.n).word());
  for (const SimpleBraid& s : x.factors()) detail::apply_letters(word, s.word());
  return detail::canonical_curve(c.n, std::move(word));
}

inline CurveCoord act(const CurveCoord& c, const SimpleBraid& s) {
  same_strands(c.n, s.strands());
  std::vector<int> word = c.word;
  detail::apply_letters(word, s.word());
  return detail::canonical_curve(c.n, std::move(word));
}

inline RoundCurve reflect(const RoundCurve& c, int n) { return {n + 1 - c.hi, n + 1 - c.lo}; }

// Image of a round curve, if round. Factor by factor: for a braid in left
// normal form whose image of a round curve is round, every intermediate image
// after Delta^p x_1..x_i is round, so the first non-round intermediate decides.
inline std::optional<RoundCurve> round_image(const RoundCurve& c, const CanonicalBraid& x) {
  int n = x.strands();
  RoundCurve cur = x.inf() % 2 != 0 ? reflect(c, n) : c;
  for (const SimpleBraid& s : x.factors()) {
    auto r = roundness(act(coord_of_round(cur, n), s));
    if (!r) return std::nullopt;
    cur = *r;
  }
  return cur;
}

using RoundOrbit = std::vector<RoundCurve>;  // C, C^x, C^{x^2}, ...

struct RoundFamily {
  std::vector<RoundOrbit> orbits;
  bool overlapping = false;  // a single orbit whose curves cross each other

  std::vector<RoundCurve> curves() const {
    std::vector<RoundCurve> out;
    for (const auto& o : orbits) out.insert(out.end(), o.begin(), o.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Every closed orbit of round curves under x, each listed once, starting from
// its least curve.
inline std::vector<RoundOrbit> invariant_round_orbits(const CanonicalBraid& x) {
  int n = x.strands();
  std::vector<RoundOrbit> out;
  if (n < 3) return out;
  std::set<RoundCurve> done;
  auto all = all_round_curves(n);
  for (const RoundCurve& c : all) {
    if (done.count(c)) continue;
    RoundOrbit orbit{c};
    bool closed = false;
    RoundCurve cur = c;
    for (std::size_t step = 0; step <= all.size(); ++step) {
      auto next = round_image(cur, x);
      if (!next) break;
      if (*next == c) {
        closed = true;
        break;
      }
      cur = *next;
      orbit.push_back(cur);
    }
    if (!closed) continue;
    for (const RoundCurve& d : orbit) done.insert(d);
    out.push_back(std::move(orbit));
  }
  return out;
}

namespace detail {

inline bool compatible(const RoundOrbit& a, const RoundOrbit& b) {
  for (const RoundCurve& c : a)
    for (const RoundCurve& d : b)
      if (c != d && !disjoint_or_nested(c, d)) return false;
  return true;
}

}  // namespace detail

// Maximal families: maximal sets of closed orbits whose curves are pairwise
// disjoint or nested. An orbit whose own curves overlap cannot join a family;
// it is reported alone with the overlapping flag.
inline std::vector<RoundFamily> invariant_round_families(const CanonicalBraid& x) {
  std::vector<RoundOrbit> orbits = invariant_round_orbits(x);
  std::vector<RoundFamily> out;
  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (detail::compatible(orbits[i], orbits[i]))
      good.push_back(i);
    else
      out.push_back({{orbits[i]}, true});
  }
  std::size_t g = good.size();
  std::vector<std::vector<bool>> adj(g, std::vector<bool>(g, false));
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) adj[a][b] = a != b && detail::compatible(orbits[good[a]], orbits[good[b]]);
  // Bron-Kerbosch with pivoting
  std::vector<std::vector<std::size_t>> cliques;
  auto bk = [&](auto&& self, std::vector<std::size_t> r, std::vector<std::size_t> p, std::vector<std::size_t> xs) -> void {
    if (p.empty() && xs.empty()) {
      cliques.push_back(r);
      return;
    }
    std::size_t pivot = !p.empty() ? p.front() : xs.front();
    std::vector<std::size_t> cand;
    for (std::size_t v : p)
      if (!adj[pivot][v]) cand.push_back(v);
    for (std::size_t v : cand) {
      std::vector<std::size_t> r2 = r, p2, x2;
      r2.push_back(v);
      for (std::size_t u : p)
        if (adj[v][u]) p2.push_back(u);
      for (std::size_t u : xs)
        if (adj[v][u]) x2.push_back(u);
      self(self, r2, p2, x2);
      p.erase(std::find(p.begin(), p.end(), v));
      xs.push_back(v);
    }
  };
  std::vector<std::size_t> all(g);
  for (std::size_t i = 0; i < g; ++i) all[i] = i;
  if (g > 0) bk(bk, {}, all, {});
  std::vector<RoundFamily> fams;
  for (auto& cl : cliques) {
    std::sort(cl.begin(), cl.end());
    RoundFamily f;
    for (std::size_t v : cl) f.orbits.push_back(orbits[good[v]]);
    fams.push_back(std::move(f));
  }
  std::sort(fams.begin(), fams.end(), [](const RoundFamily& a, const RoundFamily& b) { return a.curves() < b.curves(); });
  fams.insert(fams.end(), out.begin(), out.end());
  return fams;
}

// Every curve of the family maps into the family.
inline bool family_invariant(const std::vector<RoundCurve>& fam, const CanonicalBraid& x) {
  std::set<RoundCurve> s(fam.begin(), fam.end());
  for (const RoundCurve& c : fam) {
    auto img = round_image(c, x);
    if (!img || !s.count(*img)) return false;
  }
  return true;
}

// Crossings among the strands that start at positions in I, in order.
inline GeneratorWord subbraid(const GeneratorWord& x, const std::vector<int>& I) {
  if (I.empty()) throw std::invalid_argument("subbraid needs a nonempty strand set");
  int n = x.n;
  std::vector<char> keep(n + 1, 0);
  for (int i : I) {
    if (i < 1 || i > n) throw MalformedInput("strand index out of range");
    keep[i] = 1;
  }
  int m = 0;
  for (int i = 1; i <= n; ++i) m += keep[i];
  std::vector<int> at(n + 1);  // strand at each position
  for (int i = 1; i <= n; ++i) at[i] = i;
  GeneratorWord out(m);
  for (int g : x.expanded()) {
    int i = g > 0 ? g : -g;
    if (keep[at[i]] && keep[at[i + 1]]) {
      int rank = 0;
      for (int p = 1; p < i; ++p) rank += keep[at[p]];
      out.letters.push_back(Letter::sigma(g > 0 ? rank + 1 : -(rank + 1)));
    }
    std::swap(at[i], at[i + 1]);
  }
  return out;
}

// Representative punctures for the component at C (nullopt = disc boundary):
// punctures of C outside every inner curve, plus one puncture per outermost
// inner curve. `pick` chooses which one (default: the leftmost).
inline std::vector<int> component_representatives(int n, const std::vector<RoundCurve>& fam,
                                                  const std::optional<RoundCurve>& c,
                                                  const std::vector<int>& pick = {}) {
  RoundCurve outer = c ? *c : RoundCurve{1, n};
  std::vector<RoundCurve> inner;
  for (const RoundCurve& d : fam) {
    if (c && !strictly_inside(d, outer)) continue;
    if (!c && !(outer.lo <= d.lo && d.hi <= outer.hi)) continue;
    bool maximal = true;
    for (const RoundCurve& e : fam) {
      if (c && !strictly_inside(e, outer)) continue;
      if (strictly_inside(d, e)) maximal = false;
    }
    if (maximal && std::find(inner.begin(), inner.end(), d) == inner.end()) inner.push_back(d);
  }
  std::sort(inner.begin(), inner.end());
  std::vector<int> reps;
  std::size_t k = 0;
  for (int p = outer.lo; p <= outer.hi;) {
    if (k < inner.size() && inner[k].lo == p) {
      int off = k < pick.size() ? pick[k] : 0;
      reps.push_back(p + std::min(off, inner[k].size() - 1));
      p = inner[k].hi + 1;
      ++k;
    } else {
      reps.push_back(p++);
    }
  }
  return reps;
}

// Component of x at C for a round family F, without checking invariance.
inline CanonicalBraid component_along(const GeneratorWord& x, const std::vector<RoundCurve>& fam,
                                      const std::optional<RoundCurve>& c, const std::vector<int>& pick = {}) {
  auto reps = component_representatives(x.n, fam, c, pick);
  return normal_form(subbraid(x, reps));
}

inline CanonicalBraid component(const CanonicalBraid& x, const std::vector<RoundCurve>& fam,
                                const std::optional<RoundCurve>& c, const std::vector<int>& pick = {}) {
  if (!family_invariant(fam, x)) throw std::invalid_argument("family is not invariant under the braid");
  if (c && std::find(fam.begin(), fam.end(), *c) == fam.end())
    throw std::invalid_argument("curve is not in the family");
  return component_along(x.word(), fam, c, pick);
}

inline std::string to_string(const RoundCurve& c) {
  return "(" + std::to_string(c.lo) + "," + std::to_string(c.hi) + ")";
}

}  // namespace braidnt

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "curves.hpp"
#include "sliding.hpp"

namespace braidnt {

struct NotPositive : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One crossing of a positive word: positions pos, pos+1 (1-based) exchange
// clockwise. The left puncture moves right passing over, the right one moves
// left passing under. left/right are the strands there before the swap.
struct DanceStep {
  int pos;
  int left;
  int right;
};

struct Dance {
  int n = 0;
  std::vector<DanceStep> steps;
  std::vector<int> position;  // final position of each strand, position[s-1]
};

inline Dance dance(const GeneratorWord& x) {
  x.validate();
  if (!x.is_positive()) throw NotPositive("dance needs a positive word");
  Dance d{x.n, {}, {}};
  std::vector<int> at(x.n);  // strand at each position, 0-based
  for (int j = 0; j < x.n; ++j) at[j] = j + 1;
  for (int g : x.expanded()) {
    d.steps.push_back({g, at[g - 1], at[g]});
    std::swap(at[g - 1], at[g]);
  }
  d.position.assign(x.n, 0);
  for (int j = 0; j < x.n; ++j) d.position[at[j] - 1] = j + 1;
  return d;
}

enum class Label : std::uint8_t { None, A, B };

inline char label_char(Label l) { return l == Label::A ? 'a' : l == Label::B ? 'b' : '.'; }

struct Labelling {
  int n = 0;
  int p = 0, q = 0;                      // interior strands, p < q
  std::vector<std::vector<Label>> grid;  // grid[t][s-1] for t = 0..l
};

// Labels at each position at time t.
inline std::vector<Label> labels_by_position(const Labelling& lab, const Dance& d, std::size_t t) {
  std::vector<int> at(d.n);
  for (int j = 0; j < d.n; ++j) at[j] = j + 1;
  for (std::size_t i = 0; i < t; ++i) std::swap(at[d.steps[i].pos - 1], at[d.steps[i].pos]);
  std::vector<Label> out(d.n);
  for (int j = 0; j < d.n; ++j) out[j] = lab.grid[t][at[j] - 1];
  return out;
}

enum class Contradiction { ExitRule, ForcingConflict, Invariance, NotStabilized };

inline const char* to_string(Contradiction c) {
  switch (c) {
    case Contradiction::ExitRule: return "exit rule";
    case Contradiction::ForcingConflict: return "forcing conflict";
    case Contradiction::Invariance: return "invariance";
    case Contradiction::NotStabilized: return "not stabilized";
  }
  return "?";
}

struct LabelFailure {
  Contradiction kind;
  int repetition;
  std::size_t step;
};

using LabelOutcome = std::variant<Labelling, LabelFailure>;

inline void check_pair(const Dance& d, int p, int q) {
  if (p < 1 || q > d.n || p >= q) throw InvalidPair("pair must satisfy 1 <= p < q <= n");
  if (d.position[p - 1] != p || d.position[q - 1] != q) throw InvalidPair("interior strands must be pure");
  for (const DanceStep& s : d.steps)
    if ((s.left == p && s.right == q) || (s.left == q && s.right == p))
      throw InvalidPair("interior strands must not cross");
}

// Forced-label propagation over 2n repetitions of the dance. Labels are kept
// per position; every repetition is compared with the previous one at equal
// times (invariance), and the last repetition is returned.
inline LabelOutcome label_search_detailed(const Dance& d, int p, int q) {
  check_pair(d, p, q);
  const int n = d.n;
  const std::size_t len = d.steps.size();
  using Row = std::vector<Label>;
  std::vector<Row> prev, cur(len + 1, Row(n, Label::None));
  Row lab(n, Label::None);
  bool forced_in_rep = false, repeated = false;
  const int reps = 2 * n;
  for (int rep = 0; rep < reps; ++rep) {
    int L = p - 1, R = q - 1;  // interior positions, 0-based; pure so they restart here
    forced_in_rep = false;
    for (std::size_t t = 0; t <= len; ++t) {
      int i = t < len ? d.steps[t].pos - 1 : -1;
      if (i >= 0 && L < i && i + 1 < R) {
        Label l = lab[i], r = lab[i + 1];
        if (r == Label::A && l == Label::B) return LabelFailure{Contradiction::ForcingConflict, rep, t};
        if (r == Label::A && l == Label::None) lab[i] = Label::A, forced_in_rep = true;
        if (l == Label::B && r == Label::None) lab[i + 1] = Label::B, forced_in_rep = true;
      }
      if (!prev.empty())
        for (int j = 0; j < n; ++j)
          if (lab[j] != Label::None && prev[t][j] != Label::None && lab[j] != prev[t][j])
            return LabelFailure{Contradiction::Invariance, rep, t};
      cur[t] = lab;
      if (i < 0) break;
      if (i + 1 == L) {  // left puncture passes over L into the interval
        lab[i] = Label::A;
        L = i;
      } else if (i == L) {  // right puncture passes under L, leaving
        if (lab[i + 1] == Label::A) return LabelFailure{Contradiction::ExitRule, rep, t};
        lab[i + 1] = Label::None;
        L = i + 1;
      } else if (i == R) {  // right puncture passes under R into the interval
        lab[i + 1] = Label::B;
        R = i + 1;
      } else if (i + 1 == R) {  // left puncture passes over R, leaving
        if (lab[i] == Label::B) return LabelFailure{Contradiction::ExitRule, rep, t};
        lab[i] = Label::None;
        R = i;
      }
      std::swap(lab[i], lab[i + 1]);
    }
    repeated = cur == prev;
    prev = cur;
  }
  if (forced_in_rep || !repeated || cur[len] != cur[0]) return LabelFailure{Contradiction::NotStabilized, reps - 1, len};

  Labelling out{n, p, q, std::vector<Row>(len + 1, Row(n))};
  std::vector<int> at(n);
  for (int j = 0; j < n; ++j) at[j] = j + 1;
  for (std::size_t t = 0; t <= len; ++t) {
    for (int j = 0; j < n; ++j) out.grid[t][at[j] - 1] = cur[t][j];
    if (t < len) std::swap(at[d.steps[t].pos - 1], at[d.steps[t].pos]);
  }
  return out;
}

inline std::optional<Labelling> label_search(const Dance& d, int p, int q) {
  LabelOutcome o = label_search_detailed(d, p, q);
  if (auto* lab = std::get_if<Labelling>(&o)) return std::move(*lab);
  return std::nullopt;
}

inline std::optional<Labelling> label_search(const GeneratorWord& x, int p, int q) {
  return label_search(dance(x), p, q);
}

// Boundary of a neighbourhood of the arc from p to q that passes below the
// punctures labelled a (unlabelled ones count as a) and above those labelled b,
// at time 0. It is the image of the round curve around two adjacent punctures
// under the positive simple braid that carries the layout
//   [left of p] [a's] p q [b's] [right of q]
// onto the actual order: the a's move right over p, the b's left under q.
inline CurveCoord arc_curve(int n, int p, int q, const std::vector<Label>& at_time0) {
  std::vector<int> layout;
  for (int j = 1; j < p; ++j) layout.push_back(j);
  for (int j = p + 1; j < q; ++j)
    if (at_time0[j - 1] != Label::B) layout.push_back(j);
  int lo = static_cast<int>(layout.size()) + 1;
  layout.push_back(p);
  layout.push_back(q);
  for (int j = p + 1; j < q; ++j)
    if (at_time0[j - 1] == Label::B) layout.push_back(j);
  for (int j = q + 1; j <= n; ++j) layout.push_back(j);
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) perm[k] = layout[k] - 1;
  SimpleBraid s = SimpleBraid::from_permutation(perm);
  return act(coord_of_round({lo, lo + 1}, n), s);
}

// Rules 1(b), 2, 3(a), 3(b), 4 at every step and invariance over the period,
// checked on the labelling as given.
inline bool check_labelling(const Dance& d, const Labelling& lab) {
  const int n = d.n;
  const std::size_t len = d.steps.size();
  if (lab.n != n || lab.grid.size() != len + 1) return false;
  std::vector<int> at(n);
  for (int j = 0; j < n; ++j) at[j] = j + 1;
  auto row = [&](std::size_t t) {
    std::vector<Label> r(n);
    for (int j = 0; j < n; ++j) r[j] = lab.grid[t][at[j] - 1];
    return r;
  };
  std::vector<Label> first = row(0), now = first;
  for (std::size_t t = 0;; ++t) {
    int L = -1, R = -1;
    for (int j = 0; j < n; ++j) {
      if (at[j] == lab.p) L = j;
      if (at[j] == lab.q) R = j;
    }
    if (L < 0 || R < 0 || L >= R) return false;
    for (int j = 0; j < n; ++j)
      if ((j <= L || j >= R) && now[j] != Label::None) return false;
    if (t == len) return now == first;
    int i = d.steps[t].pos - 1;
    std::vector<Label> expect = now;
    if (i + 1 == L) {
      expect[i] = Label::A;
    } else if (i == L) {
      if (now[i + 1] == Label::A) return false;
      expect[i + 1] = Label::None;
    } else if (i == R) {
      expect[i + 1] = Label::B;
    } else if (i + 1 == R) {
      if (now[i] == Label::B) return false;
      expect[i] = Label::None;
    } else if (L < i && i + 1 < R) {
      if (now[i + 1] == Label::A && now[i] != Label::A) return false;
      if (now[i] == Label::B && now[i + 1] != Label::B) return false;
    }
    std::swap(expect[i], expect[i + 1]);
    std::swap(at[i], at[i + 1]);
    now = row(t + 1);
    if (now != expect) return false;
  }
}

struct RoundFamilyWitness {
  RoundFamily family;
  int power = 1;           // the family is invariant under subject^power
  CanonicalBraid subject;
};

struct AlmostRoundWitness {
  GeneratorWord braid;      // the positive braid that was searched
  int p = 0, q = 0;
  Labelling labelling;
  std::vector<int> enclosed;
  std::vector<int> unlabelled;  // strands between p and q unlabelled at time 0
  CurveCoord curve;
  int power = 1;
  CanonicalBraid subject;   // braid = Delta^even * subject^power, up to the variant
  int variant = 0;          // 0: Delta^-inf beta^k, 1: beta^-k Delta^sup
};

using ReductionWitness = std::variant<RoundFamilyWitness, AlmostRoundWitness>;

inline std::optional<AlmostRoundWitness> almost_round_invariant_arc(const GeneratorWord& x) {
  Dance d = dance(x);
  const int n = d.n;
  if (n < 3) return std::nullopt;
  // pairs that cross at least once, in one pass
  std::vector<char> crossed(static_cast<std::size_t>(n) * n, 0);
  for (const DanceStep& s : d.steps) {
    crossed[(s.left - 1) * n + (s.right - 1)] = 1;
    crossed[(s.right - 1) * n + (s.left - 1)] = 1;
  }
  for (int p = 1; p <= n; ++p) {
    if (d.position[p - 1] != p) continue;
    for (int q = p + 1; q <= n; ++q) {
      if (d.position[q - 1] != q || crossed[(p - 1) * n + (q - 1)]) continue;
      auto lab = label_search(d, p, q);
      if (!lab) continue;
      AlmostRoundWitness w;
      w.braid = x;
      w.p = p;
      w.q = q;
      w.enclosed = {p, q};
      for (int j = p + 1; j < q; ++j)
        if (lab->grid[0][j - 1] == Label::None) w.unlabelled.push_back(j);
      w.curve = arc_curve(n, p, q, lab->grid[0]);
      w.labelling = std::move(*lab);
      w.subject = normal_form(x);
      return w;
    }
  }
  return std::nullopt;
}

// Delta^-inf(b) b and b^-1 Delta^sup(b) as positive words.
inline GeneratorWord positive_part(const CanonicalBraid& b) {
  GeneratorWord w(b.strands(), std::vector<int>{});
  for (const SimpleBraid& s : b.factors())
    for (int g : s.word()) w.letters.push_back(Letter::sigma(g));
  return w;
}

inline GeneratorWord positive_cofactor(const CanonicalBraid& b) {
  CanonicalBraid c = multiply(inverse(b), CanonicalBraid::delta_power(b.strands(), b.sup()));
  GeneratorWord w(b.strands(), std::vector<int>{});
  if (c.inf() < 0) throw std::logic_error("b^-1 Delta^sup(b) is not positive");
  for (long long k = 0; k < c.inf(); ++k)
    for (int g : SimpleBraid::delta(b.strands()).word()) w.letters.push_back(Letter::sigma(g));
  for (const SimpleBraid& s : c.factors())
    for (int g : s.word()) w.letters.push_back(Letter::sigma(g));
  return w;
}

// For k = 1..n: a round family invariant under beta^k, or, when inf and sup of
// beta^k are even, an invariant almost round arc of one of its positive parts.
inline std::optional<ReductionWitness> rigid_case_classify(const CanonicalBraid& beta) {
  if (!is_rigid(beta)) throw std::invalid_argument("rigid_case_classify needs a rigid braid");
  if (beta.factors().empty()) throw std::invalid_argument("rigid_case_classify needs a non-periodic braid");
  const int n = beta.strands();
  CanonicalBraid bk = beta;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) bk = multiply(bk, beta);
    auto fams = invariant_round_families(bk);
    if (!fams.empty()) return RoundFamilyWitness{fams.front(), k, beta};
    if (bk.inf() % 2 != 0 || bk.sup() % 2 != 0) continue;
    GeneratorWord parts[2] = {positive_part(bk), positive_cofactor(bk)};
    for (int v = 0; v < 2; ++v) {
      if (auto w = almost_round_invariant_arc(parts[v])) {
        w->power = k;
        w->subject = beta;
        w->variant = v;
        return *w;
      }
    }
  }
  return std::nullopt;
}

// Independent re-check: the witness curves map into themselves.
inline bool verify_witness(const ReductionWitness& w) {
  if (const auto* r = std::get_if<RoundFamilyWitness>(&w)) {
    CanonicalBraid bk = power(r->subject, r->power);
    return !r->family.orbits.empty() && family_invariant(r->family.curves(), bk);
  }
  const auto& a = std::get<AlmostRoundWitness>(w);
  if (!check_labelling(dance(a.braid), a.labelling)) return false;
  if (act(a.curve, a.braid) != a.curve) return false;
  CanonicalBraid bk = power(a.subject, a.power);
  return act(a.curve, bk) == a.curve;
}

inline std::string grid_string(const Labelling& lab) {
  std::string out;
  for (const auto& row : lab.grid) {
    for (Label l : row) out += label_char(l);
    out += '\n';
  }
  return out;
}

}  // namespace braidnt

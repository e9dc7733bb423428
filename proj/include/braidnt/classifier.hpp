#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "reduction.hpp"
#include "sliding.hpp"

namespace braidnt {

struct PeriodicCertificate {
  int k = 0;        // x^k = Delta^d
  long long d = 0;
};

enum class Stage { RoundFamily, RigidPower, RigidConjugator };

inline const char* to_string(Stage s) {
  switch (s) {
    case Stage::RoundFamily: return "round-family";
    case Stage::RigidPower: return "rigid-power";
    case Stage::RigidConjugator: return "rigid-conjugator";
  }
  return "?";
}

struct ReducibleCertificate {
  ReductionWitness witness;
  Stage stage = Stage::RoundFamily;
  int m = 0;                  // power of y examined in step 4 (0 for step 3)
  CanonicalBraid y;           // y = c^-1 x c
  CanonicalBraid conjugator;
};

struct PseudoAnosovAudit {
  int cap = 0;
  int powers_examined = 0;
  std::optional<int> decided_at;  // power at which the rigid case ruled out reducibility
  bool heuristic = false;         // reduced cap and never decided
};

struct ClassifierStats {
  long long slidings = 0;
  int stabilization_stages = 0;
  int powers_examined = 0;
  int rigid_case_calls = 0;
};

struct Classification {
  std::variant<PeriodicCertificate, ReducibleCertificate, PseudoAnosovAudit> verdict;
  ClassifierStats stats;

  bool periodic() const { return std::holds_alternative<PeriodicCertificate>(verdict); }
  bool reducible() const { return std::holds_alternative<ReducibleCertificate>(verdict); }
  bool pseudo_anosov() const { return std::holds_alternative<PseudoAnosovAudit>(verdict); }
  std::string name() const { return periodic() ? "periodic" : reducible() ? "reducible" : "pseudo-anosov"; }
};

// ||Delta||^3 - ||Delta||^2
inline int default_cap(int n) {
  long long L = static_cast<long long>(n) * (n - 1) / 2;
  long long N = L * L * L - L * L;
  return static_cast<int>(std::max(1LL, std::min<long long>(N, 1 << 30)));
}

struct ClassifierConfig {
  std::optional<int> cap;         // default_cap(n) when absent
  bool stabilize_early = true;    // stop the x_[i] recursion at two-sided rigidity
  bool stop_when_decided = true;  // leave step 4 once the rigid case has been settled
  int effective_cap(int n) const { return cap ? std::max(1, *cap) : default_cap(n); }
};

// x^(n-1) or x^n a power of Delta; the smaller exponent wins.
inline std::optional<PeriodicCertificate> is_periodic(const CanonicalBraid& x) {
  int n = x.strands();
  if (n <= 1) return PeriodicCertificate{1, 0};
  CanonicalBraid pw = power(x, n - 1);
  if (pw.factors().empty()) return PeriodicCertificate{n - 1, pw.inf()};
  pw = multiply(pw, x);
  if (pw.factors().empty()) return PeriodicCertificate{n, pw.inf()};
  return std::nullopt;
}

inline Classification classify(const CanonicalBraid& x, const ClassifierConfig& cfg = {}) {
  Classification out;
  ClassifierStats& st = out.stats;
  if (auto per = is_periodic(x)) {
    out.verdict = *per;
    return out;
  }
  const int n = x.strands();
  const int N = cfg.effective_cap(n);

  StabilizedResult stab = stabilized_representative(x, N, cfg.stabilize_early);
  st.slidings += stab.slidings;
  st.stabilization_stages = stab.stages;
  const CanonicalBraid& y = stab.y;

  auto fams = invariant_round_families(y);
  if (!fams.empty()) {
    out.verdict = ReducibleCertificate{RoundFamilyWitness{fams.front(), 1, y}, Stage::RoundFamily, 0, y,
                                       stab.conjugator};
    return out;
  }

  PseudoAnosovAudit audit{N, 0, std::nullopt, false};
  CanonicalBraid ym = CanonicalBraid::identity(n);
  for (int m = 1; m <= N; ++m) {
    ym = multiply(ym, y);
    ++st.powers_examined;
    audit.powers_examined = m;
    if (is_rigid(ym)) {
      ++st.rigid_case_calls;
      if (auto w = rigid_case_classify(ym)) {
        out.verdict = ReducibleCertificate{std::move(*w), Stage::RigidPower, m, y, stab.conjugator};
        return out;
      }
      // y^m is rigid and not periodic, so it would be reducible only with a round
      // or almost round curve at some power k <= n
      audit.decided_at = m;
      if (cfg.stop_when_decided) break;
      continue;
    }
    // CRS(P(y^m)) lies in CRS(y^m) only when y^m has two-sided rigidity
    if (!has_two_sided_rigidity(ym)) continue;
    SlidingTrajectory tr = sliding_trajectory(ym);
    st.slidings += tr.t;
    CanonicalBraid P = preferred_conjugator(ym);
    if (P.factors().empty() || !is_rigid(P)) continue;
    ++st.rigid_case_calls;
    if (auto w = rigid_case_classify(P)) {
      out.verdict = ReducibleCertificate{std::move(*w), Stage::RigidConjugator, m, y, stab.conjugator};
      return out;
    }
    // a nontrivial rigid P(y^m) with no reduction curves means y^m is not reducible
    audit.decided_at = m;
    if (cfg.stop_when_decided) break;
  }
  audit.heuristic = !audit.decided_at && N < default_cap(n);
  out.verdict = audit;
  return out;
}

// Recomputes everything the verdict rests on.
inline bool verify_certificate(const CanonicalBraid& x, const Classification& c) {
  if (const auto* per = std::get_if<PeriodicCertificate>(&c.verdict))
    return per->k >= 1 && power(x, per->k) == CanonicalBraid::delta_power(x.strands(), per->d);
  if (c.pseudo_anosov()) return !is_periodic(x);
  const auto& r = std::get<ReducibleCertificate>(c.verdict);
  if (is_periodic(x) || conjugate(x, r.conjugator) != r.y) return false;
  if (!verify_witness(r.witness)) return false;
  auto subject = [](const ReductionWitness& w) -> const CanonicalBraid& {
    if (const auto* f = std::get_if<RoundFamilyWitness>(&w)) return f->subject;
    return std::get<AlmostRoundWitness>(w).subject;
  };
  switch (r.stage) {
    case Stage::RoundFamily: return subject(r.witness) == r.y;
    case Stage::RigidPower: return r.m >= 1 && subject(r.witness) == power(r.y, r.m);
    case Stage::RigidConjugator: {
      if (r.m < 1) return false;
      CanonicalBraid ym = power(r.y, r.m);
      const CanonicalBraid& P = subject(r.witness);
      return has_two_sided_rigidity(ym) && in_sliding_circuit(ym) && P == preferred_conjugator(ym) &&
             multiply(P, ym) == multiply(ym, P);
    }
  }
  return false;
}

}  // namespace braidnt

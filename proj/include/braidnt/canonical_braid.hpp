#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "simple_braid.hpp"
#include "word.hpp"

namespace braidnt {

namespace detail {

// Makes every adjacent pair left-weighted, starting from the pairs in `seeds`,
// then absorbs leading Deltas into p and drops trailing identities.
inline void normalize(int n, long long& p, std::vector<SimpleBraid>& f, const std::vector<std::size_t>& seeds) {
  if (n == 1) {
    p = 0;
    f.clear();
    return;
  }
  std::vector<char> queued(f.size(), 0);
  std::vector<std::size_t> work;
  auto push = [&](std::size_t i) {
    if (i + 1 < f.size() && !queued[i]) {
      queued[i] = 1;
      work.push_back(i);
    }
  };
  for (std::size_t i : seeds) push(i);
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    queued[i] = 0;
    SimpleBraid t = meet(complement(f[i]), f[i + 1]);
    if (t.is_identity()) continue;
    f[i] = compose(f[i], t);
    f[i + 1] = left_quotient(t, f[i + 1]);
    if (i > 0) push(i - 1);
    push(i + 1);
  }
  std::size_t lead = 0;
  while (lead < f.size() && f[lead].is_delta()) ++lead;
  if (lead > 0) {
    p += static_cast<long long>(lead);
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(lead));
  }
  while (!f.empty() && f.back().is_identity()) f.pop_back();
}

inline std::vector<std::size_t> all_pairs(std::size_t len) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i + 1 < len; ++i) s.push_back(len - 2 - i);
  return s;
}

}  // namespace detail

// Left normal form Delta^p x_1 ... x_r.
class CanonicalBraid {
 public:
  CanonicalBraid() = default;
  explicit CanonicalBraid(int n) : n_(n) { SimpleBraid::check_n(n); }

  static CanonicalBraid identity(int n) { return CanonicalBraid(n); }

  static CanonicalBraid delta_power(int n, long long k) {
    CanonicalBraid x(n);
    x.p_ = n == 1 ? 0 : k;
    return x;
  }

  static CanonicalBraid from_simple(const SimpleBraid& s) { return from_factors(s.strands(), 0, {s}); }

  // Any sequence of simples; normalized here.
  static CanonicalBraid from_factors(int n, long long p, std::vector<SimpleBraid> f) {
    CanonicalBraid x(n);
    for (const SimpleBraid& s : f) same_strands(n, s.strands());
    x.p_ = p;
    x.f_ = std::move(f);
    detail::normalize(n, x.p_, x.f_, detail::all_pairs(x.f_.size()));
    return x;
  }

  int strands() const { return n_; }
  long long inf() const { return p_; }
  long long sup() const { return p_ + static_cast<long long>(f_.size()); }
  int canonical_length() const { return static_cast<int>(f_.size()); }
  const std::vector<SimpleBraid>& factors() const { return f_; }
  bool is_trivial() const { return p_ == 0 && f_.empty(); }
  bool is_delta_power() const { return f_.empty(); }

  GeneratorWord word() const {
    GeneratorWord w(n_);
    if (p_ != 0) w.letters.push_back(Letter::delta(static_cast<int>(p_)));
    for (const SimpleBraid& s : f_)
      for (int i : s.word()) w.letters.push_back(Letter::sigma(i));
    return w;
  }

  friend bool operator==(const CanonicalBraid& a, const CanonicalBraid& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.f_ == b.f_;
  }
  friend bool operator!=(const CanonicalBraid& a, const CanonicalBraid& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_) * 31u + static_cast<std::size_t>(p_) * 1000003u;
    for (const SimpleBraid& s : f_) h = (h ^ s.hash()) * 0x9e3779b97f4a7c15ull;
    return h;
  }

 private:
  int n_ = 1;
  long long p_ = 0;
  std::vector<SimpleBraid> f_;

  friend CanonicalBraid make_canonical(int, long long, std::vector<SimpleBraid>, const std::vector<std::size_t>&);
};

struct CanonicalBraidHash {
  std::size_t operator()(const CanonicalBraid& x) const noexcept { return x.hash(); }
};

// Builds from a sequence that is already left-weighted except near `seeds`.
inline CanonicalBraid make_canonical(int n, long long p, std::vector<SimpleBraid> f,
                                     const std::vector<std::size_t>& seeds) {
  CanonicalBraid x(n);
  x.p_ = p;
  x.f_ = std::move(f);
  detail::normalize(n, x.p_, x.f_, seeds);
  return x;
}

inline CanonicalBraid normal_form(const GeneratorWord& w) {
  w.validate();
  int n = w.n;
  if (n == 1) return CanonicalBraid(1);
  // Right to left, moving every Delta to the front: y Delta^D = Delta^D tau^D(y).
  long long d = 0;
  std::vector<SimpleBraid> rev;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->kind == Letter::Delta) {
      d += it->value;
    } else if (it->value > 0) {
      rev.push_back(tau(SimpleBraid::generator(n, it->value), d));
    } else {
      // s_i^-1 = d(s_i) Delta^-1
      d -= 1;
      rev.push_back(tau(complement(SimpleBraid::generator(n, -it->value)), d));
    }
  }
  std::vector<SimpleBraid> f(rev.rbegin(), rev.rend());
  auto seeds = detail::all_pairs(f.size());
  return make_canonical(n, d, std::move(f), seeds);
}

inline CanonicalBraid normal_form(int n, const std::vector<int>& signed_indices) {
  return normal_form(GeneratorWord(n, signed_indices));
}

inline SimpleBraid initial_factor(const CanonicalBraid& x) {
  if (x.factors().empty()) return SimpleBraid::identity(x.strands());
  return tau(x.factors().front(), -x.inf());
}

inline SimpleBraid final_factor(const CanonicalBraid& x) {
  if (x.factors().empty()) return SimpleBraid::delta(x.strands());
  return x.factors().back();
}

inline CanonicalBraid multiply(const CanonicalBraid& a, const CanonicalBraid& b) {
  same_strands(a.strands(), b.strands());
  std::vector<SimpleBraid> f;
  f.reserve(a.factors().size() + b.factors().size());
  for (const SimpleBraid& s : a.factors()) f.push_back(tau(s, b.inf()));
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  std::vector<std::size_t> seeds;
  if (!a.factors().empty() && !b.factors().empty()) seeds.push_back(a.factors().size() - 1);
  return make_canonical(a.strands(), a.inf() + b.inf(), std::move(f), seeds);
}

inline CanonicalBraid operator*(const CanonicalBraid& a, const CanonicalBraid& b) { return multiply(a, b); }

// x * s
inline CanonicalBraid right_multiply(const CanonicalBraid& x, const SimpleBraid& s) {
  same_strands(x.strands(), s.strands());
  std::vector<SimpleBraid> f = x.factors();
  f.push_back(s);
  std::vector<std::size_t> seeds;
  if (f.size() >= 2) seeds.push_back(f.size() - 2);
  return make_canonical(x.strands(), x.inf(), std::move(f), seeds);
}

// s * x
inline CanonicalBraid left_multiply(const SimpleBraid& s, const CanonicalBraid& x) {
  same_strands(x.strands(), s.strands());
  std::vector<SimpleBraid> f;
  f.reserve(x.factors().size() + 1);
  f.push_back(tau(s, x.inf()));
  f.insert(f.end(), x.factors().begin(), x.factors().end());
  return make_canonical(x.strands(), x.inf(), std::move(f), {0});
}

// s^-1 * x, using s^-1 = Delta^-1 (Delta s^-1)
inline CanonicalBraid left_divide(const SimpleBraid& s, const CanonicalBraid& x) {
  same_strands(x.strands(), s.strands());
  std::vector<SimpleBraid> f;
  f.reserve(x.factors().size() + 1);
  f.push_back(tau(left_complement(s), x.inf()));
  f.insert(f.end(), x.factors().begin(), x.factors().end());
  return make_canonical(x.strands(), x.inf() - 1, std::move(f), {0});
}

// s^-1 x s
inline CanonicalBraid conjugate(const CanonicalBraid& x, const SimpleBraid& s) {
  return left_divide(s, right_multiply(x, s));
}

inline CanonicalBraid inverse(const CanonicalBraid& x) {
  const auto& xs = x.factors();
  long long p = x.inf();
  long long r = static_cast<long long>(xs.size());
  std::vector<SimpleBraid> f;
  f.reserve(xs.size());
  for (long long j = 1; j <= r; ++j) f.push_back(tau(complement(xs[static_cast<std::size_t>(r - j)]), p + r - j + 1));
  auto seeds = detail::all_pairs(f.size());
  return make_canonical(x.strands(), -p - r, std::move(f), seeds);
}

// c^-1 x c
inline CanonicalBraid conjugate(const CanonicalBraid& x, const CanonicalBraid& c) {
  return multiply(multiply(inverse(c), x), c);
}

// Delta^-k x Delta^k
inline CanonicalBraid tau(const CanonicalBraid& x, long long k = 1) {
  std::vector<SimpleBraid> f;
  f.reserve(x.factors().size());
  for (const SimpleBraid& s : x.factors()) f.push_back(tau(s, k));
  return make_canonical(x.strands(), x.inf(), std::move(f), {});
}

// word reversal
inline CanonicalBraid rev(const CanonicalBraid& x) {
  std::vector<SimpleBraid> f;
  f.reserve(x.factors().size());
  for (auto it = x.factors().rbegin(); it != x.factors().rend(); ++it) f.push_back(tau(reverse(*it), x.inf()));
  auto seeds = detail::all_pairs(f.size());
  return make_canonical(x.strands(), x.inf(), std::move(f), seeds);
}

// x ^ Delta^k, the greatest common prefix with a power of Delta
inline CanonicalBraid gcd_with_delta_power(const CanonicalBraid& x, long long k) {
  if (k <= x.inf()) return CanonicalBraid::delta_power(x.strands(), k);
  long long j = std::min<long long>(k - x.inf(), x.canonical_length());
  std::vector<SimpleBraid> f(x.factors().begin(), x.factors().begin() + j);
  return make_canonical(x.strands(), x.inf(), std::move(f), {});
}

inline CanonicalBraid power(const CanonicalBraid& x, long long m) {
  if (m < 0) return power(inverse(x), -m);
  CanonicalBraid acc = CanonicalBraid::identity(x.strands());
  for (long long i = 0; i < m; ++i) acc = multiply(acc, x);
  return acc;
}

inline std::string to_string(const CanonicalBraid& x) {
  std::string out;
  if (x.inf() != 0) out = x.inf() == 1 ? "D" : "D^" + std::to_string(x.inf());
  for (const SimpleBraid& s : x.factors())
    for (int i : s.word()) {
      if (!out.empty()) out += ' ';
      out += "s" + std::to_string(i);
    }
  if (out.empty()) out = "D^0";
  return out;
}

// Factors as bracketed generator lists, for diagnostics.
inline std::string factor_string(const CanonicalBraid& x) {
  std::string out = "D^" + std::to_string(x.inf());
  for (const SimpleBraid& s : x.factors()) {
    out += " [";
    bool first = true;
    for (int i : s.word()) {
      if (!first) out += ' ';
      out += std::to_string(i);
      first = false;
    }
    out += "]";
  }
  return out;
}

}  // namespace braidnt

template <>
struct std::hash<braidnt::CanonicalBraid> {
  std::size_t operator()(const braidnt::CanonicalBraid& x) const noexcept { return x.hash(); }
};

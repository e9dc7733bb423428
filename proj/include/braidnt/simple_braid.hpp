#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace braidnt {

inline constexpr int kMaxStrands = 64;

struct MalformedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StrandMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Permutation braid. perm_[i] is the end position of the strand that starts at
// position i (both 0-based). Unused slots stay zero so whole-array compares work.
class SimpleBraid {
 public:
  SimpleBraid() = default;

  static SimpleBraid identity(int n) {
    check_n(n);
    SimpleBraid s;
    s.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) s.perm_[i] = static_cast<std::uint8_t>(i);
    return s;
  }

  static SimpleBraid delta(int n) {
    check_n(n);
    SimpleBraid s;
    s.n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) s.perm_[i] = static_cast<std::uint8_t>(n - 1 - i);
    return s;
  }

  // sigma_i, i is 1-based as in the word grammar
  static SimpleBraid generator(int n, int i) {
    if (i < 1 || i >= n) throw MalformedInput("generator index out of range: " + std::to_string(i));
    SimpleBraid s = identity(n);
    std::swap(s.perm_[i - 1], s.perm_[i]);
    return s;
  }

  // 0-based targets
  static SimpleBraid from_permutation(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    check_n(n);
    SimpleBraid s;
    s.n_ = static_cast<std::uint8_t>(n);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (perm[i] < 0 || perm[i] >= n || seen[perm[i]]) throw MalformedInput("not a permutation");
      seen[perm[i]] = true;
      s.perm_[i] = static_cast<std::uint8_t>(perm[i]);
    }
    return s;
  }

  int strands() const { return n_; }
  int operator[](int i) const { return perm_[i]; }

  std::vector<int> permutation() const { return std::vector<int>(perm_.begin(), perm_.begin() + n_); }

  std::vector<int> inverse_permutation() const {
    std::vector<int> inv(n_);
    for (int i = 0; i < n_; ++i) inv[perm_[i]] = i;
    return inv;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      if (perm_[i] != i) return false;
    return true;
  }

  bool is_delta() const {
    for (int i = 0; i < n_; ++i)
      if (perm_[i] != n_ - 1 - i) return false;
    return true;
  }

  // inversion count = word length
  int length() const {
    int c = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (perm_[i] > perm_[j]) ++c;
    return c;
  }

  // sigma_{i+1} left-divides s (0-based i)
  bool has_left_descent(int i) const { return perm_[i] > perm_[i + 1]; }

  // s = sigma_{i+1} * s', returns s'
  SimpleBraid peel_left(int i) const {
    SimpleBraid s = *this;
    std::swap(s.perm_[i], s.perm_[i + 1]);
    return s;
  }

  // positive word of generators (1-based), read left to right
  std::vector<int> word() const {
    std::vector<int> out;
    SimpleBraid s = *this;
    for (bool again = true; again;) {
      again = false;
      for (int i = 0; i + 1 < n_; ++i) {
        if (s.has_left_descent(i)) {
          out.push_back(i + 1);
          s = s.peel_left(i);
          again = true;
          break;
        }
      }
    }
    return out;
  }

  friend bool operator==(const SimpleBraid& a, const SimpleBraid& b) {
    return a.n_ == b.n_ && a.perm_ == b.perm_;
  }
  friend bool operator!=(const SimpleBraid& a, const SimpleBraid& b) { return !(a == b); }
  friend bool operator<(const SimpleBraid& a, const SimpleBraid& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.perm_ < b.perm_;
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (int i = 0; i < n_; ++i) h = h * 1000003u ^ perm_[i];
    return h;
  }

  static void check_n(int n) {
    if (n < 1 || n > kMaxStrands) throw MalformedInput("strand count out of range: " + std::to_string(n));
  }

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxStrands> perm_{};

  friend SimpleBraid from_raw(int n, const std::uint8_t* p);
};

inline SimpleBraid from_raw(int n, const std::uint8_t* p) {
  SimpleBraid s;
  s.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) s.perm_[i] = p[i];
  return s;
}

inline void same_strands(int a, int b) {
  if (a != b) throw StrandMismatch("strand counts differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

// Product a*b (a first) as permutations. Only a braid if the result is simple;
// callers guarantee that.
inline SimpleBraid compose(const SimpleBraid& a, const SimpleBraid& b) {
  same_strands(a.strands(), b.strands());
  int n = a.strands();
  std::array<std::uint8_t, kMaxStrands> p{};
  for (int i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(b[a[i]]);
  return from_raw(n, p.data());
}

inline SimpleBraid inverse_perm(const SimpleBraid& a) {
  int n = a.strands();
  std::array<std::uint8_t, kMaxStrands> p{};
  for (int i = 0; i < n; ++i) p[a[i]] = static_cast<std::uint8_t>(i);
  return from_raw(n, p.data());
}

// d(s) = s^-1 Delta
inline SimpleBraid complement(const SimpleBraid& s) {
  int n = s.strands();
  std::array<std::uint8_t, kMaxStrands> p{};
  for (int i = 0; i < n; ++i) p[s[i]] = static_cast<std::uint8_t>(n - 1 - i);
  return from_raw(n, p.data());
}

// Delta s^-1, so that left_complement(s) * s = Delta
inline SimpleBraid left_complement(const SimpleBraid& s) {
  int n = s.strands();
  std::array<std::uint8_t, kMaxStrands> inv{}, p{};
  for (int i = 0; i < n; ++i) inv[s[i]] = static_cast<std::uint8_t>(i);
  for (int j = 0; j < n; ++j) p[j] = inv[n - 1 - j];
  return from_raw(n, p.data());
}

// Delta^-k s Delta^k; only parity of k matters
inline SimpleBraid tau(const SimpleBraid& s, long long k = 1) {
  if (k % 2 == 0) return s;
  int n = s.strands();
  std::array<std::uint8_t, kMaxStrands> p{};
  for (int i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(n - 1 - s[n - 1 - i]);
  return from_raw(n, p.data());
}

// Word reversal; a simple braid reversed has the inverse permutation.
inline SimpleBraid reverse(const SimpleBraid& s) { return inverse_perm(s); }

// Greatest common prefix. Peel common left descents greedily; after peeling at
// i only descents at i-1 and i+1 can appear, so a stack of candidates suffices.
inline SimpleBraid meet(const SimpleBraid& s, const SimpleBraid& t) {
  same_strands(s.strands(), t.strands());
  int n = s.strands();
  std::array<std::uint8_t, kMaxStrands> a{}, b{};
  for (int i = 0; i < n; ++i) {
    a[i] = static_cast<std::uint8_t>(s[i]);
    b[i] = static_cast<std::uint8_t>(t[i]);
  }
  std::vector<int> stack;
  stack.reserve(2 * n);
  for (int i = n - 2; i >= 0; --i) stack.push_back(i);
  bool peeled = false;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    if (a[i] > a[i + 1] && b[i] > b[i + 1]) {
      std::swap(a[i], a[i + 1]);
      std::swap(b[i], b[i + 1]);
      peeled = true;
      if (i > 0) stack.push_back(i - 1);
      if (i + 2 < n) stack.push_back(i + 1);
    }
  }
  if (!peeled) return SimpleBraid::identity(n);
  // s = m * a  =>  pi_s = pi_a o pi_m  =>  pi_m = pi_a^-1 o pi_s
  std::array<std::uint8_t, kMaxStrands> ainv{}, m{};
  for (int i = 0; i < n; ++i) ainv[a[i]] = static_cast<std::uint8_t>(i);
  for (int i = 0; i < n; ++i) m[i] = ainv[s[i]];
  return from_raw(n, m.data());
}

// a is a prefix of b
inline bool left_divides(const SimpleBraid& a, const SimpleBraid& b) { return meet(a, b) == a; }

// a^-1 b for a prefix a of b
inline SimpleBraid left_quotient(const SimpleBraid& a, const SimpleBraid& b) {
  return compose(inverse_perm(a), b);
}

inline bool is_left_weighted(const SimpleBraid& a, const SimpleBraid& b) {
  return meet(complement(a), b).is_identity();
}

// all simple braids on n strands, in lexicographic permutation order
inline std::vector<SimpleBraid> all_simples(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<SimpleBraid> out;
  do {
    out.push_back(SimpleBraid::from_permutation(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace braidnt

template <>
struct std::hash<braidnt::SimpleBraid> {
  std::size_t operator()(const braidnt::SimpleBraid& s) const noexcept { return s.hash(); }
};

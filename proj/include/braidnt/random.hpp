#pragma once

#include <cstdint>
#include <random>

#include "word.hpp"

namespace braidnt {

using Rng = std::mt19937_64;

// Plain modulo draw; std distributions are not portable across standard
// libraries and outputs must be reproducible from a seed.
inline int draw(Rng& rng, int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); }

inline GeneratorWord random_word(int n, int len, Rng& rng, bool positive = false) {
  GeneratorWord w(n);
  if (n < 2) return w;
  for (int k = 0; k < len; ++k) {
    int i = 1 + draw(rng, n - 1);
    if (!positive && draw(rng, 2)) i = -i;
    w.letters.push_back(Letter::sigma(i));
  }
  return w;
}

}  // namespace braidnt

#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "simple_braid.hpp"

namespace braidnt {

struct Letter {
  enum Kind : std::uint8_t { Sigma, Delta };
  Kind kind = Sigma;
  int value = 0;  // +-i for Sigma, exponent for Delta

  static Letter sigma(int signed_index) { return {Sigma, signed_index}; }
  static Letter delta(int k) { return {Delta, k}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GeneratorWord {
  int n = 0;
  std::vector<Letter> letters;

  GeneratorWord() = default;
  explicit GeneratorWord(int strands) : n(strands) {}
  GeneratorWord(int strands, const std::vector<int>& signed_indices) : n(strands) {
    for (int v : signed_indices) letters.push_back(Letter::sigma(v));
    validate();
  }

  void validate() const {
    SimpleBraid::check_n(n);
    for (const Letter& l : letters) {
      if (l.kind == Letter::Sigma && (l.value == 0 || l.value >= n || -l.value >= n))
        throw MalformedInput("generator index out of range for n=" + std::to_string(n) + ": " +
                             std::to_string(l.value));
    }
  }

  bool is_positive() const {
    for (const Letter& l : letters)
      if (l.value < 0) return false;
    return true;
  }

  bool has_delta() const {
    for (const Letter& l : letters)
      if (l.kind == Letter::Delta) return true;
    return false;
  }

  // signed generator indices with Delta tokens expanded
  std::vector<int> expanded() const {
    std::vector<int> out;
    for (const Letter& l : letters) {
      if (l.kind == Letter::Sigma) {
        out.push_back(l.value);
        continue;
      }
      std::vector<int> d = SimpleBraid::delta(n).word();
      for (int k = 0; k < (l.value < 0 ? -l.value : l.value); ++k) {
        if (l.value > 0)
          out.insert(out.end(), d.begin(), d.end());
        else
          for (auto it = d.rbegin(); it != d.rend(); ++it) out.push_back(-*it);
      }
    }
    return out;
  }

  GeneratorWord& append(const GeneratorWord& w) {
    same_strands(n, w.n);
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return *this;
  }

  GeneratorWord inverse() const {
    GeneratorWord w(n);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back({it->kind, -it->value});
    return w;
  }

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;
};

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

// Tokens: s<i>, s<i>^<k>, D, D^<k>, or bare signed integers. Separators are
// whitespace and commas; surrounding brackets are ignored.
inline GeneratorWord parse_word(std::string_view text, int n) {
  GeneratorWord w(n);
  SimpleBraid::check_n(n);
  std::string buf;
  auto flush = [&]() {
    if (buf.empty()) return;
    std::string_view tok = buf;
    int exp = 1;
    std::string_view head = tok;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      head = tok.substr(0, caret);
      if (!detail::parse_int(tok.substr(caret + 1), exp)) throw MalformedInput("bad exponent in token '" + buf + "'");
    }
    if (head == "D" || head == "d") {
      if (exp != 0) w.letters.push_back(Letter::delta(exp));
    } else if (!head.empty() && (head.front() == 's' || head.front() == 'S')) {
      int i = 0;
      if (!detail::parse_int(head.substr(1), i) || i < 1 || i >= n)
        throw MalformedInput("bad generator '" + buf + "' for n=" + std::to_string(n));
      for (int k = 0; k < (exp < 0 ? -exp : exp); ++k) w.letters.push_back(Letter::sigma(exp < 0 ? -i : i));
    } else {
      int v = 0;
      if (tok.find('^') != std::string_view::npos || !detail::parse_int(head, v) || v == 0 || v >= n || -v >= n)
        throw MalformedInput("unknown token '" + buf + "'");
      w.letters.push_back(Letter::sigma(v));
    }
    buf.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']')
      flush();
    else
      buf.push_back(c);
  }
  flush();
  return w;
}

inline std::string to_string(const GeneratorWord& w) {
  std::string out;
  for (const Letter& l : w.letters) {
    if (!out.empty()) out += ' ';
    if (l.kind == Letter::Delta) {
      out += 'D';
      if (l.value != 1) out += "^" + std::to_string(l.value);
    } else {
      out += "s" + std::to_string(l.value < 0 ? -l.value : l.value);
      if (l.value < 0) out += "^-1";
    }
  }
  return out;
}

}  // namespace braidnt

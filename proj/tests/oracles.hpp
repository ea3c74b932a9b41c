#pragma once

// Brute-force reference implementations for the tests. Nothing here calls
// the library code under test except for converting results.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dyntop/symbolic.hpp"
#include "dyntop/timeset.hpp"

namespace oracle {

using Set = std::set<std::size_t>;
using Seq = std::vector<std::uint8_t>;

inline Set to_set(const dyntop::TimeSet& t) {
  Set out;
  for (std::size_t n = 0; n < t.horizon(); ++n) {
    if (t.contains(n)) out.insert(n);
  }
  return out;
}

inline dyntop::TimeSet from_set(std::size_t h, const Set& s) {
  dyntop::TimeSet t(h);
  for (auto m : s) t.insert(m);
  return t;
}

inline Set random_set(std::mt19937_64& rng, std::size_t h, double density) {
  std::bernoulli_distribution coin(density);
  Set out;
  for (std::size_t n = 0; n < h; ++n) {
    if (coin(rng)) out.insert(n);
  }
  return out;
}

inline Seq random_seq(std::mt19937_64& rng, std::size_t alphabet, std::size_t len) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(alphabet) - 1);
  Seq out(len);
  for (auto& s : out) s = static_cast<std::uint8_t>(d(rng));
  return out;
}

inline Seq digits(const std::string& s) {
  Seq out;
  for (char c : s) out.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

inline bool occurs_at(const Seq& x, std::size_t p, const Seq& w) {
  if (p + w.size() > x.size()) return false;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (x[p + t] != w[t]) return false;
  }
  return true;
}

// Every sequence of the given length over the alphabet.
inline std::vector<Seq> all_sequences(std::size_t alphabet, std::size_t len) {
  std::vector<Seq> out{Seq{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Seq> next;
    for (const auto& s : out) {
      for (std::size_t a = 0; a < alphabet; ++a) {
        auto t = s;
        t.push_back(static_cast<std::uint8_t>(a));
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Full shift N(C[u], C[v]) by enumerating every sequence of the needed
// length. Only for tiny horizons.
inline Set full_shift_transfer(std::size_t alphabet, const Seq& u, const Seq& v, std::size_t h) {
  Set out;
  for (std::size_t n = 0; n < h; ++n) {
    const std::size_t len = std::max(u.size(), n + v.size());
    for (const auto& x : all_sequences(alphabet, len)) {
      if (occurs_at(x, 0, u) && occurs_at(x, n, v)) {
        out.insert(n);
        break;
      }
    }
  }
  return out;
}

// Full shift S(C[u], k): two sequences in C[u] differing inside [n, n+k).
inline Set full_shift_spread(std::size_t alphabet, const Seq& u, std::size_t k, std::size_t h) {
  Set out;
  for (std::size_t n = 0; n < h; ++n) {
    const std::size_t len = std::max(u.size(), n + k);
    std::set<Seq> windows;
    for (const auto& x : all_sequences(alphabet, len)) {
      if (occurs_at(x, 0, u)) windows.insert(Seq(x.begin() + static_cast<std::ptrdiff_t>(n), x.begin() + static_cast<std::ptrdiff_t>(n + k)));
      if (windows.size() > 1) break;
    }
    if (windows.size() > 1) out.insert(n);
  }
  return out;
}

// Orbit closure N(C[u], C[v]) from occurrence pairs in the stored prefix.
inline Set orbit_transfer(const Seq& x, const Seq& u, const Seq& v, std::size_t h) {
  Set out;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!occurs_at(x, p, u)) continue;
    for (std::size_t n = 0; n < h; ++n) {
      if (occurs_at(x, p + n, v)) out.insert(n);
    }
  }
  return out;
}

inline Set visits(const Seq& x, const Seq& w, std::size_t h) {
  Set out;
  for (std::size_t n = 0; n < h; ++n) {
    if (occurs_at(x, n, w)) out.insert(n);
  }
  return out;
}

inline Seq to_seq(const dyntop::Word& w) { return Seq(w.symbols().begin(), w.symbols().end()); }

}  // namespace oracle

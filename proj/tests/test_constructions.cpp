#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "dyntop/constructions.hpp"
#include "dyntop/error.hpp"
#include "dyntop/limits.hpp"
#include "oracles.hpp"

using namespace dyntop;

namespace {

Word w2(const char* digits) { return Word::parse(2, digits); }

std::string str(std::span<const Symbol> s) {
  std::string out;
  for (auto c : s) out.push_back(static_cast<char>('0' + c));
  return out;
}

// The block formula written out term by term from the decompositions,
// independently of combination_block.
std::string formula(const std::string& w1, const std::string& w2s, std::size_t k) {
  struct Parts {
    char a;
    std::size_t i;
    std::string q;
    char b;
    std::size_t j;
  };
  auto parse = [](const std::string& w) {
    std::size_t i = 1;
    while (i < w.size() && w[i] == w[0]) ++i;
    if (i == w.size()) return Parts{w[0], i, "", '0', 0};
    std::size_t j = 1;
    while (w[w.size() - 1 - j] == w.back() && w.size() - 1 - j >= i) ++j;
    return Parts{w[0], i, w.substr(i, w.size() - i - j), w.back(), j};
  };
  const auto p = parse(w1);
  const auto r = parse(w2s);
  auto run = [](char c, std::size_t n) { return std::string(n, c); };
  std::string out;
  out += run(p.a, k + p.i) + p.q + run(p.b, p.j + k);
  out += run(r.a, k + r.i) + r.q + run(r.b, k + r.j);
  out += run(p.a, k + p.i) + p.q + run(p.b, p.j + k + 1);
  out += run(r.a, k + r.i) + r.q + run(r.b, k + r.j);
  return out;
}

std::string random_binary(std::mt19937_64& rng, std::size_t len) {
  std::string s;
  for (std::size_t t = 0; t < len; ++t) s.push_back(static_cast<char>('0' + rng() % 2));
  return s;
}

}  // namespace

TEST_CASE("decompose_block") {
  auto d = decompose_block(w2("111"));
  CHECK(d.a == 1);
  CHECK(d.i == 3);
  CHECK(d.q.empty());
  CHECK(d.b == 0);
  CHECK(d.j == 0);
  d = decompose_block(w2("10"));
  CHECK(d.a == 1);
  CHECK(d.i == 1);
  CHECK(d.q.empty());
  CHECK(d.b == 0);
  CHECK(d.j == 1);
  d = decompose_block(w2("0110"));
  CHECK(d.a == 0);
  CHECK(d.i == 1);
  CHECK(str(d.q) == "11");
  CHECK(d.b == 0);
  CHECK(d.j == 1);
}

TEST_CASE("combination_block") {
  CHECK(combination_block(w2("10"), w2("10"), 1).str() == "11001100110001100");
  CHECK(combination_block(w2("0"), w2("0"), 1).str() == std::string(13, '0'));
  CHECK_THROWS_AS(combination_block(Word::parse(3, "2"), Word::parse(3, "0"), 1), DomainError);
  CHECK_THROWS_AS(combination_block(w2("0"), w2("1"), 0), DomainError);
}

TEST_CASE("a_sequence_prefix") {
  CHECK(str(a_block(1)) == "10");
  const auto a2 = a_sequence_prefix(2, 4);
  CHECK(str(a2.symbols) == "1001");
  CHECK_FALSE(a2.truncated);
  // A_1 0 1 then c("0", "0", 1).
  const auto first = a_sequence_prefix(2, 4 + 13);
  CHECK(str(first.symbols).substr(4) == std::string(13, '0'));
  CHECK(a_block(2).size() == 133);
  const auto full2 = a_sequence_prefix(2, 1000);
  CHECK(full2.truncated);
  CHECK(full2.symbols.size() == 133);
  const auto a3 = a_sequence_prefix(3, 5000);
  const auto b2 = a_block(2);
  CHECK(std::equal(b2.begin(), b2.end(), a3.symbols.begin()));
  REQUIRE(a3.stage_lengths.size() >= 3);
  CHECK(a3.stage_lengths[2] == 13198481090ULL);
  CHECK_THROWS_AS(a_sequence_prefix(5, 10), DomainError);
  CHECK_THROWS_AS(a_sequence_prefix(0, 10), DomainError);
}

TEST_CASE("mixing_tail_bound") {
  CHECK(mixing_tail_bound(w2("10"), w2("10"), 1) == 4);
  // "01" first appears in A_2.
  CHECK(mixing_tail_bound(w2("01"), w2("10"), 2) == 2 + 2);
  CHECK_THROWS_AS(mixing_tail_bound(w2("01"), w2("10"), 1), DomainError);
  CHECK_THROWS_AS(mixing_tail_bound(w2("0"), w2("1"), 3), DomainError);
}

TEST_CASE("champernowne_point") {
  const auto c = champernowne_point(2, 2, 12);
  CHECK(c.str() == "010001101100");
  CHECK(champernowne_block_length(2, 2) == 10);
  const auto big = champernowne_point(3, 4, champernowne_block_length(3, 4));
  const oracle::Seq x(big.prefix().begin(), big.prefix().end());
  for (std::size_t len = 1; len <= 4; ++len) {
    for (const auto& w : all_words(3, len)) {
      const auto hits = oracle::visits(x, oracle::to_seq(w), x.size());
      CHECK(!hits.empty());
      if (len <= 3) CHECK(hits.size() >= 2);
    }
  }
  CHECK_THROWS_AS(champernowne_point(2, 4, 10), DomainError);
}

TEST_CASE("fip_counterexample_point") {
  const std::size_t h = 20;
  const auto evens = TimeSet::from_predicate(h, [](std::size_t n) { return n % 2 == 0; });
  const auto odds = evens.complement();
  const auto x = fip_counterexample_point({evens, odds});
  CHECK(x.str().substr(0, 6) == "101010");
  const auto sys = SymbolicSystem::full_shift(2, h, 2);
  CHECK(omega_approx(sys, x, FamilySpec(h, {evens, odds}), 1).empty());

  const auto m3 = TimeSet::from_predicate(h, [](std::size_t n) { return n % 3 == 0; });
  try {
    (void)fip_counterexample_point({evens, m3});
    FAIL("expected FipHoldsError");
  } catch (const FipHoldsError& e) {
    CHECK(e.witness() == 0);
  }
}

// ---------------------------------------------------------------------------
// Properties.

TEST_CASE("combination blocks follow the formula") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_binary(rng, 1 + rng() % 8);
    const auto b = random_binary(rng, 1 + rng() % 8);
    const std::size_t k = 1 + rng() % 4;
    const auto c = combination_block(w2(a.c_str()), w2(b.c_str()), k);
    CHECK(c.str() == formula(a, b, k));
    CHECK(c.size() == 2 * a.size() + 2 * b.size() + 8 * k + 1);
    const auto d = decompose_block(w2(a.c_str()));
    std::string re(d.i, static_cast<char>('0' + d.a));
    re += str(d.q) + std::string(d.j, static_cast<char>('0' + d.b));
    CHECK(re == a);
  }
}

TEST_CASE("subblocks are distinct and ordered") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_binary(rng, 1 + rng() % 20);
    std::vector<Symbol> sym;
    for (char c : s) sym.push_back(static_cast<Symbol>(c - '0'));
    const auto sb = subblocks(sym);
    std::set<std::pair<std::size_t, std::string>> ref;
    for (std::size_t p = 0; p < s.size(); ++p) {
      for (std::size_t l = 1; p + l <= s.size(); ++l) ref.insert({l, s.substr(p, l)});
    }
    REQUIRE(sb.size() == ref.size());
    std::size_t idx = 0;
    for (const auto& [l, w] : ref) CHECK(sb[idx++].str() == w);
  }
  CHECK(subblocks(a_block(2)).size() == 7729);
}

TEST_CASE("long windows contain a constant run") {
  const auto a = a_sequence_prefix(3, 100000);
  const std::string s = str(a.symbols);
  const std::size_t lens[] = {2, 133};
  for (std::size_t k = 1; k <= 2; ++k) {
    const std::size_t window = lens[k - 1] + 2 * k;
    const std::string zeros(k, '0'), ones(k, '1');
    // Windows starting past stage k.
    for (std::size_t p = lens[k - 1]; p + window <= s.size(); p += 1) {
      const auto w = std::string_view(s).substr(p, window);
      const bool ok = w.find(zeros) != std::string_view::npos || w.find(ones) != std::string_view::npos;
      if (!ok) {
        CHECK(ok);
        break;
      }
    }
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(s.find(std::string(k, '0')) != std::string::npos);
    CHECK(s.find(std::string(k, '1')) != std::string::npos);
  }
}

TEST_CASE("transfer sets contain the tail bounds") {
  const auto a = a_sequence_prefix(3, 100000);
  const std::size_t h = 4096;
  const auto sys = SymbolicSystem::orbit_closure(2, a.symbols, h, 8);
  const auto a1 = subblocks(a_block(1));
  for (const auto& u : a1) {
    for (const auto& v : a1) {
      const auto bound = mixing_tail_bound(u, v, 1);
      const auto n = sys.transfer_times(OpenSet::cylinder(u), OpenSet::cylinder(v)).times;
      CHECK(TimeSet::range(h, bound, h).is_subset_of(n));
    }
  }
}

TEST_CASE("stage-two blocks witness their two gaps") {
  // c(W1, W2, 2) sits inside A_3 and places W2 at distances |W1| + 4 and
  // |W1| + 5 after W1. Larger gaps for A_2 pairs come from stages past A_3,
  // which cannot be streamed. W1 ranges over the first six subblocks so
  // that its row of blocks starts within the prefix.
  const auto a = a_sequence_prefix(3, 5000000);
  const std::string s = str(a.symbols);
  const auto sb = subblocks(a_block(2));
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& u = sb[rng() % 6];
    const auto& v = sb[rng() % 126];
    CHECK(mixing_tail_bound(u, v, 2) <= u.size() + 4);
    CHECK(s.find(combination_block(u, v, 2).str()) != std::string::npos);
    const std::string us = u.str(), vs = v.str();
    for (std::size_t gap : {u.size() + 4, u.size() + 5}) {
      bool found = false;
      for (auto p = s.find(us); p != std::string::npos && !found; p = s.find(us, p + 1)) {
        found = s.compare(p + gap, vs.size(), vs) == 0;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("counterexample points have empty omega at length one") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t h = 64 + rng() % 200;
    const std::size_t k = 2 + rng() % 5;
    std::vector<TimeSet> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(oracle::from_set(h, oracle::random_set(rng, h, 0.6)));
    if (FamilySpec(h, gens).core().first()) continue;
    const auto x = fip_counterexample_point(gens);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t n = 0; n < h; ++n) {
        if (x[n] == i) CHECK_FALSE(gens[i].contains(n));
      }
    }
    const auto sys = SymbolicSystem::full_shift(std::max<std::size_t>(k, 2), h, 1);
    CHECK(omega_approx(sys, x, FamilySpec(h, gens), 1).empty());
  }
}

#include <doctest.h>

#include <random>

#include "dyntop/error.hpp"
#include "dyntop/timeset.hpp"
#include "oracles.hpp"

using namespace dyntop;

namespace {

TimeSet evens(std::size_t h) {
  return TimeSet::from_predicate(h, [](std::size_t n) { return n % 2 == 0; });
}

}  // namespace

TEST_CASE("shift_plus") {
  const auto f = TimeSet::from_members(10, {0, 2, 4});
  CHECK(shift_plus(f, 0).set == f);
  CHECK(shift_plus(f, 0).clipped == 0);
  CHECK(shift_plus(f, 3).set == TimeSet::from_members(10, {3, 5, 7}));
  const auto r = shift_plus(TimeSet::from_members(10, {8, 9}), 3);
  CHECK(r.set.empty());
  CHECK(r.clipped == 2);
  CHECK_THROWS_AS(shift_plus(f, 10), HorizonError);
}

TEST_CASE("shift_minus") {
  const auto f = TimeSet::from_members(10, {3, 5, 8});
  CHECK(shift_minus(f, 0) == f);
  CHECK(shift_minus(f, 2) == TimeSet::from_members(10, {1, 3, 6}));
  CHECK(shift_minus(TimeSet::from_members(10, {0, 1}), 2).empty());
  CHECK_THROWS_AS(shift_minus(f, 11), HorizonError);
}

TEST_CASE("thick_at") {
  CHECK(thick_at(TimeSet::full(50), 5));
  CHECK_FALSE(thick_at(evens(100), 2));
  CHECK(thick_at(TimeSet::from_members(10, {4, 5, 6, 9}), 3));
  CHECK_THROWS_AS(thick_at(evens(10), 11), DomainError);
}

TEST_CASE("syndetic_with_gap") {
  CHECK(syndetic_with_gap(evens(100), 1));
  CHECK_FALSE(syndetic_with_gap(evens(100), 0));
  auto f = TimeSet::range(100, 10, 100);
  f.insert(0);
  f.insert(7);
  CHECK(syndetic_with_gap(f, 9));
  CHECK_FALSE(syndetic_with_gap(f, 1));
}

TEST_CASE("cofinite_from") {
  CHECK(cofinite_from(TimeSet::full(40)) == 0);
  auto f = TimeSet::range(40, 5, 40);
  f.insert(0);
  CHECK(cofinite_from(f) == 5);
  CHECK_FALSE(cofinite_from(evens(40)).has_value());
}

TEST_CASE("thickly_syndetic_at") {
  CHECK(thickly_syndetic_at(TimeSet::full(50), 3, 4));
  CHECK_FALSE(thickly_syndetic_at(evens(50), 2, 10));
  const auto nonsquares = TimeSet::from_predicate(200, [](std::size_t n) {
    for (std::size_t r = 0; r * r <= n; ++r) {
      if (r * r == n) return false;
    }
    return true;
  });
  CHECK(thickly_syndetic_at(nonsquares, 3, 5));
  CHECK_THROWS_AS(thickly_syndetic_at(evens(10), 5, 5), DomainError);
}

TEST_CASE("find_fs_subset") {
  const auto a = TimeSet::from_members(10, {1, 2, 3});
  const auto w = find_fs_subset(a, 2);
  REQUIRE(w);
  CHECK(*w == std::vector<std::size_t>{1, 2});

  const auto e = evens(64);
  const auto w3 = find_fs_subset(e, 3);
  REQUIRE(w3);
  CHECK(verify_fs_witness(e, *w3));

  CHECK_FALSE(find_fs_subset(TimeSet::from_members(10, {1, 2, 4}), 2));
  CHECK(find_fs_subset(TimeSet::from_members(10, {4}), 1) == std::vector<std::size_t>{4});
  CHECK_FALSE(find_fs_subset(TimeSet::from_members(10, {0}), 1));
  CHECK_THROWS_AS(find_fs_subset(e, 0), DomainError);
  CHECK_THROWS_AS(find_fs_subset(e, 21), DomainError);
}

TEST_CASE("errors and edge cases") {
  CHECK_THROWS_AS(TimeSet(0), DomainError);
  TimeSet t(5);
  CHECK_THROWS_AS(t.insert(5), HorizonError);
  CHECK_THROWS_AS((void)t.intersects(TimeSet(6)), HorizonError);
  const std::vector<std::pair<std::size_t, std::size_t>> runs{{3, 4}};
  CHECK_THROWS_AS(TimeSet::from_runs(6, runs), HorizonError);
  CHECK(TimeSet::from_runs(7, runs) == TimeSet::range(7, 3, 7));
  CHECK(TimeSet(1).complement() == TimeSet::full(1));
  // Word boundary at 64.
  const auto big = TimeSet::range(130, 60, 70);
  CHECK(shift_minus(big, 5) == TimeSet::range(130, 55, 65));
  CHECK(shift_plus(big, 64).set == TimeSet::range(130, 124, 130));
  CHECK(shift_plus(big, 64).clipped == 4);
}

// ---------------------------------------------------------------------------
// Properties against a std::set reference.

TEST_CASE("set operations agree with the reference") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = 1 + rng() % 200;
    const auto a = oracle::random_set(rng, h, 0.4);
    const auto b = oracle::random_set(rng, h, 0.6);
    const auto ta = oracle::from_set(h, a);
    const auto tb = oracle::from_set(h, b);
    oracle::Set inter, uni, diff;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(inter, inter.end()));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(uni, uni.end()));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(diff, diff.end()));
    CHECK(oracle::to_set(ta & tb) == inter);
    CHECK(oracle::to_set(ta | tb) == uni);
    CHECK(oracle::to_set(ta - tb) == diff);
    CHECK(ta.intersects(tb) == !inter.empty());
    CHECK(ta.is_subset_of(tb) == std::includes(b.begin(), b.end(), a.begin(), a.end()));
    CHECK(ta.size() == a.size());
    const std::size_t i = rng() % h;
    oracle::Set plus, minus;
    std::size_t clipped = 0;
    for (auto m : a) {
      if (m + i < h) {
        plus.insert(m + i);
      } else {
        ++clipped;
      }
      if (m >= i) minus.insert(m - i);
    }
    CHECK(oracle::to_set(shift_plus(ta, i).set) == plus);
    CHECK(shift_plus(ta, i).clipped == clipped);
    CHECK(oracle::to_set(shift_minus(ta, i)) == minus);
  }
}

TEST_CASE("shift round trips") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t h = 2 + rng() % 300;
    const auto f = oracle::from_set(h, oracle::random_set(rng, h, 0.3));
    const std::size_t i = rng() % h;
    const auto plus = shift_plus(f, i);
    if (plus.clipped == 0) CHECK(shift_minus(plus.set, i) == f);
    CHECK(shift_plus(shift_minus(f, i), i).set.is_subset_of(f));
  }
}

TEST_CASE("thick and syndetic sets meet") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t h = 20 + rng() % 200;
    const auto f = oracle::from_set(h, oracle::random_set(rng, h, 0.7));
    const auto g = oracle::from_set(h, oracle::random_set(rng, h, 0.3));
    const std::size_t run = longest_run(f);
    const auto gap = min_syndetic_gap(g);
    if (run > 0 && gap && run > *gap) CHECK(f.intersects(g));
  }
}

TEST_CASE("fs witnesses verify and searches agree with brute force") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t h = 8 + rng() % 40;
    const auto s = oracle::random_set(rng, h, 0.5);
    const auto f = oracle::from_set(h, s);
    // Pairs p < q with p, q, p + q all in F.
    bool pair_exists = false;
    for (std::size_t p = 1; p < h && !pair_exists; ++p) {
      for (std::size_t q = p + 1; p + q < h && !pair_exists; ++q) {
        pair_exists = s.count(p) && s.count(q) && s.count(p + q);
      }
    }
    const auto w = find_fs_subset(f, 2);
    CHECK(w.has_value() == pair_exists);
    if (w) CHECK(verify_fs_witness(f, *w));
    if (auto w3 = find_fs_subset(f, 3)) CHECK(verify_fs_witness(f, *w3));
  }
}

TEST_CASE("run starts and thickly syndetic agree with a window scan") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = 10 + rng() % 120;
    const auto s = oracle::random_set(rng, h, 0.75);
    const auto f = oracle::from_set(h, s);
    const std::size_t run = 1 + rng() % 4;
    const std::size_t gap = rng() % (h - run - 1);
    std::vector<std::size_t> starts;
    for (std::size_t p = 0; p + run <= h; ++p) {
      bool all = true;
      for (std::size_t t = 0; t < run; ++t) all = all && s.count(p + t);
      if (all) starts.push_back(p);
    }
    bool synd = true;
    const std::size_t positions = h - run + 1;
    for (std::size_t i = 0; i + gap < positions; ++i) {
      const bool hit = std::any_of(starts.begin(), starts.end(), [&](std::size_t p) { return p >= i && p <= i + gap; });
      synd = synd && hit;
    }
    CHECK(thickly_syndetic_at(f, run, gap) == synd);
  }
}

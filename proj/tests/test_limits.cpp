#include <doctest.h>

#include <algorithm>
#include <random>

#include "dyntop/constructions.hpp"
#include "dyntop/error.hpp"
#include "dyntop/io.hpp"
#include "dyntop/limits.hpp"
#include "oracles.hpp"

using namespace dyntop;

namespace {

Word w2(const char* digits) { return Word::parse(2, digits); }

std::vector<std::string> strs(const OmegaApprox& o) {
  std::vector<std::string> out;
  for (const auto& w : o.cells) out.push_back(w.str());
  return out;
}

TimeSet multiples(std::size_t h, std::size_t m, std::size_t offset = 0) {
  return TimeSet::from_predicate(h, [=](std::size_t n) { return n % m == offset; });
}

std::vector<Symbol> as_symbols(const oracle::Seq& s) { return std::vector<Symbol>(s.begin(), s.end()); }

// Reference: w survives iff for each generator some n in it has x reading
// w at n.
std::set<std::string> omega_ref(const oracle::Seq& x, const std::vector<oracle::Set>& gens, std::size_t len,
                                std::size_t h) {
  std::set<std::string> out;
  for (std::size_t p = 0; p < h; ++p) {
    const oracle::Seq w(x.begin() + static_cast<std::ptrdiff_t>(p), x.begin() + static_cast<std::ptrdiff_t>(p + len));
    bool all = true;
    for (const auto& g : gens) {
      bool hit = false;
      for (auto n : g) hit = hit || oracle::occurs_at(x, n, w);
      all = all && hit;
    }
    if (all) {
      std::string s;
      for (auto c : w) s.push_back(static_cast<char>('0' + c));
      out.insert(s);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("omega_approx") {
  const std::size_t h = 20;
  const auto sys = SymbolicSystem::periodic_orbit(w2("01"), h, 4);
  const auto x = Point::periodic(w2("01"), h + 4);
  CHECK(strs(omega_approx(sys, x, FamilySpec(h, {multiples(h, 2)}), 2)) == std::vector<std::string>{"01"});
  CHECK(omega_approx(sys, x, FamilySpec(h, {multiples(h, 2), multiples(h, 2, 1)}), 2).empty());
  const auto all = omega_approx(sys, x, FamilySpec(h, {TimeSet::full(h)}), 2);
  CHECK(strs(all) == std::vector<std::string>{"01", "10"});
  CHECK(all.exactness == Exactness::exact);
  CHECK_THROWS_AS(omega_approx(sys, x, FamilySpec(h + 1, {TimeSet::full(h + 1)}), 2), HorizonError);
}

TEST_CASE("omega_T_approx") {
  const std::size_t h = 40;
  const auto per = SymbolicSystem::periodic_orbit(w2("01"), h, 4);
  CHECK(strs(omega_T_approx(per, Point::periodic(w2("01"), h + 4), 2, h / 4)) ==
        std::vector<std::string>{"01", "10"});
  std::vector<Symbol> one_zeros(h + 8, 0);
  one_zeros[0] = 1;
  const auto sys = SymbolicSystem::orbit_closure(2, one_zeros, h, 4);
  CHECK(strs(omega_T_approx(sys, sys.generating_point(), 1, h / 2)) == std::vector<std::string>{"0"});
  CHECK_THROWS_AS(omega_T_approx(sys, sys.generating_point(), 1, h), DomainError);
}

TEST_CASE("is_kF_transitive_point") {
  const std::size_t h = 64;
  const auto full = SymbolicSystem::full_shift(2, h, 4);
  const auto c = champernowne_point(2, 3, h + 10);
  CHECK(is_kF_transitive_point(full, c, n_family(full, 1), 1));
  CHECK_FALSE(is_kF_transitive_point(full, Point::periodic(w2("01"), h + 4), FamilySpec(h, {TimeSet::full(h)}), 2));
}

TEST_CASE("numeric omega") {
  const auto rot = TorusSystem::rotation(Alpha::golden(), 0.0, 2000, 10);
  const auto all = omega_approx(rot, tails_family(2000, 100));
  CHECK(all.cells.size() == 10);
  // The orbit visits [0, 0.1) only at the times listed in a box's own
  // visit set, so that set alone pins the omega to that box.
  const auto visits = rot.visit_times({{0, 0}}).times;
  const auto pinned = omega_approx(rot, FamilySpec(2000, {visits}));
  REQUIRE(pinned.cells.size() == 1);
  CHECK(pinned.cells[0] == GridBox{{0, 0}});
}

// ---------------------------------------------------------------------------
// Properties.

TEST_CASE("omega_approx matches a direct scan") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t h = 20 + rng() % 30;
    const std::size_t len = 1 + rng() % 3;
    const auto x = oracle::random_seq(rng, 2, h + 10);
    const auto sys = SymbolicSystem::orbit_closure(2, as_symbols(x), h, 4);
    std::vector<oracle::Set> gens;
    std::vector<TimeSet> tgens;
    for (std::size_t i = 0; i < 1 + rng() % 3; ++i) {
      auto s = oracle::random_set(rng, h, 0.15);
      if (s.empty()) s.insert(rng() % h);
      gens.push_back(s);
      tgens.push_back(oracle::from_set(h, s));
    }
    const auto o = omega_approx(sys, sys.generating_point(), FamilySpec(h, tgens), len);
    const auto got = strs(o);
    // Generators dropped as supersets do not change the reference.
    CHECK(std::set<std::string>(got.begin(), got.end()) == omega_ref(x, gens, len, h));
  }
}

TEST_CASE("a common element of the generators forces a nonempty omega") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t h = 30;
    const std::size_t len = 1 + rng() % 4;
    const auto x = oracle::random_seq(rng, 3, h + 8);
    const auto sys = SymbolicSystem::orbit_closure(3, as_symbols(x), h, 4);
    const std::size_t common = rng() % (h - len + 1);
    std::vector<TimeSet> gens;
    for (int i = 0; i < 3; ++i) {
      auto g = oracle::from_set(h, oracle::random_set(rng, h, 0.2));
      g.insert(common);
      gens.push_back(g);
    }
    const FamilySpec fam(h, gens);
    const auto w = has_fip(fam);
    REQUIRE(w);
    if (*w + len > h) continue;
    const auto o = omega_approx(sys, sys.generating_point(), fam, len);
    CHECK_FALSE(o.empty());
    const Word at_w(3, std::vector<Symbol>(x.begin() + static_cast<std::ptrdiff_t>(*w),
                                           x.begin() + static_cast<std::ptrdiff_t>(*w + len)));
    CHECK(std::find(o.cells.begin(), o.cells.end(), at_w) != o.cells.end());
  }
}

TEST_CASE("shifting the point keeps suffixes of omega words") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t h = 40;
    const std::size_t len = 2 + rng() % 3;
    const auto x = oracle::random_seq(rng, 2, h + 12);
    const auto sys = SymbolicSystem::orbit_closure(2, as_symbols(x), h, 5);
    std::vector<TimeSet> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(oracle::from_set(h, oracle::random_set(rng, h, 0.3)));
    if (std::any_of(gens.begin(), gens.end(), [](const TimeSet& g) { return g.empty(); })) continue;
    const FamilySpec fam(h, gens);
    const auto p = sys.generating_point();
    const auto o = omega_approx(sys, p, fam, len);
    const auto shifted = omega_approx(sys, p.shifted(1), fam, len - 1);
    for (const auto& w : o.cells) {
      CHECK(std::find(shifted.cells.begin(), shifted.cells.end(), w.suffix_from(1)) != shifted.cells.end());
    }
  }
}

TEST_CASE("tails family omega lies inside the tail-window omega") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t h = 60;
    const std::size_t t0 = 10 + rng() % 40;
    const std::size_t len = 1 + rng() % 3;
    const auto x = oracle::random_seq(rng, 2, h + 6);
    const auto sys = SymbolicSystem::orbit_closure(2, as_symbols(x), h, 4);
    std::vector<TimeSet> tails;
    for (std::size_t t = 0; t <= t0; ++t) tails.push_back(TimeSet::range(h, t, h));
    const auto o = omega_approx(sys, sys.generating_point(), FamilySpec(h, tails), len);
    const auto ot = omega_T_approx(sys, sys.generating_point(), len, h - t0);
    for (const auto& w : o.cells) CHECK(std::find(ot.cells.begin(), ot.cells.end(), w) != ot.cells.end());
  }
}

TEST_CASE("omega shrinks with more generators and with longer words") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t h = 50;
    const auto x = oracle::random_seq(rng, 2, h + 8);
    const auto sys = SymbolicSystem::orbit_closure(2, as_symbols(x), h, 5);
    std::vector<TimeSet> gens{oracle::from_set(h, oracle::random_set(rng, h, 0.2))};
    gens[0].insert(rng() % h);
    const auto small = FamilySpec(h, gens);
    gens.push_back(oracle::from_set(h, oracle::random_set(rng, h, 0.2)));
    gens.back().insert(rng() % h);
    const auto big = FamilySpec(h, gens);
    const std::size_t len = 2 + rng() % 3;
    const auto p = sys.generating_point();
    const auto o_small = omega_approx(sys, p, small, len);
    const auto o_big = omega_approx(sys, p, big, len);
    for (const auto& w : o_big.cells) CHECK(std::find(o_small.cells.begin(), o_small.cells.end(), w) != o_small.cells.end());
    const auto shorter = omega_approx(sys, p, small, len - 1);
    for (const auto& w : o_small.cells) {
      CHECK(std::find(shorter.cells.begin(), shorter.cells.end(), w.prefix(len - 1)) != shorter.cells.end());
    }
  }
}

TEST_CASE("transitive points stay transitive along the orbit") {
  const std::size_t h = 128;
  const auto full = SymbolicSystem::full_shift(2, h, 4);
  const auto c = champernowne_point(2, 7, 2000);
  for (std::size_t len = 2; len <= 3; ++len) {
    const auto fam = n_family(full, 2);
    REQUIRE(is_kF_transitive_point(full, c, fam, len));
    for (std::size_t k = 1; k <= 20; ++k) CHECK(is_kF_transitive_point(full, c.shifted(k), fam, len - 1));
  }
}

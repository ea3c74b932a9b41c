#include "dyntop/families.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dyntop/error.hpp"

namespace dyntop {

namespace {

void require_horizon(std::size_t expected, const TimeSet& s) {
  if (s.horizon() != expected) {
    throw HorizonError("set horizon " + std::to_string(s.horizon()) + " does not match family horizon " +
                       std::to_string(expected));
  }
}

// Drop duplicates and supersets of other generators; keep input order.
std::vector<TimeSet> antichain(const std::vector<TimeSet>& gens) {
  std::vector<TimeSet> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i == j || !gens[j].is_subset_of(gens[i])) continue;
      // gens[j] is contained in gens[i]; on a tie keep the earlier one.
      redundant = !(gens[j] == gens[i]) || j < i;
    }
    if (!redundant) out.push_back(gens[i]);
  }
  return out;
}

}  // namespace

FamilySpec::FamilySpec(std::size_t horizon, std::vector<TimeSet> generators) : horizon_(horizon) {
  if (generators.empty()) throw DomainError("a family needs at least one generator");
  for (const auto& g : generators) require_horizon(horizon, g);
  generators_ = antichain(generators);
}

bool FamilySpec::member(const TimeSet& f) const {
  require_horizon(horizon_, f);
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const TimeSet& g) { return g.is_subset_of(f); });
}

bool FamilySpec::dual_member(const TimeSet& f) const {
  require_horizon(horizon_, f);
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const TimeSet& g) { return g.intersects(f); });
}

TimeSet FamilySpec::core() const {
  TimeSet acc = generators_.front();
  for (const auto& g : generators_) acc &= g;
  return acc;
}

FamilySpec interaction(const FamilySpec& a, const FamilySpec& b) {
  if (a.horizon() != b.horizon()) throw HorizonError("interaction of families with different horizons");
  std::vector<TimeSet> gens;
  gens.reserve(a.generators().size() * b.generators().size());
  for (const auto& ga : a.generators()) {
    for (const auto& gb : b.generators()) gens.push_back(ga & gb);
  }
  return FamilySpec(a.horizon(), std::move(gens));
}

std::optional<std::size_t> has_fip(const FamilySpec& fam) { return fam.core().first(); }

bool is_free_at_horizon(const FamilySpec& fam) { return fam.core().empty(); }

std::size_t min_intersection_size(const FamilySpec& fam) { return fam.core().size(); }

bool is_proper(const FamilySpec& fam) {
  return std::none_of(fam.generators().begin(), fam.generators().end(),
                      [](const TimeSet& g) { return g.empty(); });
}

bool is_filter(const FamilySpec& fam) {
  if (!is_proper(fam)) return false;
  const auto& gens = fam.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!fam.member(gens[i] & gens[j])) return false;
    }
  }
  return true;
}

namespace {

void check_invariance_bound(const FamilySpec& fam, std::size_t imax) {
  if (imax == 0 || 2 * imax >= fam.horizon()) {
    throw DomainError("invariance bound must satisfy 1 <= imax < H/2");
  }
}

template <class Shift>
InvarianceReport invariance(const FamilySpec& fam, std::size_t imax, Shift shift) {
  check_invariance_bound(fam, imax);
  const std::size_t h = fam.horizon();
  InvarianceReport report;
  for (std::size_t g = 0; g < fam.generators().size(); ++g) {
    for (std::size_t i = 1; i <= imax; ++i) {
      TimeSet shifted = shift(fam.generators()[g], i);
      const TimeSet pad = TimeSet::range(h, h - i, h);
      report.padded += (pad - shifted).size();
      shifted |= pad;
      if (!fam.member(shifted) && !report.failure) {
        report.holds = false;
        report.failure = std::pair{g, i};
      }
    }
  }
  return report;
}

}  // namespace

InvarianceReport plus_invariance(const FamilySpec& fam, std::size_t imax) {
  return invariance(fam, imax, [](const TimeSet& g, std::size_t i) { return shift_plus(g, i).set; });
}

InvarianceReport minus_invariance(const FamilySpec& fam, std::size_t imax) {
  return invariance(fam, imax, [](const TimeSet& g, std::size_t i) { return shift_minus(g, i); });
}

bool plus_invariant_upto(const FamilySpec& fam, std::size_t imax) {
  return plus_invariance(fam, imax).holds;
}

bool minus_invariant_upto(const FamilySpec& fam, std::size_t imax) {
  return minus_invariance(fam, imax).holds;
}

bool tau_member(const FamilySpec& fam, const TimeSet& f, std::size_t shift_bound, std::size_t n) {
  const std::size_t h = fam.horizon();
  require_horizon(h, f);
  if (n == 0 || n > 4) throw DomainError("tau membership supports 1 <= n <= 4");
  if (4 * shift_bound > h) throw DomainError("tau membership requires shift_bound <= H/4");

  std::vector<TimeSet> shifted;
  for (std::size_t i = 0; i <= shift_bound; ++i) shifted.push_back(shift_minus(f, i));
  const TimeSet pad = TimeSet::range(h, h - shift_bound, h);

  // Membership is upward closed and the intersection only shrinks as more
  // distinct shifts join the tuple, so it suffices to test tuples of
  // min(n, shift_bound + 1) distinct shifts.
  const std::size_t r = std::min(n, shift_bound + 1);
  std::vector<std::size_t> idx(r);
  for (std::size_t k = 0; k < r; ++k) idx[k] = k;
  while (true) {
    TimeSet acc = shifted[idx[0]];
    for (std::size_t k = 1; k < r; ++k) acc &= shifted[idx[k]];
    acc |= pad;
    if (!fam.member(acc)) return false;
    // Next r-combination of {0..shift_bound} in lexicographic order.
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == shift_bound + 1 - (r - k + 1)) --k;
    if (k == 0) return true;
    ++idx[k - 1];
    for (std::size_t t = k; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

FamilySpec evens_family(std::size_t horizon) {
  return FamilySpec(horizon, {TimeSet::from_predicate(horizon, [](std::size_t n) { return n % 2 == 0; })});
}

FamilySpec tails_family(std::size_t horizon, std::size_t t) {
  if (t >= horizon) throw HorizonError("tail start must lie below the horizon");
  return FamilySpec(horizon, {TimeSet::range(horizon, t, horizon)});
}

// --- oracle ----------------------------------------------------------------

namespace {

void check_universe(std::size_t u) {
  if (u == 0 || u > OracleFamily::max_universe) {
    throw DomainError("oracle universe must lie in [1, 16]");
  }
}

std::vector<bool> close_upward(std::size_t universe, std::vector<bool> table) {
  const std::uint32_t n = std::uint32_t{1} << universe;
  // Increasing mask order: every superset mask|bit is visited after mask.
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    if (!table[mask]) continue;
    for (std::size_t b = 0; b < universe; ++b) table[mask | (std::uint32_t{1} << b)] = true;
  }
  return table;
}

}  // namespace

OracleFamily::OracleFamily(std::size_t universe, std::vector<bool> table)
    : universe_(universe), table_(std::move(table)) {
  check_universe(universe);
  if (table_.size() != (std::size_t{1} << universe)) throw DomainError("oracle table has wrong size");
  for (std::uint32_t mask = 0; mask < table_.size(); ++mask) {
    if (!table_[mask]) continue;
    for (std::size_t b = 0; b < universe; ++b) {
      if (!table_[mask | (std::uint32_t{1} << b)]) throw DomainError("oracle table is not upward closed");
    }
  }
}

OracleFamily OracleFamily::from_generators(std::size_t universe, const std::vector<std::uint32_t>& gens) {
  check_universe(universe);
  std::vector<bool> table(std::size_t{1} << universe, false);
  for (auto g : gens) table.at(g) = true;
  return OracleFamily(universe, close_upward(universe, std::move(table)));
}

OracleFamily OracleFamily::from_spec(const FamilySpec& fam) {
  std::vector<std::uint32_t> gens;
  for (const auto& g : fam.generators()) gens.push_back(to_mask(g));
  return from_generators(fam.horizon(), gens);
}

bool oracle_dual_member(const OracleFamily& fam, std::uint32_t mask) {
  const auto& t = fam.table();
  for (std::uint32_t other = 0; other < t.size(); ++other) {
    if (t[other] && (other & mask) == 0) return false;
  }
  return true;
}

OracleFamily oracle_dual(const OracleFamily& fam) {
  std::vector<bool> table(fam.table().size());
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) table[mask] = oracle_dual_member(fam, mask);
  return OracleFamily(fam.universe(), std::move(table));
}

OracleFamily oracle_interaction(const OracleFamily& a, const OracleFamily& b) {
  if (a.universe() != b.universe()) throw DomainError("oracle universes differ");
  std::vector<bool> table(a.table().size(), false);
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    if (!a.table()[x]) continue;
    for (std::uint32_t y = 0; y < table.size(); ++y) {
      if (b.table()[y]) table[x & y] = true;
    }
  }
  return OracleFamily(a.universe(), close_upward(a.universe(), std::move(table)));
}

std::optional<std::size_t> oracle_has_fip(const OracleFamily& fam) {
  std::uint32_t common = fam.full_mask();
  bool any = false;
  for (std::uint32_t mask = 0; mask < fam.table().size(); ++mask) {
    if (fam.table()[mask]) {
      common &= mask;
      any = true;
    }
  }
  if (!any) return std::nullopt;  // empty family: vacuously no common point to report
  if (common == 0) return std::nullopt;
  return static_cast<std::size_t>(std::countr_zero(common));
}

bool oracle_is_filter(const OracleFamily& fam) {
  const auto& t = fam.table();
  if (t[0] || !t[fam.full_mask()]) return false;
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    if (!t[x]) continue;
    for (std::uint32_t y = x + 1; y < t.size(); ++y) {
      if (t[y] && !t[x & y]) return false;
    }
  }
  return true;
}

namespace {

std::uint32_t rotate(std::uint32_t x, std::size_t i, std::size_t u, std::uint32_t full) {
  if (i % u == 0) return x;
  return ((x << i) | (x >> (u - i))) & full;
}

bool rotation_invariant(const OracleFamily& fam, bool forward) {
  const auto& t = fam.table();
  const std::size_t u = fam.universe();
  for (std::size_t i = 1; i < u; ++i) {
    const std::size_t by = forward ? i : u - i;
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      if (t[x] && !t[rotate(x, by, u, fam.full_mask())]) return false;
    }
  }
  return true;
}

}  // namespace

bool oracle_plus_invariant(const OracleFamily& fam) { return rotation_invariant(fam, true); }

bool oracle_minus_invariant(const OracleFamily& fam) { return rotation_invariant(fam, false); }

std::uint32_t to_mask(const TimeSet& s) {
  if (s.horizon() > OracleFamily::max_universe) throw DomainError("set too large for an oracle mask");
  std::uint32_t mask = 0;
  s.for_each([&](std::size_t n) { mask |= std::uint32_t{1} << n; });
  return mask;
}

TimeSet from_mask(std::size_t universe, std::uint32_t mask) {
  TimeSet s(universe);
  for (std::size_t b = 0; b < universe; ++b) {
    if ((mask >> b) & 1U) s.insert(b);
  }
  return s;
}

}  // namespace dyntop

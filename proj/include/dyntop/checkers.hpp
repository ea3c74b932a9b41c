#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dyntop/families.hpp"
#include "dyntop/hit_set.hpp"
#include "dyntop/limits.hpp"
#include "dyntop/numeric.hpp"
#include "dyntop/symbolic.hpp"
#include "dyntop/timeset.hpp"

namespace dyntop {

enum class Outcome { holds, fails, not_found_at_horizon };

std::string_view to_string(Outcome o);

/// A finite-scale verdict. "fails" is only produced from exact hit sets;
/// the same negative evidence from lower-bound sets reads
/// "not_found_at_horizon".
struct Verdict {
  std::string property;
  Outcome outcome = Outcome::holds;
  nlohmann::json witnesses = nlohmann::json::object();
  nlohmann::json params = nlohmann::json::object();
  Exactness exactness = Exactness::exact;
  std::vector<std::string> notes;
};

/// Outcome of a claim that is monotone in the hit sets: lower-bound data
/// can confirm it but never refute it.
Outcome settle(bool ok, Exactness exactness);

struct CheckOptions {
  std::size_t threads = 1;
};

namespace detail {

inline std::size_t worker_count(std::size_t threads, std::size_t count) {
  return std::max<std::size_t>(1, std::min(threads, count));
}

/// fn(i) for every i in [0, count). The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  const std::size_t workers = worker_count(threads, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Least i in [0, count) with pred(i), whatever the thread count.
template <class Pred>
std::optional<std::size_t> parallel_find_first(std::size_t count, std::size_t threads, Pred&& pred) {
  std::atomic<std::size_t> best{count};
  parallel_for(count, threads, [&](std::size_t i) {
    if (i >= best.load()) return;
    if (!pred(i)) return;
    std::size_t cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  });
  if (best.load() == count) return std::nullopt;
  return best.load();
}

}  // namespace detail

/// What the checkers need from a system: a finite list of basic open cells
/// at each precision, and the hit sets between them.
template <class P>
concept HitSetProvider = requires(const P& p, const typename P::Cell& c, const typename P::Resolution& r,
                                  const typename P::PointType& x, const FamilySpec& fam, std::size_t n) {
  { p.horizon() } -> std::convertible_to<std::size_t>;
  /// Cells of every precision up to n.
  { p.cells(n) } -> std::same_as<std::vector<typename P::Cell>>;
  /// Cells of precision exactly n.
  { p.cells_at(n) } -> std::same_as<std::vector<typename P::Cell>>;
  { p.transfer_times(c, c) } -> std::same_as<HitSet>;
  { p.spread_times(c, r) } -> std::same_as<HitSet>;
  { p.visit_times(x, c) } -> std::same_as<HitSet>;
  { p.omega_labels(x, fam, n, Exactness::exact) } -> std::same_as<std::vector<std::string>>;
  { p.label(c) } -> std::convertible_to<std::string>;
  { p.describe() } -> std::convertible_to<std::string>;
  { p.assumption() } -> std::same_as<std::optional<std::string>>;
};

class SymbolicProvider {
 public:
  using Cell = Word;
  using Resolution = std::size_t;
  using PointType = Point;

  explicit SymbolicProvider(const SymbolicSystem& sys) : sys_(&sys) {}

  const SymbolicSystem& system() const noexcept { return *sys_; }
  std::size_t horizon() const noexcept { return sys_->horizon(); }
  std::vector<Word> cells(std::size_t n) const { return sys_->admissible_words_upto(n); }
  std::vector<Word> cells_at(std::size_t n) const { return sys_->admissible_words(n); }
  HitSet transfer_times(const Word& u, const Word& v) const {
    return sys_->transfer_times(OpenSet::cylinder(u), OpenSet::cylinder(v));
  }
  HitSet spread_times(const Word& u, std::size_t k) const {
    return sys_->sensitivity_times(OpenSet::cylinder(u), k);
  }
  HitSet visit_times(const Point& x, const Word& w) const { return sys_->visit_times(x, OpenSet::cylinder(w)); }
  std::vector<std::string> omega_labels(const Point& x, const FamilySpec& fam, std::size_t n,
                                        Exactness e) const;
  std::string label(const Word& w) const { return w.str(); }
  std::string describe() const { return sys_->describe(); }
  std::optional<std::string> assumption() const { return std::nullopt; }

 private:
  const SymbolicSystem* sys_;
};

/// Grid boxes are the cells; the precision argument is ignored since the
/// grid fixes it.
class TorusProvider {
 public:
  using Cell = GridBox;
  using Resolution = double;
  using PointType = TorusPoint;

  explicit TorusProvider(const TorusSystem& sys) : sys_(&sys) {}

  const TorusSystem& system() const noexcept { return *sys_; }
  std::size_t horizon() const noexcept { return sys_->horizon(); }
  std::vector<GridBox> cells(std::size_t) const { return sys_->boxes(); }
  std::vector<GridBox> cells_at(std::size_t) const { return sys_->boxes(); }
  HitSet transfer_times(const GridBox& u, const GridBox& v) const { return sys_->transfer_times(u, v); }
  HitSet spread_times(const GridBox& u, double delta) const { return sys_->sensitivity_times(u, delta); }
  HitSet visit_times(const TorusPoint& x, const GridBox& b) const {
    return sys_->visit_times(sys_->orbit_of(x), b);
  }
  std::vector<std::string> omega_labels(const TorusPoint& x, const FamilySpec& fam, std::size_t n,
                                        Exactness e) const;
  std::string label(const GridBox& b) const { return sys_->label(b); }
  std::string describe() const { return sys_->describe(); }
  std::optional<std::string> assumption() const { return "minimality assumed from theory"; }

 private:
  const TorusSystem* sys_;
};

static_assert(HitSetProvider<SymbolicProvider>);
static_assert(HitSetProvider<TorusProvider>);

namespace detail {

template <HitSetProvider P>
nlohmann::json base_params(const P& p, std::size_t length) {
  return {{"system", p.describe()}, {"H", p.horizon()}, {"L", length}};
}

template <HitSetProvider P>
void add_assumption(const P& p, Verdict& v) {
  if (auto a = p.assumption()) v.notes.push_back(*a);
}

/// All N(u, v) over ordered pairs of cells, index u * C + v.
template <HitSetProvider P>
std::vector<HitSet> transfer_matrix(const P& p, const std::vector<typename P::Cell>& cells,
                                    const CheckOptions& opts) {
  const std::size_t c = cells.size();
  std::vector<HitSet> out(c * c, HitSet{TimeSet(p.horizon()), Exactness::exact});
  parallel_for(c * c, opts.threads, [&](std::size_t i) { out[i] = p.transfer_times(cells[i / c], cells[i % c]); });
  return out;
}

template <HitSetProvider P>
std::vector<HitSet> spread_list(const P& p, const std::vector<typename P::Cell>& cells,
                                const typename P::Resolution& r, const CheckOptions& opts) {
  std::vector<HitSet> out(cells.size(), HitSet{TimeSet(p.horizon()), Exactness::exact});
  parallel_for(cells.size(), opts.threads, [&](std::size_t i) { out[i] = p.spread_times(cells[i], r); });
  return out;
}

inline Exactness combined(const std::vector<HitSet>& sets) {
  Exactness e = Exactness::exact;
  for (const auto& s : sets) e = combine(e, s.exactness);
  return e;
}

inline std::vector<std::size_t> members_head(const TimeSet& t, std::size_t n = 16) {
  std::vector<std::size_t> out;
  for (auto m = t.first(); m && out.size() < n; m = t.next(*m + 1)) out.push_back(*m);
  return out;
}

/// Family generated by the given hit sets, or the index of an empty one.
inline std::pair<std::optional<FamilySpec>, std::optional<std::size_t>> family_of(
    std::size_t horizon, const std::vector<HitSet>& sets) {
  std::vector<TimeSet> gens;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].times.empty()) return {std::nullopt, i};
    gens.push_back(sets[i].times);
  }
  return {FamilySpec(horizon, std::move(gens)), std::nullopt};
}

/// Shared tail of the two compactness checkers.
template <HitSetProvider P>
void judge_compactness(const P& p, const std::vector<typename P::PointType>& points, const FamilySpec& fam,
                       std::size_t length, Exactness e, Verdict& v) {
  v.witnesses["family_generators"] = fam.generators().size();
  if (auto w = has_fip(fam)) v.witnesses["fip_witness"] = *w;
  nlohmann::json per_point = nlohmann::json::array();
  bool ok = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto labels = p.omega_labels(points[i], fam, length, e);
    per_point.push_back({{"point", i}, {"omega_cells", labels.size()},
                         {"first_cell", labels.empty() ? nlohmann::json(nullptr) : nlohmann::json(labels.front())}});
    if (labels.empty() && ok) {
      ok = false;
      v.witnesses["empty_omega_point"] = i;
    }
  }
  v.witnesses["points"] = std::move(per_point);
  v.outcome = settle(ok, e);
}

}  // namespace detail

/// N(u, v) nonempty for every pair of cells of precision <= L.
template <HitSetProvider P>
Verdict check_transitive(const P& p, std::size_t length, const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "transitive";
  v.params = detail::base_params(p, length);
  const auto cells = p.cells(length);
  const auto n = detail::transfer_matrix(p, cells, opts);
  v.exactness = detail::combined(n);
  const std::size_t c = cells.size();
  std::optional<std::size_t> bad;
  std::size_t max_first = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto f = n[i].times.first();
    if (!f) {
      bad = i;
      break;
    }
    max_first = std::max(max_first, *f);
  }
  if (bad) {
    v.witnesses = {{"u", p.label(cells[*bad / c])}, {"v", p.label(cells[*bad % c])}, {"N", nlohmann::json::array()}};
  } else {
    v.witnesses = {{"pairs", n.size()}, {"max_first_transfer", max_first}};
  }
  v.outcome = settle(!bad, v.exactness);
  detail::add_assumption(p, v);
  return v;
}

/// For each j <= kmax and every pair, some n with j * n in N(u, v).
template <HitSetProvider P>
Verdict check_totally_transitive(const P& p, std::size_t length, std::size_t kmax, const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "totally-transitive";
  v.params = detail::base_params(p, length);
  v.params["kmax"] = kmax;
  const auto cells = p.cells(length);
  const auto n = detail::transfer_matrix(p, cells, opts);
  v.exactness = detail::combined(n);
  const std::size_t c = cells.size();
  for (std::size_t j = 1; j <= kmax; ++j) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      bool hit = false;
      for (std::size_t t = 0; t < p.horizon() && !hit; t += j) hit = n[i].times.contains(t);
      if (!hit) {
        v.witnesses = {{"j", j}, {"u", p.label(cells[i / c])}, {"v", p.label(cells[i % c])}};
        v.outcome = settle(false, v.exactness);
        detail::add_assumption(p, v);
        return v;
      }
    }
  }
  v.witnesses = {{"pairs", n.size()}};
  v.outcome = Outcome::holds;
  detail::add_assumption(p, v);
  return v;
}

/// Product-transitivity form: N(u1, v1) meets N(u2, v2) for all pairs of
/// pairs. The FIP form (all N-sets share an element) is reported alongside.
template <HitSetProvider P>
Verdict check_weak_mixing(const P& p, std::size_t length, const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "weak-mixing";
  v.params = detail::base_params(p, length);
  const auto cells = p.cells(length);
  const auto n = detail::transfer_matrix(p, cells, opts);
  v.exactness = detail::combined(n);
  const std::size_t m = n.size();
  const std::size_t c = cells.size();
  const auto bad_row = detail::parallel_find_first(m, opts.threads, [&](std::size_t a) {
    for (std::size_t b = a; b < m; ++b) {
      if (!n[a].times.intersects(n[b].times)) return true;
    }
    return false;
  });
  TimeSet core = TimeSet::full(p.horizon());
  for (const auto& s : n) core &= s.times;
  const auto fip = core.first();
  if (bad_row) {
    std::size_t b = *bad_row;
    while (n[*bad_row].times.intersects(n[b].times)) ++b;
    v.witnesses = {{"u1", p.label(cells[*bad_row / c])}, {"v1", p.label(cells[*bad_row % c])},
                   {"u2", p.label(cells[b / c])},        {"v2", p.label(cells[b % c])},
                   {"N1", detail::members_head(n[*bad_row].times)}, {"N2", detail::members_head(n[b].times)}};
  } else {
    v.witnesses = {{"pairs_of_pairs", m * (m + 1) / 2}};
  }
  v.witnesses["fip_form"] = fip.has_value();
  if (fip) v.witnesses["fip_witness"] = *fip;
  if (fip.has_value() != !bad_row) v.notes.push_back("pairwise form and FIP form disagree at this scale");
  v.outcome = settle(!bad_row, v.exactness);
  detail::add_assumption(p, v);
  return v;
}

/// Every N(u, v) contains [t, H) for some t <= max_threshold (default H/2).
/// The per-pair thresholds are reported.
template <HitSetProvider P>
Verdict check_mixing(const P& p, std::size_t length, std::optional<std::size_t> max_threshold = std::nullopt,
                     const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "mixing";
  const std::size_t limit = max_threshold.value_or(p.horizon() / 2);
  v.params = detail::base_params(p, length);
  v.params["max_threshold"] = limit;
  const auto cells = p.cells(length);
  const auto n = detail::transfer_matrix(p, cells, opts);
  v.exactness = detail::combined(n);
  const std::size_t c = cells.size();
  nlohmann::json thresholds = nlohmann::json::array();
  std::optional<std::size_t> bad;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto t = cofinite_from(n[i].times);
    thresholds.push_back({{"u", p.label(cells[i / c])}, {"v", p.label(cells[i % c])},
                          {"from", t ? nlohmann::json(*t) : nlohmann::json(nullptr)}});
    if (!t || *t > limit) {
      if (!bad) bad = i;
    } else {
      worst = std::max(worst, *t);
    }
  }
  v.witnesses["thresholds"] = std::move(thresholds);
  if (bad) {
    v.witnesses["u"] = p.label(cells[*bad / c]);
    v.witnesses["v"] = p.label(cells[*bad % c]);
  } else {
    v.witnesses["max_from"] = worst;
  }
  v.outcome = settle(!bad, v.exactness);
  detail::add_assumption(p, v);
  return v;
}

/// omega along the family generated by { N(u, v) : cells of precision <=
/// gen_length } is nonempty at precision L for every supplied point. An
/// empty generator means the system is not transitive at this scale.
template <HitSetProvider P>
Verdict check_transitive_compact(const P& p, const std::vector<typename P::PointType>& points, std::size_t gen_length,
                                 std::size_t length, const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "transitive-compact";
  v.params = detail::base_params(p, length);
  v.params["Lgen"] = gen_length;
  v.params["points"] = points.size();
  const auto cells = p.cells(gen_length);
  const auto n = detail::transfer_matrix(p, cells, opts);
  v.exactness = detail::combined(n);
  auto [fam, empty] = detail::family_of(p.horizon(), n);
  if (empty) {
    const std::size_t c = cells.size();
    v.witnesses = {{"improper", true}, {"u", p.label(cells[*empty / c])}, {"v", p.label(cells[*empty % c])}};
    v.outcome = settle(false, v.exactness);
  } else {
    detail::judge_compactness(p, points, *fam, length, v.exactness, v);
  }
  detail::add_assumption(p, v);
  return v;
}

/// Every k-multiset of cells of precision <= L has a common spread time.
template <HitSetProvider P>
Verdict check_multi_sensitive(const P& p, std::size_t k, const typename P::Resolution& r, std::size_t length,
                              const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "multi-sensitive";
  v.params = detail::base_params(p, length);
  v.params["k"] = k;
  v.params["resolution"] = r;
  if (k == 0) throw std::invalid_argument("k must be positive");
  const auto cells = p.cells(length);
  const auto s = detail::spread_list(p, cells, r, opts);
  v.exactness = detail::combined(s);
  const std::size_t c = cells.size();
  // Lexicographically least nondecreasing index tuple with empty
  // intersection, searched depth first below a fixed first index.
  const auto failing_tuple = [&](std::size_t first) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> tuple{first};
    std::vector<TimeSet> acc{s[first].times};
    const auto rec = [&](auto&& self) -> bool {
      if (acc.back().empty()) return true;
      if (tuple.size() == k) return false;
      for (std::size_t i = tuple.back(); i < c; ++i) {
        tuple.push_back(i);
        acc.push_back(acc.back() & s[i].times);
        if (self(self)) return true;
        tuple.pop_back();
        acc.pop_back();
      }
      return false;
    };
    if (!rec(rec)) return std::nullopt;
    while (tuple.size() < k) tuple.push_back(tuple.back());
    return tuple;
  };
  const auto bad = detail::parallel_find_first(c, opts.threads, [&](std::size_t i) { return failing_tuple(i).has_value(); });
  if (bad) {
    nlohmann::json labels = nlohmann::json::array();
    nlohmann::json sets = nlohmann::json::array();
    const auto tuple = *failing_tuple(*bad);
    for (std::size_t i : tuple) {
      labels.push_back(p.label(cells[i]));
      sets.push_back(detail::members_head(s[i].times));
    }
    v.witnesses = {{"cells", labels}, {"S", sets}};
  } else {
    v.witnesses = {{"cells", c}};
  }
  v.outcome = settle(!bad, v.exactness);
  detail::add_assumption(p, v);
  return v;
}

/// S(W) meets N(U, V) for every triple of cells of precision <= L.
template <HitSetProvider P>
Verdict check_transitively_sensitive(const P& p, const typename P::Resolution& r, std::size_t length,
                                     const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "transitively-sensitive";
  v.params = detail::base_params(p, length);
  v.params["resolution"] = r;
  const auto cells = p.cells(length);
  const auto s = detail::spread_list(p, cells, r, opts);
  const auto n = detail::transfer_matrix(p, cells, opts);
  v.exactness = combine(detail::combined(s), detail::combined(n));
  const std::size_t c = cells.size();
  const auto bad = detail::parallel_find_first(c, opts.threads, [&](std::size_t w) {
    return std::any_of(n.begin(), n.end(), [&](const HitSet& h) { return !h.times.intersects(s[w].times); });
  });
  if (bad) {
    std::size_t i = 0;
    while (n[i].times.intersects(s[*bad].times)) ++i;
    v.witnesses = {{"W", p.label(cells[*bad])}, {"U", p.label(cells[i / c])}, {"V", p.label(cells[i % c])},
                   {"S", detail::members_head(s[*bad].times)}};
  } else {
    v.witnesses = {{"triples", c * c * c}};
  }
  v.outcome = settle(!bad, v.exactness);
  detail::add_assumption(p, v);
  return v;
}

/// omega along the family generated by { S(w, r) : cells of precision <=
/// gen_length } is nonempty at precision L for every supplied point.
template <HitSetProvider P>
Verdict check_sensitive_compact(const P& p, const std::vector<typename P::PointType>& points,
                                const typename P::Resolution& r, std::size_t gen_length, std::size_t length,
                                const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "sensitive-compact";
  v.params = detail::base_params(p, length);
  v.params["Lgen"] = gen_length;
  v.params["resolution"] = r;
  v.params["points"] = points.size();
  const auto cells = p.cells(gen_length);
  const auto s = detail::spread_list(p, cells, r, opts);
  v.exactness = detail::combined(s);
  auto [fam, empty] = detail::family_of(p.horizon(), s);
  if (empty) {
    v.witnesses = {{"improper", true}, {"cells", {p.label(cells[*empty])}}, {"S", nlohmann::json::array()}};
    v.outcome = settle(false, v.exactness);
  } else {
    detail::judge_compactness(p, points, *fam, length, v.exactness, v);
  }
  detail::add_assumption(p, v);
  return v;
}

/// Pair form: N_A(u1, v1) meets N_B(u2, v2) for all pairs of pairs. Point
/// form: some supplied point of A is transitive at precision L for the
/// dual of the family generated by the N_B sets.
template <HitSetProvider PA, HitSetProvider PB>
Verdict check_weak_disjoint(const PA& a, const PB& b, std::size_t length,
                            const std::vector<typename PA::PointType>& points_a, const CheckOptions& opts = {}) {
  Verdict v;
  v.property = "weak-disjoint";
  if (a.horizon() != b.horizon()) throw std::invalid_argument("systems must share the horizon");
  v.params = detail::base_params(a, length);
  v.params["system_b"] = b.describe();
  const auto ca = a.cells(length);
  const auto cb = b.cells(length);
  const auto na = detail::transfer_matrix(a, ca, opts);
  const auto nb = detail::transfer_matrix(b, cb, opts);
  v.exactness = combine(detail::combined(na), detail::combined(nb));
  const auto bad = detail::parallel_find_first(na.size(), opts.threads, [&](std::size_t i) {
    return std::any_of(nb.begin(), nb.end(), [&](const HitSet& h) { return !h.times.intersects(na[i].times); });
  });
  if (bad) {
    std::size_t j = 0;
    while (nb[j].times.intersects(na[*bad].times)) ++j;
    v.witnesses = {{"u1", a.label(ca[*bad / ca.size()])}, {"v1", a.label(ca[*bad % ca.size()])},
                   {"u2", b.label(cb[j / cb.size()])},    {"v2", b.label(cb[j % cb.size()])},
                   {"NA", detail::members_head(na[*bad].times)}, {"NB", detail::members_head(nb[j].times)}};
  } else {
    v.witnesses = {{"pairs_of_pairs", na.size() * nb.size()}};
  }
  v.outcome = settle(!bad, v.exactness);

  std::vector<TimeSet> gens;
  for (const auto& h : nb) gens.push_back(h.times);
  const FamilySpec fam(b.horizon(), std::move(gens));
  const std::size_t want = a.cells_at(length).size();
  std::optional<std::size_t> transitive_point;
  for (std::size_t i = 0; i < points_a.size() && !transitive_point; ++i) {
    if (a.omega_labels(points_a[i], fam, length, v.exactness).size() == want) transitive_point = i;
  }
  v.witnesses["point_form"] = transitive_point.has_value();
  if (transitive_point) v.witnesses["transitive_point"] = *transitive_point;
  if (!points_a.empty() && transitive_point.has_value() != !bad) {
    v.notes.push_back("point form and pair form disagree on the supplied points");
  }
  detail::add_assumption(a, v);
  return v;
}

// ---------------------------------------------------------------------------
// Symbolic-only scans.

struct IpWitness {
  /// n_T(x, G) intersected with N(U, V).
  TimeSet target;
  std::optional<std::vector<std::size_t>> terms;
  Exactness exactness = Exactness::exact;
};

/// FS-set search inside n_T(x, G) cap N(U, V). Requires 1 <= n <= 10.
IpWitness ip_witness(const SymbolicSystem& sys, const Point& x, const OpenSet& g, const OpenSet& u,
                     const OpenSet& v, std::size_t n, FsSearchLimits limits = {});

/// A pair is proximal at the horizon if the points agree on [n, n+k) for
/// some n < H, and non-asymptotic if they differ within [n, n+k2) for some
/// n in the final quarter [3H/4, H). Holds when some pair is both.
Verdict liyorke_scan(const SymbolicSystem& sys, const std::vector<std::pair<Point, Point>>& pairs, std::size_t k,
                     std::size_t k2);

struct LargenessReport {
  std::size_t size = 0;
  std::optional<std::size_t> cofinite_from;
  std::optional<std::size_t> min_syndetic_gap;
  std::size_t longest_run = 0;
  /// (run length, least gap at which the run starts are syndetic).
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> thickly_syndetic;
  /// Largest n <= fs_bound with an FS witness, and the witness.
  std::size_t fs_depth = 0;
  std::vector<std::size_t> fs_terms;
};

LargenessReport largeness_report(const TimeSet& f, std::size_t fs_bound = 6, std::size_t max_run = 16);
nlohmann::json to_json(const LargenessReport& r);

/// A cylinder u' inside T^-i C[u] with S(u', k) cap [0, H-i) inside
/// shift_plus(S(u, k), i). Tries 0^i u 0^pad first (pad fills u up to k
/// symbols), then every admissible p u s up to lmax.
std::optional<Word> s_plus_invariance_witness(const SymbolicSystem& sys, const Word& u, std::size_t k,
                                              std::size_t i);

/// A cylinder u'' inside the image T^i C[u] with S(u'', k) cap [0, H-i)
/// inside shift_minus(S(u, k), i). Searches the extensions of u[i..] when
/// i < |u|, else the length-1 cylinders.
std::optional<Word> s_minus_invariance_witness(const SymbolicSystem& sys, const Word& u, std::size_t k,
                                               std::size_t i);

nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

}  // namespace dyntop

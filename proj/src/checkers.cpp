#include "dyntop/checkers.hpp"

#include "dyntop/error.hpp"

namespace dyntop {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::holds:
      return "holds";
    case Outcome::fails:
      return "fails";
    case Outcome::not_found_at_horizon:
      return "not_found_at_horizon";
  }
  return "?";
}

Outcome settle(bool ok, Exactness exactness) {
  if (ok) return Outcome::holds;
  return exactness == Exactness::exact ? Outcome::fails : Outcome::not_found_at_horizon;
}

std::vector<std::string> SymbolicProvider::omega_labels(const Point& x, const FamilySpec& fam, std::size_t n,
                                                        Exactness e) const {
  std::vector<std::string> out;
  for (const auto& w : omega_approx(*sys_, x, fam, n, e).cells) out.push_back(w.str());
  return out;
}

std::vector<std::string> TorusProvider::omega_labels(const TorusPoint& x, const FamilySpec& fam, std::size_t,
                                                     Exactness e) const {
  std::vector<std::string> out;
  for (const auto& b : omega_approx(*sys_, x, fam, e).cells) out.push_back(sys_->label(b));
  return out;
}

IpWitness ip_witness(const SymbolicSystem& sys, const Point& x, const OpenSet& g, const OpenSet& u,
                     const OpenSet& v, std::size_t n, FsSearchLimits limits) {
  if (n == 0 || n > 10) throw DomainError("FS witness size must lie in [1, 10]");
  const auto visits = sys.visit_times(x, g);
  const auto transfer = sys.transfer_times(u, v);
  IpWitness out{visits.times & transfer.times, std::nullopt, combine(visits.exactness, transfer.exactness)};
  out.terms = find_fs_subset(out.target, n, limits);
  return out;
}

Verdict liyorke_scan(const SymbolicSystem& sys, const std::vector<std::pair<Point, Point>>& pairs, std::size_t k,
                     std::size_t k2) {
  if (k == 0 || k2 == 0 || k > sys.lmax() || k2 > sys.lmax()) {
    throw DomainError("resolutions must lie in [1, lmax]");
  }
  const std::size_t h = sys.horizon();
  const std::size_t read = std::max(k, k2);
  Verdict v;
  v.property = "li-yorke";
  v.params = {{"system", sys.describe()}, {"H", h}, {"k", k}, {"k_sep", k2}, {"tail_from", 3 * h / 4}};
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json found = nlohmann::json::array();
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [x, y] = pairs[idx];
    sys.validate(x, read);
    sys.validate(y, read);
    // Length of the agreement run ending at each index gives the proximal
    // test in one pass.
    std::optional<std::size_t> proximal_at;
    std::size_t run = 0;
    for (std::size_t m = 0; m < h + k - 1 && !proximal_at; ++m) {
      run = x[m] == y[m] ? run + 1 : 0;
      if (run >= k) proximal_at = m + 1 - k;
    }
    std::optional<std::size_t> differs_at;
    for (std::size_t m = 3 * h / 4; m < h + k2 - 1 && !differs_at; ++m) {
      if (x[m] != y[m]) differs_at = m;
    }
    const bool ly = proximal_at && differs_at;
    rows.push_back({{"pair", idx},
                    {"proximal", proximal_at.has_value()},
                    {"proximal_at", proximal_at ? nlohmann::json(*proximal_at) : nlohmann::json(nullptr)},
                    {"non_asymptotic", differs_at.has_value()},
                    {"differs_at", differs_at ? nlohmann::json(*differs_at) : nlohmann::json(nullptr)},
                    {"li_yorke", ly}});
    if (ly) found.push_back(idx);
  }
  v.witnesses = {{"pairs", rows}, {"li_yorke_pairs", found}};
  v.outcome = found.empty() ? Outcome::not_found_at_horizon : Outcome::holds;
  return v;
}

LargenessReport largeness_report(const TimeSet& f, std::size_t fs_bound, std::size_t max_run) {
  LargenessReport r;
  r.size = f.size();
  r.cofinite_from = cofinite_from(f);
  r.min_syndetic_gap = min_syndetic_gap(f);
  r.longest_run = longest_run(f);
  for (std::size_t len = 1; len <= std::min(r.longest_run, max_run); ++len) {
    r.thickly_syndetic.emplace_back(len, min_syndetic_gap(run_starts(f, len)));
  }
  FsSearchLimits limits;
  limits.node_budget = 2'000'000;
  for (std::size_t n = 1; n <= fs_bound; ++n) {
    auto terms = find_fs_subset(f, n, limits);
    if (!terms) break;
    r.fs_depth = n;
    r.fs_terms = std::move(*terms);
  }
  return r;
}

namespace {

nlohmann::json opt(const std::optional<std::size_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

bool within(const TimeSet& s, std::size_t bound, const TimeSet& target) {
  bool ok = true;
  s.for_each([&](std::size_t n) {
    if (n < bound && !target.contains(n)) ok = false;
  });
  return ok;
}

// Admissible words of length lo..lmax that carry `core` at offset `at`.
std::vector<Word> carriers(const SymbolicSystem& sys, const Word& core, std::size_t at, std::size_t lo) {
  std::vector<Word> out;
  for (std::size_t len = std::max(lo, at + core.size()); len <= sys.lmax(); ++len) {
    for (auto& w : sys.admissible_words(len)) {
      if (std::equal(core.symbols().begin(), core.symbols().end(),
                     w.symbols().begin() + static_cast<std::ptrdiff_t>(at))) {
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const LargenessReport& r) {
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& [len, gap] : r.thickly_syndetic) ts.push_back({{"run", len}, {"gap", opt(gap)}});
  return {{"size", r.size},
          {"cofinite_from", opt(r.cofinite_from)},
          {"min_syndetic_gap", opt(r.min_syndetic_gap)},
          {"longest_run", r.longest_run},
          {"thickly_syndetic", ts},
          {"fs_depth", r.fs_depth},
          {"fs_terms", r.fs_terms}};
}

std::optional<Word> s_plus_invariance_witness(const SymbolicSystem& sys, const Word& u, std::size_t k,
                                              std::size_t i) {
  const std::size_t h = sys.horizon();
  if (i >= h) throw HorizonError("shift reaches the horizon");
  const TimeSet target = shift_plus(sys.sensitivity_times(OpenSet::cylinder(u), k).times, i).set;
  const auto ok = [&](const Word& cand) {
    return within(sys.sensitivity_times(OpenSet::cylinder(cand), k).times, h - i, target);
  };
  std::vector<Symbol> padded(i, 0);
  padded.insert(padded.end(), u.symbols().begin(), u.symbols().end());
  if (u.size() < k) padded.resize(i + k, 0);
  const Word first(sys.alphabet(), std::move(padded));
  if (first.size() <= sys.lmax() && sys.is_admissible(first) && ok(first)) return first;
  for (const auto& cand : carriers(sys, u, i, i + u.size())) {
    if (ok(cand)) return cand;
  }
  return std::nullopt;
}

std::optional<Word> s_minus_invariance_witness(const SymbolicSystem& sys, const Word& u, std::size_t k,
                                               std::size_t i) {
  const std::size_t h = sys.horizon();
  if (i >= h) throw HorizonError("shift reaches the horizon");
  const TimeSet target = shift_minus(sys.sensitivity_times(OpenSet::cylinder(u), k).times, i);
  const auto ok = [&](const Word& cand) {
    return within(sys.sensitivity_times(OpenSet::cylinder(cand), k).times, h - i, target);
  };
  const auto cands = i < u.size() ? carriers(sys, u.suffix_from(i), 0, u.size() - i) : sys.admissible_words(1);
  for (const auto& cand : cands) {
    if (ok(cand)) return cand;
  }
  return std::nullopt;
}

nlohmann::json to_json(const Verdict& v) {
  return {{"schema", "dyntop/1"},
          {"property", v.property},
          {"outcome", std::string(to_string(v.outcome))},
          {"exactness", std::string(to_string(v.exactness))},
          {"params", v.params},
          {"witnesses", v.witnesses},
          {"notes", v.notes}};
}

Verdict verdict_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "dyntop/1") throw ParseError("unknown schema tag");
    Verdict v;
    v.property = j.at("property").get<std::string>();
    const auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "holds") {
      v.outcome = Outcome::holds;
    } else if (outcome == "fails") {
      v.outcome = Outcome::fails;
    } else if (outcome == "not_found_at_horizon") {
      v.outcome = Outcome::not_found_at_horizon;
    } else {
      throw ParseError("unknown outcome '" + outcome + "'");
    }
    const auto ex = j.at("exactness").get<std::string>();
    if (ex != "exact" && ex != "lower-bound") throw ParseError("unknown exactness '" + ex + "'");
    v.exactness = ex == "exact" ? Exactness::exact : Exactness::lower_bound;
    v.params = j.at("params");
    v.witnesses = j.at("witnesses");
    v.notes = j.at("notes").get<std::vector<std::string>>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verdict: ") + e.what());
  }
}

}  // namespace dyntop

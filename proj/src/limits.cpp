#include "dyntop/limits.hpp"

#include <algorithm>
#include <cstdint>

#include "dyntop/error.hpp"

namespace dyntop {

namespace {

bool meets_all(const TimeSet& visits, const FamilySpec& fam) {
  for (const auto& g : fam.generators()) {
    if (!visits.intersects(g)) return false;
  }
  return true;
}

// Visit sets of x to every word in words (same length, lexicographic), in
// one pass over x.
std::vector<TimeSet> visits_by_word(const SymbolicSystem& sys, const Point& x, const std::vector<Word>& words,
                                    std::size_t length) {
  const std::size_t a = sys.alphabet();
  std::vector<std::uint64_t> codes;
  codes.reserve(words.size());
  for (const auto& w : words) {
    std::uint64_t c = 0;
    for (Symbol s : w.symbols()) c = c * a + s;
    codes.push_back(c);
  }
  std::vector<TimeSet> out(words.size(), TimeSet(sys.horizon()));
  std::uint64_t top = 1;
  for (std::size_t t = 1; t < length; ++t) top *= a;
  const auto p = x.prefix();
  std::uint64_t c = 0;
  for (std::size_t t = 0; t + 1 < length; ++t) c = c * a + p[t];
  for (std::size_t n = 0; n < sys.horizon(); ++n) {
    c = c * a + p[n + length - 1];
    const auto it = std::lower_bound(codes.begin(), codes.end(), c);
    if (it != codes.end() && *it == c) out[static_cast<std::size_t>(it - codes.begin())].insert(n);
    c -= p[n] * top;
  }
  return out;
}

}  // namespace

OmegaApprox omega_approx(const SymbolicSystem& sys, const Point& x, const FamilySpec& fam,
                         std::size_t length, Exactness family_exactness) {
  if (fam.horizon() != sys.horizon()) {
    throw HorizonError("family horizon " + std::to_string(fam.horizon()) + " differs from system horizon " +
                       std::to_string(sys.horizon()));
  }
  sys.validate(x, length);
  OmegaApprox out{length, {}, family_exactness};
  auto words = sys.admissible_words(length);
  const auto visits = visits_by_word(sys, x, words, length);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (meets_all(visits[i], fam)) out.cells.push_back(std::move(words[i]));
  }
  return out;
}

OmegaApprox omega_T_approx(const SymbolicSystem& sys, const Point& x, std::size_t length,
                           std::size_t tail_slack) {
  const std::size_t h = sys.horizon();
  if (tail_slack >= h) throw DomainError("tail slack must be below the horizon");
  sys.validate(x, length);
  OmegaApprox out{length, {}, Exactness::exact};
  auto words = sys.admissible_words(length);
  const auto visits = visits_by_word(sys, x, words, length);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto last = visits[i].last();
    if (last && *last >= h - tail_slack) out.cells.push_back(std::move(words[i]));
  }
  return out;
}

bool is_kF_transitive_point(const SymbolicSystem& sys, const Point& x, const FamilySpec& fam,
                            std::size_t length) {
  const auto omega = omega_approx(sys, x, fam, length);
  return omega.cells.size() == sys.admissible_words(length).size();
}

NumericOmega omega_approx(const TorusSystem& sys, const TorusPoint& x, const FamilySpec& fam,
                          Exactness family_exactness) {
  if (fam.horizon() != sys.horizon()) throw HorizonError("family horizon differs from system horizon");
  const auto orbit = x == sys.seed() ? sys.orbit() : sys.orbit_of(x);
  NumericOmega out{sys.grid(), {}, family_exactness};
  for (const auto& box : sys.boxes()) {
    if (meets_all(sys.visit_times(orbit, box).times, fam)) out.cells.push_back(box);
  }
  return out;
}

NumericOmega omega_approx(const TorusSystem& sys, const FamilySpec& fam, Exactness family_exactness) {
  return omega_approx(sys, sys.seed(), fam, family_exactness);
}

}  // namespace dyntop

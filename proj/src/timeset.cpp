#include "dyntop/timeset.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dyntop/error.hpp"

namespace dyntop {

namespace {

constexpr std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

TimeSet::TimeSet(std::size_t horizon) : horizon_(horizon), words_(word_count(horizon), 0) {
  if (horizon == 0) throw DomainError("TimeSet horizon must be positive");
}

TimeSet TimeSet::full(std::size_t horizon) {
  TimeSet s(horizon);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.trim();
  return s;
}

TimeSet TimeSet::range(std::size_t horizon, std::size_t lo, std::size_t hi) {
  TimeSet s(horizon);
  hi = std::min(hi, horizon);
  for (std::size_t n = lo; n < hi; ++n) s.insert(n);
  return s;
}

TimeSet TimeSet::from_members(std::size_t horizon, std::span<const std::size_t> members) {
  TimeSet s(horizon);
  for (std::size_t m : members) s.insert(m);
  return s;
}

TimeSet TimeSet::from_members(std::size_t horizon, std::initializer_list<std::size_t> members) {
  return from_members(horizon, std::span<const std::size_t>(members.begin(), members.size()));
}

TimeSet TimeSet::from_runs(std::size_t horizon,
                           std::span<const std::pair<std::size_t, std::size_t>> runs) {
  TimeSet s(horizon);
  for (const auto& [start, len] : runs) {
    if (start + len > horizon) {
      throw HorizonError("run [" + std::to_string(start) + ", " + std::to_string(start + len) +
                         ") exceeds horizon " + std::to_string(horizon));
    }
    for (std::size_t n = start; n < start + len; ++n) s.insert(n);
  }
  return s;
}

TimeSet TimeSet::from_predicate(std::size_t horizon,
                                const std::function<bool(std::size_t)>& pred) {
  TimeSet s(horizon);
  for (std::size_t n = 0; n < horizon; ++n) {
    if (pred(n)) s.insert(n);
  }
  return s;
}

std::size_t TimeSet::size() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool TimeSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::optional<std::size_t> TimeSet::last() const noexcept {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> TimeSet::next(std::size_t from) const noexcept {
  if (from >= horizon_) return std::nullopt;
  std::size_t w = from >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w == words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

std::vector<std::size_t> TimeSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for_each([&](std::size_t n) { out.push_back(n); });
  return out;
}

void TimeSet::insert(std::size_t n) {
  if (n >= horizon_) {
    throw HorizonError("member " + std::to_string(n) + " outside horizon " +
                       std::to_string(horizon_));
  }
  words_[n >> 6] |= std::uint64_t{1} << (n & 63);
}

void TimeSet::erase(std::size_t n) {
  if (n < horizon_) words_[n >> 6] &= ~(std::uint64_t{1} << (n & 63));
}

void TimeSet::check_same_horizon(const TimeSet& other) const {
  if (other.horizon_ != horizon_) {
    throw HorizonError("horizon mismatch: " + std::to_string(horizon_) + " vs " +
                       std::to_string(other.horizon_));
  }
}

void TimeSet::trim() noexcept {
  if (horizon_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (horizon_ % 64)) - 1;
}

bool TimeSet::is_subset_of(const TimeSet& other) const {
  check_same_horizon(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool TimeSet::intersects(const TimeSet& other) const {
  check_same_horizon(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

TimeSet& TimeSet::operator&=(const TimeSet& other) {
  check_same_horizon(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

TimeSet& TimeSet::operator|=(const TimeSet& other) {
  check_same_horizon(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

TimeSet& TimeSet::operator-=(const TimeSet& other) {
  check_same_horizon(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

TimeSet TimeSet::complement() const {
  TimeSet out(*this);
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

TimeSet TimeSet::with_horizon(std::size_t new_horizon) const {
  TimeSet out(new_horizon);
  const std::size_t common = std::min(words_.size(), out.words_.size());
  std::copy_n(words_.begin(), common, out.words_.begin());
  out.trim();
  return out;
}

void TimeSet::merge_shifted_down(const TimeSet& src, std::size_t offset) {
  const std::size_t word_shift = offset >> 6;
  const std::size_t bit_shift = offset & 63;
  const std::size_t n_src = src.words_.size();
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::size_t lo = w + word_shift;
    if (lo >= n_src) break;
    std::uint64_t bits = src.words_[lo] >> bit_shift;
    if (bit_shift != 0 && lo + 1 < n_src) bits |= src.words_[lo + 1] << (64 - bit_shift);
    words_[w] |= bits;
  }
  trim();
}

ShiftResult shift_plus(const TimeSet& f, std::size_t i) {
  const std::size_t h = f.horizon();
  if (i >= h) throw HorizonError("shift " + std::to_string(i) + " >= horizon " + std::to_string(h));
  ShiftResult out{TimeSet(h), 0};
  f.for_each([&](std::size_t j) {
    if (j + i < h) {
      out.set.insert(j + i);
    } else {
      ++out.clipped;
    }
  });
  return out;
}

TimeSet shift_minus(const TimeSet& f, std::size_t i) {
  const std::size_t h = f.horizon();
  if (i >= h) throw HorizonError("shift " + std::to_string(i) + " >= horizon " + std::to_string(h));
  TimeSet out(h);
  out.merge_shifted_down(f, i);
  return out;
}

bool thick_at(const TimeSet& f, std::size_t run_len) {
  if (run_len == 0 || run_len > f.horizon()) {
    throw DomainError("run length must lie in [1, H]");
  }
  return longest_run(f) >= run_len;
}

std::size_t longest_run(const TimeSet& f) {
  std::size_t best = 0;
  std::size_t cur = 0;
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    cur = f.contains(n) ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

namespace {

// Longest block of consecutive non-members.
std::size_t longest_gap(const TimeSet& f) {
  std::size_t best = 0;
  std::size_t cur = 0;
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    cur = f.contains(n) ? 0 : cur + 1;
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace

bool syndetic_with_gap(const TimeSet& f, std::size_t gap) {
  if (gap >= f.horizon()) throw DomainError("syndetic gap must be below the horizon");
  // A window {i..i+gap} misses F exactly when it sits inside a block of
  // gap+1 consecutive non-members.
  return longest_gap(f) <= gap;
}

std::optional<std::size_t> min_syndetic_gap(const TimeSet& f) {
  if (f.empty()) return std::nullopt;
  return longest_gap(f);
}

std::optional<std::size_t> cofinite_from(const TimeSet& f) {
  std::size_t t = f.horizon();
  while (t > 0 && f.contains(t - 1)) --t;
  if (t == f.horizon()) return std::nullopt;
  return t;
}

TimeSet run_starts(const TimeSet& f, std::size_t run_len) {
  const std::size_t h = f.horizon();
  if (run_len == 0 || run_len > h) throw DomainError("run length must lie in [1, H]");
  TimeSet starts(h - run_len + 1);
  std::size_t cur = 0;
  // cur = length of the run of members ending at n.
  for (std::size_t n = 0; n < h; ++n) {
    cur = f.contains(n) ? cur + 1 : 0;
    if (cur >= run_len) starts.insert(n + 1 - run_len);
  }
  return starts;
}

bool thickly_syndetic_at(const TimeSet& f, std::size_t run_len, std::size_t gap) {
  if (run_len == 0 || run_len + gap >= f.horizon()) {
    throw DomainError("thickly syndetic check needs run_len >= 1 and run_len + gap < H");
  }
  return syndetic_with_gap(run_starts(f, run_len), gap);
}

namespace {

struct FsSearch {
  std::size_t target;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<std::size_t> chosen;

  // admissible = { r : r + s in F for every subset sum s of chosen, and 0 }.
  bool extend(const TimeSet& admissible, std::size_t last) {
    if (chosen.size() == target) return true;
    for (auto p = admissible.next(last + 1); p; p = admissible.next(*p + 1)) {
      if (++nodes > budget) return false;
      chosen.push_back(*p);
      if (chosen.size() == target) return true;
      TimeSet narrowed = admissible & shift_minus(admissible, *p);
      if (narrowed.next(*p + 1) && extend(narrowed, *p)) return true;
      chosen.pop_back();
      if (nodes > budget) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> find_fs_subset(const TimeSet& f, std::size_t n,
                                                       FsSearchLimits limits) {
  if (n == 0 || n > limits.max_terms) {
    throw DomainError("FS search size must lie in [1, " + std::to_string(limits.max_terms) + "]");
  }
  FsSearch search{n, limits.node_budget, 0, {}};
  if (search.extend(f, 0)) return search.chosen;
  return std::nullopt;
}

bool verify_fs_witness(const TimeSet& f, std::span<const std::size_t> terms) {
  if (terms.empty() || terms.size() > 30) return false;
  const std::uint64_t subsets = std::uint64_t{1} << terms.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::size_t sum = 0;
    for (std::size_t b = 0; b < terms.size(); ++b) {
      if ((mask >> b) & 1U) sum += terms[b];
    }
    if (!f.contains(sum)) return false;
  }
  return true;
}

}  // namespace dyntop

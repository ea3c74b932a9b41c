#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dyntop {

/// A subset of {0, ..., H-1} standing for a subset of the nonnegative
/// integers truncated at horizon H.
///
/// Stored as a dense bit vector, so membership is O(1) and the set
/// operations are linear in H / 64. Equality is structural: two sets are
/// equal iff they have the same horizon and the same members.
class TimeSet {
 public:
  explicit TimeSet(std::size_t horizon);

  static TimeSet full(std::size_t horizon);
  /// [lo, hi) clipped to the horizon.
  static TimeSet range(std::size_t horizon, std::size_t lo, std::size_t hi);
  static TimeSet from_members(std::size_t horizon, std::span<const std::size_t> members);
  static TimeSet from_members(std::size_t horizon, std::initializer_list<std::size_t> members);
  /// Run-length form: each pair is (start, length).
  static TimeSet from_runs(std::size_t horizon,
                           std::span<const std::pair<std::size_t, std::size_t>> runs);
  static TimeSet from_predicate(std::size_t horizon,
                                const std::function<bool(std::size_t)>& pred);

  std::size_t horizon() const noexcept { return horizon_; }
  bool contains(std::size_t n) const noexcept {
    return n < horizon_ && ((words_[n >> 6] >> (n & 63)) & 1U) != 0;
  }
  std::size_t size() const noexcept;
  bool empty() const noexcept;
  bool is_full() const noexcept { return size() == horizon_; }

  std::optional<std::size_t> first() const noexcept { return next(0); }
  std::optional<std::size_t> last() const noexcept;
  /// Least member >= from.
  std::optional<std::size_t> next(std::size_t from) const noexcept;
  std::vector<std::size_t> members() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(__builtin_ctzll(bits));
        fn(w * 64 + bit);
        bits &= bits - 1;
      }
    }
  }

  void insert(std::size_t n);
  void erase(std::size_t n);

  bool is_subset_of(const TimeSet& other) const;
  bool intersects(const TimeSet& other) const;

  TimeSet& operator&=(const TimeSet& other);
  TimeSet& operator|=(const TimeSet& other);
  /// Set difference.
  TimeSet& operator-=(const TimeSet& other);
  TimeSet complement() const;

  /// Same members below min(H, new_horizon), new horizon.
  TimeSet with_horizon(std::size_t new_horizon) const;

  /// this |= { n < H : n + offset in src }.  The source may have any horizon.
  void merge_shifted_down(const TimeSet& src, std::size_t offset);

  friend bool operator==(const TimeSet& a, const TimeSet& b) noexcept {
    return a.horizon_ == b.horizon_ && a.words_ == b.words_;
  }

 private:
  void check_same_horizon(const TimeSet& other) const;
  void trim() noexcept;

  std::size_t horizon_;
  std::vector<std::uint64_t> words_;
};

inline TimeSet operator&(TimeSet a, const TimeSet& b) { return a &= b; }
inline TimeSet operator|(TimeSet a, const TimeSet& b) { return a |= b; }
inline TimeSet operator-(TimeSet a, const TimeSet& b) { return a -= b; }

struct ShiftResult {
  TimeSet set;
  /// Members pushed to H or beyond and dropped.
  std::size_t clipped = 0;
};

/// { j + i : j in F, j + i < H }.  Throws HorizonError when i >= H.
ShiftResult shift_plus(const TimeSet& f, std::size_t i);

/// { j - i : j in F, j >= i }.  Throws HorizonError when i >= H.
TimeSet shift_minus(const TimeSet& f, std::size_t i);

/// True iff F contains run_len consecutive integers.
bool thick_at(const TimeSet& f, std::size_t run_len);

/// True iff every window {i, ..., i+gap} lying inside [0, H) meets F.
bool syndetic_with_gap(const TimeSet& f, std::size_t gap);

/// Smallest t with [t, H) contained in F; empty when H-1 is missing.
std::optional<std::size_t> cofinite_from(const TimeSet& f);

/// Start positions of run_len-runs, as a set over the H - run_len + 1
/// positions where such a run fits.
TimeSet run_starts(const TimeSet& f, std::size_t run_len);

/// The run starts of length run_len form a gap-syndetic set (within the
/// positions where a run can start).
bool thickly_syndetic_at(const TimeSet& f, std::size_t run_len, std::size_t gap);

std::size_t longest_run(const TimeSet& f);

/// Least gap for which syndetic_with_gap holds; empty for the empty set.
std::optional<std::size_t> min_syndetic_gap(const TimeSet& f);

struct FsSearchLimits {
  std::size_t max_terms = 20;
  /// Bound on DFS nodes; the search gives up (returns empty) past it.
  std::size_t node_budget = 50'000'000;
};

/// Depth-first search, in increasing order, for positive integers
/// p_1 < ... < p_n whose 2^n - 1 nonempty subset sums all lie in F.
std::optional<std::vector<std::size_t>> find_fs_subset(const TimeSet& f, std::size_t n,
                                                       FsSearchLimits limits = {});

/// Every nonempty subset sum of terms is a member of F.
bool verify_fs_witness(const TimeSet& f, std::span<const std::size_t> terms);

}  // namespace dyntop

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dyntop/hit_set.hpp"
#include "dyntop/timeset.hpp"

namespace dyntop {

using Symbol = std::uint8_t;

/// A finite block over the alphabet {0, ..., A-1}.
class Word {
 public:
  Word(std::size_t alphabet, std::vector<Symbol> symbols);
  /// Digits '0'..'9'.
  static Word parse(std::size_t alphabet, std::string_view digits);

  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

  Word prefix(std::size_t n) const;
  Word suffix_from(std::size_t i) const;
  Word concat(const Word& tail) const;
  std::string str() const;

  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
  }
  /// Length-lexicographic order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept;

 private:
  std::size_t alphabet_;
  std::vector<Symbol> symbols_;
};

/// A point of a one-sided shift, held as a finite prefix.
class Point {
 public:
  enum class Kind { generating, shift_of_generating, periodic, explicit_prefix };

  static Point periodic(const Word& period, std::size_t length);
  static Point explicit_prefix(std::size_t alphabet, std::vector<Symbol> prefix);

  Kind kind() const noexcept { return kind_; }
  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t length() const noexcept { return data_->size() - offset_; }
  std::span<const Symbol> prefix() const noexcept {
    return std::span<const Symbol>(*data_).subspan(offset_);
  }
  Symbol operator[](std::size_t i) const noexcept { return (*data_)[offset_ + i]; }
  /// For shifts of the generating point: how far along the orbit.
  std::size_t orbit_index() const noexcept { return orbit_index_; }

  /// The image under the k-th power of the shift map.
  Point shifted(std::size_t k) const;
  std::string str(std::size_t max_len = 64) const;

 private:
  friend class SymbolicSystem;
  Point(Kind kind, std::size_t alphabet, std::shared_ptr<const std::vector<Symbol>> data,
        std::size_t offset, std::size_t orbit_index);

  Kind kind_;
  std::size_t alphabet_;
  std::shared_ptr<const std::vector<Symbol>> data_;
  std::size_t offset_;
  std::size_t orbit_index_;
};

/// A finite union of cylinders C[w].
class OpenSet {
 public:
  explicit OpenSet(std::vector<Word> cylinders);
  static OpenSet cylinder(Word w) { return OpenSet(std::vector<Word>{std::move(w)}); }

  const std::vector<Word>& cylinders() const noexcept { return cylinders_; }
  std::size_t max_length() const noexcept;
  std::string str() const;

  friend bool operator==(const OpenSet&, const OpenSet&) = default;

 private:
  std::vector<Word> cylinders_;
};

enum class Backend { full_shift, orbit_closure };

struct SymbolicOptions {
  /// Occurrences per cylinder kept by the sensitivity scan on orbit closures.
  std::size_t occurrence_cap = 256;
  /// Drives the choice of occurrences when the cap bites.
  std::uint64_t seed = 0;
};

/// A one-sided subshift, either the full shift or the orbit closure of a
/// generating sequence known through a finite prefix, truncated at horizon
/// H and read through words of length at most lmax.
///
/// The metric is d(x, y) = 2^-min{i : x_i != y_i}, so d > 2^-k iff the two
/// points differ somewhere in coordinates [0, k).
///
/// For orbit closures every hit set is built from occurrences inside the
/// stored prefix: it is a certified subset of the true set, and it is
/// exact when the generating sequence is periodic with its full period
/// visible in the prefix.
class SymbolicSystem {
 public:
  static SymbolicSystem full_shift(std::size_t alphabet, std::size_t horizon, std::size_t lmax,
                                   SymbolicOptions options = {});
  /// The prefix must hold at least horizon + lmax symbols; every stored
  /// symbol is scanned.
  static SymbolicSystem orbit_closure(std::size_t alphabet, std::vector<Symbol> prefix,
                                      std::size_t horizon, std::size_t lmax,
                                      SymbolicOptions options = {});
  /// Orbit closure of period^infinity, with exact hit sets.
  static SymbolicSystem periodic_orbit(const Word& period, std::size_t horizon, std::size_t lmax,
                                       SymbolicOptions options = {});

  Backend backend() const noexcept { return backend_; }
  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t lmax() const noexcept { return lmax_; }
  const SymbolicOptions& options() const noexcept { return options_; }
  std::optional<std::size_t> period() const noexcept { return period_; }
  /// Transfer and sensitivity sets are exact (full shift or periodic orbit).
  bool exact() const noexcept { return backend_ == Backend::full_shift || period_.has_value(); }
  Exactness exactness() const noexcept { return exact() ? Exactness::exact : Exactness::lower_bound; }
  std::string describe() const;

  /// Same language and data, different horizon (prefix permitting).
  SymbolicSystem with_horizon(std::size_t horizon) const;

  /// Words of length exactly L in the language, lexicographic.
  std::vector<Word> admissible_words(std::size_t length) const;
  /// Words of length 1..L, length-lexicographic.
  std::vector<Word> admissible_words_upto(std::size_t length) const;
  bool is_admissible(const Word& w) const;

  void validate(const OpenSet& u) const;
  void validate(const Point& x, std::size_t read_length) const;

  /// Orbit closure backends only.
  Point generating_point() const;
  Point shift_of_generating(std::size_t k) const;
  /// Length of the stored generating prefix (orbit closures).
  std::size_t prefix_length() const noexcept;

  /// n_T(x, G) = { n < H : T^n x in G }.
  HitSet visit_times(const Point& x, const OpenSet& g) const;
  /// N_T(U, V) = { n < H : U meets T^-n V }.
  HitSet transfer_times(const OpenSet& u, const OpenSet& v) const;
  /// S_T(U, 2^-k) = { n < H : two points of U differ within [n, n+k) }.
  HitSet sensitivity_times(const OpenSet& u, std::size_t k) const;
  /// T^-i U as a union of cylinders p.w with |p| = i.
  OpenSet preimage(const OpenSet& u, std::size_t i) const;

 private:
  struct OrbitData;

  SymbolicSystem(Backend backend, std::size_t alphabet, std::size_t horizon, std::size_t lmax,
                 SymbolicOptions options, std::shared_ptr<const OrbitData> orbit,
                 std::optional<std::size_t> period);

  static std::shared_ptr<const OrbitData> build_orbit(std::size_t alphabet, std::vector<Symbol> prefix,
                                                      std::size_t lmax);
  std::uint64_t code(const Word& w) const;
  Word decode(std::uint64_t code, std::size_t length) const;
  TimeSet occurrences(const Word& w) const;
  std::vector<std::size_t> sampled_occurrences(const OpenSet& u) const;

  Backend backend_;
  std::size_t alphabet_;
  std::size_t horizon_;
  std::size_t lmax_;
  SymbolicOptions options_;
  std::shared_ptr<const OrbitData> orbit_;
  std::optional<std::size_t> period_;
};

std::vector<Word> all_words(std::size_t alphabet, std::size_t length);

}  // namespace dyntop

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dyntop/timeset.hpp"

namespace dyntop {

/// A Furstenberg family given as the hereditary-upward closure of finitely
/// many generator sets: F is a member iff F contains some generator.
///
/// Generators are kept as an antichain under inclusion (a generator that
/// contains another one adds nothing to the closure and is dropped). The
/// surviving generators keep their input order. An empty generator makes
/// the family improper; it then swallows every other generator.
class FamilySpec {
 public:
  FamilySpec(std::size_t horizon, std::vector<TimeSet> generators);

  std::size_t horizon() const noexcept { return horizon_; }
  const std::vector<TimeSet>& generators() const noexcept { return generators_; }

  bool member(const TimeSet& f) const;
  /// Membership in the dual family kF: F meets every member of the
  /// closure, which is the same as meeting every generator.
  bool dual_member(const TimeSet& f) const;

  /// Intersection of all generators.
  TimeSet core() const;

 private:
  std::size_t horizon_;
  std::vector<TimeSet> generators_;
};

/// Generators are all pairwise intersections. An empty intersection leaves
/// the result improper, which happens iff some generator of b misses the
/// dual of a.
FamilySpec interaction(const FamilySpec& a, const FamilySpec& b);

/// For a finitely generated closure, every finite subcollection has
/// nonempty intersection iff the intersection of all generators is
/// nonempty: any member contains a generator, so the intersection of any
/// finite subcollection contains the intersection of all generators, and
/// the generator list is itself a finite subcollection. Returns the least
/// common element.
std::optional<std::size_t> has_fip(const FamilySpec& fam);

bool is_free_at_horizon(const FamilySpec& fam);
std::size_t min_intersection_size(const FamilySpec& fam);

bool is_proper(const FamilySpec& fam);
bool is_filter(const FamilySpec& fam);

struct InvarianceReport {
  bool holds = true;
  /// Tail elements added by padding that were absent from the shifted set.
  std::size_t padded = 0;
  /// First failure as (generator index, shift).
  std::optional<std::pair<std::size_t, std::size_t>> failure;
};

/// Every generator shifted by 1..imax, padded with the tail [H-i, H), stays
/// a member. The padding hides horizon clipping, so only failures that would
/// also occur without truncation are reported. Requires 1 <= imax < H/2.
InvarianceReport plus_invariance(const FamilySpec& fam, std::size_t imax);
InvarianceReport minus_invariance(const FamilySpec& fam, std::size_t imax);
bool plus_invariant_upto(const FamilySpec& fam, std::size_t imax);
bool minus_invariant_upto(const FamilySpec& fam, std::size_t imax);

/// For every tuple (i_1..i_n) with entries <= shift_bound, the intersection
/// of shift_minus(F, i_j), padded with [H - shift_bound, H), is a member.
/// Requires n <= 4 and shift_bound <= H/4.
bool tau_member(const FamilySpec& fam, const TimeSet& f, std::size_t shift_bound, std::size_t n);

/// Named families.
FamilySpec evens_family(std::size_t horizon);
/// up({[t, H)}).
FamilySpec tails_family(std::size_t horizon, std::size_t t);

// ---------------------------------------------------------------------------
// Exhaustive oracle over a universe of at most 16 points. Subsets of [0, U)
// are bit masks; the family is a membership table over all 2^U of them.
// Everything here is brute force and shares no code with FamilySpec.

class OracleFamily {
 public:
  static constexpr std::size_t max_universe = 16;

  /// table[mask] says whether mask is a member; must be upward closed.
  OracleFamily(std::size_t universe, std::vector<bool> table);
  /// Upward closure of the given generator masks.
  static OracleFamily from_generators(std::size_t universe, const std::vector<std::uint32_t>& gens);
  /// Embeds a FamilySpec whose horizon is the universe size.
  static OracleFamily from_spec(const FamilySpec& fam);

  std::size_t universe() const noexcept { return universe_; }
  std::uint32_t full_mask() const noexcept { return (std::uint32_t{1} << universe_) - 1; }
  const std::vector<bool>& table() const noexcept { return table_; }

  bool member(std::uint32_t mask) const { return table_.at(mask); }

  friend bool operator==(const OracleFamily&, const OracleFamily&) = default;

 private:
  std::size_t universe_;
  std::vector<bool> table_;
};

/// kF by enumeration of all (candidate, member) pairs.
OracleFamily oracle_dual(const OracleFamily& fam);
bool oracle_dual_member(const OracleFamily& fam, std::uint32_t mask);
OracleFamily oracle_interaction(const OracleFamily& a, const OracleFamily& b);
/// Least element common to every member, if any.
std::optional<std::size_t> oracle_has_fip(const OracleFamily& fam);
/// Proper and closed under pairwise intersection.
bool oracle_is_filter(const OracleFamily& fam);
/// Invariance under the cyclic shifts of Z/U, S -> S + i and S -> S - i
/// for 1 <= i < U. Clipping shifts would leave only the improper family
/// plus-invariant, since (S + i) cap [0,U) eventually empties every set.
bool oracle_plus_invariant(const OracleFamily& fam);
bool oracle_minus_invariant(const OracleFamily& fam);

std::uint32_t to_mask(const TimeSet& s);
TimeSet from_mask(std::size_t universe, std::uint32_t mask);

}  // namespace dyntop

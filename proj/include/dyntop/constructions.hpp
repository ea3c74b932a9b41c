#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dyntop/symbolic.hpp"
#include "dyntop/timeset.hpp"

namespace dyntop {

/// W = a^i Q b^j with a^i the maximal constant prefix and b^j the maximal
/// constant suffix of what remains. A constant word a^k parses as
/// (a, k, empty, 0, 0).
struct BlockDecomposition {
  Symbol a = 0;
  std::size_t i = 0;
  std::vector<Symbol> q;
  Symbol b = 0;
  std::size_t j = 0;
};

BlockDecomposition decompose_block(const Word& w);

/// a^{k+i1} Q1 b^{j1+k} c^{k+i2} Q2 d^{k+j2} a^{k+i1} Q1 b^{j1+k+1} c^{k+i2} Q2 d^{k+j2}
/// over the binary alphabet, with (a, i1, Q1, b, j1) and (c, i2, Q2, d, j2)
/// the decompositions of W1 and W2. Its length is 2|W1| + 2|W2| + 8k + 1.
Word combination_block(const Word& w1, const Word& w2, std::size_t k);

/// Distinct subblocks of a block, in (length, lexicographic) order.
std::vector<Word> subblocks(std::span<const Symbol> block);

/// A_1 = 10 and A_{k+1} = A_k 0^k 1^k followed by c(W1, W2, k) for every
/// ordered pair of subblocks of A_k (W1 = W2 included), W1 then W2 running
/// through subblocks(A_k).
std::vector<Symbol> a_block(std::size_t stage);

struct ASequencePrefix {
  std::vector<Symbol> symbols;
  /// Fewer than the requested symbols could be produced.
  bool truncated = false;
  /// |A_1|, |A_2|, ... as far as they are known.
  std::vector<std::size_t> stage_lengths;
};

/// The first `length` symbols of A_K, generated lazily. A_K begins with
/// A_{K-1}, so stages past the last one whose subblocks can be listed
/// (stage 2) are produced up to the end of the stage that can be streamed.
/// Requires 1 <= K <= 4.
ASequencePrefix a_sequence_prefix(std::size_t stages, std::size_t length);

/// m + |W1| when the last symbol class of W1 equals the first of W2, else
/// 2m + |W1|. Both words must be subblocks of A_m, m in {1, 2}.
std::size_t mixing_tail_bound(const Word& w1, const Word& w2, std::size_t m);

/// Every word of length 1..Lc in length-lexicographic order, continued with
/// longer words until `length` symbols are written.
Point champernowne_point(std::size_t alphabet, std::size_t lc, std::size_t length);
std::size_t champernowne_block_length(std::size_t alphabet, std::size_t lc);

/// x_n = a_i for the least i with n not in F_i (symbol i-1), for n < H;
/// the `tail` positions past H repeat a_1. The alphabet has max(k, 2)
/// symbols. Throws FipHoldsError when the generators share an element.
Point fip_counterexample_point(const std::vector<TimeSet>& generators, std::size_t tail = 1);

}  // namespace dyntop

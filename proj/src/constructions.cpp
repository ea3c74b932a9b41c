#include "dyntop/constructions.hpp"

#include <algorithm>
#include <limits>

#include "dyntop/error.hpp"

namespace dyntop {

namespace {

void append_run(std::vector<Symbol>& out, Symbol s, std::size_t n) { out.insert(out.end(), n, s); }

bool contains_block(std::span<const Symbol> hay, std::span<const Symbol> needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

// |A_{k+1}| from |A_k| and the subblocks of A_k, without building A_{k+1}.
std::size_t next_stage_length(std::size_t len, const std::vector<Word>& sub, std::size_t k) {
  std::size_t total = 0;
  for (const auto& w : sub) total += w.size();
  const std::size_t n = sub.size();
  return len + 2 * k + 4 * total * n + n * n * (8 * k + 1);
}

// Appends c(W1, W2, k) for the pairs in order until out holds `limit`
// symbols.
void stream_stage(std::vector<Symbol>& out, const std::vector<Word>& sub, std::size_t k, std::size_t limit) {
  append_run(out, 0, k);
  append_run(out, 1, k);
  for (const auto& w1 : sub) {
    for (const auto& w2 : sub) {
      if (out.size() >= limit) return;
      const Word c = combination_block(w1, w2, k);
      out.insert(out.end(), c.symbols().begin(), c.symbols().end());
    }
  }
}

}  // namespace

BlockDecomposition decompose_block(const Word& w) {
  const auto s = w.symbols();
  BlockDecomposition d;
  d.a = s[0];
  while (d.i < s.size() && s[d.i] == d.a) ++d.i;
  if (d.i == s.size()) return d;
  d.b = s.back();
  const std::size_t rest = s.size() - d.i;
  while (d.j < rest && s[s.size() - 1 - d.j] == d.b) ++d.j;
  d.q.assign(s.begin() + static_cast<std::ptrdiff_t>(d.i), s.end() - static_cast<std::ptrdiff_t>(d.j));
  return d;
}

Word combination_block(const Word& w1, const Word& w2, std::size_t k) {
  if (w1.alphabet() != 2 || w2.alphabet() != 2) throw DomainError("combination blocks are binary");
  if (k == 0) throw DomainError("k must be positive");
  const auto d1 = decompose_block(w1);
  const auto d2 = decompose_block(w2);
  std::vector<Symbol> out;
  out.reserve(2 * (w1.size() + w2.size()) + 8 * k + 1);
  for (std::size_t extra = 0; extra < 2; ++extra) {
    append_run(out, d1.a, k + d1.i);
    out.insert(out.end(), d1.q.begin(), d1.q.end());
    append_run(out, d1.b, d1.j + k + extra);
    append_run(out, d2.a, k + d2.i);
    out.insert(out.end(), d2.q.begin(), d2.q.end());
    append_run(out, d2.b, k + d2.j);
  }
  return Word(2, std::move(out));
}

std::vector<Word> subblocks(std::span<const Symbol> block) {
  std::vector<std::vector<Symbol>> raw;
  for (std::size_t len = 1; len <= block.size(); ++len) {
    for (std::size_t p = 0; p + len <= block.size(); ++p) {
      raw.emplace_back(block.begin() + static_cast<std::ptrdiff_t>(p),
                       block.begin() + static_cast<std::ptrdiff_t>(p + len));
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  Symbol alphabet = 2;
  for (Symbol s : block) alphabet = std::max<Symbol>(alphabet, static_cast<Symbol>(s + 1));
  std::vector<Word> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.emplace_back(alphabet, std::move(r));
  return out;
}

std::vector<Symbol> a_block(std::size_t stage) {
  if (stage == 0) throw DomainError("stages start at 1");
  if (stage > 2) throw DomainError("stage " + std::to_string(stage) + " is too long to materialize");
  std::vector<Symbol> a{1, 0};
  for (std::size_t k = 1; k < stage; ++k) {
    const auto sub = subblocks(a);
    stream_stage(a, sub, k, std::numeric_limits<std::size_t>::max());
  }
  return a;
}

ASequencePrefix a_sequence_prefix(std::size_t stages, std::size_t length) {
  if (stages == 0 || stages > 4) throw DomainError("stage bound must lie in [1, 4]");
  ASequencePrefix out;
  const auto a1 = a_block(1);
  const auto a2 = a_block(2);
  out.stage_lengths = {a1.size(), a2.size()};
  if (stages <= 2) {
    const auto& a = stages == 1 ? a1 : a2;
    out.symbols.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(length, a.size())));
    out.truncated = length > a.size();
    return out;
  }
  // A_3 and A_4 both begin with A_3; only A_3 can be streamed.
  const auto sub = subblocks(a2);
  const std::size_t a3_len = next_stage_length(a2.size(), sub, 2);
  out.stage_lengths.push_back(a3_len);
  out.symbols = a2;
  if (length > a2.size()) stream_stage(out.symbols, sub, 2, std::min(length, a3_len));
  if (out.symbols.size() > length) out.symbols.resize(length);
  out.truncated = length > a3_len;
  return out;
}

std::size_t mixing_tail_bound(const Word& w1, const Word& w2, std::size_t m) {
  if (m == 0 || m > 2) throw DomainError("tail bounds are available for stages 1 and 2");
  const auto a = a_block(m);
  for (const Word* w : {&w1, &w2}) {
    if (w->alphabet() != 2 || !contains_block(a, w->symbols())) {
      throw DomainError(w->str() + " is not a subblock of A_" + std::to_string(m));
    }
  }
  const bool glued = decompose_block(w1).b == decompose_block(w2).a;
  return glued ? m + w1.size() : 2 * m + w1.size();
}

std::size_t champernowne_block_length(std::size_t alphabet, std::size_t lc) {
  std::size_t total = 0;
  std::size_t count = 1;
  for (std::size_t l = 1; l <= lc; ++l) {
    if (count > std::numeric_limits<std::size_t>::max() / alphabet / (l + 1)) {
      throw DomainError("word block overflows");
    }
    count *= alphabet;
    total += l * count;
  }
  return total;
}

Point champernowne_point(std::size_t alphabet, std::size_t lc, std::size_t length) {
  if (alphabet < 2 || alphabet > 10) throw DomainError("alphabet size must lie in [2, 10]");
  if (lc == 0) throw DomainError("Lc must be positive");
  if (champernowne_block_length(alphabet, lc) > length) {
    throw DomainError("words of length <= " + std::to_string(lc) + " do not fit in " + std::to_string(length) +
                      " symbols");
  }
  std::vector<Symbol> out;
  out.reserve(length);
  for (std::size_t l = 1; out.size() < length; ++l) {
    std::vector<Symbol> cur(l, 0);
    while (out.size() < length) {
      out.insert(out.end(), cur.begin(), cur.end());
      std::size_t i = l;
      while (i > 0 && cur[i - 1] + 1U == alphabet) cur[--i] = 0;
      if (i == 0) break;
      ++cur[i - 1];
    }
  }
  out.resize(length);
  return Point::explicit_prefix(alphabet, std::move(out));
}

Point fip_counterexample_point(const std::vector<TimeSet>& generators, std::size_t tail) {
  if (generators.empty()) throw DomainError("need at least one generator");
  if (generators.size() > 10) throw DomainError("at most 10 generators (alphabet bound)");
  const std::size_t h = generators.front().horizon();
  TimeSet core = generators.front();
  for (const auto& g : generators) core &= g;
  if (const auto w = core.first()) throw FipHoldsError(*w);
  std::vector<Symbol> x(h + tail, 0);
  for (std::size_t n = 0; n < h; ++n) {
    std::size_t i = 0;
    while (generators[i].contains(n)) ++i;
    x[n] = static_cast<Symbol>(i);
  }
  return Point::explicit_prefix(std::max<std::size_t>(generators.size(), 2), std::move(x));
}

}  // namespace dyntop

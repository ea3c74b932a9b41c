#include "dyntop/symbolic.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dyntop/error.hpp"

namespace dyntop {

// --- Word --------------------------------------------------------------------

Word::Word(std::size_t alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
  if (alphabet < 2 || alphabet > 256) throw DomainError("alphabet size must lie in [2, 256]");
  if (symbols_.empty()) throw DomainError("words must be nonempty");
  for (Symbol s : symbols_) {
    if (s >= alphabet) {
      throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " +
                        std::to_string(alphabet));
    }
  }
}

Word Word::parse(std::size_t alphabet, std::string_view digits) {
  std::vector<Symbol> symbols;
  symbols.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError(std::string("not a symbol digit: '") + c + "'");
    symbols.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(alphabet, std::move(symbols));
}

Word Word::prefix(std::size_t n) const {
  return Word(alphabet_, std::vector<Symbol>(symbols_.begin(), symbols_.begin() + std::min(n, size())));
}

Word Word::suffix_from(std::size_t i) const {
  return Word(alphabet_, std::vector<Symbol>(symbols_.begin() + std::min(i, size()), symbols_.end()));
}

Word Word::concat(const Word& tail) const {
  if (tail.alphabet_ != alphabet_) throw DomainError("concatenating words over different alphabets");
  std::vector<Symbol> out = symbols_;
  out.insert(out.end(), tail.symbols_.begin(), tail.symbols_.end());
  return Word(alphabet_, std::move(out));
}

std::string Word::str() const {
  std::string out;
  out.reserve(size());
  for (Symbol s : symbols_) {
    out += s < 10 ? static_cast<char>('0' + s) : '?';
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(),
                                                b.symbols_.begin(), b.symbols_.end());
}

std::vector<Word> all_words(std::size_t alphabet, std::size_t length) {
  if (length == 0) throw DomainError("word length must be positive");
  double count = 1;
  for (std::size_t i = 0; i < length; ++i) count *= static_cast<double>(alphabet);
  if (count > static_cast<double>(1U << 22)) throw DomainError("too many words to enumerate");
  std::vector<Word> out;
  std::vector<Symbol> cur(length, 0);
  while (true) {
    out.emplace_back(alphabet, cur);
    std::size_t i = length;
    while (i > 0 && cur[i - 1] + 1U == alphabet) cur[--i] = 0;
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

// --- Point -------------------------------------------------------------------

Point::Point(Kind kind, std::size_t alphabet, std::shared_ptr<const std::vector<Symbol>> data,
             std::size_t offset, std::size_t orbit_index)
    : kind_(kind), alphabet_(alphabet), data_(std::move(data)), offset_(offset), orbit_index_(orbit_index) {}

Point Point::periodic(const Word& period, std::size_t length) {
  auto data = std::make_shared<std::vector<Symbol>>(length);
  for (std::size_t i = 0; i < length; ++i) (*data)[i] = period[i % period.size()];
  return Point(Kind::periodic, period.alphabet(), std::move(data), 0, 0);
}

Point Point::explicit_prefix(std::size_t alphabet, std::vector<Symbol> prefix) {
  if (prefix.empty()) throw DomainError("point prefix must be nonempty");
  // Reuse Word for symbol validation.
  Word check(alphabet, prefix);
  return Point(Kind::explicit_prefix, alphabet,
               std::make_shared<const std::vector<Symbol>>(std::move(prefix)), 0, 0);
}

Point Point::shifted(std::size_t k) const {
  if (k >= length()) throw HorizonError("shift consumes the whole stored prefix");
  Kind kind = kind_ == Kind::generating ? Kind::shift_of_generating : kind_;
  return Point(kind, alphabet_, data_, offset_ + k, orbit_index_ + k);
}

std::string Point::str(std::size_t max_len) const {
  std::string out;
  const auto p = prefix();
  for (std::size_t i = 0; i < std::min(max_len, p.size()); ++i) out += static_cast<char>('0' + p[i]);
  if (p.size() > max_len) out += "...";
  return out;
}

// --- OpenSet -----------------------------------------------------------------

OpenSet::OpenSet(std::vector<Word> cylinders) : cylinders_(std::move(cylinders)) {
  if (cylinders_.empty()) throw DomainError("open sets need at least one cylinder");
  for (const auto& w : cylinders_) {
    if (w.alphabet() != cylinders_.front().alphabet()) {
      throw DomainError("cylinders over different alphabets");
    }
  }
}

std::size_t OpenSet::max_length() const noexcept {
  std::size_t m = 0;
  for (const auto& w : cylinders_) m = std::max(m, w.size());
  return m;
}

std::string OpenSet::str() const {
  std::string out;
  for (const auto& w : cylinders_) {
    if (!out.empty()) out += '|';
    out += w.str();
  }
  return out;
}

// --- SymbolicSystem ----------------------------------------------------------

struct SymbolicSystem::OrbitData {
  std::shared_ptr<const std::vector<Symbol>> prefix;
  // codes[L][p] = base-A code of prefix[p, p+L), for 1 <= L <= lmax.
  std::vector<std::vector<std::uint64_t>> codes;
  // language[L] = sorted distinct codes of length-L subwords.
  std::vector<std::vector<std::uint64_t>> language;
};

namespace {

void check_code_range(std::size_t alphabet, std::size_t lmax) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < lmax; ++i) {
    if (p > limit / alphabet) throw DomainError("alphabet^lmax exceeds 63-bit word codes");
    p *= alphabet;
  }
}

}  // namespace

SymbolicSystem::SymbolicSystem(Backend backend, std::size_t alphabet, std::size_t horizon,
                               std::size_t lmax, SymbolicOptions options,
                               std::shared_ptr<const OrbitData> orbit, std::optional<std::size_t> period)
    : backend_(backend),
      alphabet_(alphabet),
      horizon_(horizon),
      lmax_(lmax),
      options_(options),
      orbit_(std::move(orbit)),
      period_(period) {
  if (alphabet < 2 || alphabet > 10) throw DomainError("alphabet size must lie in [2, 10]");
  if (horizon == 0) throw DomainError("horizon must be positive");
  if (lmax == 0) throw DomainError("lmax must be positive");
  check_code_range(alphabet, lmax);
  if (orbit_ && orbit_->prefix->size() < horizon + lmax) {
    throw DomainError("orbit prefix of length " + std::to_string(orbit_->prefix->size()) +
                      " is shorter than horizon + lmax = " + std::to_string(horizon + lmax));
  }
}

SymbolicSystem SymbolicSystem::full_shift(std::size_t alphabet, std::size_t horizon, std::size_t lmax,
                                          SymbolicOptions options) {
  return SymbolicSystem(Backend::full_shift, alphabet, horizon, lmax, options, nullptr, std::nullopt);
}

SymbolicSystem SymbolicSystem::orbit_closure(std::size_t alphabet, std::vector<Symbol> prefix,
                                             std::size_t horizon, std::size_t lmax,
                                             SymbolicOptions options) {
  if (alphabet < 2 || alphabet > 10) throw DomainError("alphabet size must lie in [2, 10]");
  if (lmax == 0) throw DomainError("lmax must be positive");
  check_code_range(alphabet, lmax);
  for (Symbol s : prefix) {
    if (s >= alphabet) throw DomainError("generating sequence symbol outside the alphabet");
  }
  return SymbolicSystem(Backend::orbit_closure, alphabet, horizon, lmax, options,
                        build_orbit(alphabet, std::move(prefix), lmax), std::nullopt);
}

SymbolicSystem SymbolicSystem::periodic_orbit(const Word& period, std::size_t horizon, std::size_t lmax,
                                              SymbolicOptions options) {
  // One extra period past horizon + lmax makes every phase visible to every
  // scan, which is what makes the hit sets exact.
  const std::size_t len = horizon + lmax + period.size();
  std::vector<Symbol> prefix(len);
  for (std::size_t i = 0; i < len; ++i) prefix[i] = period[i % period.size()];
  SymbolicSystem sys = orbit_closure(period.alphabet(), std::move(prefix), horizon, lmax, options);
  sys.period_ = period.size();
  return sys;
}

std::shared_ptr<const SymbolicSystem::OrbitData> SymbolicSystem::build_orbit(std::size_t alphabet,
                                                                             std::vector<Symbol> prefix,
                                                                             std::size_t lmax) {
  auto data = std::make_shared<SymbolicSystem::OrbitData>();
  const std::size_t len = prefix.size();
  data->codes.resize(lmax + 1);
  data->language.resize(lmax + 1);
  for (std::size_t l = 1; l <= lmax && l <= len; ++l) {
    auto& cur = data->codes[l];
    cur.resize(len - l + 1);
    for (std::size_t p = 0; p + l <= len; ++p) {
      const std::uint64_t prev = l == 1 ? 0 : data->codes[l - 1][p];
      cur[p] = prev * alphabet + prefix[p + l - 1];
    }
    auto lang = cur;
    std::sort(lang.begin(), lang.end());
    lang.erase(std::unique(lang.begin(), lang.end()), lang.end());
    data->language[l] = std::move(lang);
  }
  data->prefix = std::make_shared<const std::vector<Symbol>>(std::move(prefix));
  return data;
}

std::string SymbolicSystem::describe() const {
  std::ostringstream out;
  if (backend_ == Backend::full_shift) {
    out << "full-shift(A=" << alphabet_;
  } else if (period_) {
    out << "periodic-orbit(A=" << alphabet_ << ", period=" << *period_;
  } else {
    out << "orbit-closure(A=" << alphabet_ << ", prefix=" << prefix_length();
  }
  out << ", H=" << horizon_ << ", lmax=" << lmax_ << ")";
  return out.str();
}

SymbolicSystem SymbolicSystem::with_horizon(std::size_t horizon) const {
  // Exactness of a periodic orbit needs a full period past horizon + lmax.
  std::optional<std::size_t> period = period_;
  if (period && prefix_length() < horizon + lmax_ + *period) period.reset();
  return SymbolicSystem(backend_, alphabet_, horizon, lmax_, options_, orbit_, period);
}

std::size_t SymbolicSystem::prefix_length() const noexcept { return orbit_ ? orbit_->prefix->size() : 0; }

std::uint64_t SymbolicSystem::code(const Word& w) const {
  std::uint64_t c = 0;
  for (Symbol s : w.symbols()) c = c * alphabet_ + s;
  return c;
}

Word SymbolicSystem::decode(std::uint64_t c, std::size_t length) const {
  std::vector<Symbol> symbols(length);
  for (std::size_t i = length; i-- > 0;) {
    symbols[i] = static_cast<Symbol>(c % alphabet_);
    c /= alphabet_;
  }
  return Word(alphabet_, std::move(symbols));
}

std::vector<Word> SymbolicSystem::admissible_words(std::size_t length) const {
  if (length == 0 || length > lmax_) {
    throw DomainError("word length " + std::to_string(length) + " outside [1, lmax=" +
                      std::to_string(lmax_) + "]");
  }
  if (backend_ == Backend::full_shift) return all_words(alphabet_, length);
  std::vector<Word> out;
  out.reserve(orbit_->language[length].size());
  for (auto c : orbit_->language[length]) out.push_back(decode(c, length));
  return out;
}

std::vector<Word> SymbolicSystem::admissible_words_upto(std::size_t length) const {
  std::vector<Word> out;
  for (std::size_t l = 1; l <= length; ++l) {
    auto words = admissible_words(l);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

bool SymbolicSystem::is_admissible(const Word& w) const {
  if (w.alphabet() != alphabet_ || w.size() > lmax_) return false;
  if (backend_ == Backend::full_shift) return true;
  const auto& lang = orbit_->language[w.size()];
  return std::binary_search(lang.begin(), lang.end(), code(w));
}

void SymbolicSystem::validate(const OpenSet& u) const {
  for (const auto& w : u.cylinders()) {
    if (w.alphabet() != alphabet_) throw AdmissibilityError("cylinder alphabet differs from the system's");
    if (w.size() > lmax_) {
      throw AdmissibilityError("cylinder " + w.str() + " longer than lmax=" + std::to_string(lmax_));
    }
    if (!is_admissible(w)) throw AdmissibilityError("cylinder " + w.str() + " is not admissible");
  }
}

void SymbolicSystem::validate(const Point& x, std::size_t read_length) const {
  if (x.alphabet() != alphabet_) throw AdmissibilityError("point alphabet differs from the system's");
  if (x.length() + 1 < horizon_ + read_length) {
    throw AdmissibilityError("point prefix of length " + std::to_string(x.length()) +
                             " cannot be read up to horizon " + std::to_string(horizon_));
  }
  if (backend_ == Backend::full_shift || x.data_ == orbit_->prefix) return;
  // Orbit closure: every lmax-window of the prefix must be in the language.
  const std::size_t l = std::min(lmax_, x.length());
  const auto& lang = orbit_->language[l];
  const auto p = x.prefix();
  for (std::size_t i = 0; i + l <= p.size(); ++i) {
    std::uint64_t c = 0;
    for (std::size_t t = 0; t < l; ++t) c = c * alphabet_ + p[i + t];
    if (!std::binary_search(lang.begin(), lang.end(), c)) {
      throw AdmissibilityError("point contains a word outside the language at index " + std::to_string(i));
    }
  }
}

Point SymbolicSystem::generating_point() const {
  if (!orbit_) throw DomainError("the full shift has no generating point");
  return Point(Point::Kind::generating, alphabet_, orbit_->prefix, 0, 0);
}

Point SymbolicSystem::shift_of_generating(std::size_t k) const { return generating_point().shifted(k); }

TimeSet SymbolicSystem::occurrences(const Word& w) const {
  const auto& codes = orbit_->codes[w.size()];
  const std::uint64_t target = code(w);
  TimeSet occ(prefix_length());
  for (std::size_t p = 0; p < codes.size(); ++p) {
    if (codes[p] == target) occ.insert(p);
  }
  return occ;
}

HitSet SymbolicSystem::visit_times(const Point& x, const OpenSet& g) const {
  validate(g);
  validate(x, g.max_length());
  TimeSet out(horizon_);
  const auto p = x.prefix();
  for (const auto& w : g.cylinders()) {
    const auto ws = w.symbols();
    for (std::size_t n = 0; n < horizon_; ++n) {
      if (std::equal(ws.begin(), ws.end(), p.begin() + static_cast<std::ptrdiff_t>(n))) out.insert(n);
    }
  }
  return {std::move(out), Exactness::exact};
}

HitSet SymbolicSystem::transfer_times(const OpenSet& u, const OpenSet& v) const {
  validate(u);
  validate(v);
  TimeSet out(horizon_);
  if (backend_ == Backend::full_shift) {
    for (const auto& a : u.cylinders()) {
      for (const auto& b : v.cylinders()) {
        for (std::size_t n = 0; n < horizon_; ++n) {
          // Positions constrained by both cylinders must agree.
          bool ok = true;
          for (std::size_t t = 0; t < b.size() && n + t < a.size() && ok; ++t) ok = a[n + t] == b[t];
          if (ok) out.insert(n);
        }
      }
    }
    return {std::move(out), Exactness::exact};
  }
  // n is a transfer time iff some start of a U word is followed n places
  // later by a start of a V word, so the cylinders can be pooled.
  TimeSet occ_u(prefix_length());
  TimeSet occ_v(prefix_length());
  for (const auto& a : u.cylinders()) occ_u |= occurrences(a);
  for (const auto& b : v.cylinders()) occ_v |= occurrences(b);
  std::size_t merged = 0;
  bool saturated = false;
  occ_u.for_each([&](std::size_t p) {
    if (saturated) return;
    out.merge_shifted_down(occ_v, p);
    if (++merged % 256 == 0) saturated = out.size() == horizon_;
  });
  return {std::move(out), exactness()};
}

std::vector<std::size_t> SymbolicSystem::sampled_occurrences(const OpenSet& u) const {
  std::vector<std::size_t> out;
  std::mt19937_64 rng(options_.seed);
  for (const auto& w : u.cylinders()) {
    auto occ = occurrences(w).members();
    if (period_) {
      // One occurrence per phase already lists every point of the cylinder.
      std::erase_if(occ, [&](std::size_t p) { return p >= *period_; });
    } else if (occ.size() > options_.occurrence_cap) {
      std::vector<std::size_t> kept;
      std::sample(occ.begin(), occ.end(), std::back_inserter(kept), options_.occurrence_cap, rng);
      occ = std::move(kept);
    }
    out.insert(out.end(), occ.begin(), occ.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HitSet SymbolicSystem::sensitivity_times(const OpenSet& u, std::size_t k) const {
  validate(u);
  if (k == 0 || k > lmax_) throw DomainError("resolution must lie in [1, lmax]");
  TimeSet out(horizon_);
  if (backend_ == Backend::full_shift) {
    for (std::size_t n = 0; n < horizon_; ++n) {
      bool spread = false;
      const Word* pinned = nullptr;
      for (const auto& w : u.cylinders()) {
        if (w.size() < n + k) {
          spread = true;  // a free coordinate inside the window
          break;
        }
        if (pinned == nullptr) {
          pinned = &w;
        } else if (!std::equal(w.symbols().begin() + static_cast<std::ptrdiff_t>(n),
                               w.symbols().begin() + static_cast<std::ptrdiff_t>(n + k),
                               pinned->symbols().begin() + static_cast<std::ptrdiff_t>(n))) {
          spread = true;
          break;
        }
      }
      if (spread) out.insert(n);
    }
    return {std::move(out), Exactness::exact};
  }
  const auto occ = sampled_occurrences(u);
  const auto& codes = orbit_->codes[k];
  for (std::size_t n = 0; n < horizon_; ++n) {
    std::optional<std::uint64_t> first;
    for (std::size_t p : occ) {
      if (p + n >= codes.size()) break;
      const std::uint64_t c = codes[p + n];
      if (!first) {
        first = c;
      } else if (c != *first) {
        out.insert(n);
        break;
      }
    }
  }
  return {std::move(out), exactness()};
}

OpenSet SymbolicSystem::preimage(const OpenSet& u, std::size_t i) const {
  validate(u);
  if (i + u.max_length() > lmax_) throw DomainError("preimage would exceed lmax");
  if (i == 0) return u;
  std::vector<Word> out;
  const auto prefixes = backend_ == Backend::full_shift ? all_words(alphabet_, i) : admissible_words(i);
  for (const auto& p : prefixes) {
    for (const auto& w : u.cylinders()) {
      Word pw = p.concat(w);
      if (is_admissible(pw)) out.push_back(std::move(pw));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw AdmissibilityError("preimage is empty in this language");
  return OpenSet(std::move(out));
}

}  // namespace dyntop

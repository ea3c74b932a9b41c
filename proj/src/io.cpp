#include "dyntop/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dyntop/constructions.hpp"
#include "dyntop/error.hpp"

namespace dyntop {

namespace {

using nlohmann::json;

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + name + "': " + e.what());
  }
}

template <class T>
std::optional<T> optional_field(const json& j, const char* name) {
  if (!j.contains(name)) return std::nullopt;
  return field<T>(j, name);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string compact_witness(const Verdict& v) { return v.witnesses.dump(); }

}  // namespace

TimeSet timeset_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("time set must be a JSON object");
  const auto h = field<std::size_t>(j, "horizon");
  if (j.contains("members") == j.contains("runs")) {
    throw ParseError("time set needs exactly one of 'members' and 'runs'");
  }
  try {
    if (j.contains("members")) {
      const auto members = field<std::vector<std::size_t>>(j, "members");
      return TimeSet::from_members(h, members);
    }
    const auto runs = field<std::vector<std::pair<std::size_t, std::size_t>>>(j, "runs");
    return TimeSet::from_runs(h, runs);
  } catch (const HorizonError& e) {
    throw ParseError(std::string("time set: ") + e.what());
  }
}

json to_json(const TimeSet& t) { return {{"horizon", t.horizon()}, {"members", t.members()}}; }

FamilySpec family_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("family must be a JSON object");
  const auto h = field<std::size_t>(j, "horizon");
  if (!j.contains("generators") || !j.at("generators").is_array()) {
    throw ParseError("field 'generators' must be an array");
  }
  std::vector<TimeSet> gens;
  std::size_t idx = 0;
  for (auto g : j.at("generators")) {
    if (g.is_object() && !g.contains("horizon")) g["horizon"] = h;
    try {
      gens.push_back(timeset_from_json(g));
    } catch (const ParseError& e) {
      throw ParseError("generators[" + std::to_string(idx) + "]: " + e.what());
    }
    ++idx;
  }
  if (gens.empty()) throw ParseError("family needs at least one generator");
  return FamilySpec(h, std::move(gens));
}

json to_json(const FamilySpec& f) {
  json out = {{"horizon", f.horizon()}, {"generators", json::array()}};
  for (const auto& g : f.generators()) out["generators"].push_back({{"members", g.members()}});
  return out;
}

FamilySpec builtin_family(const std::string& name, std::size_t horizon) {
  if (name == "evens") return evens_family(horizon);
  if (name.rfind("tails:", 0) == 0) {
    std::size_t t = 0;
    try {
      std::size_t used = 0;
      t = std::stoul(name.substr(6), &used);
      if (used != name.size() - 6) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      throw ParseError("bad tail start in '" + name + "'");
    }
    return tails_family(horizon, t);
  }
  if (name == "syndetic-sample") {
    std::vector<TimeSet> gens;
    gens.push_back(TimeSet::from_predicate(horizon, [](std::size_t n) { return n % 2 == 0; }));
    gens.push_back(TimeSet::from_predicate(horizon, [](std::size_t n) { return n % 3 == 0; }));
    gens.push_back(TimeSet::from_predicate(horizon, [](std::size_t n) {
      const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
      return r * r != n;
    }));
    return FamilySpec(horizon, std::move(gens));
  }
  throw ParseError("unknown built-in family '" + name + "'");
}

FamilySpec n_family(const SymbolicSystem& sys, std::size_t gen_length) {
  const auto words = sys.admissible_words_upto(gen_length);
  std::vector<TimeSet> gens;
  for (const auto& u : words) {
    for (const auto& v : words) {
      gens.push_back(sys.transfer_times(OpenSet::cylinder(u), OpenSet::cylinder(v)).times);
    }
  }
  return FamilySpec(sys.horizon(), std::move(gens));
}

FamilySpec s_family(const SymbolicSystem& sys, std::size_t k, std::size_t gen_length) {
  std::vector<TimeSet> gens;
  for (const auto& w : sys.admissible_words_upto(gen_length)) {
    gens.push_back(sys.sensitivity_times(OpenSet::cylinder(w), k).times);
  }
  return FamilySpec(sys.horizon(), std::move(gens));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot write");
  out << j.dump(2) << "\n";
}

Sequence read_sequence(const std::filesystem::path& path, std::optional<std::size_t> alphabet) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto start = text.find_first_not_of(" \t\r\n");
  Sequence seq;
  if (start != std::string::npos && text[start] == '{') {
    try {
      const auto j = json::parse(text);
      seq.alphabet = field<std::size_t>(j, "alphabet");
      for (auto v : field<std::vector<std::size_t>>(j, "symbols")) {
        if (v >= seq.alphabet) throw ParseError(path.string() + ": symbol " + std::to_string(v) + " outside the alphabet");
        seq.symbols.push_back(static_cast<Symbol>(v));
      }
    } catch (const json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  } else {
    std::size_t line = 1;
    std::size_t top = 0;
    for (char c : text) {
      if (c == '\n') ++line;
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c < '0' || c > '9') {
        throw ParseError(path.string() + ": line " + std::to_string(line) + ": not a symbol digit '" + c + "'");
      }
      seq.symbols.push_back(static_cast<Symbol>(c - '0'));
      top = std::max<std::size_t>(top, static_cast<std::size_t>(c - '0'));
    }
    seq.alphabet = alphabet.value_or(std::max<std::size_t>(2, top + 1));
  }
  if (alphabet && *alphabet != seq.alphabet) {
    throw ParseError(path.string() + ": alphabet " + std::to_string(seq.alphabet) + " differs from the expected " +
                     std::to_string(*alphabet));
  }
  for (std::size_t i = 0; i < seq.symbols.size(); ++i) {
    if (seq.symbols[i] >= seq.alphabet) {
      throw ParseError(path.string() + ": symbol at index " + std::to_string(i) + " outside the alphabet");
    }
  }
  return seq;
}

void write_sequence(const std::filesystem::path& path, const Sequence& seq) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot write");
  std::string line;
  for (std::size_t i = 0; i < seq.symbols.size(); ++i) {
    line += static_cast<char>('0' + seq.symbols[i]);
    if (line.size() == 100) {
      out << line << "\n";
      line.clear();
    }
  }
  if (!line.empty()) out << line << "\n";
}

SymbolicSystem symbolic_from_json(const json& j, const std::filesystem::path& base_dir,
                                  std::optional<std::size_t> horizon, std::optional<std::uint64_t> seed) {
  const auto backend = field<std::string>(j, "backend");
  const auto a = field<std::size_t>(j, "alphabet");
  const auto h = horizon.value_or(field<std::size_t>(j, "horizon"));
  const auto lmax = field<std::size_t>(j, "lmax");
  SymbolicOptions opts;
  opts.occurrence_cap = optional_field<std::size_t>(j, "occurrence_cap").value_or(opts.occurrence_cap);
  opts.seed = seed.value_or(optional_field<std::uint64_t>(j, "seed").value_or(0));
  if (backend == "full") return SymbolicSystem::full_shift(a, h, lmax, opts);
  if (backend != "orbit") throw ParseError("field 'backend': expected 'full' or 'orbit', got '" + backend + "'");
  const int sources = static_cast<int>(j.contains("source")) + static_cast<int>(j.contains("periodic")) +
                      static_cast<int>(j.contains("construct"));
  if (sources != 1) throw ParseError("orbit descriptors need exactly one of 'source', 'periodic', 'construct'");
  if (j.contains("periodic")) {
    return SymbolicSystem::periodic_orbit(Word::parse(a, field<std::string>(j, "periodic")), h, lmax, opts);
  }
  std::vector<Symbol> prefix;
  if (j.contains("source")) {
    prefix = read_sequence(base_dir / field<std::string>(j, "source"), a).symbols;
  } else {
    const auto& c = j.at("construct");
    const auto kind = field<std::string>(c, "kind");
    // More stored symbols mean more occurrences and tighter lower bounds.
    const auto length = std::max(optional_field<std::size_t>(c, "length").value_or(100000), h + lmax);
    if (kind == "a-sequence") {
      if (a != 2) throw ParseError("the a-sequence is binary");
      auto gen = a_sequence_prefix(optional_field<std::size_t>(c, "stages").value_or(3), length);
      if (gen.symbols.size() < h + lmax) throw ParseError("a-sequence stage too short for horizon + lmax");
      prefix = std::move(gen.symbols);
    } else if (kind == "champernowne") {
      const auto x = champernowne_point(a, optional_field<std::size_t>(c, "lc").value_or(1), length);
      prefix.assign(x.prefix().begin(), x.prefix().end());
    } else {
      throw ParseError("unknown construction '" + kind + "'");
    }
  }
  return SymbolicSystem::orbit_closure(a, std::move(prefix), h, lmax, opts);
}

TorusSystem torus_from_json(const json& j, std::optional<std::size_t> horizon) {
  const auto kind = field<std::string>(j, "kind");
  Alpha alpha = Alpha::golden();
  if (j.contains("alpha")) {
    const auto& a = j.at("alpha");
    if (a.is_number()) {
      alpha = Alpha::irrational(a.get<double>());
    } else if (a.is_string()) {
      const auto s = a.get<std::string>();
      const auto slash = s.find('/');
      if (s == "golden") {
        alpha = Alpha::golden();
      } else if (slash != std::string::npos) {
        try {
          alpha = Alpha::ratio(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
          throw ParseError("field 'alpha': bad ratio '" + s + "'");
        }
      } else {
        throw ParseError("field 'alpha': expected a number, 'golden' or 'p/q'");
      }
    } else {
      throw ParseError("field 'alpha': expected a number or string");
    }
  }
  const auto h = horizon.value_or(field<std::size_t>(j, "horizon"));
  const auto grid = field<std::size_t>(j, "grid");
  const auto sample = optional_field<std::size_t>(j, "sample").value_or(4);
  TorusPoint seed{0.0, 0.0};
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (s.is_number()) {
      seed[0] = s.get<double>();
    } else {
      const auto v = field<std::vector<double>>(j, "seed");
      if (v.empty() || v.size() > 2) throw ParseError("field 'seed': expected one or two coordinates");
      for (std::size_t i = 0; i < v.size(); ++i) seed[i] = v[i];
    }
  }
  if (kind == "rotation") return TorusSystem::rotation(alpha, seed[0], h, grid, sample);
  if (kind == "skew") return TorusSystem::skew(alpha, seed, h, grid, sample);
  throw ParseError("field 'kind': expected 'rotation' or 'skew', got '" + kind + "'");
}

AnySystem load_system(const std::filesystem::path& path, std::optional<std::size_t> horizon,
                      std::optional<std::uint64_t> seed) {
  const auto j = read_json_file(path);
  try {
    if (j.contains("backend")) return symbolic_from_json(j, path.parent_path(), horizon, seed);
    if (j.contains("kind")) return torus_from_json(j, horizon);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  throw ParseError(path.string() + ": descriptor needs 'backend' (symbolic) or 'kind' (numeric)");
}

json to_json(const OmegaApprox& o) {
  json cells = json::array();
  for (const auto& w : o.cells) cells.push_back(w.str());
  return {{"schema", schema_tag}, {"precision", o.precision}, {"cells", cells},
          {"exact", o.exactness == Exactness::exact}};
}

json to_json(const NumericOmega& o, const TorusSystem& sys) {
  json cells = json::array();
  for (const auto& b : o.cells) cells.push_back(sys.label(b));
  return {{"schema", schema_tag}, {"precision", o.precision}, {"cells", cells},
          {"exact", o.exactness == Exactness::exact}};
}

std::string verdicts_csv(const std::vector<Verdict>& verdicts) {
  std::string out = "property,outcome,exactness,witness,params\n";
  for (const auto& v : verdicts) {
    out += csv_quote(v.property) + "," + std::string(to_string(v.outcome)) + "," +
           std::string(to_string(v.exactness)) + "," + csv_quote(compact_witness(v)) + "," +
           csv_quote(v.params.dump()) + "\n";
  }
  return out;
}

std::string verdicts_markdown(const std::vector<Verdict>& verdicts) {
  std::string out = "| property | outcome | exactness | notes |\n|---|---|---|---|\n";
  for (const auto& v : verdicts) {
    std::string notes;
    for (const auto& n : v.notes) notes += (notes.empty() ? "" : "; ") + n;
    out += "| " + v.property + " | " + std::string(to_string(v.outcome)) + " | " +
           std::string(to_string(v.exactness)) + " | " + notes + " |\n";
  }
  return out;
}

}  // namespace dyntop

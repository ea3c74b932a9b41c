// Command-line front end: build systems and families from files, run the
// checkers, emit reports.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyntop/checkers.hpp"
#include "dyntop/constructions.hpp"
#include "dyntop/error.hpp"
#include "dyntop/families.hpp"
#include "dyntop/io.hpp"
#include "dyntop/limits.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dyntop;

namespace {

enum Exit { ok = 0, refuted = 1, inconclusive = 2, usage = 3, io_error = 4 };

struct Globals {
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string format = "json";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t need_horizon(const Globals& g) {
  if (!g.horizon) throw UsageError("--horizon is required here");
  return *g.horizon;
}

json tagged(json j) {
  j["schema"] = schema_tag;
  return j;
}

void print_json(const json& j) { std::cout << j.dump() << "\n"; }

// A family argument: a family file, a time-set file (one generator) or a
// built-in name.
FamilySpec load_family(const std::string& arg, const Globals& g) {
  if (!fs::exists(arg)) return builtin_family(arg, need_horizon(g));
  const auto j = read_json_file(arg);
  try {
    if (j.contains("generators")) return family_from_json(j);
    auto t = timeset_from_json(j);
    const std::size_t h = t.horizon();
    return FamilySpec(h, {std::move(t)});
  } catch (const ParseError& e) {
    throw ParseError(arg + ": " + e.what());
  }
}

TimeSet load_timeset(const std::string& path) {
  try {
    return timeset_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int exit_for(const std::vector<Verdict>& verdicts) {
  bool fails = false;
  bool open = false;
  for (const auto& v : verdicts) {
    fails = fails || v.outcome == Outcome::fails;
    open = open || v.outcome == Outcome::not_found_at_horizon;
  }
  if (fails) return refuted;
  return open ? inconclusive : ok;
}

void emit(const std::vector<Verdict>& verdicts, const Globals& g) {
  if (g.format == "csv") {
    std::cout << verdicts_csv(verdicts);
  } else if (g.format == "md") {
    std::cout << verdicts_markdown(verdicts);
  } else {
    for (const auto& v : verdicts) print_json(to_json(v));
  }
}

Point load_point(const std::string& path, const SymbolicSystem& sys) {
  auto seq = read_sequence(path, sys.alphabet());
  return Point::explicit_prefix(seq.alphabet, std::move(seq.symbols));
}

// Points used when none are given: the generating point of an orbit
// closure, or a champernowne point on the full shift.
std::vector<Point> default_points(const SymbolicSystem& sys, std::size_t read) {
  if (sys.backend() == Backend::orbit_closure) return {sys.generating_point()};
  const std::size_t len = sys.horizon() + read;
  std::size_t lc = 1;
  while (champernowne_block_length(sys.alphabet(), lc + 1) <= len) ++lc;
  return {champernowne_point(sys.alphabet(), lc, len)};
}

struct CheckArgs {
  std::vector<std::string> properties;
  std::string system;
  std::string system_b;
  std::size_t length = 2;
  std::size_t gen_length = 1;
  std::size_t k = 2;
  std::size_t kmax = 2;
  std::size_t resolution = 1;
  double delta = 0.25;
  std::optional<std::size_t> max_threshold;
  std::vector<std::string> points;
  std::vector<std::string> pairs;
  std::size_t sep = 1;
};

template <HitSetProvider P>
Verdict run_one(const std::string& prop, const P& p, const typename P::Resolution& r,
                const std::vector<typename P::PointType>& points, const CheckArgs& a, const CheckOptions& opts) {
  if (prop == "transitive") return check_transitive(p, a.length, opts);
  if (prop == "totally-transitive") return check_totally_transitive(p, a.length, a.kmax, opts);
  if (prop == "weak-mixing") return check_weak_mixing(p, a.length, opts);
  if (prop == "mixing") return check_mixing(p, a.length, a.max_threshold, opts);
  if (prop == "transitive-compact") return check_transitive_compact(p, points, a.gen_length, a.length, opts);
  if (prop == "multi-sensitive") return check_multi_sensitive(p, a.k, r, a.length, opts);
  if (prop == "transitively-sensitive") return check_transitively_sensitive(p, r, a.length, opts);
  if (prop == "sensitive-compact") return check_sensitive_compact(p, points, r, a.gen_length, a.length, opts);
  throw UsageError("unknown property '" + prop + "'");
}

int cmd_check(const CheckArgs& a, const Globals& g) {
  const CheckOptions opts{g.threads};
  const auto sys = load_system(a.system, g.horizon, g.seed);
  std::vector<Verdict> out;
  if (const auto* s = std::get_if<SymbolicSystem>(&sys)) {
    const SymbolicProvider p(*s);
    std::vector<Point> points;
    for (const auto& path : a.points) points.push_back(load_point(path, *s));
    if (points.empty()) points = default_points(*s, a.length);
    for (const auto& prop : a.properties) {
      if (prop == "weak-disjoint") {
        if (a.system_b.empty()) throw UsageError("weak-disjoint needs --system-b");
        const auto other = load_system(a.system_b, g.horizon, g.seed);
        const auto* sb = std::get_if<SymbolicSystem>(&other);
        if (!sb) throw UsageError("weak-disjoint compares two symbolic systems");
        out.push_back(check_weak_disjoint(p, SymbolicProvider(*sb), a.length, points, opts));
      } else if (prop == "li-yorke") {
        if (a.pairs.size() % 2 != 0 || a.pairs.empty()) throw UsageError("li-yorke needs --pair files in twos");
        std::vector<std::pair<Point, Point>> pairs;
        for (std::size_t i = 0; i < a.pairs.size(); i += 2) {
          pairs.emplace_back(load_point(a.pairs[i], *s), load_point(a.pairs[i + 1], *s));
        }
        out.push_back(liyorke_scan(*s, pairs, a.resolution, a.sep));
      } else {
        out.push_back(run_one(prop, p, a.resolution, points, a, opts));
      }
    }
  } else {
    const auto& t = std::get<TorusSystem>(sys);
    const TorusProvider p(t);
    const std::vector<TorusPoint> points{t.seed()};
    for (const auto& prop : a.properties) {
      if (prop == "weak-disjoint" || prop == "li-yorke") throw UsageError(prop + " needs a symbolic system");
      out.push_back(run_one(prop, p, a.delta, points, a, opts));
    }
  }
  emit(out, g);
  return exit_for(out);
}

int cmd_construct(const std::string& kind, std::size_t stages, std::size_t length, std::size_t alphabet,
                  std::size_t lc, const std::string& family, std::size_t tail, const std::string& out_path,
                  const std::string& meta_path, const Globals& g) {
  Sequence seq;
  json meta = {{"kind", kind}};
  if (kind == "a-sequence") {
    auto gen = a_sequence_prefix(stages, length);
    seq.alphabet = 2;
    seq.symbols = std::move(gen.symbols);
    meta["stages"] = stages;
    meta["truncated"] = gen.truncated;
    meta["stage_lengths"] = gen.stage_lengths;
    meta["pair_order"] = "length-lex/1";
  } else if (kind == "champernowne") {
    const auto x = champernowne_point(alphabet, lc, length);
    seq.alphabet = alphabet;
    seq.symbols.assign(x.prefix().begin(), x.prefix().end());
    meta["lc"] = lc;
  } else if (kind == "fip-counterexample") {
    if (family.empty()) throw UsageError("fip-counterexample needs --family");
    const auto fam = load_family(family, g);
    try {
      const auto x = fip_counterexample_point(fam.generators(), tail);
      seq.alphabet = x.alphabet();
      seq.symbols.assign(x.prefix().begin(), x.prefix().end());
    } catch (const FipHoldsError& e) {
      std::cout << "FIP holds: witness " << e.witness() << "\n";
      return refuted;
    }
    meta["generators"] = fam.generators().size();
    meta["horizon"] = fam.horizon();
  } else {
    throw UsageError("unknown construction '" + kind + "'");
  }
  meta["length"] = seq.symbols.size();
  meta["alphabet"] = seq.alphabet;
  if (out_path.empty()) {
    for (Symbol s : seq.symbols) std::cout << static_cast<char>('0' + s);
    std::cout << "\n";
  } else {
    write_sequence(out_path, seq);
  }
  if (!meta_path.empty()) write_json_file(meta_path, tagged(meta));
  return ok;
}

int cmd_family(const std::string& op, const std::vector<std::string>& args, const std::string& set_path,
               std::size_t imax, const std::string& system, std::size_t gen_length, std::size_t resolution,
               const Globals& g) {
  const auto need = [&](std::size_t n) {
    if (args.size() < n) throw UsageError("family " + op + " needs " + std::to_string(n) + " family argument(s)");
  };
  if (op == "emit") {
    need(1);
    if (args[0] == "N-family" || args[0] == "S-family") {
      if (system.empty()) throw UsageError(args[0] + " needs --system");
      const auto sys = load_system(system, g.horizon, g.seed);
      const auto* s = std::get_if<SymbolicSystem>(&sys);
      if (!s) throw UsageError(args[0] + " needs a symbolic system");
      const auto fam = args[0] == "N-family" ? n_family(*s, gen_length) : s_family(*s, resolution, gen_length);
      print_json(tagged(to_json(fam)));
    } else {
      print_json(tagged(to_json(load_family(args[0], g))));
    }
    return ok;
  }
  if (op == "fip") {
    need(1);
    std::vector<TimeSet> gens;
    for (const auto& arg : args) {
      const auto f = load_family(arg, g);
      gens.insert(gens.end(), f.generators().begin(), f.generators().end());
    }
    const FamilySpec fam(gens.front().horizon(), gens);
    const auto w = has_fip(fam);
    std::cout << (w ? "FIP: witness " + std::to_string(*w) : std::string("FIP: absent")) << "\n";
    return w ? ok : refuted;
  }
  need(1);
  const auto fam = load_family(args[0], g);
  json out = {{"op", op}};
  bool holds = true;
  if (op == "member" || op == "dual") {
    if (set_path.empty()) throw UsageError("family " + op + " needs --set");
    const auto t = load_timeset(set_path);
    holds = op == "member" ? fam.member(t) : fam.dual_member(t);
  } else if (op == "filter") {
    holds = is_filter(fam);
  } else if (op == "proper") {
    holds = is_proper(fam);
  } else if (op == "free") {
    holds = is_free_at_horizon(fam);
    out["min_intersection_size"] = min_intersection_size(fam);
  } else if (op == "interaction") {
    need(2);
    print_json(tagged(to_json(interaction(fam, load_family(args[1], g)))));
    return ok;
  } else if (op == "invariance") {
    const auto plus = plus_invariance(fam, imax);
    const auto minus = minus_invariance(fam, imax);
    const auto report = [](const InvarianceReport& r) {
      json j = {{"holds", r.holds}, {"padded", r.padded}};
      if (r.failure) j["failure"] = {{"generator", r.failure->first}, {"shift", r.failure->second}};
      return j;
    };
    out["plus"] = report(plus);
    out["minus"] = report(minus);
    out["imax"] = imax;
    holds = plus.holds && minus.holds;
  } else {
    throw UsageError("unknown family operation '" + op + "'");
  }
  out["holds"] = holds;
  print_json(tagged(out));
  return holds ? ok : refuted;
}

int cmd_omega(const std::string& system, const std::string& family, std::size_t length,
              std::optional<std::size_t> tail_slack, const std::string& point, const Globals& g) {
  const auto sys = load_system(system, g.horizon, g.seed);
  if (const auto* t = std::get_if<TorusSystem>(&sys)) {
    if (family.empty()) throw UsageError("numeric omega needs --family");
    Globals local = g;
    local.horizon = t->horizon();
    print_json(to_json(omega_approx(*t, load_family(family, local)), *t));
    return ok;
  }
  const auto& s = std::get<SymbolicSystem>(sys);
  const Point x = point.empty() ? default_points(s, length).front() : load_point(point, s);
  if (family.empty()) {
    print_json(to_json(omega_T_approx(s, x, length, tail_slack.value_or(s.horizon() / 4))));
    return ok;
  }
  Globals local = g;
  local.horizon = s.horizon();
  print_json(to_json(omega_approx(s, x, load_family(family, local), length)));
  return ok;
}

int cmd_report(const std::string& set_path, const std::string& system, const std::string& u, const std::string& v,
               std::size_t resolution, std::size_t fs_bound, const Globals& g) {
  TimeSet target(1);
  json what;
  if (!set_path.empty()) {
    target = load_timeset(set_path);
    what = {{"set", set_path}};
  } else {
    if (system.empty() || u.empty()) throw UsageError("report needs --set, or --system with --u");
    const auto sys = load_system(system, g.horizon, g.seed);
    const auto* s = std::get_if<SymbolicSystem>(&sys);
    if (!s) throw UsageError("report on hit sets needs a symbolic system");
    const auto cu = OpenSet::cylinder(Word::parse(s->alphabet(), u));
    if (v.empty()) {
      target = s->sensitivity_times(cu, resolution).times;
      what = {{"S", u}, {"resolution", resolution}};
    } else {
      target = s->transfer_times(cu, OpenSet::cylinder(Word::parse(s->alphabet(), v))).times;
      what = {{"N", {u, v}}};
    }
  }
  json out = to_json(largeness_report(target, fs_bound));
  out["target"] = what;
  out["horizon"] = target.horizon();
  print_json(tagged(out));
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon checks for topological dynamics"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  app.add_option("--horizon", horizon, "Truncation horizon H (overrides descriptors)");
  app.add_option("--seed", seed, "Seed for sampled scans");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Verdict output format")->check(CLI::IsMember({"json", "csv", "md"}));

  std::function<int()> action;

  auto* construct = app.add_subcommand("construct", "Generate a sequence file");
  std::string c_kind, c_family, c_out, c_meta;
  std::size_t c_stages = 3, c_length = 1000, c_alphabet = 2, c_lc = 1, c_tail = 1;
  construct->add_option("kind", c_kind, "a-sequence | champernowne | fip-counterexample")->required();
  construct->add_option("--stages", c_stages, "Stage bound K");
  construct->add_option("--length", c_length, "Symbols to produce");
  construct->add_option("--alphabet", c_alphabet, "Alphabet size");
  construct->add_option("--lc", c_lc, "Longest word length listed in full");
  construct->add_option("--family", c_family, "Family file for the counterexample");
  construct->add_option("--tail", c_tail, "Symbols past the horizon");
  construct->add_option("--out", c_out, "Sequence file (stdout when absent)");
  construct->add_option("--meta", c_meta, "Sidecar metadata JSON");
  construct->callback([&] {
    action = [&] {
      return cmd_construct(c_kind, c_stages, c_length, c_alphabet, c_lc, c_family, c_tail, c_out, c_meta, g);
    };
  });

  auto* family = app.add_subcommand("family", "Family calculus");
  std::string f_op, f_set, f_system;
  std::vector<std::string> f_args;
  std::size_t f_imax = 1, f_lgen = 1, f_res = 1;
  family->add_option("op", f_op, "fip | member | dual | filter | proper | free | interaction | invariance | emit")
      ->required();
  family->add_option("families", f_args, "Family files, time-set files or built-in names");
  family->add_option("--set", f_set, "Time-set file for member / dual");
  family->add_option("--imax", f_imax, "Largest shift for invariance");
  family->add_option("--system", f_system, "System descriptor for N-family / S-family");
  family->add_option("--Lgen", f_lgen, "Word length of the family generators");
  family->add_option("--resolution", f_res, "Resolution k for S-family");
  family->callback([&] { action = [&] { return cmd_family(f_op, f_args, f_set, f_imax, f_system, f_lgen, f_res, g); }; });

  auto* check = app.add_subcommand("check", "Run property checkers");
  CheckArgs ca;
  std::size_t max_threshold = 0;
  check->add_option("properties", ca.properties, "Properties to check")->required();
  check->add_option("--system", ca.system, "System descriptor")->required();
  check->add_option("--system-b", ca.system_b, "Second system (weak-disjoint)");
  check->add_option("--L", ca.length, "Word length / precision");
  check->add_option("--Lgen", ca.gen_length, "Word length of family generators");
  check->add_option("--k", ca.k, "Tuple size for multi-sensitivity");
  check->add_option("--kmax", ca.kmax, "Largest power for total transitivity");
  check->add_option("--resolution", ca.resolution, "Symbolic resolution k (delta = 2^-k)");
  check->add_option("--delta", ca.delta, "Numeric sensitivity constant");
  check->add_option("--max-threshold", max_threshold, "Mixing threshold (default H/2)");
  check->add_option("--point", ca.points, "Point sequence files");
  check->add_option("--pair", ca.pairs, "Point files for li-yorke, in twos");
  check->add_option("--sep", ca.sep, "Separation resolution for li-yorke");
  check->callback([&] {
    if (check->count("--max-threshold") > 0) ca.max_threshold = max_threshold;
    action = [&] { return cmd_check(ca, g); };
  });

  auto* omega = app.add_subcommand("omega", "Approximate omega-limit cells");
  std::string o_system, o_family, o_point;
  std::size_t o_length = 1, o_slack = 0;
  omega->add_option("--system", o_system, "System descriptor")->required();
  omega->add_option("--family", o_family, "Family (omitted: tail-window omega)");
  omega->add_option("--L", o_length, "Precision");
  omega->add_option("--tail-slack", o_slack, "Tail window for the omega_T surrogate (default H/4)");
  omega->add_option("--point", o_point, "Point sequence file");
  omega->callback([&] {
    std::optional<std::size_t> slack;
    if (omega->count("--tail-slack") > 0) slack = o_slack;
    action = [&, slack] { return cmd_omega(o_system, o_family, o_length, slack, o_point, g); };
  });

  auto* report = app.add_subcommand("report", "Largeness diagnostics of a time set");
  std::string r_set, r_system, r_u, r_v;
  std::size_t r_res = 1, r_fs = 6;
  report->add_option("--set", r_set, "Time-set file");
  report->add_option("--system", r_system, "System descriptor");
  report->add_option("--u", r_u, "Cylinder U (or W for an S-set)");
  report->add_option("--v", r_v, "Cylinder V");
  report->add_option("--resolution", r_res, "Resolution for an S-set");
  report->add_option("--fs-bound", r_fs, "Largest FS size tried");
  report->callback([&] { action = [&] { return cmd_report(r_set, r_system, r_u, r_v, r_res, r_fs, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }
  if (app.count("--horizon") > 0) g.horizon = horizon;
  if (app.count("--seed") > 0) g.seed = seed;

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io_error;
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io_error;
  }
}

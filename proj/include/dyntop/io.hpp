#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dyntop/checkers.hpp"
#include "dyntop/families.hpp"
#include "dyntop/limits.hpp"
#include "dyntop/numeric.hpp"
#include "dyntop/symbolic.hpp"
#include "dyntop/timeset.hpp"

namespace dyntop {

inline constexpr const char* schema_tag = "dyntop/1";

/// {"horizon": H, "members": [...]} or {"horizon": H, "runs": [[start, len], ...]}.
TimeSet timeset_from_json(const nlohmann::json& j);
/// Always the members form.
nlohmann::json to_json(const TimeSet& t);

/// {"horizon": H, "generators": [TimeSet, ...]}; generators may omit their
/// horizon.
FamilySpec family_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FamilySpec& f);

/// "evens", "tails:t" or "syndetic-sample" (multiples of 2, multiples of 3,
/// non-squares).
FamilySpec builtin_family(const std::string& name, std::size_t horizon);
/// { N(u, v) : |u|, |v| <= gen_length } with empty sets kept.
FamilySpec n_family(const SymbolicSystem& sys, std::size_t gen_length);
/// { S(w, k) : |w| <= gen_length } with empty sets kept.
FamilySpec s_family(const SymbolicSystem& sys, std::size_t k, std::size_t gen_length);

struct Sequence {
  std::size_t alphabet = 2;
  std::vector<Symbol> symbols;
};

/// Plain digits (whitespace ignored) or {"alphabet": A, "symbols": [...]}.
/// Plain files take the alphabet from the largest digit unless given.
Sequence read_sequence(const std::filesystem::path& path, std::optional<std::size_t> alphabet = std::nullopt);
void write_sequence(const std::filesystem::path& path, const Sequence& seq);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// {"backend": "full"|"orbit", "alphabet", "horizon", "lmax", and for orbit
/// closures one of "source" (sequence file, relative to the descriptor),
/// "periodic" (digit word) or "construct" ({"kind": "a-sequence",
/// "stages": K} or {"kind": "champernowne", "lc": Lc}, either with an
/// optional prefix "length", default max(H + lmax, 100000))}, optional
/// "occurrence_cap" and "seed".
SymbolicSystem symbolic_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                  std::optional<std::size_t> horizon = std::nullopt,
                                  std::optional<std::uint64_t> seed = std::nullopt);

/// {"kind": "rotation"|"skew", "alpha": number | "golden" | "p/q",
/// "seed": number or [x, y], "horizon", "grid", "sample"}. Rational
/// "p/q" values are parsed and then refused.
TorusSystem torus_from_json(const nlohmann::json& j, std::optional<std::size_t> horizon = std::nullopt);

using AnySystem = std::variant<SymbolicSystem, TorusSystem>;

/// Dispatches on "backend" versus "kind".
AnySystem load_system(const std::filesystem::path& path, std::optional<std::size_t> horizon = std::nullopt,
                      std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json to_json(const OmegaApprox& o);
nlohmann::json to_json(const NumericOmega& o, const TorusSystem& sys);

/// One header line and one row per verdict.
std::string verdicts_csv(const std::vector<Verdict>& verdicts);
std::string verdicts_markdown(const std::vector<Verdict>& verdicts);

}  // namespace dyntop

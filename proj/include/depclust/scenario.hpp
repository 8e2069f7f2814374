#pragma once

// Declarative simulation scenarios and the built-in study designs.
//
// A scenario is plain text with one directive per line; `#` starts a comment.
//
//   name     <text>
//   n        <rows>
//   seed     <u64>
//   copula   <family> <V1,V2,...> [tau=t | theta=p | rho=r] [nu=v] [alpha=a] [beta=b]
//            [intervals=a1:b1;a2:b2;...]
//   normal   <V> [mean=m] [sd=s]
//   uniform  <V>
//   let      <V> = <expression>
//   columns  <V1,V2,...>
//   benchmark <V1,V2> | <V3> | ...
//
// Copula directives emit uniform marginals. Expressions combine numbers and
// earlier variables with + - * / ^, unary minus, exp, log, sin, cos, abs,
// sqrt, mod(a, b) and noise(sigma), the last drawing fresh N(0, sigma^2)
// values at each occurrence. `let` directives may appear in any order as long
// as their references form no cycle. Every directive draws from its own
// stream derived from the seed and the names of the variables it defines.

#include "depclust/clustering.hpp"
#include "depclust/sample_matrix.hpp"
#include "depclust/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depclust {

struct ExprNode;

struct Directive {
    enum class Kind { copula, normal, uniform, let };
    Kind kind = Kind::uniform;
    std::vector<std::string> variables;
    CopulaSampler sampler;  ///< copula only
    double mean = 0.0;      ///< normal only
    double sd = 1.0;        ///< normal only
    std::string expression;  ///< let only, as written
    std::shared_ptr<const ExprNode> tree;
    std::size_t line = 0;
};

struct ScenarioSpec {
    std::string name = "custom";
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    std::vector<Directive> directives;
    std::vector<std::string> columns;                 ///< empty: declaration order
    std::vector<std::vector<std::string>> benchmark;  ///< empty: none

    /// Throws SpecError with the offending line number.
    static ScenarioSpec parse(std::string_view text);
};

struct Scenario {
    SampleMatrix data;
    std::optional<Partition> benchmark;
};

/// Deterministic in the spec (including its n and seed). Throws SpecError
/// for undefined references, cycles, n < 3 or non-finite generated values.
Scenario generate_scenario(const ScenarioSpec& spec);

struct BuiltinParams {
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    double sigma = 1.0;  ///< noise
    double alpha = 1.0;  ///< four-groups
    unsigned k = 3;      ///< asym-mod-k
};

/// asym-mod-k, w-vs-marshall-olkin, mix-vs-ordinal, linkage-sum, five-var,
/// noise, four-groups, three-copulas.
std::vector<std::string> builtin_scenario_names();

/// Config text of a built-in scenario; throws SpecError for unknown names.
std::string builtin_scenario_text(std::string_view name, const BuiltinParams& params);

ScenarioSpec builtin_scenario(std::string_view name, const BuiltinParams& params);

}  // namespace depclust

#pragma once

// Bivariate copulas used as aggregation maps, their Kendall's tau
// correspondence, and the `kind:family:parameter` aggregator syntax.

#include <string>
#include <string_view>

namespace depclust {

enum class CopulaFamily { independence, upper, lower, gaussian, gumbel, clayton, frank, joe };

enum class AggregatorKind { copula, copula_dual, average };

/// How the two directional predictability deficits are combined.
///
/// `copula` kinds must be symmetric and strictly positive on (0,1]^2, so
/// the lower Frechet bound W and non-positive Clayton parameters are
/// rejected there; `copula_dual` kinds only need symmetry.
struct AggregatorSpec {
    AggregatorKind kind = AggregatorKind::average;
    CopulaFamily family = CopulaFamily::independence;
    double parameter = 0.0;

    static AggregatorSpec average() { return {}; }
    static AggregatorSpec copula(CopulaFamily family, double parameter = 0.0);
    static AggregatorSpec dual(CopulaFamily family, double parameter = 0.0);

    /// Throws SpecError when the family/parameter combination is not admissible.
    void validate() const;

    /// Parses `average`, `copula:<family>[:<parameter>]` or
    /// `copula_dual:<family>[:<parameter>]` (`dual` is accepted as a short form).
    /// Family names: pi|independence, M|upper, W|lower, gaussian, gumbel,
    /// clayton, frank, joe. The result is validated.
    static AggregatorSpec parse(std::string_view text);

    /// Inverse of parse, e.g. `copula:gaussian:0.5`.
    std::string to_string() const;

    friend bool operator==(const AggregatorSpec&, const AggregatorSpec&) = default;
};

std::string family_name(CopulaFamily family);
/// Throws SpecError for unknown names.
CopulaFamily parse_family(std::string_view name);

/// C(u, v) for u, v in [0, 1]. Families are symmetric and the arguments are
/// put in canonical order first, so C(u, v) == C(v, u) bit for bit.
/// Throws SpecError for parameters outside the family's range and
/// InputError for arguments outside the unit square.
double copula_cdf(CopulaFamily family, double parameter, double u, double v);

/// Evaluates the copula named by spec (ignoring its kind); `average` specs
/// are rejected with SpecError.
double copula_cdf(const AggregatorSpec& spec, double u, double v);

/// Kendall's tau of a one-parameter family.
double parameter_to_tau(CopulaFamily family, double parameter);

/// Inverse of parameter_to_tau: closed forms for gaussian, clayton and
/// gumbel, bisection to |tau(theta) - tau| <= 1e-8 for frank and joe.
/// Throws SpecError when tau is not attainable by the family.
double tau_to_parameter(CopulaFamily family, double tau);

double normal_cdf(double x);
double normal_quantile(double p);

/// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho,
/// via Gauss-Legendre quadrature of the single-integral reduction.
double bivariate_normal_cdf(double h, double k, double rho);

}  // namespace depclust

#include "depclust/copula.hpp"

#include "depclust/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace depclust {

namespace {

bool is_parametric(CopulaFamily f) {
    return f != CopulaFamily::independence && f != CopulaFamily::upper && f != CopulaFamily::lower;
}

// Range check shared by every use of a family, independent of aggregator kind.
void check_family_parameter(CopulaFamily family, double theta) {
    if (!std::isfinite(theta)) throw SpecError("copula parameter must be finite");
    auto fail = [&](const char* range) {
        std::ostringstream msg;
        msg << family_name(family) << " parameter " << theta << " outside " << range;
        throw SpecError(msg.str());
    };
    switch (family) {
        case CopulaFamily::independence:
        case CopulaFamily::upper:
        case CopulaFamily::lower:
            return;
        case CopulaFamily::gaussian:
            if (theta < -1.0 || theta > 1.0) fail("[-1, 1]");
            return;
        case CopulaFamily::gumbel:
            if (theta < 1.0) fail("[1, inf)");
            return;
        case CopulaFamily::clayton:
            if (theta < -1.0 || theta == 0.0) fail("[-1, 0) u (0, inf)");
            return;
        case CopulaFamily::frank:
            if (theta == 0.0) fail("R \\ {0}");
            return;
        case CopulaFamily::joe:
            if (theta < 1.0) fail("[1, inf)");
            return;
    }
}

double clamp_frechet(double c, double u, double v) {
    return std::clamp(c, std::max(u + v - 1.0, 0.0), std::min(u, v));
}

double frank_positive(double theta, double u, double v) {
    const double num = std::expm1(-theta * u) * std::expm1(-theta * v);
    return -std::log1p(num / std::expm1(-theta)) / theta;
}

}  // namespace

std::string family_name(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::independence: return "pi";
        case CopulaFamily::upper: return "M";
        case CopulaFamily::lower: return "W";
        case CopulaFamily::gaussian: return "gaussian";
        case CopulaFamily::gumbel: return "gumbel";
        case CopulaFamily::clayton: return "clayton";
        case CopulaFamily::frank: return "frank";
        case CopulaFamily::joe: return "joe";
    }
    return "?";
}

CopulaFamily parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "pi" || lower == "independence" || lower == "product") return CopulaFamily::independence;
    if (lower == "m" || lower == "upper") return CopulaFamily::upper;
    if (lower == "w" || lower == "lower") return CopulaFamily::lower;
    if (lower == "gaussian" || lower == "normal") return CopulaFamily::gaussian;
    if (lower == "gumbel") return CopulaFamily::gumbel;
    if (lower == "clayton") return CopulaFamily::clayton;
    if (lower == "frank") return CopulaFamily::frank;
    if (lower == "joe") return CopulaFamily::joe;
    throw SpecError("unknown copula family '" + std::string(name) + "'");
}

AggregatorSpec AggregatorSpec::copula(CopulaFamily family, double parameter) {
    AggregatorSpec s{AggregatorKind::copula, family, parameter};
    s.validate();
    return s;
}

AggregatorSpec AggregatorSpec::dual(CopulaFamily family, double parameter) {
    AggregatorSpec s{AggregatorKind::copula_dual, family, parameter};
    s.validate();
    return s;
}

void AggregatorSpec::validate() const {
    if (kind == AggregatorKind::average) return;
    check_family_parameter(family, parameter);
    if (kind != AggregatorKind::copula) return;
    // Perfect dependence in one direction must already give 0, which needs
    // C > 0 on (0,1]^2.
    if (family == CopulaFamily::lower)
        throw SpecError("W is not strictly positive on (0,1]^2; use it only as copula_dual:W");
    if (family == CopulaFamily::gaussian && parameter <= -1.0)
        throw SpecError("gaussian copula with parameter -1 equals W; use copula_dual for it");
    if (family == CopulaFamily::clayton && parameter <= 0.0)
        throw SpecError("clayton copula needs a positive parameter for the copula kind");
}

AggregatorSpec AggregatorSpec::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }

    if (parts.size() == 1 && parts[0] == "average") return average();

    AggregatorSpec spec;
    if (parts[0] == "copula") {
        spec.kind = AggregatorKind::copula;
    } else if (parts[0] == "copula_dual" || parts[0] == "dual") {
        spec.kind = AggregatorKind::copula_dual;
    } else {
        throw SpecError("unknown aggregator kind '" + std::string(parts[0]) +
                        "' (expected average, copula or copula_dual)");
    }
    if (parts.size() < 2 || parts.size() > 3) throw SpecError("aggregator must look like kind:family[:parameter]");
    spec.family = parse_family(parts[1]);
    if (parts.size() == 3) {
        const auto p = parts[2];
        const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), spec.parameter);
        if (ec != std::errc{} || ptr != p.data() + p.size())
            throw SpecError("bad aggregator parameter '" + std::string(p) + "'");
    } else if (is_parametric(spec.family)) {
        throw SpecError("family " + family_name(spec.family) + " needs a parameter");
    }
    spec.validate();
    return spec;
}

std::string AggregatorSpec::to_string() const {
    if (kind == AggregatorKind::average) return "average";
    std::ostringstream out;
    out << (kind == AggregatorKind::copula ? "copula" : "copula_dual") << ':' << family_name(family) << ':';
    out.precision(17);
    out << parameter;
    return out.str();
}

double copula_cdf(CopulaFamily family, double theta, double u, double v) {
    check_family_parameter(family, theta);
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        throw InputError("copula arguments must lie in [0, 1]");
    if (u > v) std::swap(u, v);
    if (u == 0.0) return 0.0;
    if (v == 1.0) return u;

    switch (family) {
        case CopulaFamily::independence: return u * v;
        case CopulaFamily::upper: return u;
        case CopulaFamily::lower: return std::max(u + v - 1.0, 0.0);
        case CopulaFamily::gaussian: {
            if (theta == 1.0) return u;
            if (theta == -1.0) return std::max(u + v - 1.0, 0.0);
            if (theta == 0.0) return u * v;
            const double c = bivariate_normal_cdf(normal_quantile(u), normal_quantile(v), theta);
            return clamp_frechet(c, u, v);
        }
        case CopulaFamily::gumbel: {
            const double s = std::pow(-std::log(u), theta) + std::pow(-std::log(v), theta);
            return clamp_frechet(std::exp(-std::pow(s, 1.0 / theta)), u, v);
        }
        case CopulaFamily::clayton: {
            const double s = std::pow(u, -theta) + std::pow(v, -theta) - 1.0;
            if (s <= 0.0) return 0.0;
            return clamp_frechet(std::pow(s, -1.0 / theta), u, v);
        }
        case CopulaFamily::frank: {
            // negative parameters via the reflection C_t(u, v) = u - C_{-t}(u, 1 - v)
            const double c = theta > 0.0 ? frank_positive(theta, u, v) : u - frank_positive(-theta, u, 1.0 - v);
            return clamp_frechet(c, u, v);
        }
        case CopulaFamily::joe: {
            const double a = std::pow(1.0 - u, theta);
            const double b = std::pow(1.0 - v, theta);
            return clamp_frechet(1.0 - std::pow(a + b - a * b, 1.0 / theta), u, v);
        }
    }
    return 0.0;
}

double copula_cdf(const AggregatorSpec& spec, double u, double v) {
    if (spec.kind == AggregatorKind::average) throw SpecError("the average rule is not a copula");
    return copula_cdf(spec.family, spec.parameter, u, v);
}

namespace {

double frank_tau_positive(double theta) {
    // tau = 1 - 4/theta + 4 D1(theta)/theta, D1 the first Debye function
    auto integrand = [](double t) { return t == 0.0 ? 1.0 : t / std::expm1(t); };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, theta, 15, 1e-14);
    const double debye = integral / theta;
    return 1.0 - 4.0 / theta + 4.0 * debye / theta;
}

double joe_tau(double theta) {
    if (theta == 1.0) return 0.0;
    if (std::abs(theta - 2.0) < 1e-12) return 1.0 - boost::math::trigamma(2.0);
    return 1.0 + 2.0 / (2.0 - theta) * (boost::math::digamma(2.0) - boost::math::digamma(2.0 / theta + 1.0));
}

template <class F>
double bisect_increasing(F tau_of, double target, double lo, double hi) {
    for (int iter = 0; iter < 300; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double t = tau_of(mid);
        if (std::abs(t - target) <= 1e-12 || hi - lo <= 1e-15 * hi) return mid;
        (t < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

constexpr double kBracketLow = 1e-6;
constexpr double kBracketHigh = 1e3;

}  // namespace

double parameter_to_tau(CopulaFamily family, double theta) {
    check_family_parameter(family, theta);
    switch (family) {
        case CopulaFamily::independence: return 0.0;
        case CopulaFamily::upper: return 1.0;
        case CopulaFamily::lower: return -1.0;
        case CopulaFamily::gaussian: return 2.0 / std::numbers::pi * std::asin(theta);
        case CopulaFamily::gumbel: return 1.0 - 1.0 / theta;
        case CopulaFamily::clayton: return theta / (theta + 2.0);
        case CopulaFamily::frank: return theta > 0.0 ? frank_tau_positive(theta) : -frank_tau_positive(-theta);
        case CopulaFamily::joe: return joe_tau(theta);
    }
    return 0.0;
}

double tau_to_parameter(CopulaFamily family, double tau) {
    if (!std::isfinite(tau)) throw SpecError("Kendall's tau must be finite");
    auto unattainable = [&]() {
        std::ostringstream msg;
        msg << "Kendall's tau " << tau << " is not attainable by the " << family_name(family) << " family";
        throw SpecError(msg.str());
    };
    switch (family) {
        case CopulaFamily::gaussian:
            if (tau < -1.0 || tau > 1.0) unattainable();
            return std::sin(std::numbers::pi * tau / 2.0);
        case CopulaFamily::clayton:
            if (tau <= -1.0 || tau >= 1.0) unattainable();
            return 2.0 * tau / (1.0 - tau);
        case CopulaFamily::gumbel:
            if (tau < 0.0 || tau >= 1.0) unattainable();
            return 1.0 / (1.0 - tau);
        case CopulaFamily::frank: {
            if (tau <= -1.0 || tau >= 1.0) unattainable();
            if (tau == 0.0) return 0.0;
            const double target = std::abs(tau);
            if (target > frank_tau_positive(kBracketHigh) || target < frank_tau_positive(kBracketLow)) unattainable();
            const double theta = bisect_increasing(frank_tau_positive, target, kBracketLow, kBracketHigh);
            return tau > 0.0 ? theta : -theta;
        }
        case CopulaFamily::joe: {
            if (tau < 0.0 || tau >= 1.0) unattainable();
            if (tau == 0.0) return 1.0;
            if (tau > joe_tau(kBracketHigh)) unattainable();
            return bisect_increasing(joe_tau, tau, 1.0, kBracketHigh);
        }
        default:
            throw SpecError("family " + family_name(family) + " has no free parameter");
    }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double bivariate_normal_cdf(double h, double k, double rho) {
    // Drezner-Wesolowsky reduction with Genz's 6/12/20-point Gauss-Legendre
    // rules; evaluates P(X > dh, Y > dk) at (dh, dk) = (-h, -k).
    if (std::isnan(h) || std::isnan(k) || std::isnan(rho)) return std::numeric_limits<double>::quiet_NaN();
    if (h == -std::numeric_limits<double>::infinity() || k == -std::numeric_limits<double>::infinity()) return 0.0;
    if (h == std::numeric_limits<double>::infinity()) return normal_cdf(k);
    if (k == std::numeric_limits<double>::infinity()) return normal_cdf(h);

    double dh = -h;
    double dk = -k;
    if (rho == 0.0) return normal_cdf(-dh) * normal_cdf(-dk);

    static constexpr std::array<double, 3> w6 = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
    static constexpr std::array<double, 3> x6 = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
    static constexpr std::array<double, 6> w12 = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                                                  0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
    static constexpr std::array<double, 6> x12 = {0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
                                                  0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
    static constexpr std::array<double, 10> w20 = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                                                   0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                                                   0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
                                                   0.1527533871307259};
    static constexpr std::array<double, 10> x20 = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                                                   0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                                                   0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
                                                   0.07652652113349733};

    const double* w = nullptr;
    const double* x = nullptr;
    std::size_t ng = 0;
    if (std::abs(rho) < 0.3) {
        w = w6.data(), x = x6.data(), ng = 3;
    } else if (std::abs(rho) < 0.75) {
        w = w12.data(), x = x12.data(), ng = 6;
    } else {
        w = w20.data(), x = x20.data(), ng = 10;
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    double hk = dh * dk;
    double bvn = 0.0;

    if (std::abs(rho) < 0.925) {
        const double hs = (dh * dh + dk * dk) / 2.0;
        const double asr = std::asin(rho) / 2.0;
        for (std::size_t i = 0; i < ng; ++i) {
            for (const double sign : {-1.0, 1.0}) {
                const double sn = std::sin(asr * (1.0 + sign * x[i]));
                bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
        }
        bvn = bvn * asr / two_pi + normal_cdf(-dh) * normal_cdf(-dk);
    } else {
        if (rho < 0.0) {
            dk = -dk;
            hk = -hk;
        }
        if (std::abs(rho) < 1.0) {
            const double as = 1.0 - rho * rho;
            double a = std::sqrt(as);
            const double bs = (dh - dk) * (dh - dk);
            const double c = (4.0 - hk) / 8.0;
            const double d = (12.0 - hk) / 80.0;
            double asr = -(bs / as + hk) / 2.0;
            if (asr > -100.0) bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
            if (hk > -100.0) {
                const double b = std::sqrt(bs);
                const double sp = std::sqrt(two_pi) * normal_cdf(-b / a);
                bvn -= std::exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
            }
            a /= 2.0;
            double sum = 0.0;
            for (std::size_t i = 0; i < ng; ++i) {
                for (const double sign : {-1.0, 1.0}) {
                    const double xs = (a * (1.0 + sign * x[i])) * (a * (1.0 + sign * x[i]));
                    const double asr_i = -(bs / xs + hk) / 2.0;
                    if (asr_i <= -100.0) continue;
                    const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
                    const double rs = std::sqrt(1.0 - xs);
                    const double ep = std::exp(-(hk / 2.0) * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
                    sum += w[i] * std::exp(asr_i) * (sp - ep);
                }
            }
            bvn = (a * sum - bvn) / two_pi;
        }
        if (rho > 0.0) {
            bvn += normal_cdf(-std::max(dh, dk));
        } else if (dh >= dk) {
            bvn = -bvn;
        } else {
            const double l = dh < 0.0 ? normal_cdf(dk) - normal_cdf(dh) : normal_cdf(-dh) - normal_cdf(-dk);
            bvn = l - bvn;
        }
    }
    return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace depclust

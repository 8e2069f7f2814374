#include "depclust/simulation.hpp"

#include "depclust/copula.hpp"
#include "depclust/error.hpp"
#include "depclust/random.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace depclust {

std::string sampler_name(SamplerFamily family) {
    switch (family) {
        case SamplerFamily::independence: return "independence";
        case SamplerFamily::gaussian: return "gaussian";
        case SamplerFamily::student_t: return "student_t";
        case SamplerFamily::clayton: return "clayton";
        case SamplerFamily::gumbel: return "gumbel";
        case SamplerFamily::frank: return "frank";
        case SamplerFamily::joe: return "joe";
        case SamplerFamily::marshall_olkin: return "marshall_olkin";
        case SamplerFamily::lower: return "lower";
        case SamplerFamily::upper: return "upper";
        case SamplerFamily::frechet_mix: return "frechet_mix";
        case SamplerFamily::ordinal_sum: return "ordinal_sum";
    }
    return "?";
}

SamplerFamily parse_sampler(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto f : {SamplerFamily::independence, SamplerFamily::gaussian, SamplerFamily::student_t,
                   SamplerFamily::clayton, SamplerFamily::gumbel, SamplerFamily::frank, SamplerFamily::joe,
                   SamplerFamily::marshall_olkin, SamplerFamily::lower, SamplerFamily::upper,
                   SamplerFamily::frechet_mix, SamplerFamily::ordinal_sum})
        if (lower == sampler_name(f)) return f;
    if (lower == "pi") return SamplerFamily::independence;
    if (lower == "w") return SamplerFamily::lower;
    if (lower == "m") return SamplerFamily::upper;
    if (lower == "t") return SamplerFamily::student_t;
    throw SpecError("unknown copula sampler '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw SpecError(what); }

void require_bivariate(const CopulaSampler& s) {
    if (s.dim != 2) bad(sampler_name(s.family) + " sampler is bivariate only");
}

Eigen::MatrixXd equicorrelation_factor(std::size_t dim, double rho) {
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Constant(d, d, rho);
    sigma.diagonal().setOnes();
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "correlation matrix with common correlation " << rho << " in dimension " << dim
            << " is not positive definite";
        bad(msg.str());
    }
    return llt.matrixL();
}

}  // namespace

void CopulaSampler::validate() const {
    if (dim < 1) bad("sampler dimension must be positive");
    if (!std::isfinite(parameter)) bad("sampler parameter must be finite");
    switch (family) {
        case SamplerFamily::independence:
        case SamplerFamily::upper:
            return;
        case SamplerFamily::student_t:
            if (!(nu > 0.0) || !std::isfinite(nu)) bad("student_t needs nu > 0");
            [[fallthrough]];
        case SamplerFamily::gaussian:
            if (parameter < -1.0 || parameter > 1.0) bad("correlation must lie in [-1, 1]");
            if (dim > 1) equicorrelation_factor(dim, parameter);
            return;
        case SamplerFamily::clayton:
            if (!(parameter > 0.0)) bad("clayton sampler needs theta > 0");
            return;
        case SamplerFamily::gumbel:
            if (parameter < 1.0) bad("gumbel sampler needs theta >= 1");
            return;
        case SamplerFamily::frank:
            if (parameter == 0.0) bad("frank sampler needs theta != 0");
            if (parameter < 0.0 && dim != 2) bad("frank with negative theta exists only in dimension 2");
            return;
        case SamplerFamily::joe:
            if (parameter < 1.0) bad("joe sampler needs theta >= 1");
            return;
        case SamplerFamily::marshall_olkin:
            require_bivariate(*this);
            if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
                bad("marshall_olkin needs alpha, beta in [0, 1]");
            return;
        case SamplerFamily::lower:
        case SamplerFamily::frechet_mix:
            require_bivariate(*this);
            return;
        case SamplerFamily::ordinal_sum: {
            require_bivariate(*this);
            if (intervals.empty()) bad("ordinal_sum needs at least one interval");
            double previous = 0.0;
            for (const auto& [a, b] : intervals) {
                if (!(a >= previous && a < b && b <= 1.0))
                    bad("ordinal_sum intervals must be disjoint, increasing and inside [0, 1]");
                previous = b;
            }
            return;
        }
    }
}

namespace {

using Columns = std::vector<std::vector<double>>;

double open_uniform(SplitMix64& rng) {
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    return u;
}

double exponential(SplitMix64& rng) { return -std::log(open_uniform(rng)); }

// Logarithmic series with P(V = k) proportional to p^k / k, p = 1 - exp(-theta),
// by Kemp's second algorithm.
double logarithmic_series(SplitMix64& rng, double theta) {
    const double v = open_uniform(rng);
    const double p = -std::expm1(-theta);
    if (v >= p) return 1.0;
    const double q = -std::expm1(-theta * open_uniform(rng));
    if (v <= q * q) return std::floor(1.0 + std::log(v) / std::log(q));
    return v <= q ? 2.0 : 1.0;
}

// Positive stable with Laplace transform exp(-t^alpha), by Kanter's representation.
double positive_stable(SplitMix64& rng, double alpha) {
    if (alpha >= 1.0) return 1.0;
    const double angle = std::numbers::pi * open_uniform(rng);
    const double w = exponential(rng);
    const double a = std::pow(std::sin(alpha * angle), alpha / (1.0 - alpha)) * std::sin((1.0 - alpha) * angle) /
                     std::pow(std::sin(angle), 1.0 / (1.0 - alpha));
    return std::pow(a / w, (1.0 - alpha) / alpha);
}

// Sibuya(alpha): P(V > k) = Gamma(k + 1 - alpha) / (Gamma(k + 1) Gamma(1 - alpha)).
double sibuya(SplitMix64& rng, double alpha) {
    if (alpha >= 1.0) return 1.0;
    const double u = open_uniform(rng);
    if (u > 1.0 - alpha) return 1.0;
    const double log_u = std::log(u);
    const double lg = std::lgamma(1.0 - alpha);
    auto log_survival = [&](double k) { return std::lgamma(k + 1.0 - alpha) - std::lgamma(k + 1.0) - lg; };
    constexpr double kCap = 9007199254740992.0;  // 2^53
    double hi = 2.0;
    while (log_survival(hi) >= log_u) {
        if (hi >= kCap) return std::exp(-(log_u + lg) / alpha);
        hi *= 2.0;
    }
    double lo = 1.0;  // survival(lo) >= u > survival(hi)
    while (hi - lo > 1.0) {
        const double mid = std::floor((lo + hi) / 2.0);
        (log_survival(mid) >= log_u ? lo : hi) = mid;
    }
    return hi;
}

Columns make_columns(std::size_t dim, std::size_t n) { return Columns(dim, std::vector<double>(n)); }

Columns sample_elliptical(const CopulaSampler& s, std::size_t n, SplitMix64& rng) {
    const auto d = static_cast<Eigen::Index>(s.dim);
    const Eigen::MatrixXd factor = equicorrelation_factor(s.dim, s.parameter);
    std::normal_distribution<double> normal;
    std::chi_squared_distribution<double> chi2(s.family == SamplerFamily::student_t ? s.nu : 1.0);
    boost::math::students_t_distribution<double> t_dist(s.family == SamplerFamily::student_t ? s.nu : 1.0);

    Columns out = make_columns(s.dim, n);
    Eigen::VectorXd g(d);
    for (std::size_t row = 0; row < n; ++row) {
        for (Eigen::Index i = 0; i < d; ++i) g(i) = normal(rng);
        const Eigen::VectorXd z = factor * g;
        if (s.family == SamplerFamily::gaussian) {
            for (Eigen::Index i = 0; i < d; ++i) out[static_cast<std::size_t>(i)][row] = normal_cdf(z(i));
            continue;
        }
        const double scale = std::sqrt(chi2(rng) / s.nu);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double x = z(i) / scale;
            double u = 0.0;
            if (std::isinf(x) || std::isnan(x)) {
                u = z(i) > 0.0 ? 1.0 : 0.0;
            } else {
                u = x > 0.0 ? 1.0 - boost::math::cdf(boost::math::complement(t_dist, x)) : boost::math::cdf(t_dist, x);
            }
            out[static_cast<std::size_t>(i)][row] = u;
        }
    }
    return out;
}

Columns sample_archimedean(const CopulaSampler& s, std::size_t n, SplitMix64& rng) {
    const double theta = s.parameter;
    Columns out = make_columns(s.dim, n);

    if (s.family == SamplerFamily::frank && theta < 0.0) {
        // conditional inversion of dC/du for the bivariate case
        const double g = std::expm1(-theta);
        for (std::size_t row = 0; row < n; ++row) {
            const double u = open_uniform(rng);
            const double w = open_uniform(rng);
            const double a = std::exp(-theta * u);
            out[0][row] = u;
            out[1][row] = -std::log1p(w * g / (w + (1.0 - w) * a)) / theta;
        }
        return out;
    }

    std::gamma_distribution<double> gamma(s.family == SamplerFamily::clayton ? 1.0 / theta : 1.0);
    for (std::size_t row = 0; row < n; ++row) {
        double v = 1.0;
        switch (s.family) {
            case SamplerFamily::clayton: v = gamma(rng); break;
            case SamplerFamily::gumbel: v = positive_stable(rng, 1.0 / theta); break;
            case SamplerFamily::frank: v = logarithmic_series(rng, theta); break;
            case SamplerFamily::joe: v = sibuya(rng, 1.0 / theta); break;
            default: break;
        }
        for (std::size_t i = 0; i < s.dim; ++i) {
            const double t = exponential(rng) / v;
            double u = 0.0;
            switch (s.family) {
                case SamplerFamily::clayton: u = std::exp(-std::log1p(t) / theta); break;
                case SamplerFamily::gumbel: u = std::exp(-std::pow(t, 1.0 / theta)); break;
                case SamplerFamily::frank: u = -std::log1p(std::expm1(-theta) * std::exp(-t)) / theta; break;
                case SamplerFamily::joe: u = 1.0 - std::pow(-std::expm1(-t), 1.0 / theta); break;
                default: break;
            }
            out[i][row] = u;
        }
    }
    return out;
}

Columns sample_marshall_olkin(const CopulaSampler& s, std::size_t n, SplitMix64& rng) {
    Columns out = make_columns(2, n);
    if (s.alpha == 0.0 || s.beta == 0.0) {
        for (std::size_t row = 0; row < n; ++row) {
            out[0][row] = open_uniform(rng);
            out[1][row] = open_uniform(rng);
        }
        return out;
    }
    // shocks with rates lambda1, lambda2 and a common shock of rate 1
    const double lambda1 = 1.0 / s.alpha - 1.0;
    const double lambda2 = 1.0 / s.beta - 1.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t row = 0; row < n; ++row) {
        const double e1 = exponential(rng);
        const double e2 = exponential(rng);
        const double e12 = exponential(rng);
        const double x1 = std::min(lambda1 > 0.0 ? e1 / lambda1 : inf, e12);
        const double x2 = std::min(lambda2 > 0.0 ? e2 / lambda2 : inf, e12);
        out[0][row] = std::exp(-(lambda1 + 1.0) * x1);
        out[1][row] = std::exp(-(lambda2 + 1.0) * x2);
    }
    return out;
}

}  // namespace

Columns sample_copula(const CopulaSampler& sampler, std::size_t n, std::uint64_t seed) {
    sampler.validate();
    SplitMix64 rng(derive_seed(seed, hash_label(sampler_name(sampler.family))));
    switch (sampler.family) {
        case SamplerFamily::independence: {
            Columns out = make_columns(sampler.dim, n);
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t i = 0; i < sampler.dim; ++i) out[i][row] = open_uniform(rng);
            return out;
        }
        case SamplerFamily::gaussian:
        case SamplerFamily::student_t:
            return sample_elliptical(sampler, n, rng);
        case SamplerFamily::clayton:
        case SamplerFamily::gumbel:
        case SamplerFamily::frank:
        case SamplerFamily::joe:
            return sample_archimedean(sampler, n, rng);
        case SamplerFamily::marshall_olkin:
            return sample_marshall_olkin(sampler, n, rng);
        case SamplerFamily::upper: {
            Columns out = make_columns(sampler.dim, n);
            for (std::size_t row = 0; row < n; ++row) {
                const double u = open_uniform(rng);
                for (std::size_t i = 0; i < sampler.dim; ++i) out[i][row] = u;
            }
            return out;
        }
        case SamplerFamily::lower:
        case SamplerFamily::frechet_mix: {
            Columns out = make_columns(2, n);
            for (std::size_t row = 0; row < n; ++row) {
                const double u = open_uniform(rng);
                const bool counter = sampler.family == SamplerFamily::lower || rng.below(2) == 0;
                out[0][row] = u;
                out[1][row] = counter ? 1.0 - u : u;
            }
            return out;
        }
        case SamplerFamily::ordinal_sum: {
            Columns out = make_columns(2, n);
            for (std::size_t row = 0; row < n; ++row) {
                const double w = open_uniform(rng);
                const double u1 = open_uniform(rng);
                const double u2 = open_uniform(rng);
                out[0][row] = out[1][row] = w;
                for (const auto& [a, b] : sampler.intervals) {
                    if (w >= a && w < b) {
                        out[0][row] = a + (b - a) * u1;
                        out[1][row] = a + (b - a) * u2;
                        break;
                    }
                }
            }
            return out;
        }
    }
    return {};
}

namespace {

// Merge sort on y counting the swaps needed to sort it (discordant pairs).
std::uint64_t count_inversions(std::vector<double>& y, std::vector<double>& buffer, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t swaps = count_inversions(y, buffer, lo, mid) + count_inversions(y, buffer, mid, hi);
    std::size_t i = lo;
    std::size_t j = mid;
    std::size_t k = lo;
    while (i < mid && j < hi) {
        if (y[j] < y[i]) {
            swaps += mid - i;
            buffer[k++] = y[j++];
        } else {
            buffer[k++] = y[i++];
        }
    }
    while (i < mid) buffer[k++] = y[i++];
    while (j < hi) buffer[k++] = y[j++];
    std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
              y.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

// Number of pairs tied within runs of equal values of a sorted sequence.
template <class Equal>
std::uint64_t tied_pairs(std::size_t n, Equal equal) {
    std::uint64_t total = 0;
    std::uint64_t run = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (equal(i)) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total + run * (run - 1) / 2;
}

}  // namespace

double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 2) throw InputError("kendall_tau needs two samples of equal length >= 2");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[order[i]];
        ys[i] = y[order[i]];
    }
    const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t n1 = tied_pairs(n, [&](std::size_t i) { return xs[i] == xs[i - 1]; });
    const std::uint64_t n3 = tied_pairs(n, [&](std::size_t i) { return xs[i] == xs[i - 1] && ys[i] == ys[i - 1]; });
    std::vector<double> buffer(n);
    const std::uint64_t swaps = count_inversions(ys, buffer, 0, n);
    const std::uint64_t n2 = tied_pairs(n, [&](std::size_t i) { return ys[i] == ys[i - 1]; });

    const double numerator = static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
                             static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
    const double denominator = std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
    if (denominator == 0.0) throw InputError("kendall_tau of a constant sample");
    return numerator / denominator;
}

}  // namespace depclust

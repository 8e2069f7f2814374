// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails. `acceptance 3 8` runs a subset.

#include "depclust/clustering.hpp"
#include "depclust/copula.hpp"
#include "depclust/core_estimators.hpp"
#include "depclust/dissimilarity.hpp"
#include "depclust/predictability.hpp"
#include "depclust/random.hpp"
#include "depclust/scenario.hpp"
#include "depclust/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace depclust;

namespace {

constexpr int kSeeds = 10;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Scenario scenario(const std::string& name, std::size_t n, std::uint64_t seed, double sigma = 1.0,
                  double alpha = 1.0) {
    BuiltinParams p;
    p.n = n;
    p.seed = seed;
    p.sigma = sigma;
    p.alpha = alpha;
    p.k = 3;
    return generate_scenario(builtin_scenario(name, p));
}

const AggregatorSpec kPi = AggregatorSpec::copula(CopulaFamily::independence);
const AggregatorSpec kAve = AggregatorSpec::average();

double k_of(const SampleMatrix& data, VariableSet y, VariableSet x, std::uint64_t seed, TermCache* cache) {
    return kappa(y, x, data, seed, kDefaultPermBudget, cache).value;
}

bool perfect(const Partition& found, const Partition& truth, std::size_t m) {
    return rand_index(found, truth, m) == 1.0 && fowlkes_mallows(found, truth, m) == 1.0;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
}

Outcome criterion1() {
    SplitMix64 rng(20240101);
    int equal = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 3 + rng.below(198);
        const std::size_t d = 1 + rng.below(4);
        const bool ties = rep % 2 == 1;
        std::vector<double> z(n * d);
        for (auto& v : z) v = ties ? static_cast<double>(rng.below(5)) : rng.uniform();
        std::vector<double> y(n);
        for (auto& v : y) v = ties ? static_cast<double>(rng.below(6)) : rng.uniform();
        if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) y[0] += 1.0;
        const PointMatrix pts(n, d, z);
        const std::uint64_t seed = rng();
        equal += t_statistic(y, pts, seed) == t_statistic_bruteforce(y, pts, seed);
    }
    return {equal == 100, fmt("%d/100 instances identical", equal)};
}

Outcome criterion2() {
    double fwd = 0, bwd = 0, dave = 0, dpi = 0;
    for (int s = 1; s <= kSeeds; ++s) {
        const auto sc = scenario("asym-mod-k", 10000, s);
        TermCache cache(sc.data, s);
        const double k21 = k_of(sc.data, {1}, {0}, s, &cache);
        const double k12 = k_of(sc.data, {0}, {1}, s, &cache);
        fwd += k21;
        bwd += k12;
        dave += dissimilarity(kAve, k12, k21);
        dpi += dissimilarity(kPi, k12, k21);
    }
    fwd /= kSeeds, bwd /= kSeeds, dave /= kSeeds, dpi /= kSeeds;
    const bool ok = fwd >= 0.90 && std::abs(bwd - 1.0 / 9.0) <= 0.05 && std::abs(dave - 4.0 / 9.0) <= 0.05 &&
                    dpi <= 0.10;
    return {ok, fmt("k(X2|X1)=%.4f k(X1|X2)=%.4f d_ave=%.4f d_pi=%.4f", fwd, bwd, dave, dpi)};
}

Outcome criterion3() {
    double w_pi = 0, w_ave = 0, k34 = 0, k43 = 0, mo_pi = 0, mo_ave = 0;
    for (int s = 1; s <= kSeeds; ++s) {
        const auto sc = scenario("w-vs-marshall-olkin", 10000, s);
        TermCache cache(sc.data, s);
        const double a = k_of(sc.data, {0}, {1}, s, &cache);
        const double b = k_of(sc.data, {1}, {0}, s, &cache);
        w_pi += dissimilarity(kPi, a, b);
        w_ave += dissimilarity(kAve, a, b);
        const double c = k_of(sc.data, {2}, {3}, s, &cache);
        const double d = k_of(sc.data, {3}, {2}, s, &cache);
        k34 += c;
        k43 += d;
        mo_pi += dissimilarity(kPi, c, d);
        mo_ave += dissimilarity(kAve, c, d);
    }
    for (double* v : {&w_pi, &w_ave, &k34, &k43, &mo_pi, &mo_ave}) *v /= kSeeds;
    const bool ok = w_pi <= 0.05 && w_ave <= 0.05 && std::abs(k34 - 0.4) <= 0.05 && std::abs(k43 - 1.0 / 3.0) <= 0.05 &&
                    std::abs(mo_pi - 0.4) <= 0.07 && std::abs(mo_ave - 19.0 / 30.0) <= 0.05;
    return {ok, fmt("W: d_pi=%.4f d_ave=%.4f; MO: k(X3|X4)=%.4f k(X4|X3)=%.4f d_pi=%.4f d_ave=%.4f", w_pi, w_ave,
                    k34, k43, mo_pi, mo_ave)};
}

Outcome criterion4() {
    double m12 = 0, m21 = 0, o34 = 0, o43 = 0, m_pi = 0, o_pi = 0;
    for (int s = 1; s <= kSeeds; ++s) {
        const auto sc = scenario("mix-vs-ordinal", 10000, s);
        TermCache cache(sc.data, s);
        const double a = k_of(sc.data, {0}, {1}, s, &cache);
        const double b = k_of(sc.data, {1}, {0}, s, &cache);
        const double c = k_of(sc.data, {2}, {3}, s, &cache);
        const double d = k_of(sc.data, {3}, {2}, s, &cache);
        m12 += a, m21 += b, o34 += c, o43 += d;
        m_pi += dissimilarity(kPi, a, b);
        o_pi += dissimilarity(kPi, c, d);
    }
    for (double* v : {&m12, &m21, &o34, &o43, &m_pi, &o_pi}) *v /= kSeeds;
    const bool ok = std::abs(m12 - 0.25) <= 0.05 && std::abs(m21 - 0.25) <= 0.05 && std::abs(o34 - 0.75) <= 0.05 &&
                    std::abs(o43 - 0.75) <= 0.05 && std::abs(m_pi - 9.0 / 16.0) <= 0.07 &&
                    std::abs(o_pi - 1.0 / 16.0) <= 0.07;
    return {ok, fmt("mix: k=%.4f/%.4f d_pi=%.4f; ordinal: k=%.4f/%.4f d_pi=%.4f", m12, m21, m_pi, o34, o43, o_pi)};
}

Outcome criterion5() {
    double dpi = 0, dave = 0;
    for (int s = 1; s <= kSeeds; ++s) {
        const std::string text = "n 5000\nseed " + std::to_string(s) +
                                 "\ncopula gaussian A1,A2 tau=0.5\ncopula clayton B1,B2 tau=0.5\n";
        const auto sc = generate_scenario(ScenarioSpec::parse(text));
        TermCache cache(sc.data, s);
        const auto pi = pair_dissimilarity_detail({0, 1}, {2, 3}, sc.data, kPi, s, kDefaultPermBudget, &cache);
        dpi += pi.value;
        dave += dissimilarity(kAve, pi.x_given_y.value, pi.y_given_x.value);
    }
    dpi /= kSeeds, dave /= kSeeds;
    return {dpi >= 0.85 && dave >= 0.85, fmt("d_pi=%.4f d_ave=%.4f", dpi, dave)};
}

// Index of the merge whose key equals `block`, or -1.
int completion_step(const Dendrogram& d, const VariableSet& block) {
    for (std::size_t i = 0; i < d.merges.size(); ++i)
        if (d.merges[i].key == block) return static_cast<int>(i);
    return -1;
}

Outcome criterion6() {
    int exact = 0, ordered = 0;
    const VariableSet gaussian{0, 1, 2};
    const VariableSet gumbel{6, 7, 8};
    for (int s = 1; s <= 100; ++s) {
        const auto sc = scenario("three-copulas", 2000, s);
        // Only the first six merges determine the cut at k = 3 and both triples.
        const auto d = agglomerate(sc.data, kAve, Backend::multivariate(), {.seed = std::uint64_t(s), .stop_at = 3});
        exact += perfect(cut(d, 3), *sc.benchmark, 9);
        const int g = completion_step(d, gumbel);
        const int n = completion_step(d, gaussian);
        ordered += g >= 0 && (n < 0 || g < n);
    }
    return {exact >= 90 && ordered >= 90,
            fmt("k=3 cut matches benchmark in %d/100; Gumbel triple before Gaussian in %d/100", exact, ordered)};
}

Outcome criterion7() {
    int good = 0;
    double worst_multi = 0, worst_link = 1;
    for (int s = 1; s <= kSeeds; ++s) {
        const auto sc = scenario("linkage-sum", 1000, s);
        TermCache cache(sc.data, s);
        const double multi =
            agglomerate(sc.data, kPi, Backend::multivariate(), {.seed = std::uint64_t(s)}, &cache).merges.back().height;
        double lowest_link = 1;
        for (auto method : {LinkageMethod::single, LinkageMethod::average, LinkageMethod::complete})
            lowest_link = std::min(lowest_link, agglomerate(sc.data, kPi, Backend::linkage(method),
                                                            {.seed = std::uint64_t(s)}, &cache)
                                                    .merges.back()
                                                    .height);
        good += multi <= 0.15 && lowest_link >= 0.3;
        worst_multi = std::max(worst_multi, multi);
        worst_link = std::min(worst_link, lowest_link);
    }
    return {good >= 9, fmt("%d/10 seeds; max multivariate final height %.4f, min linkage final height %.4f", good,
                           worst_multi, worst_link)};
}

Outcome criterion8() {
    Outcome out;
    for (double sigma : {1.0, 2.0, 3.0, 4.0}) {
        int hits_pi = 0, hits_ave = 0;
        for (int s = 1; s <= 20; ++s) {
            const auto sc = scenario("noise", 1000, s, sigma);
            TermCache cache(sc.data, s);
            const AgglomerateOptions opts{.seed = std::uint64_t(s), .stop_at = 3};
            hits_pi += perfect(cut(agglomerate(sc.data, kPi, Backend::multivariate(), opts, &cache), 3),
                               *sc.benchmark, 6);
            hits_ave += perfect(cut(agglomerate(sc.data, kAve, Backend::multivariate(), opts, &cache), 3),
                                *sc.benchmark, 6);
        }
        out.pass = out.pass && hits_pi >= 19 && hits_ave >= 19;
        out.detail += fmt("%ssigma=%g: d_pi %d/20, d_ave %d/20", out.detail.empty() ? "" : "; ", sigma, hits_pi,
                          hits_ave);
    }
    return out;
}

Outcome criterion9() {
    const std::vector<std::pair<const char*, AggregatorSpec>> specs = {{"d_pi", kPi}, {"d_ave", kAve}};
    const std::vector<double> alphas = {0.4, 0.6, 0.8, 1.0};
    std::vector<std::vector<std::vector<double>>> ri(specs.size(), std::vector<std::vector<double>>(alphas.size()));
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        for (int s = 1; s <= 20; ++s) {
            const auto sc = scenario("four-groups", 500, s, 1.0, alphas[a]);
            TermCache cache(sc.data, std::uint64_t(s));
            for (std::size_t k = 0; k < specs.size(); ++k) {
                const auto d = agglomerate(sc.data, specs[k].second, Backend::multivariate(),
                                           {.seed = std::uint64_t(s), .stop_at = 4}, &cache);
                ri[k][a].push_back(rand_index(cut(d, 4), *sc.benchmark, 20));
            }
        }
    }
    Outcome out;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        std::vector<double> medians;
        for (auto& v : ri[k]) medians.push_back(median(v));
        const bool ok = std::is_sorted(medians.begin(), medians.end()) && medians.back() >= 0.95;
        out.pass = out.pass && ok;
        out.detail += fmt("%s%s median RI %.4f %.4f %.4f %.4f", out.detail.empty() ? "" : "; ", specs[k].first,
                          medians[0], medians[1], medians[2], medians[3]);
    }
    return out;
}

SampleMatrix timing_data(std::size_t n) {
    SplitMix64 rng(n);
    std::vector<std::vector<double>> cols(4, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j) cols[j][i] = rng.uniform();
        cols[3][i] = cols[0][i] + cols[1][i] * cols[2][i] + 0.2 * rng.uniform();
    }
    return SampleMatrix({"Z1", "Z2", "Z3", "Y"}, cols);
}

double time_kappa(const SampleMatrix& data, int rep) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto est = kappa({3}, {0, 1, 2}, data, rep);
    const auto t1 = std::chrono::steady_clock::now();
    if (!(est.value >= 0)) return 1e300;
    return std::chrono::duration<double>(t1 - t0).count();
}

Outcome criterion10() {
    const auto small_data = timing_data(50000);
    const auto large_data = timing_data(100000);
    double small = 1e300, large = 1e300;
    for (int rep = 0; rep < 9; ++rep) {
        small = std::min(small, time_kappa(small_data, rep));
        large = std::min(large, time_kappa(large_data, rep));
    }
    const double ratio = large / small;
    return {ratio <= 2.6, fmt("t(100000)=%.4fs t(50000)=%.4fs ratio=%.3f", large, small, ratio)};
}

Outcome criterion11() {
    std::vector<std::string> failed;
    SplitMix64 rng(11);

    bool rank_ok = true, perm_ok = true;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 50 + rng.below(300);
        std::vector<double> y(n), gy(n), z(n * 3), zp(n * 3);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform() * 4 - 2;
            gy[i] = std::exp(2 * y[i]) + y[i];
            for (int a = 0; a < 3; ++a) z[i * 3 + a] = static_cast<double>(rng.below(4)) + 0.5 * rng.uniform();
            zp[i * 3 + 0] = z[i * 3 + 2];
            zp[i * 3 + 1] = z[i * 3 + 0];
            zp[i * 3 + 2] = z[i * 3 + 1];
        }
        const std::uint64_t seed = rng();
        const PointMatrix pts(n, 3, z);
        rank_ok = rank_ok && t_statistic(y, pts, seed) == t_statistic(gy, pts, seed);
        perm_ok = perm_ok && t_statistic(y, pts, seed) == t_statistic(y, PointMatrix(n, 3, zp), seed);
    }
    if (!rank_ok) failed.push_back("response-rank invariance");
    if (!perm_ok) failed.push_back("predictor permutation invariance");

    const std::vector<AggregatorSpec> specs = {
        kAve,
        kPi,
        AggregatorSpec::copula(CopulaFamily::upper),
        AggregatorSpec::copula(CopulaFamily::gaussian, 0.5),
        AggregatorSpec::copula(CopulaFamily::frank, -3.0),
        AggregatorSpec::copula(CopulaFamily::joe, 2.0),
        AggregatorSpec::dual(CopulaFamily::lower),
        AggregatorSpec::dual(CopulaFamily::clayton, 2.0),
    };
    bool sym_ok = true;
    for (const auto& spec : specs)
        for (int rep = 0; rep < 200; ++rep) {
            const double a = rng.uniform(), b = rng.uniform();
            sym_ok = sym_ok && dissimilarity(spec, a, b) == dissimilarity(spec, b, a);
        }
    if (!sym_ok) failed.push_back("dissimilarity symmetry");

    const std::vector<std::pair<CopulaFamily, double>> families = {
        {CopulaFamily::independence, 0}, {CopulaFamily::upper, 0},   {CopulaFamily::lower, 0},
        {CopulaFamily::gaussian, 0.6},   {CopulaFamily::gaussian, -0.95}, {CopulaFamily::gumbel, 3},
        {CopulaFamily::clayton, 4},      {CopulaFamily::clayton, -0.7},   {CopulaFamily::frank, 8},
        {CopulaFamily::frank, -8},       {CopulaFamily::joe, 3}};
    bool frechet_ok = true, increasing_ok = true;
    for (const auto& [family, theta] : families) {
        const double tol = family == CopulaFamily::gaussian ? 1e-6 : 1e-9;
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) {
                const double u = i / 100.0, v = j / 100.0;
                const double c = copula_cdf(family, theta, u, v);
                frechet_ok = frechet_ok && c >= std::max(u + v - 1, 0.0) - tol && c <= std::min(u, v) + tol;
            }
        for (int rep = 0; rep < 2000; ++rep) {
            double u1 = rng.uniform(), u2 = rng.uniform(), v1 = rng.uniform(), v2 = rng.uniform();
            if (u1 > u2) std::swap(u1, u2);
            if (v1 > v2) std::swap(v1, v2);
            const double vol = copula_cdf(family, theta, u2, v2) - copula_cdf(family, theta, u2, v1) -
                               copula_cdf(family, theta, u1, v2) + copula_cdf(family, theta, u1, v1);
            increasing_ok = increasing_ok && vol >= -1e-9;
        }
    }
    if (!frechet_ok) failed.push_back("Frechet bounds");
    if (!increasing_ok) failed.push_back("2-increasingness");

    const Partition a{{VariableSet{0, 1}, VariableSet{2, 3}}};
    const Partition b{{VariableSet{0, 1, 2}, VariableSet{3}}};
    if (!(rand_index(a, b, 4) == 0.5 && std::abs(fowlkes_mallows(a, b, 4) - std::sqrt(1.0 / 6.0)) <= 1e-15))
        failed.push_back("RI/FMI hand example");

    auto matrix = [](std::size_t m, double fill) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < m; ++i) labels.push_back("v" + std::to_string(i));
        DissimilarityMatrix d(labels);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) d.set(i, j, fill);
        return d;
    };
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
    const Partition single3{{VariableSet{0}, VariableSet{1}, VariableSet{2}}};
    const Partition pair_single{{VariableSet{0, 1}, VariableSet{2}}};
    bool closed_ok = true;
    auto m3 = matrix(3, 0.5);
    closed_ok = closed_ok && close(adiam(single3, m3), 1.0);
    m3.set(0, 1, 0.2);
    closed_ok = closed_ok && close(adiam(pair_single, m3), 0.9);
    m3.set(0, 1, 0.1), m3.set(0, 2, 0.3), m3.set(1, 2, 0.2);
    closed_ok = closed_ok && close(adiam(Partition{{VariableSet{0, 1, 2}}}, m3), 0.7);
    auto sep = matrix(4, 1.0);
    sep.set(0, 1, 0.0), sep.set(2, 3, 0.0);
    const Partition two{{VariableSet{0, 1}, VariableSet{2, 3}}};
    closed_ok = closed_ok && close(msplit(two, sep), 0.0) && close(silhouette(two, sep), 1.0);
    auto cross = matrix(3, 0.5);
    cross.set(0, 2, 0.6), cross.set(1, 2, 0.9);
    closed_ok = closed_ok && close(msplit(pair_single, cross), 0.4);
    auto low = matrix(3, 0.8);
    low.set(1, 2, 0.3);
    closed_ok = closed_ok && close(msplit(single3, low), 0.7) && close(silhouette(single3, low), 0.0);
    auto sil = matrix(4, 0.4);
    sil.set(0, 1, 0.2), sil.set(2, 3, 0.2);
    closed_ok = closed_ok && close(silhouette(two, sil), 0.5);
    if (!closed_ok) failed.push_back("adiam/msplit/silhouette examples");

    std::string detail = "all invariant suites hold";
    if (!failed.empty()) {
        detail = "failed:";
        for (const auto& f : failed) detail += " [" + f + "]";
    }
    return {failed.empty(), detail};
}

struct Target {
    VariableSet y;
    VariableSet x;
    double value;
};

Outcome criterion12() {
    const std::vector<std::pair<std::string, std::vector<Target>>> designs = {
        {"asym-mod-k", {{{1}, {0}, 1.0}, {{0}, {1}, 1.0 / 9.0}}},
        {"w-vs-marshall-olkin", {{{0}, {1}, 1.0}, {{1}, {0}, 1.0}, {{2}, {3}, 0.4}, {{3}, {2}, 1.0 / 3.0}}},
        // The ordinal sum over (0,.3),(.3,.5),(.5,.75),(.75,1) has kappa = 1 - sum of squared lengths.
        {"mix-vs-ordinal", {{{0}, {1}, 0.25}, {{1}, {0}, 0.25}, {{2}, {3}, 0.745}, {{3}, {2}, 0.745}}},
    };
    Outcome out;
    for (const auto& [name, targets] : designs) {
        std::vector<double> errors;
        for (std::size_t n : {500, 2000, 8000}) {
            double sum = 0;
            for (int s = 1; s <= kSeeds; ++s) {
                const auto sc = scenario(name, n, s);
                TermCache cache(sc.data, s);
                for (const auto& t : targets) sum += std::abs(k_of(sc.data, t.y, t.x, s, &cache) - t.value);
            }
            errors.push_back(sum / (kSeeds * targets.size()));
        }
        const bool ok = errors[0] > errors[1] && errors[1] > errors[2];
        out.pass = out.pass && ok;
        out.detail += fmt("%s%s %.4f > %.4f > %.4f", out.detail.empty() ? "" : "; ", name.c_str(), errors[0],
                          errors[1], errors[2]);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,  criterion4,
                                                            criterion5, criterion6, criterion7,  criterion8,
                                                            criterion9, criterion10, criterion11, criterion12};
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!wanted.empty() && !wanted.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  %s  (%.1fs)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}

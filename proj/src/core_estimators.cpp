#include "depclust/core_estimators.hpp"

#include "depclust/error.hpp"
#include "depclust/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace depclust {

RankData compute_ranks(std::span<const double> column) {
    const std::size_t n = column.size();
    if (n < 2) throw InputError("rank computation needs at least two observations");
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(column[k]))
            throw InputError("non-finite value at position " + std::to_string(k + 1));
    }

    std::vector<std::pair<double, std::size_t>> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = {column[k], k};
    std::sort(sorted.begin(), sorted.end());

    RankData out;
    out.r.resize(n);
    out.l.resize(n);
    // Each run of equal values [lo, hi) shares R = hi and L = n - lo.
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && sorted[hi].first == sorted[lo].first) ++hi;
        for (std::size_t i = lo; i < hi; ++i) {
            out.r[sorted[i].second] = static_cast<std::int64_t>(hi);
            out.l[sorted[i].second] = static_cast<std::int64_t>(n - lo);
        }
        lo = hi;
    }
    return out;
}

PointMatrix::PointMatrix(std::size_t rows, std::size_t dims, std::vector<double> row_major)
    : rows_(rows), dims_(dims), data_(std::move(row_major)) {
    if (dims_ == 0) throw InputError("points need at least one coordinate");
    if (data_.size() != rows_ * dims_) throw InputError("point buffer size does not match rows x dims");
}

PointMatrix PointMatrix::from_columns(std::span<const std::span<const double>> columns) {
    if (columns.empty()) throw InputError("points need at least one coordinate");
    const std::size_t n = columns.front().size();
    const std::size_t d = columns.size();
    std::vector<double> data(n * d);
    for (std::size_t a = 0; a < d; ++a) {
        if (columns[a].size() != n) throw InputError("conditioner columns differ in length");
        for (std::size_t k = 0; k < n; ++k) data[k * d + a] = columns[a][k];
    }
    return PointMatrix(n, d, std::move(data));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    const std::size_t d = a.size();
    if (d == 1) {
        const double t = a[0] - b[0];
        return t * t;
    }
    if (d == 2) {
        const double s = a[0] - b[0];
        const double t = a[1] - b[1];
        return s * s + t * t;
    }

    constexpr std::size_t kInline = 32;
    std::array<double, kInline> small{};
    std::vector<double> large;
    double* sq = small.data();
    if (d > kInline) {
        large.resize(d);
        sq = large.data();
    }
    for (std::size_t i = 0; i < d; ++i) {
        const double t = a[i] - b[i];
        const double v = t * t;
        // insertion keeps sq[0..i] ascending
        std::size_t j = i;
        while (j > 0 && sq[j - 1] > v) {
            sq[j] = sq[j - 1];
            --j;
        }
        sq[j] = v;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += sq[i];
    return sum;
}

PointMatrix canonical_columns(const PointMatrix& points) {
    const std::size_t n = points.rows();
    const std::size_t d = points.dims();
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < n; ++k) {
            const double x = points.at(k, a);
            const double y = points.at(k, b);
            if (x < y) return true;
            if (y < x) return false;
        }
        return false;
    });
    std::vector<double> data(n * d);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < d; ++a) data[k * d + a] = points.at(k, perm[a]);
    return PointMatrix(n, d, std::move(data));
}

namespace {

double plain_distance(const double* a, const double* b, std::size_t d) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double t = a[i] - b[i];
        sum += t * t;
    }
    return sum;
}

std::size_t pick_tied(const std::vector<std::size_t>& argmin, std::uint64_t seed, std::size_t k) {
    if (argmin.size() == 1) return argmin.front();
    SplitMix64 rng(derive_seed(seed, k));
    return argmin[rng.below(argmin.size())];
}

void require_points(const PointMatrix& points) {
    if (points.rows() < 2) throw InputError("nearest neighbours need at least two points");
    if (points.dims() == 0) throw InputError("points need at least one coordinate");
}

class KdTree {
public:
    explicit KdTree(const PointMatrix& points) : points_(points), dims_(points.dims()), order_(points.rows()) {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        nodes_.reserve(2 * points.rows() / kLeafSize + 2);
        build(0, order_.size());
        packed_.resize(points.rows() * dims_);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const auto row = points.row(order_[i]);
            std::copy(row.begin(), row.end(), packed_.begin() + static_cast<std::ptrdiff_t>(i * dims_));
        }
    }

    /// Point indices in leaf order; querying in this order keeps memory access local.
    const std::vector<std::size_t>& order() const noexcept { return order_; }

    // Collects every point other than `self` at the minimal distance, sorted.
    void query(std::size_t self, std::vector<std::size_t>& argmin) const {
        argmin.clear();
        double best = std::numeric_limits<double>::infinity();
        const double* q = points_.row(self).data();

        // Each pending node carries the squared distance from q to its
        // bounding box, a lower bound for all of its points. A node is only
        // skipped when that bound is strictly larger than the current best,
        // so equidistant points are kept.
        struct Pending {
            std::int32_t node;
            double gap;
        };
        std::array<Pending, 128> stack{};
        std::size_t top = 0;
        stack[top++] = {0, 0.0};
        while (top > 0) {
            const Pending p = stack[--top];
            if (p.gap > best) continue;
            const Node& node = nodes_[p.node];
            if (node.left < 0) {
                for (std::size_t i = node.lo; i < node.hi; ++i) {
                    const std::size_t j = order_[i];
                    if (j == self) continue;
                    const double dist = plain_distance(q, packed_.data() + i * dims_, dims_);
                    if (dist < best) {
                        best = dist;
                        argmin.clear();
                        argmin.push_back(j);
                    } else if (dist == best) {
                        argmin.push_back(j);
                    }
                }
                continue;
            }
            const double gl = box_gap(node.left, q);
            const double gr = box_gap(node.right, q);
            // far side first so the near side is explored first
            if (gl <= gr) {
                stack[top++] = {node.right, gr};
                stack[top++] = {node.left, gl};
            } else {
                stack[top++] = {node.left, gl};
                stack[top++] = {node.right, gr};
            }
        }
        std::sort(argmin.begin(), argmin.end());
    }

private:
    static constexpr std::size_t kLeafSize = 16;

    struct Node {
        std::size_t lo = 0;
        std::size_t hi = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    // Summed left to right like plain_distance; each term is no larger than
    // the matching term for any point in the box, so the sum is a lower bound.
    double box_gap(std::int32_t id, const double* q) const {
        const double* mn = boxes_.data() + static_cast<std::size_t>(id) * 2 * dims_;
        const double* mx = mn + dims_;
        double sum = 0.0;
        for (std::size_t a = 0; a < dims_; ++a) {
            double t = 0.0;
            if (q[a] < mn[a]) {
                t = mn[a] - q[a];
            } else if (q[a] > mx[a]) {
                t = q[a] - mx[a];
            }
            sum += t * t;
        }
        return sum;
    }

    std::int32_t build(std::size_t lo, std::size_t hi) {
        const auto id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(Node{lo, hi});
        const std::size_t base = boxes_.size();
        boxes_.resize(base + 2 * dims_);
        std::size_t axis = 0;
        double widest = -1.0;
        for (std::size_t a = 0; a < dims_; ++a) {
            double mn = std::numeric_limits<double>::infinity();
            double mx = -mn;
            for (std::size_t i = lo; i < hi; ++i) {
                const double v = points_.at(order_[i], a);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            boxes_[base + a] = mn;
            boxes_[base + dims_ + a] = mx;
            if (mx - mn > widest) {
                widest = mx - mn;
                axis = a;
            }
        }
        if (hi - lo <= kLeafSize || widest <= 0.0) return id;

        const std::size_t mid = lo + (hi - lo) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t x, std::size_t y) {
                             return points_.at(x, axis) < points_.at(y, axis);
                         });
        const std::int32_t left = build(lo, mid);
        const std::int32_t right = build(mid, hi);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    const PointMatrix& points_;
    std::size_t dims_;
    std::vector<std::size_t> order_;
    std::vector<double> packed_;  // coordinates in order_ sequence
    std::vector<double> boxes_;   // per node: d minima then d maxima
    std::vector<Node> nodes_;
};

}  // namespace

NeighborIndex nearest_neighbors(const PointMatrix& input, std::uint64_t seed) {
    require_points(input);
    const PointMatrix points = canonical_columns(input);
    const KdTree tree(points);
    NeighborIndex out{std::vector<std::size_t>(points.rows()), seed};
    std::vector<std::size_t> argmin;
    for (const std::size_t k : tree.order()) {
        tree.query(k, argmin);
        out.n_of[k] = pick_tied(argmin, seed, k);
    }
    return out;
}

NeighborIndex nearest_neighbors_bruteforce(const PointMatrix& input, std::uint64_t seed) {
    require_points(input);
    const PointMatrix points = canonical_columns(input);
    const std::size_t n = points.rows();
    NeighborIndex out{std::vector<std::size_t>(n), seed};
    std::vector<std::size_t> argmin;
    for (std::size_t k = 0; k < n; ++k) {
        argmin.clear();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const double dist = plain_distance(points.row(k).data(), points.row(j).data(), points.dims());
            if (dist < best) {
                best = dist;
                argmin.assign(1, j);
            } else if (dist == best) {
                argmin.push_back(j);
            }
        }
        out.n_of[k] = pick_tied(argmin, seed, k);
    }
    return out;
}

double t_statistic(const RankData& ranks, const NeighborIndex& neighbors) {
    const std::size_t n = ranks.r.size();
    if (n < 2 || ranks.l.size() != n || neighbors.n_of.size() != n)
        throw InputError("rank and neighbour data disagree in length");
    const auto nn = static_cast<std::int64_t>(n);
    // Exact integer sums: |terms| <= n^2, so n up to ~3e6 is safe in 64 bits.
    std::int64_t numerator = 0;
    std::int64_t denominator = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t rk = ranks.r[k];
        const std::int64_t rn = ranks.r[neighbors.n_of[k]];
        const std::int64_t lk = ranks.l[k];
        numerator += nn * std::min(rk, rn) - lk * lk;
        denominator += lk * (nn - lk);
    }
    if (denominator == 0) throw DegenerateResponseError("response is constant; T_n is undefined");
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

namespace {

void check_shapes(std::span<const double> response, const PointMatrix& conditioners) {
    if (response.size() != conditioners.rows())
        throw InputError("response has " + std::to_string(response.size()) + " observations, conditioners have " +
                         std::to_string(conditioners.rows()));
    if (response.size() < 3) throw InputError("T_n needs at least three observations");
}

}  // namespace

double t_statistic(std::span<const double> response, const PointMatrix& conditioners, std::uint64_t seed) {
    check_shapes(response, conditioners);
    const RankData ranks = compute_ranks(response);
    return t_statistic(ranks, nearest_neighbors(conditioners, seed));
}

double t_statistic_bruteforce(std::span<const double> response, const PointMatrix& conditioners,
                              std::uint64_t seed) {
    check_shapes(response, conditioners);
    const RankData ranks = compute_ranks(response);
    return t_statistic(ranks, nearest_neighbors_bruteforce(conditioners, seed));
}

}  // namespace depclust

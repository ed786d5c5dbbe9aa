#include "cnmbi/boundary.hpp"
#include "cnmbi/errors.hpp"
#include "cnmbi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cnmbi {

// Both overloads land here; when no index is available distances are
// computed on the fly (still O(n^2) but without the matrix).
static BoundaryScores boundary_degree_impl(const Dataset& data, double dc, double p,
                                           unsigned threads, const DistanceIndex* index) {
    if (!(dc > 0)) throw ConfigError("dc must be positive");
    if (!(p >= 1)) throw ConfigError("p-norm order must be >= 1");
    const std::size_t n = data.n, d = data.d;

    BoundaryScores scores;
    scores.dc = dc;
    scores.phi.assign(n, 0.0);
    scores.neighbor_counts.assign(n, 0);

    parallel_for(n, threads, [&](std::size_t i) {
        const double* a = data.row(i);
        std::vector<double> h(d, 0.0);
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dist;
            if (index) {
                dist = (*index)(i, j);
            } else {
                double s = 0;
                const double* b = data.row(j);
                for (std::size_t f = 0; f < d; ++f) {
                    double diff = a[f] - b[f];
                    s += diff * diff;
                }
                dist = std::sqrt(s);
            }
            if (dist < dc) { // open neighborhood
                const double* b = data.row(j);
                for (std::size_t f = 0; f < d; ++f) h[f] += a[f] - b[f];
                ++count;
            }
        }
        scores.neighbor_counts[i] = count;
        if (count == 0) {
            scores.phi[i] = std::numeric_limits<double>::infinity();
        } else if (p == 1.0) {
            double sum = 0;
            for (double v : h) sum += std::abs(v);
            scores.phi[i] = sum;
        } else {
            double sum = 0;
            for (double v : h) sum += std::pow(std::abs(v), p);
            scores.phi[i] = std::pow(sum, 1.0 / p);
        }
    });
    return scores;
}

BoundaryScores boundary_degree(const Dataset& data, const DistanceIndex& index, double p,
                               unsigned threads) {
    if (index.n != data.n) throw ConfigError("distance index and dataset sizes differ");
    return boundary_degree_impl(data, index.dc, p, threads, &index);
}

BoundaryScores boundary_degree(const Dataset& data, double dc, double p,
                               unsigned threads) {
    return boundary_degree_impl(data, dc, p, threads, nullptr);
}

std::vector<std::size_t> removal_order(const BoundaryScores& scores) {
    std::vector<std::size_t> order(scores.phi.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores.phi[a] != scores.phi[b]) return scores.phi[a] > scores.phi[b];
        if (scores.neighbor_counts[a] != scores.neighbor_counts[b])
            return scores.neighbor_counts[a] < scores.neighbor_counts[b];
        return a > b;
    });
    return order;
}

CoreSubset core_subset(const Dataset& data, const BoundaryScores& scores, double lambda) {
    if (!(lambda >= 0 && lambda < 1)) throw ConfigError("lambda must lie in [0,1)");
    if (scores.phi.size() != data.n)
        throw ConfigError("boundary scores and dataset sizes differ");

    const std::size_t n = data.n;
    const std::size_t n_remove = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * lambda));
    if (n - n_remove < 2)
        throw DegenerateDataError("boundary filtering would leave fewer than 2 points");

    std::vector<std::size_t> order = removal_order(scores);

    CoreSubset out;
    out.profile.phi = scores.phi;
    out.profile.neighbor_counts = scores.neighbor_counts;
    out.profile.lambda = lambda;
    out.profile.dc = scores.dc;
    out.profile.core_mask.assign(n, true);
    for (std::size_t r = 0; r < n_remove; ++r) out.profile.core_mask[order[r]] = false;

    out.core.d = data.d;
    out.core.name = data.name;
    out.core.true_k = data.true_k;
    if (data.labels) out.core.labels.emplace();
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.profile.core_mask[i]) continue;
        const double* p = data.row(i);
        out.core.points.insert(out.core.points.end(), p, p + data.d);
        if (data.labels) out.core.labels->push_back((*data.labels)[i]);
        out.core.n++;
        out.profile.kept_indices.push_back(i);
    }
    // filtering can drop whole label classes; keep true_k consistent
    if (out.core.labels && out.core.true_k &&
        *out.core.true_k != distinct_label_count(*out.core.labels))
        out.core.true_k = distinct_label_count(*out.core.labels);
    validate(out.core);
    return out;
}

bool verify_projection_identity(const std::vector<double>& xi,
                                const std::vector<double>& xj, std::size_t axis,
                                double tol) {
    if (xi.size() != xj.size()) throw ConfigError("points have different dimensions");
    const std::size_t d = xi.size();
    if (axis >= d) throw ConfigError("axis out of range");

    std::vector<double> h(d);
    for (std::size_t f = 0; f < d; ++f) h[f] = xi[f] - xj[f];

    // full normal-equation projection onto the standard basis axis:
    // e (e^T e)^{-1} e^T h, evaluated literally
    std::vector<double> e(d, 0.0);
    e[axis] = 1.0;
    double ete = 0;
    for (std::size_t f = 0; f < d; ++f) ete += e[f] * e[f];
    double eth = 0;
    for (std::size_t f = 0; f < d; ++f) eth += e[f] * h[f];
    const double coeff = eth / ete;

    for (std::size_t f = 0; f < d; ++f) {
        const double projected = e[f] * coeff;
        const double expected = (f == axis) ? xi[axis] - xj[axis] : 0.0;
        if (std::abs(projected - expected) > tol) return false;
    }
    return true;
}

} // namespace cnmbi

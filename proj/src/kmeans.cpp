#include "cnmbi/kmeans.hpp"
#include "cnmbi/errors.hpp"
#include "cnmbi/parallel.hpp"
#include "cnmbi/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace cnmbi {

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0;
    for (std::size_t f = 0; f < d; ++f) {
        double diff = a[f] - b[f];
        s += diff * diff;
    }
    return s;
}

// k-means++: first center uniform, each next one with probability
// proportional to the squared distance to the nearest chosen center.
std::vector<double> seed_centers(const Dataset& data, std::size_t k,
                                 std::mt19937_64& rng) {
    const std::size_t n = data.n, d = data.d;
    std::vector<double> centers;
    centers.reserve(k * d);

    std::uniform_int_distribution<std::size_t> uniform_index(0, n - 1);
    std::size_t first = uniform_index(rng);
    centers.insert(centers.end(), data.row(first), data.row(first) + d);

    std::vector<double> best_sq(n);
    for (std::size_t i = 0; i < n; ++i)
        best_sq[i] = sq_dist(data.row(i), centers.data(), d);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (centers.size() < k * d) {
        double total = std::accumulate(best_sq.begin(), best_sq.end(), 0.0);
        std::size_t chosen;
        if (total > 0) {
            double target = unit(rng) * total;
            double cum = 0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += best_sq[i];
                if (cum >= target && best_sq[i] > 0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = uniform_index(rng);
        }
        const double* p = data.row(chosen);
        centers.insert(centers.end(), p, p + d);
        const double* c = centers.data() + centers.size() - d;
        for (std::size_t i = 0; i < n; ++i)
            best_sq[i] = std::min(best_sq[i], sq_dist(data.row(i), c, d));
    }
    return centers;
}

struct LloydResult {
    std::vector<double> centers;
    std::vector<std::size_t> labels;
    double sse = 0;
    unsigned iterations = 0;
    std::vector<double> sse_history;
};

LloydResult lloyd(const Dataset& data, std::size_t k, const KMeansOptions& options,
                  std::mt19937_64& rng) {
    const std::size_t n = data.n, d = data.d;
    LloydResult res;
    res.centers = seed_centers(data, k, rng);
    res.labels.assign(n, 0);

    std::vector<double> next(k * d);
    std::vector<std::size_t> counts(k);

    auto assign_all = [&]() {
        double cost = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* p = data.row(i);
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                double sq = sq_dist(p, &res.centers[c * d], d);
                if (sq < best) {
                    best = sq;
                    best_c = c;
                }
            }
            res.labels[i] = best_c;
            cost += best;
        }
        return cost;
    };

    // Centers become the centroids of the current labeling; empty clusters
    // are reseeded to the point farthest from its assigned center (that
    // point is relabeled so a second empty cluster picks elsewhere).
    // Returns {max displacement, whether a repair fired}.
    auto update_centers = [&]() -> std::pair<double, bool> {
        std::fill(next.begin(), next.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = res.labels[i];
            counts[c]++;
            const double* p = data.row(i);
            for (std::size_t f = 0; f < d; ++f) next[c * d + f] += p[f];
        }
        bool repaired = false;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                double worst = -1;
                std::size_t pick = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    double sq = sq_dist(data.row(i), &res.centers[res.labels[i] * d], d);
                    if (sq > worst) {
                        worst = sq;
                        pick = i;
                    }
                }
                const double* p = data.row(pick);
                std::copy(p, p + d, next.begin() + c * d);
                res.labels[pick] = c;
                repaired = true;
            } else {
                for (std::size_t f = 0; f < d; ++f)
                    next[c * d + f] /= static_cast<double>(counts[c]);
            }
        }
        double disp = 0;
        for (std::size_t c = 0; c < k; ++c)
            disp = std::max(disp, std::sqrt(sq_dist(&next[c * d], &res.centers[c * d], d)));
        res.centers = next;
        return {disp, repaired};
    };

    for (unsigned iter = 0; iter < options.max_iters; ++iter) {
        res.sse_history.push_back(assign_all());
        res.iterations = iter + 1;
        auto [disp, repaired] = update_centers();
        if (!repaired && disp < options.tol) break;
    }
    // settle: leave the reported centers as exact centroids of the
    // reported labeling
    for (int guard = 0; guard < 64; ++guard) {
        assign_all();
        auto [disp, repaired] = update_centers();
        (void)disp;
        if (!repaired) break;
    }
    res.sse = 0;
    for (std::size_t i = 0; i < n; ++i)
        res.sse += sq_dist(data.row(i), &res.centers[res.labels[i] * d], d);
    return res;
}

} // namespace

std::size_t count_distinct_points(const Dataset& data) {
    std::vector<std::size_t> idx(data.n);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t d = data.d;
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(data.row(a), data.row(a) + d, data.row(b),
                                            data.row(b) + d);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::size_t distinct = data.n ? 1 : 0;
    for (std::size_t i = 1; i < data.n; ++i)
        if (!std::equal(data.row(idx[i - 1]), data.row(idx[i - 1]) + d, data.row(idx[i])))
            ++distinct;
    return distinct;
}

KMeansRun kmeans_run(const Dataset& data, std::size_t k, const KMeansOptions& options,
                     std::uint64_t seed, unsigned threads) {
    validate(data);
    if (k < 2 || k > data.n)
        throw ConfigError("k=" + std::to_string(k) + " outside [2, n=" +
                          std::to_string(data.n) + "]");
    if (options.restarts < 1) throw ConfigError("restarts must be positive");
    if (options.max_iters < 1) throw ConfigError("max_iters must be positive");
    if (options.tol < 0) throw ConfigError("tol must be nonnegative");
    if (count_distinct_points(data) < k)
        throw DegenerateDataError("fewer than k=" + std::to_string(k) +
                                  " distinct points");

    std::vector<LloydResult> runs(options.restarts);
    parallel_for(options.restarts, threads, [&](std::size_t r) {
        std::mt19937_64 rng = make_rng(seed, 0x6b6d, r);
        runs[r] = lloyd(data, k, options, rng);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].sse < runs[best].sse) best = r;

    KMeansRun out;
    out.centers = std::move(runs[best].centers);
    out.labels = std::move(runs[best].labels);
    out.sse = runs[best].sse;
    out.iterations = runs[best].iterations;
    out.sse_history = std::move(runs[best].sse_history);
    return out;
}

CenterSet kmeans_centers(const Dataset& data, std::size_t k, const KMeansOptions& options,
                         std::uint64_t seed, unsigned threads) {
    KMeansRun run = kmeans_run(data, k, options, seed, threads);
    CenterSet set;
    set.k = k;
    set.d = data.d;
    set.kind = CenterKind::mean;
    set.centers = std::move(run.centers);
    return set;
}

} // namespace cnmbi

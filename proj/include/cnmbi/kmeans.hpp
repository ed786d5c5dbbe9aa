#pragma once

#include "cnmbi/center_set.hpp"
#include "cnmbi/dataset.hpp"

#include <cstdint>
#include <vector>

namespace cnmbi {

struct KMeansOptions {
    unsigned restarts = 10;
    unsigned max_iters = 300;
    double tol = 1e-6; // max center displacement, feature units
};

// One converged run: centers are exactly the centroids of `labels`.
struct KMeansRun {
    std::vector<double> centers; // k * d
    std::vector<std::size_t> labels;
    double sse = 0.0;
    unsigned iterations = 0;
    std::vector<double> sse_history; // assignment-step cost per iteration
};

// Lloyd's algorithm with k-means++ seeding, `restarts` independent runs on
// seed-derived substreams, best run by lowest SSE (ties: lowest restart
// index). Empty clusters are reseeded to the point farthest from its
// currently assigned center. Throws on k > n or fewer than k distinct
// points. Deterministic for fixed (data, k, options, seed).
KMeansRun kmeans_run(const Dataset& data, std::size_t k, const KMeansOptions& options,
                     std::uint64_t seed, unsigned threads = 0);

// The best run's centers as a mean-kind CenterSet.
CenterSet kmeans_centers(const Dataset& data, std::size_t k, const KMeansOptions& options,
                         std::uint64_t seed, unsigned threads = 0);

// Number of bitwise-distinct rows.
std::size_t count_distinct_points(const Dataset& data);

} // namespace cnmbi

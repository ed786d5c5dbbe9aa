#pragma once

#include "cnmbi/boundary.hpp"
#include "cnmbi/dataset.hpp"
#include "cnmbi/kmeans.hpp"
#include "cnmbi/matching.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cnmbi {

struct SweepConfig {
    std::size_t k_min = 2;
    std::optional<std::size_t> k_max; // nullopt: auto = floor(sqrt(n)) of the input
    double lambda = 0.10;
    double dc_percentile = 0.02;
    KMeansOptions kmeans;
    std::uint64_t seed = 0;
    bool filtering_enabled = true;
    bool mean_vs_mean = false; // compare two K-means runs instead of density centers
    double boundary_p = 1.0;
    unsigned threads = 0;
};

// One matched center pair at a given k.
struct PairDetail {
    std::vector<double> mean_center;
    std::vector<double> density_center;
    double cost = 0.0; // squared distance
};

struct SweepEntry {
    std::size_t k = 0;
    std::optional<std::string> skipped; // reason, when this k was infeasible
    double loss = 0.0;                  // valid only when !skipped
    std::vector<PairDetail> pairs;
};

struct SweepTimings {
    double filter_ms = 0.0;
    double profile_ms = 0.0;
    double sweep_ms = 0.0;
    double total_ms = 0.0;
};

struct SweepReport {
    std::vector<SweepEntry> entries; // ascending k, one per k in range
    std::size_t k_star = 0;
    double k_star_loss = 0.0;
    BoundaryProfile boundary; // trivial all-kept profile when filtering is off
    bool filtering_applied = false;
    SweepConfig config;          // as supplied
    std::size_t resolved_k_max = 0;
    bool k_max_was_auto = false;
    std::string dataset_name;
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<int> true_k;
    std::size_t core_n = 0; // points surviving the filter
    SweepTimings timings;
};

// Full pipeline: filter low-confidence points, rebuild the density profile
// on the core subset, then for each candidate k match the k-means centers
// against the density centers and keep the k with minimal matching loss
// (ties toward smaller k). Throws DegenerateDataError when no candidate k
// is feasible.
SweepReport estimate(const Dataset& data, const SweepConfig& config);

struct TrialsResult {
    std::size_t nc = 0;              // modal K* across trials (ties: smallest)
    std::optional<double> acc;       // fraction of trials hitting true_k
    std::vector<std::size_t> k_stars;
    std::vector<std::uint64_t> seeds;
};

// Repeats `estimate` with per-trial seeds derived from config.seed. acc is
// empty when the dataset has no known true_k.
TrialsResult run_trials(const Dataset& data, const SweepConfig& config,
                        std::size_t trials = 50);

} // namespace cnmbi

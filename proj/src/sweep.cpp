#include "cnmbi/sweep.hpp"

#include "cnmbi/density.hpp"
#include "cnmbi/errors.hpp"
#include "cnmbi/parallel.hpp"
#include "cnmbi/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace cnmbi {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - from).count();
}

void check_config(const SweepConfig& config) {
    if (config.k_min < 2)
        throw ConfigError("k_min must be at least 2");
    if (config.k_max && *config.k_max < config.k_min)
        throw ConfigError("k_max must be >= k_min");
    if (!(config.lambda >= 0.0) || config.lambda >= 1.0)
        throw ConfigError("lambda must be in [0, 1)");
    if (!(config.dc_percentile > 0.0) || !(config.dc_percentile < 1.0))
        throw ConfigError("dc_percentile must be in (0, 1)");
    if (!(config.boundary_p > 0.0))
        throw ConfigError("boundary p must be positive");
    if (config.kmeans.restarts == 0)
        throw ConfigError("restarts must be at least 1");
    if (config.kmeans.max_iters == 0)
        throw ConfigError("max_iters must be at least 1");
    if (!(config.kmeans.tol >= 0.0))
        throw ConfigError("tol must be non-negative");
}

BoundaryProfile trivial_profile(std::size_t n) {
    BoundaryProfile profile;
    profile.phi.assign(n, 0.0);
    profile.neighbor_counts.assign(n, 0);
    profile.core_mask.assign(n, 1);
    profile.kept_indices.resize(n);
    std::iota(profile.kept_indices.begin(), profile.kept_indices.end(),
              std::size_t{0});
    profile.lambda = 0.0;
    profile.dc = 0.0;
    return profile;
}

} // namespace

SweepReport estimate(const Dataset& data, const SweepConfig& config) {
    validate(data);
    check_config(config);
    if (data.n < 4)
        throw DegenerateDataError("need at least 4 points to estimate k");

    auto t_total = std::chrono::steady_clock::now();
    unsigned threads = resolve_threads(config.threads);

    SweepReport report;
    report.config = config;
    report.dataset_name = data.name;
    report.n = data.n;
    report.d = data.d;
    report.true_k = data.true_k;

    // Stage 1: drop the lambda fraction with the highest boundary degree.
    Dataset core;
    auto t_filter = std::chrono::steady_clock::now();
    if (config.filtering_enabled) {
        DistanceIndex full_index =
            build_distance_index(data, config.dc_percentile, threads);
        BoundaryScores scores =
            boundary_degree(data, full_index, config.boundary_p, threads);
        CoreSubset subset = core_subset(data, scores, config.lambda);
        core = std::move(subset.core);
        report.boundary = std::move(subset.profile);
        report.filtering_applied = true;
    } else {
        core = data;
        report.boundary = trivial_profile(data.n);
        report.filtering_applied = false;
    }
    report.timings.filter_ms = elapsed_ms(t_filter);
    report.core_n = core.n;

    // Candidate range. Auto mode caps at sqrt of the unfiltered size and is
    // clamped to the core size; an explicit k_max outside the core is an error.
    std::size_t k_max;
    if (config.k_max) {
        k_max = *config.k_max;
        report.k_max_was_auto = false;
        if (k_max > core.n)
            throw ConfigError("k_max exceeds the number of points after filtering");
    } else {
        k_max = static_cast<std::size_t>(std::floor(std::sqrt(
            static_cast<double>(data.n))));
        k_max = std::min(k_max, core.n);
        report.k_max_was_auto = true;
    }
    if (k_max < config.k_min)
        throw ConfigError("candidate range is empty: k_max < k_min");
    report.resolved_k_max = k_max;

    // Stage 2: density profile of the core subset.
    auto t_profile = std::chrono::steady_clock::now();
    DistanceIndex index =
        build_distance_index(core, config.dc_percentile, threads);
    DensityProfile profile = density_profile(index, threads);
    report.timings.profile_ms = elapsed_ms(t_profile);

    std::size_t distinct = count_distinct_points(core);

    // Stage 3: sweep k, matching mean centers against density centers.
    auto t_sweep = std::chrono::steady_clock::now();
    std::size_t range = k_max - config.k_min + 1;
    report.entries.assign(range, SweepEntry{});
    parallel_for(range, threads, [&](std::size_t slot) {
        std::size_t k = config.k_min + slot;
        SweepEntry& entry = report.entries[slot];
        entry.k = k;
        if (k > distinct) {
            entry.skipped = "fewer distinct points than k";
            return;
        }
        try {
            CenterSet mean = kmeans_centers(core, k, config.kmeans,
                                            mix_seed(config.seed, k, 0), 1);
            CenterSet reference;
            if (config.mean_vs_mean) {
                reference = kmeans_centers(core, k, config.kmeans,
                                           mix_seed(config.seed, k, 1), 1);
                reference.kind = CenterKind::density;
            } else {
                reference = density_centers(profile, core, k);
            }
            CostMatrix costs = build_cost_matrix(mean, reference);
            MatchingResult match = min_cost_matching(costs);
            entry.loss = match.loss;
            entry.pairs.resize(k);
            for (std::size_t p = 0; p < k; ++p) {
                PairDetail& pd = entry.pairs[p];
                const double* mc = mean.center(p);
                const double* rc = reference.center(match.assignment[p]);
                pd.mean_center.assign(mc, mc + mean.d);
                pd.density_center.assign(rc, rc + reference.d);
                pd.cost = match.pair_costs[p];
            }
        } catch (const DegenerateDataError& e) {
            entry.skipped = e.what();
        }
    });
    report.timings.sweep_ms = elapsed_ms(t_sweep);

    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    for (const SweepEntry& entry : report.entries) {
        if (entry.skipped)
            continue;
        if (!found || entry.loss < best) {
            found = true;
            best = entry.loss;
            report.k_star = entry.k;
            report.k_star_loss = entry.loss;
        }
    }
    if (!found)
        throw DegenerateDataError("no feasible k in the candidate range");

    report.timings.total_ms = elapsed_ms(t_total);
    return report;
}

TrialsResult run_trials(const Dataset& data, const SweepConfig& config,
                        std::size_t trials) {
    if (trials == 0)
        throw ConfigError("trials must be at least 1");

    TrialsResult result;
    result.k_stars.reserve(trials);
    result.seeds.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        SweepConfig trial_config = config;
        trial_config.seed = mix_seed(config.seed, 0x7472, t);
        result.seeds.push_back(trial_config.seed);
        SweepReport report = estimate(data, trial_config);
        result.k_stars.push_back(report.k_star);
    }

    std::map<std::size_t, std::size_t> votes;
    for (std::size_t k : result.k_stars)
        ++votes[k];
    std::size_t best_count = 0;
    for (const auto& [k, count] : votes) {
        if (count > best_count) { // map is ascending, so ties keep smaller k
            best_count = count;
            result.nc = k;
        }
    }

    if (data.true_k && *data.true_k > 0) {
        std::size_t hits = 0;
        for (std::size_t k : result.k_stars)
            if (k == static_cast<std::size_t>(*data.true_k))
                ++hits;
        result.acc = static_cast<double>(hits) / static_cast<double>(trials);
    }
    return result;
}

} // namespace cnmbi

#pragma once

#include "cnmbi/dataset.hpp"

#include <cstdint>
#include <vector>

namespace cnmbi {

// Isotropic Gaussian mixture with per-cluster sizes and spreads. Cluster
// centers are rejection-sampled until pairwise at least `separation` apart;
// throws Error if placement fails after a bounded number of rounds.
// Labels are 0..k-1 in block order; true_k = k. Pure function of its
// arguments.
Dataset generate_mixture(const std::vector<std::size_t>& sizes,
                         const std::vector<double>& spreads,
                         std::size_t d, double separation, std::uint64_t seed);

// k equal clusters of `per_cluster` points each with a shared spread.
Dataset generate_blobs(std::size_t k, std::size_t per_cluster, std::size_t d,
                       double spread, double separation, std::uint64_t seed);

enum class ScenarioFamily { noise, density, count };

ScenarioFamily parse_scenario_family(const std::string& s);
std::string scenario_family_name(ScenarioFamily f);

// Documented levels per family:
//   noise:   {20, 30, 40, 50}: percent of the final dataset that is
//            uniform background noise over the 2-cluster base's bounding
//            box inflated by 20%; noise points carry label -1, true_k = 2.
//   density: {1, 2, 3, 4}: 8 clusters whose sizes follow a geometric
//            progression with max/min ratio 2^(level-1).
//   count:   {5, 10, 20, 40}: that many equal, well-separated clusters.
Dataset generate_scenario(ScenarioFamily family, int level, std::uint64_t seed);

// Append uniform background noise so that `fraction` of the result is
// noise (label -1). Noise is drawn over the bounding box of `base` with
// each feature range widened by `inflate` (0.2 = +20%).
Dataset add_uniform_noise(const Dataset& base, double fraction, double inflate,
                          std::uint64_t seed);

} // namespace cnmbi

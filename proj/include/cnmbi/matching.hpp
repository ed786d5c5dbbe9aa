#pragma once

#include "cnmbi/center_set.hpp"

#include <cstddef>
#include <vector>

namespace cnmbi {

// Dense k x k table of squared Euclidean distances between the mean
// centers (rows) and the density centers (columns).
struct CostMatrix {
    std::size_t k = 0;
    std::vector<double> costs; // k * k, row-major

    double operator()(std::size_t p, std::size_t q) const { return costs[p * k + q]; }
    double& at(std::size_t p, std::size_t q) { return costs[p * k + q]; }
};

// A complete matching: assignment[p] is the density-center index paired
// with mean center p; loss is the mean of the k pair costs.
struct MatchingResult {
    std::vector<std::size_t> assignment;
    std::vector<double> pair_costs;
    double loss = 0.0;
};

// Requires equal cardinality and dimension, and kinds {mean, density}.
CostMatrix build_cost_matrix(const CenterSet& mean_set, const CenterSet& density_set);

// Globally minimal mean-cost matching over all k! permutations, solved as
// a minimum-cost assignment. Among equal-loss optima the lexicographically
// smallest permutation is returned: exactly (by enumeration) for k <= 7,
// via zero-gain 2-swap descent above that. Throws on NaN costs.
MatchingResult min_cost_matching(const CostMatrix& costs);

} // namespace cnmbi

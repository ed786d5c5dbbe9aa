#pragma once

#include "cnmbi/center_set.hpp"
#include "cnmbi/dataset.hpp"

#include <cstddef>
#include <vector>

namespace cnmbi {

// Dense symmetric Euclidean distance matrix plus the cutoff radius dc.
// Storage is O(n^2) by design; the target scale is ~1e4 points.
struct DistanceIndex {
    std::size_t n = 0;
    std::vector<double> dist; // n * n, row-major, symmetric, zero diagonal
    double dc = 0.0;
    double percentile = 0.0;

    double operator()(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
    const double* row(std::size_t i) const { return dist.data() + i * n; }
};

// Per-point density score rho, separation distance delta, product gamma,
// and the point indices sorted by gamma descending (ties by lower index).
struct DensityProfile {
    std::vector<double> rho;
    std::vector<double> delta;
    std::vector<double> gamma;
    std::vector<std::size_t> order;
};

// dc is the value at 1-based position ceil(percentile * m) in the ascending
// sort of the m = n(n-1)/2 distinct pairwise distances, promoted to the
// smallest strictly positive distance when duplicates put a zero there.
// Throws DegenerateDataError when all points coincide.
DistanceIndex build_distance_index(const Dataset& data, double percentile = 0.02,
                                   unsigned threads = 0);

// Same matrix but with a caller-supplied cutoff radius.
DistanceIndex distance_index_with_dc(const Dataset& data, double dc,
                                     unsigned threads = 0);

// rho[i] = sum_{j != i} exp(-(d_ij/dc)^2). delta[i] is the distance to the
// nearest point of strictly higher density, where exact rho ties rank the
// lower index as denser; the single top-ranked point takes its maximum
// distance to the set instead.
DensityProfile density_profile(const DistanceIndex& index, unsigned threads = 0);

// The k highest-gamma points as a density-kind CenterSet.
CenterSet density_centers(const DensityProfile& profile, const Dataset& data,
                          std::size_t k);

// True when rho ranks j strictly above i under the shared tie rule.
inline bool denser_than(const std::vector<double>& rho, std::size_t j, std::size_t i) {
    return rho[j] > rho[i] || (rho[j] == rho[i] && j < i);
}

} // namespace cnmbi

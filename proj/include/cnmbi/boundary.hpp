#pragma once

#include "cnmbi/dataset.hpp"
#include "cnmbi/density.hpp"

#include <cstddef>
#include <vector>

namespace cnmbi {

// Per-point boundary degree phi and neighbor count |N_dc|. phi is the
// p-norm (default L1) of the summed coordinate differences to all
// neighbors strictly inside radius dc; points with no neighbors get
// phi = +inf so they rank first for removal.
struct BoundaryScores {
    std::vector<double> phi;
    std::vector<std::size_t> neighbor_counts;
    double dc = 0.0;
};

struct BoundaryProfile {
    std::vector<double> phi;
    std::vector<std::size_t> neighbor_counts;
    std::vector<bool> core_mask;             // true = retained
    std::vector<std::size_t> kept_indices;   // original indices, ascending
    double lambda = 0.0;
    double dc = 0.0;
};

// Filtered dataset (row order preserved) plus the full profile.
struct CoreSubset {
    Dataset core;
    BoundaryProfile profile;
};

BoundaryScores boundary_degree(const Dataset& data, const DistanceIndex& index,
                               double p = 1.0, unsigned threads = 0);
BoundaryScores boundary_degree(const Dataset& data, double dc, double p = 1.0,
                               unsigned threads = 0);

// Removes exactly floor(n * lambda) points with the largest phi. Ties:
// smaller neighbor count removed first, then larger index removed first.
// Throws DegenerateDataError when fewer than 2 points would remain.
CoreSubset core_subset(const Dataset& data, const BoundaryScores& scores,
                       double lambda = 0.10);

// Removal priority over all points (first entry is removed first).
std::vector<std::size_t> removal_order(const BoundaryScores& scores);

// Checks the one-axis projection identity: projecting the difference
// vector x_i - x_j onto a standard basis axis via the full normal-equation
// formula reproduces the plain coordinate difference. Test-support.
bool verify_projection_identity(const std::vector<double>& xi,
                                const std::vector<double>& xj, std::size_t axis,
                                double tol = 1e-12);

} // namespace cnmbi

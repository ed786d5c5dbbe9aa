#pragma once

#include <cstddef>
#include <vector>

namespace cnmbi {

enum class CenterKind { density, mean };

// An ordered collection of k center coordinates. Density-derived sets also
// record which dataset row each center came from.
struct CenterSet {
    std::vector<double> centers; // k * d, row-major
    std::size_t k = 0;
    std::size_t d = 0;
    CenterKind kind = CenterKind::mean;
    std::vector<std::size_t> source_indices; // density kind only

    const double* center(std::size_t i) const { return centers.data() + i * d; }
};

} // namespace cnmbi

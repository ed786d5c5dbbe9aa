#include "cnmbi/density.hpp"
#include "cnmbi/errors.hpp"
#include "cnmbi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cnmbi {

namespace {

void fill_distances(const Dataset& data, DistanceIndex& index, unsigned threads) {
    const std::size_t n = data.n;
    const std::size_t d = data.d;
    index.n = n;
    index.dist.assign(n * n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* a = data.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* b = data.row(j);
            double s = 0;
            for (std::size_t f = 0; f < d; ++f) {
                double diff = a[f] - b[f];
                s += diff * diff;
            }
            index.dist[i * n + j] = std::sqrt(s);
        }
    });
    // mirror the upper triangle
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            index.dist[j * n + i] = index.dist[i * n + j];
}

double smallest_positive_distance(const DistanceIndex& index) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < index.n; ++i)
        for (std::size_t j = i + 1; j < index.n; ++j) {
            double v = index(i, j);
            if (v > 0 && v < best) best = v;
        }
    return best;
}

} // namespace

DistanceIndex build_distance_index(const Dataset& data, double percentile,
                                   unsigned threads) {
    validate(data);
    if (!(percentile > 0.0 && percentile < 1.0))
        throw ConfigError("dc percentile must lie in (0,1)");

    DistanceIndex index;
    index.percentile = percentile;
    fill_distances(data, index, threads);

    const std::size_t n = data.n;
    const std::size_t m = n * (n - 1) / 2;
    std::vector<double> pairs;
    pairs.reserve(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back(index(i, j));

    // 1-based rank ceil(percentile * m), clamped to [1, m]
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(percentile * static_cast<double>(m)));
    rank = std::clamp<std::size_t>(rank, 1, m);
    std::nth_element(pairs.begin(), pairs.begin() + (rank - 1), pairs.end());
    double dc = pairs[rank - 1];

    if (dc <= 0.0) {
        double promoted = smallest_positive_distance(index);
        if (!std::isfinite(promoted))
            throw DegenerateDataError("all points are identical; no positive distance exists");
        dc = promoted;
    }
    index.dc = dc;
    return index;
}

DistanceIndex distance_index_with_dc(const Dataset& data, double dc, unsigned threads) {
    validate(data);
    if (!(dc > 0.0)) throw ConfigError("dc must be positive");
    DistanceIndex index;
    index.percentile = 0.0;
    fill_distances(data, index, threads);
    index.dc = dc;
    return index;
}

DensityProfile density_profile(const DistanceIndex& index, unsigned threads) {
    const std::size_t n = index.n;
    if (n < 2) throw ConfigError("density profile needs at least 2 points");
    const double dc = index.dc;

    DensityProfile profile;
    profile.rho.assign(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* row = index.row(i);
        double sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double r = row[j] / dc;
            sum += std::exp(-r * r);
        }
        profile.rho[i] = sum;
    });

    profile.delta.assign(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        const double* row = index.row(i);
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (denser_than(profile.rho, j, i)) {
                found = true;
                best = std::min(best, row[j]);
            }
        }
        if (!found) {
            // global density peak: maximum distance to any other point
            best = 0;
            for (std::size_t j = 0; j < n; ++j) best = std::max(best, row[j]);
        }
        profile.delta[i] = best;
    });

    profile.gamma.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        profile.gamma[i] = profile.rho[i] * profile.delta[i];

    profile.order.resize(n);
    for (std::size_t i = 0; i < n; ++i) profile.order[i] = i;
    std::sort(profile.order.begin(), profile.order.end(),
              [&](std::size_t a, std::size_t b) {
                  if (profile.gamma[a] != profile.gamma[b])
                      return profile.gamma[a] > profile.gamma[b];
                  return a < b;
              });
    return profile;
}

CenterSet density_centers(const DensityProfile& profile, const Dataset& data,
                          std::size_t k) {
    const std::size_t n = profile.order.size();
    if (k < 1 || k > n)
        throw ConfigError("density center count k=" + std::to_string(k) +
                          " outside [1, n=" + std::to_string(n) + "]");
    if (data.n != n) throw ConfigError("profile and dataset sizes differ");

    CenterSet set;
    set.k = k;
    set.d = data.d;
    set.kind = CenterKind::density;
    set.centers.reserve(k * data.d);
    set.source_indices.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t idx = profile.order[r];
        set.source_indices.push_back(idx);
        const double* p = data.row(idx);
        set.centers.insert(set.centers.end(), p, p + data.d);
    }
    return set;
}

} // namespace cnmbi

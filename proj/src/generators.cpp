#include "cnmbi/generators.hpp"
#include "cnmbi/errors.hpp"
#include "cnmbi/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cnmbi {

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) {
        double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

// Sequential rejection sampling of k centers in a box sized so that the
// packing stays easy. Restarts the whole round when one center cannot be
// placed; gives up after max_rounds.
std::vector<double> place_centers(std::size_t k, std::size_t d, double separation,
                                  std::mt19937_64& rng) {
    const double cells = std::ceil(std::pow(static_cast<double>(k), 1.0 / d));
    const double box = separation * (cells + 1.0) * 2.0;
    std::uniform_real_distribution<double> coord(0.0, box);

    const int max_rounds = 64;
    const int max_attempts_per_center = 256;
    std::vector<double> centers(k * d);
    for (int round = 0; round < max_rounds; ++round) {
        bool ok = true;
        for (std::size_t c = 0; c < k && ok; ++c) {
            int attempt = 0;
            for (; attempt < max_attempts_per_center; ++attempt) {
                for (std::size_t f = 0; f < d; ++f) centers[c * d + f] = coord(rng);
                bool far_enough = true;
                for (std::size_t p = 0; p < c; ++p) {
                    if (sq_dist(&centers[c * d], &centers[p * d], d) <
                        separation * separation) {
                        far_enough = false;
                        break;
                    }
                }
                if (far_enough) break;
            }
            if (attempt == max_attempts_per_center) ok = false;
        }
        if (ok) return centers;
    }
    throw Error("failed to place " + std::to_string(k) + " cluster centers with separation " +
                format_double(separation) + " in " + std::to_string(d) + " dimensions");
}

} // namespace

Dataset generate_mixture(const std::vector<std::size_t>& sizes,
                         const std::vector<double>& spreads, std::size_t d,
                         double separation, std::uint64_t seed) {
    const std::size_t k = sizes.size();
    if (k < 1) throw ConfigError("mixture needs at least one cluster");
    if (spreads.size() != k) throw ConfigError("sizes and spreads must have equal length");
    if (d < 1) throw ConfigError("dimension must be at least 1");
    if (separation <= 0) throw ConfigError("separation must be positive");
    for (std::size_t s : sizes)
        if (s < 2) throw ConfigError("each cluster needs at least 2 points");
    for (double s : spreads)
        if (s <= 0) throw ConfigError("spread must be positive");

    std::mt19937_64 rng = make_rng(seed, 0xb10b5);
    std::vector<double> centers = place_centers(k, d, separation, rng);

    Dataset data;
    data.d = d;
    data.labels.emplace();
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            for (std::size_t f = 0; f < d; ++f)
                data.points.push_back(centers[c * d + f] + spreads[c] * gauss(rng));
            data.labels->push_back(static_cast<int>(c));
            ++data.n;
        }
    }
    data.true_k = static_cast<int>(k);
    data.name = "mixture-k" + std::to_string(k) + "-seed" + std::to_string(seed);
    validate(data);
    return data;
}

Dataset generate_blobs(std::size_t k, std::size_t per_cluster, std::size_t d,
                       double spread, double separation, std::uint64_t seed) {
    Dataset data = generate_mixture(std::vector<std::size_t>(k, per_cluster),
                                    std::vector<double>(k, spread), d, separation, seed);
    data.name = "blobs-k" + std::to_string(k) + "-seed" + std::to_string(seed);
    return data;
}

Dataset add_uniform_noise(const Dataset& base, double fraction, double inflate,
                          std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ConfigError("noise fraction must lie in (0,1)");
    const std::size_t n_noise = static_cast<std::size_t>(
        std::llround(static_cast<double>(base.n) * fraction / (1.0 - fraction)));

    std::vector<double> lo(base.d), hi(base.d);
    for (std::size_t f = 0; f < base.d; ++f) {
        lo[f] = hi[f] = base.at(0, f);
        for (std::size_t i = 1; i < base.n; ++i) {
            lo[f] = std::min(lo[f], base.at(i, f));
            hi[f] = std::max(hi[f], base.at(i, f));
        }
        const double pad = (hi[f] - lo[f]) * inflate * 0.5;
        lo[f] -= pad;
        hi[f] += pad;
    }

    Dataset out = base;
    if (!out.labels) out.labels.emplace(base.n, 0);
    std::mt19937_64 rng = make_rng(seed, 0x9015e);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n_noise; ++i) {
        for (std::size_t f = 0; f < base.d; ++f)
            out.points.push_back(lo[f] + (hi[f] - lo[f]) * unit(rng));
        out.labels->push_back(-1);
        ++out.n;
    }
    out.true_k = distinct_label_count(*out.labels);
    out.name = base.name + "+noise";
    validate(out);
    return out;
}

ScenarioFamily parse_scenario_family(const std::string& s) {
    if (s == "noise") return ScenarioFamily::noise;
    if (s == "density") return ScenarioFamily::density;
    if (s == "count") return ScenarioFamily::count;
    throw ConfigError("unknown scenario family: " + s);
}

std::string scenario_family_name(ScenarioFamily f) {
    switch (f) {
    case ScenarioFamily::noise: return "noise";
    case ScenarioFamily::density: return "density";
    case ScenarioFamily::count: return "count";
    }
    return "?";
}

Dataset generate_scenario(ScenarioFamily family, int level, std::uint64_t seed) {
    switch (family) {
    case ScenarioFamily::count: {
        if (level != 5 && level != 10 && level != 20 && level != 40)
            throw ConfigError("count scenario levels are {5,10,20,40}, got " +
                              std::to_string(level));
        Dataset data = generate_blobs(static_cast<std::size_t>(level), 50, 2,
                                      0.5, 6.0, mix_seed(seed, 11, level));
        data.name = "count-" + std::to_string(level) + "-seed" + std::to_string(seed);
        return data;
    }
    case ScenarioFamily::density: {
        if (level < 1 || level > 4)
            throw ConfigError("density scenario levels are {1,2,3,4}, got " +
                              std::to_string(level));
        // 8 clusters, geometric size progression, max/min ratio 2^(level-1)
        const double ratio = std::pow(2.0, level - 1);
        const std::size_t smallest = 50;
        std::vector<std::size_t> sizes(8);
        for (std::size_t i = 0; i < 8; ++i)
            sizes[i] = static_cast<std::size_t>(
                std::llround(smallest * std::pow(ratio, static_cast<double>(i) / 7.0)));
        Dataset data = generate_mixture(sizes, std::vector<double>(8, 0.5), 2, 6.0,
                                        mix_seed(seed, 12, level));
        data.name = "density-" + std::to_string(level) + "-seed" + std::to_string(seed);
        return data;
    }
    case ScenarioFamily::noise: {
        if (level != 20 && level != 30 && level != 40 && level != 50)
            throw ConfigError("noise scenario levels are {20,30,40,50}, got " +
                              std::to_string(level));
        Dataset base = generate_blobs(2, 200, 2, 0.5, 8.0, mix_seed(seed, 13, level));
        Dataset data =
            add_uniform_noise(base, level / 100.0, 0.2, mix_seed(seed, 14, level));
        data.name = "noise-" + std::to_string(level) + "-seed" + std::to_string(seed);
        return data;
    }
    }
    throw ConfigError("unknown scenario family");
}

} // namespace cnmbi

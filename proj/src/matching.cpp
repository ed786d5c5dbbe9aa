#include "cnmbi/matching.hpp"
#include "cnmbi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cnmbi {

namespace {

// Kuhn-Munkres with row/column potentials, O(k^3). Returns row -> column.
std::vector<std::size_t> solve_assignment(const CostMatrix& cm) {
    const int n = static_cast<int>(cm.k);
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based internally; index 0 is the virtual unmatched column
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = match[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cm(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<std::size_t> assignment(n);
    for (int j = 1; j <= n; ++j) assignment[match[j] - 1] = static_cast<std::size_t>(j - 1);
    return assignment;
}

double matching_loss(const CostMatrix& cm, const std::vector<std::size_t>& perm) {
    double sum = 0;
    for (std::size_t p = 0; p < cm.k; ++p) sum += cm(p, perm[p]);
    return sum / static_cast<double>(cm.k);
}

// Exact canonicalization for small k: lexicographically smallest permutation
// among all achieving the minimum loss.
std::vector<std::size_t> enumerate_best(const CostMatrix& cm) {
    std::vector<std::size_t> perm(cm.k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    double best_loss = matching_loss(cm, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        double loss = matching_loss(cm, perm);
        if (loss < best_loss) {
            best_loss = loss;
            best = perm;
        }
        // next_permutation visits in lexicographic order, so on a tie the
        // earlier permutation already wins
    }
    return best;
}

// Zero-gain 2-swap descent toward the lexicographically smallest optimum.
void canonicalize_by_swaps(const CostMatrix& cm, std::vector<std::size_t>& perm) {
    const std::size_t k = cm.k;
    bool improved = true;
    int rounds = 0;
    while (improved && rounds < 64) {
        improved = false;
        ++rounds;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                if (perm[j] >= perm[i]) continue;
                double delta = cm(i, perm[j]) + cm(j, perm[i]) -
                               cm(i, perm[i]) - cm(j, perm[j]);
                if (delta == 0.0) {
                    std::swap(perm[i], perm[j]);
                    improved = true;
                }
            }
        }
    }
}

} // namespace

CostMatrix build_cost_matrix(const CenterSet& mean_set, const CenterSet& density_set) {
    if (mean_set.kind != CenterKind::mean)
        throw ConfigError("first center set must be mean-derived");
    if (density_set.kind != CenterKind::density)
        throw ConfigError("second center set must be density-derived");
    if (mean_set.k != density_set.k)
        throw ConfigError("center sets have different cardinality: " +
                          std::to_string(mean_set.k) + " vs " +
                          std::to_string(density_set.k));
    if (mean_set.d != density_set.d)
        throw ConfigError("center sets have different dimension");
    if (mean_set.k < 1) throw ConfigError("center sets are empty");

    const std::size_t k = mean_set.k, d = mean_set.d;
    CostMatrix cm;
    cm.k = k;
    cm.costs.resize(k * k);
    for (std::size_t p = 0; p < k; ++p) {
        const double* a = mean_set.center(p);
        for (std::size_t q = 0; q < k; ++q) {
            const double* b = density_set.center(q);
            double s = 0;
            for (std::size_t f = 0; f < d; ++f) {
                double diff = a[f] - b[f];
                s += diff * diff;
            }
            cm.at(p, q) = s;
        }
    }
    return cm;
}

MatchingResult min_cost_matching(const CostMatrix& cm) {
    if (cm.k < 1) throw ConfigError("empty cost matrix");
    if (cm.costs.size() != cm.k * cm.k) throw ConfigError("cost matrix is not square");
    for (double c : cm.costs)
        if (std::isnan(c)) throw ConfigError("cost matrix contains NaN");

    std::vector<std::size_t> perm = solve_assignment(cm);
    if (cm.k <= 7)
        perm = enumerate_best(cm);
    else
        canonicalize_by_swaps(cm, perm);

    MatchingResult result;
    result.assignment = std::move(perm);
    result.pair_costs.resize(cm.k);
    double sum = 0;
    for (std::size_t p = 0; p < cm.k; ++p) {
        result.pair_costs[p] = cm(p, result.assignment[p]);
        sum += result.pair_costs[p];
    }
    result.loss = sum / static_cast<double>(cm.k);
    return result;
}

} // namespace cnmbi

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cnmbi {

// An immutable-by-convention numeric dataset: n points in d dimensions,
// row-major storage, optional integer labels (-1 marks noise points).
struct Dataset {
    std::vector<double> points; // n * d, row-major
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::vector<int>> labels;
    std::string name;
    std::optional<int> true_k; // distinct non-noise labels when known

    const double* row(std::size_t i) const { return points.data() + i * d; }
    double at(std::size_t i, std::size_t dim) const { return points[i * d + dim]; }
};

enum class Normalize { none, minmax, zscore };

// Column selector: by zero-based index or by header name.
using LabelColumn = std::variant<std::size_t, std::string>;

// Throws Error if the invariants do not hold (n >= 2, d >= 1, finite
// coordinates, label arity, true_k vs distinct labels).
void validate(const Dataset& data);

// Number of distinct labels, ignoring the noise label -1.
int distinct_label_count(const std::vector<int>& labels);

// Load a comma-separated numeric file. A header row is assumed iff the
// first row fails numeric parse. When `label` selects a column, its values
// must be integers; remaining columns become features in file order.
Dataset load_csv(const std::string& path,
                 const std::optional<LabelColumn>& label = std::nullopt,
                 Normalize normalize = Normalize::none);

// Write a dataset as CSV with a header row; labels, when present, go to a
// trailing "label" column. Values use shortest round-trip formatting.
void save_csv(const Dataset& data, const std::string& path);

// In-place feature normalization. minmax maps each feature affinely to
// [0,1]; zscore to zero mean and unit population variance (divisor n).
// Constant features map to 0 in both modes.
void apply_normalization(Dataset& data, Normalize mode);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

Normalize parse_normalize(const std::string& s);

} // namespace cnmbi

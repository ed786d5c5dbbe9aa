#include "cnmbi/dataset.hpp"
#include "cnmbi/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace cnmbi {

namespace {

// Split one CSV record on commas. No quoting support: the format is plain
// numeric tables.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_field(const std::string& raw, double& out) {
    std::string s = trim(raw);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc() || res.ptr != last) return false;
    return std::isfinite(out);
}

} // namespace

int distinct_label_count(const std::vector<int>& labels) {
    std::set<int> seen;
    for (int l : labels)
        if (l != -1) seen.insert(l);
    return static_cast<int>(seen.size());
}

void validate(const Dataset& data) {
    if (data.n < 2) throw Error("dataset must contain at least 2 points");
    if (data.d < 1) throw Error("dataset must have at least 1 dimension");
    if (data.points.size() != data.n * data.d)
        throw Error("dataset storage size does not match n*d");
    for (double v : data.points)
        if (!std::isfinite(v)) throw Error("dataset contains NaN or Inf coordinates");
    if (data.labels) {
        if (data.labels->size() != data.n)
            throw Error("label vector length does not match point count");
        if (data.true_k && *data.true_k != distinct_label_count(*data.labels))
            throw Error("true_k does not match the number of distinct labels");
    }
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Normalize parse_normalize(const std::string& s) {
    if (s == "none") return Normalize::none;
    if (s == "minmax") return Normalize::minmax;
    if (s == "zscore") return Normalize::zscore;
    throw ConfigError("unknown normalization mode: " + s);
}

void apply_normalization(Dataset& data, Normalize mode) {
    if (mode == Normalize::none) return;
    for (std::size_t f = 0; f < data.d; ++f) {
        if (mode == Normalize::minmax) {
            double lo = data.at(0, f), hi = lo;
            for (std::size_t i = 1; i < data.n; ++i) {
                lo = std::min(lo, data.at(i, f));
                hi = std::max(hi, data.at(i, f));
            }
            double range = hi - lo;
            for (std::size_t i = 0; i < data.n; ++i) {
                double& v = data.points[i * data.d + f];
                v = (range > 0) ? (v - lo) / range : 0.0;
            }
        } else {
            double mean = 0;
            for (std::size_t i = 0; i < data.n; ++i) mean += data.at(i, f);
            mean /= static_cast<double>(data.n);
            double var = 0;
            for (std::size_t i = 0; i < data.n; ++i) {
                double dv = data.at(i, f) - mean;
                var += dv * dv;
            }
            var /= static_cast<double>(data.n); // population variance
            double sd = std::sqrt(var);
            for (std::size_t i = 0; i < data.n; ++i) {
                double& v = data.points[i * data.d + f];
                v = (sd > 0) ? (v - mean) / sd : 0.0;
            }
        }
    }
}

Dataset load_csv(const std::string& path, const std::optional<LabelColumn>& label,
                 Normalize normalize) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back(); // CRLF
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw ParseError("empty file: " + path);

    // Header iff any field of the first row fails numeric parse.
    std::vector<std::string> first = split_fields(lines[0]);
    bool has_header = false;
    for (const auto& f : first) {
        double v;
        if (!parse_field(f, v)) {
            has_header = true;
            break;
        }
    }
    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (has_header) {
        for (auto& h : first) header.push_back(trim(h));
        first_data = 1;
        if (lines.size() < 2) throw ParseError("file has a header but no data rows");
    }

    const std::size_t ncols = first.size();

    // Resolve the label column, if any.
    std::optional<std::size_t> label_idx;
    if (label) {
        if (std::holds_alternative<std::size_t>(*label)) {
            label_idx = std::get<std::size_t>(*label);
            if (*label_idx >= ncols)
                throw ParseError("label column index " + std::to_string(*label_idx) +
                                 " out of range (file has " + std::to_string(ncols) +
                                 " columns)");
        } else {
            const std::string& name = std::get<std::string>(*label);
            if (!has_header)
                throw ParseError("label column '" + name +
                                 "' selected by name but the file has no header row");
            for (std::size_t c = 0; c < header.size(); ++c)
                if (header[c] == name) label_idx = c;
            if (!label_idx)
                throw ParseError("label column '" + name + "' not found in header");
        }
    }

    Dataset data;
    data.d = ncols - (label_idx ? 1 : 0);
    if (data.d == 0) throw ParseError("no feature columns remain after label extraction");
    if (label_idx) data.labels.emplace();
    data.name = path;

    for (std::size_t r = first_data; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_fields(lines[r]);
        if (fields.size() != ncols)
            throw ParseError("row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(ncols),
                             r + 1);
        for (std::size_t c = 0; c < ncols; ++c) {
            double v;
            if (!parse_field(fields[c], v))
                throw ParseError("field '" + trim(fields[c]) + "' is not a finite number",
                                 r + 1, c + 1);
            if (label_idx && c == *label_idx) {
                double rounded = std::round(v);
                if (std::abs(v - rounded) > 1e-9)
                    throw ParseError("label value '" + trim(fields[c]) +
                                         "' is not an integer",
                                     r + 1, c + 1);
                data.labels->push_back(static_cast<int>(rounded));
            } else {
                data.points.push_back(v);
            }
        }
        ++data.n;
    }

    if (data.labels) {
        int k = distinct_label_count(*data.labels);
        if (k > 0) data.true_k = k;
    }
    validate(data);
    apply_normalization(data, normalize);
    return data;
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    for (std::size_t f = 0; f < data.d; ++f) {
        if (f) out << ',';
        out << 'f' << f;
    }
    if (data.labels) out << ",label";
    out << '\n';
    for (std::size_t i = 0; i < data.n; ++i) {
        for (std::size_t f = 0; f < data.d; ++f) {
            if (f) out << ',';
            out << format_double(data.at(i, f));
        }
        if (data.labels) out << ',' << (*data.labels)[i];
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

} // namespace cnmbi

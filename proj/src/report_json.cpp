#include "cnmbi/report_json.hpp"

#include "cnmbi/errors.hpp"

#include <fstream>
#include <sstream>

namespace cnmbi {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error("read failure: " + path);
    return fnv1a64(buf.str());
}

std::string hex64(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

namespace {

nlohmann::ordered_json config_to_json(const SweepReport& report) {
    const SweepConfig& c = report.config;
    nlohmann::ordered_json j;
    j["k_min"] = c.k_min;
    j["k_max"] = report.resolved_k_max;
    j["k_max_auto"] = report.k_max_was_auto;
    j["lambda"] = c.lambda;
    j["dc_percentile"] = c.dc_percentile;
    j["boundary_p"] = c.boundary_p;
    j["filtering"] = c.filtering_enabled;
    j["mean_vs_mean"] = c.mean_vs_mean;
    j["restarts"] = c.kmeans.restarts;
    j["max_iters"] = c.kmeans.max_iters;
    j["tol"] = c.kmeans.tol;
    j["seed"] = c.seed;
    return j;
}

} // namespace

nlohmann::ordered_json report_to_json(const SweepReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "cnmbi-report-v1";
    j["dataset"] = {
        {"name", report.dataset_name},
        {"n", report.n},
        {"dim", report.d},
        {"true_k",
         report.true_k ? nlohmann::ordered_json(*report.true_k)
                       : nlohmann::ordered_json(nullptr)},
    };
    j["config"] = config_to_json(report);
    j["boundary"] = {
        {"applied", report.filtering_applied},
        {"lambda", report.boundary.lambda},
        {"dc", report.boundary.dc},
        {"removed", report.n - report.core_n},
        {"kept", report.core_n},
    };
    nlohmann::ordered_json losses = nlohmann::ordered_json::array();
    for (const SweepEntry& entry : report.entries) {
        nlohmann::ordered_json item;
        item["k"] = entry.k;
        if (entry.skipped)
            item["skipped"] = *entry.skipped;
        else
            item["loss"] = entry.loss;
        losses.push_back(std::move(item));
    }
    j["losses"] = std::move(losses);
    j["k_star"] = report.k_star;
    j["k_star_loss"] = report.k_star_loss;
    nlohmann::ordered_json per_k = nlohmann::ordered_json::array();
    for (const SweepEntry& entry : report.entries) {
        if (entry.skipped)
            continue;
        nlohmann::ordered_json item;
        item["k"] = entry.k;
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (const PairDetail& pd : entry.pairs) {
            pairs.push_back({{"mean", pd.mean_center},
                             {"density", pd.density_center},
                             {"cost", pd.cost}});
        }
        item["pairs"] = std::move(pairs);
        per_k.push_back(std::move(item));
    }
    j["per_k"] = std::move(per_k);
    j["timings"] = {
        {"filter_ms", report.timings.filter_ms},
        {"profile_ms", report.timings.profile_ms},
        {"sweep_ms", report.timings.sweep_ms},
        {"total_ms", report.timings.total_ms},
    };
    return j;
}

nlohmann::ordered_json trials_to_json(const Dataset& data,
                                      const SweepConfig& config,
                                      const TrialsResult& result) {
    nlohmann::ordered_json j;
    j["schema"] = "cnmbi-trials-v1";
    j["dataset"] = {
        {"name", data.name},
        {"n", data.n},
        {"dim", data.d},
        {"true_k", data.true_k ? nlohmann::ordered_json(*data.true_k)
                               : nlohmann::ordered_json(nullptr)},
    };
    j["config"] = {
        {"k_min", config.k_min},
        {"k_max", config.k_max ? nlohmann::ordered_json(*config.k_max)
                               : nlohmann::ordered_json(nullptr)},
        {"lambda", config.lambda},
        {"dc_percentile", config.dc_percentile},
        {"filtering", config.filtering_enabled},
        {"mean_vs_mean", config.mean_vs_mean},
        {"restarts", config.kmeans.restarts},
        {"seed", config.seed},
    };
    j["trials"] = result.k_stars.size();
    j["k_stars"] = result.k_stars;
    j["nc"] = result.nc;
    j["acc"] = result.acc ? nlohmann::ordered_json(*result.acc)
                          : nlohmann::ordered_json(nullptr);
    return j;
}

std::string curve_csv(const SweepReport& report) {
    std::string out = "k,loss\n";
    for (const SweepEntry& entry : report.entries) {
        out += std::to_string(entry.k);
        out += ',';
        out += entry.skipped ? "nan" : format_double(entry.loss);
        out += '\n';
    }
    return out;
}

std::string boundary_csv(const BoundaryProfile& profile) {
    std::string out = "original_index,phi,neighbor_count,removed\n";
    for (std::size_t i = 0; i < profile.phi.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(profile.phi[i]);
        out += ',';
        out += std::to_string(profile.neighbor_counts[i]);
        out += ',';
        out += profile.core_mask[i] ? '0' : '1';
        out += '\n';
    }
    return out;
}

} // namespace cnmbi

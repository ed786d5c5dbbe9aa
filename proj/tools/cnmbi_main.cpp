#include "cnmbi/boundary.hpp"
#include "cnmbi/dataset.hpp"
#include "cnmbi/density.hpp"
#include "cnmbi/errors.hpp"
#include "cnmbi/generators.hpp"
#include "cnmbi/report_json.hpp"
#include "cnmbi/rng.hpp"
#include "cnmbi/sweep.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cnmbi;

struct DataArgs {
    std::string input;
    std::string label_col;
    std::string normalize = "none";
};

struct SweepArgs {
    std::size_t k_min = 2;
    std::size_t k_max = 0; // 0 = auto
    double lambda = 0.10;
    double dc_percentile = 0.02;
    bool no_filter = false;
    bool mean_vs_mean = false;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::string curve;
};

void add_data_flags(CLI::App* cmd, DataArgs& a) {
    cmd->add_option("--input", a.input, "input CSV path")->required();
    cmd->add_option("--label-col", a.label_col,
                    "label column, by header name or zero-based index");
    cmd->add_option("--normalize", a.normalize,
                    "feature scaling: none, minmax or zscore");
}

void add_sweep_flags(CLI::App* cmd, SweepArgs& a) {
    cmd->add_option("--k-min", a.k_min, "smallest candidate k (default 2)");
    cmd->add_option("--k-max", a.k_max,
                    "largest candidate k; 0 = floor(sqrt(n))");
    cmd->add_option("--lambda", a.lambda,
                    "fraction of boundary points to drop (default 0.10)");
    cmd->add_option("--dc-percentile", a.dc_percentile,
                    "cutoff-distance percentile (default 0.02)");
    cmd->add_flag("--no-filter", a.no_filter, "skip the boundary filter");
    cmd->add_flag("--mean-vs-mean", a.mean_vs_mean,
                  "match two k-means runs instead of density centers");
    cmd->add_option("--restarts", a.restarts, "k-means restarts (default 10)");
    cmd->add_option("--seed", a.seed, "RNG seed (default 0)");
    cmd->add_option("--threads", a.threads,
                    "worker threads; 0 = CNMBI_THREADS or hardware");
    cmd->add_option("--out", a.out, "write the report JSON here");
    cmd->add_option("--emit-curve", a.curve, "write the k,loss curve CSV here");
}

Dataset load_input(const DataArgs& a) {
    std::optional<LabelColumn> label;
    if (!a.label_col.empty()) {
        bool digits = true;
        for (char c : a.label_col)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                digits = false;
        if (digits)
            label = static_cast<std::size_t>(std::stoull(a.label_col));
        else
            label = a.label_col;
    }
    return load_csv(a.input, label, parse_normalize(a.normalize));
}

SweepConfig make_config(const SweepArgs& a) {
    SweepConfig cfg;
    cfg.k_min = a.k_min;
    if (a.k_max != 0)
        cfg.k_max = a.k_max;
    cfg.lambda = a.lambda;
    cfg.dc_percentile = a.dc_percentile;
    cfg.filtering_enabled = !a.no_filter;
    cfg.mean_vs_mean = a.mean_vs_mean;
    cfg.kmeans.restarts = a.restarts;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open for writing: " + path);
    out << content;
    if (!out)
        throw Error("write failure: " + path);
}

nlohmann::ordered_json make_manifest(const std::string& subcommand,
                                     const std::string& input_path,
                                     const std::vector<std::string>& outputs) {
    nlohmann::ordered_json m;
    m["subcommand"] = subcommand;
    m["input"] = {
        {"path", input_path},
        {"fnv1a64", hex64(fnv1a64_file(input_path))},
    };
    m["outputs"] = outputs;
    return m;
}

int run_estimate(const DataArgs& da, const SweepArgs& sa) {
    Dataset data = load_input(da);
    SweepReport report = estimate(data, make_config(sa));

    std::vector<std::string> outputs;
    if (!sa.out.empty())
        outputs.push_back(sa.out);
    if (!sa.curve.empty()) {
        write_text_file(sa.curve, curve_csv(report));
        outputs.push_back(sa.curve);
    }
    if (!sa.out.empty()) {
        nlohmann::ordered_json doc = report_to_json(report);
        doc["manifest"] = make_manifest("estimate", da.input, outputs);
        write_text_file(sa.out, doc.dump(2) + "\n");
    }
    std::cout << "K* = " << report.k_star << "\n";
    return 0;
}

int run_trials_cmd(const DataArgs& da, const SweepArgs& sa, std::size_t trials) {
    Dataset data = load_input(da);
    SweepConfig cfg = make_config(sa);
    TrialsResult result = run_trials(data, cfg, trials);

    if (!sa.out.empty()) {
        nlohmann::ordered_json doc = trials_to_json(data, cfg, result);
        doc["manifest"] = make_manifest("trials", da.input, {sa.out});
        write_text_file(sa.out, doc.dump(2) + "\n");
    }
    std::cout << "NC = " << result.nc << "\n";
    if (result.acc)
        std::cout << "ACC = " << format_double(*result.acc) << "\n";
    else
        std::cout << "ACC = unavailable\n";
    return 0;
}

int run_boundary(const DataArgs& da, double dc_percentile, double lambda,
                 std::size_t top, const std::string& out, unsigned threads) {
    if (!(dc_percentile > 0.0) || !(dc_percentile < 1.0))
        throw ConfigError("dc_percentile must be in (0, 1)");
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw ConfigError("lambda must be in [0, 1)");

    Dataset data = load_input(da);
    DistanceIndex index = build_distance_index(data, dc_percentile, threads);
    BoundaryScores scores = boundary_degree(data, index, 1.0, threads);
    CoreSubset subset = core_subset(data, scores, lambda);

    if (!out.empty())
        write_text_file(out, boundary_csv(subset.profile));

    std::vector<std::size_t> order = removal_order(scores);
    std::cout << "rank,original_index,phi\n";
    std::size_t shown = std::min(top, order.size());
    for (std::size_t r = 0; r < shown; ++r) {
        std::cout << r << ',' << order[r] << ','
                  << format_double(scores.phi[order[r]]) << "\n";
    }
    return 0;
}

int run_generate(const std::string& scenario, std::size_t blobs,
                 std::size_t per_cluster, std::size_t dim, double spread,
                 double separation, std::uint64_t seed,
                 const std::string& out) {
    Dataset data;
    if (!scenario.empty()) {
        auto dash = scenario.rfind('-');
        if (dash == std::string::npos || dash + 1 >= scenario.size())
            throw ConfigError("scenario must look like family-level, e.g. noise-30");
        ScenarioFamily family = parse_scenario_family(scenario.substr(0, dash));
        int level = 0;
        try {
            level = std::stoi(scenario.substr(dash + 1));
        } catch (const std::exception&) {
            throw ConfigError("scenario level must be an integer");
        }
        data = generate_scenario(family, level, seed);
    } else {
        data = generate_blobs(blobs, per_cluster, dim, spread, separation, seed);
    }
    save_csv(data, out);
    return 0;
}

struct BenchRow {
    std::string scenario;
    std::size_t n = 0;
    int true_k = 0;
    std::size_t nc = 0;
    double acc = 0.0;
};

int run_bench(std::size_t trials, std::uint64_t seed, const std::string& out,
              unsigned threads) {
    struct Cell {
        ScenarioFamily family;
        int level;
    };
    const std::vector<Cell> matrix = {
        {ScenarioFamily::noise, 20},  {ScenarioFamily::noise, 30},
        {ScenarioFamily::noise, 40},  {ScenarioFamily::noise, 50},
        {ScenarioFamily::density, 1}, {ScenarioFamily::density, 2},
        {ScenarioFamily::density, 3}, {ScenarioFamily::density, 4},
        {ScenarioFamily::count, 5},   {ScenarioFamily::count, 10},
        {ScenarioFamily::count, 20},  {ScenarioFamily::count, 40},
    };

    std::cout << std::left << std::setw(14) << "scenario" << std::right
              << std::setw(6) << "n" << std::setw(8) << "true_k"
              << std::setw(5) << "nc" << std::setw(8) << "acc" << "\n";

    std::vector<BenchRow> rows;
    for (const Cell& cell : matrix) {
        Dataset data = generate_scenario(cell.family, cell.level, seed);
        SweepConfig cfg;
        cfg.seed = seed;
        cfg.threads = threads;
        TrialsResult result = run_trials(data, cfg, trials);

        BenchRow row;
        row.scenario =
            scenario_family_name(cell.family) + "-" + std::to_string(cell.level);
        row.n = data.n;
        row.true_k = data.true_k.value_or(0);
        row.nc = result.nc;
        row.acc = result.acc.value_or(0.0);
        rows.push_back(row);

        std::cout << std::left << std::setw(14) << row.scenario << std::right
                  << std::setw(6) << row.n << std::setw(8) << row.true_k
                  << std::setw(5) << row.nc << std::setw(8) << std::fixed
                  << std::setprecision(3) << row.acc << "\n"
                  << std::defaultfloat;
    }

    if (!out.empty()) {
        nlohmann::ordered_json doc;
        doc["schema"] = "cnmbi-bench-v1";
        doc["seed"] = seed;
        doc["trials"] = trials;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const BenchRow& row : rows) {
            arr.push_back({{"scenario", row.scenario},
                           {"n", row.n},
                           {"true_k", row.true_k},
                           {"nc", row.nc},
                           {"acc", row.acc}});
        }
        doc["rows"] = std::move(arr);
        write_text_file(out, doc.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster-number estimation via boundary filtering and "
                 "center matching"};
    app.require_subcommand(1);

    DataArgs est_data;
    SweepArgs est_sweep;
    CLI::App* est = app.add_subcommand(
        "estimate", "estimate the number of clusters in a CSV dataset");
    add_data_flags(est, est_data);
    add_sweep_flags(est, est_sweep);

    DataArgs tri_data;
    SweepArgs tri_sweep;
    std::size_t tri_trials = 50;
    CLI::App* tri = app.add_subcommand(
        "trials", "repeat the estimate and report NC (modal K*) and ACC");
    add_data_flags(tri, tri_data);
    add_sweep_flags(tri, tri_sweep);
    tri->add_option("--trials", tri_trials, "number of repeats (default 50)");

    DataArgs bnd_data;
    double bnd_dc = 0.02;
    double bnd_lambda = 0.10;
    std::size_t bnd_top = 10;
    std::string bnd_out;
    unsigned bnd_threads = 0;
    CLI::App* bnd = app.add_subcommand(
        "boundary", "rank points by boundary degree and export the scores");
    add_data_flags(bnd, bnd_data);
    bnd->add_option("--dc-percentile", bnd_dc,
                    "cutoff-distance percentile (default 0.02)");
    bnd->add_option("--lambda", bnd_lambda,
                    "removal fraction used for the removed flag (default 0.10)");
    bnd->add_option("--top", bnd_top,
                    "print the N highest-ranked indices (default 10)");
    bnd->add_option("--out", bnd_out, "write the per-point score CSV here");
    bnd->add_option("--threads", bnd_threads,
                    "worker threads; 0 = CNMBI_THREADS or hardware");

    std::string gen_scenario;
    std::size_t gen_blobs = 0;
    std::size_t gen_per = 100;
    std::size_t gen_dim = 2;
    double gen_spread = 0.5;
    double gen_sep = 6.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand(
        "generate", "write a synthetic labeled dataset as CSV");
    auto* gen_scn_opt = gen->add_option(
        "--scenario", gen_scenario,
        "scenario name, family-level (noise-{20,30,40,50}, "
        "density-{1,2,3,4}, count-{5,10,20,40})");
    auto* gen_blob_opt =
        gen->add_option("--blobs", gen_blobs, "number of gaussian blobs");
    gen->add_option("--per-cluster", gen_per, "points per blob (default 100)");
    gen->add_option("--dim", gen_dim, "dimensionality (default 2)");
    gen->add_option("--spread", gen_spread, "blob stddev (default 0.5)");
    gen->add_option("--separation", gen_sep,
                    "minimum center distance (default 6)");
    gen->add_option("--seed", gen_seed, "RNG seed (default 0)");
    gen->add_option("--out", gen_out, "output CSV path")->required();
    gen_scn_opt->excludes(gen_blob_opt);

    std::size_t bench_trials = 10;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    unsigned bench_threads = 0;
    CLI::App* bench = app.add_subcommand(
        "bench", "run the 12-scenario robustness matrix and report NC/ACC");
    bench->add_option("--trials", bench_trials,
                      "trials per scenario (default 10)");
    bench->add_option("--seed", bench_seed, "RNG seed (default 0)");
    bench->add_option("--out", bench_out, "write the result JSON here");
    bench->add_option("--threads", bench_threads,
                      "worker threads; 0 = CNMBI_THREADS or hardware");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (est->parsed())
            return run_estimate(est_data, est_sweep);
        if (tri->parsed())
            return run_trials_cmd(tri_data, tri_sweep, tri_trials);
        if (bnd->parsed())
            return run_boundary(bnd_data, bnd_dc, bnd_lambda, bnd_top, bnd_out,
                                bnd_threads);
        if (gen->parsed()) {
            if (gen_scenario.empty() && gen_blobs == 0)
                throw ConfigError("pass --scenario or --blobs");
            return run_generate(gen_scenario, gen_blobs, gen_per, gen_dim,
                                gen_spread, gen_sep, gen_seed, gen_out);
        }
        if (bench->parsed())
            return run_bench(bench_trials, bench_seed, bench_out,
                             bench_threads);
    } catch (const DegenerateDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

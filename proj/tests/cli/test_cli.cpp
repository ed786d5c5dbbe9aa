// End-to-end checks of the command-line binary. argv[1] is the binary path.
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

#define CHECK_MSG(cond, msg)                                                   \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::cerr << "FAIL (" << __LINE__ << "): " << msg << "\n";         \
            ++failures;                                                        \
        }                                                                      \
    } while (0)

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& bin, const std::string& args,
                  const fs::path& dir) {
    fs::path out_path = dir / "stdout.txt";
    fs::path err_path = dir / "stderr.txt";
    std::string cmd = bin + " " + args + " > " + out_path.string() + " 2> " +
                      err_path.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n')
            ++lines;
    return lines;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cnmbi-binary>\n";
        return 2;
    }
    const std::string bin = argv[1];
    fs::path dir = fs::temp_directory_path() / "cnmbi_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // no subcommand and --help
    {
        RunResult r = run_cli(bin, "", dir);
        CHECK_MSG(r.code == 1, "bare invocation should exit 1, got " << r.code);
        RunResult h = run_cli(bin, "--help", dir);
        CHECK_MSG(h.code == 0, "--help should exit 0, got " << h.code);
        CHECK_MSG(contains(h.out, "estimate"), "--help lists subcommands");
    }

    // generate a 3-blob dataset, then estimate on it
    fs::path blobs = dir / "blobs3.csv";
    {
        RunResult g = run_cli(bin,
                              "generate --blobs 3 --per-cluster 60 --spread 0.4 "
                              "--separation 8 --seed 5 --out " + blobs.string(),
                              dir);
        CHECK_MSG(g.code == 0, "generate should exit 0, got " << g.code);
        CHECK_MSG(g.out.empty(), "generate keeps stdout clean");
        CHECK_MSG(fs::exists(blobs), "generate writes the CSV");
        CHECK_MSG(count_lines(slurp(blobs)) == 181, "header plus 180 rows");

        RunResult e = run_cli(bin,
                              "estimate --input " + blobs.string() +
                              " --label-col label --seed 7",
                              dir);
        CHECK_MSG(e.code == 0, "estimate should exit 0, got " << e.code
                      << " stderr: " << e.err);
        CHECK_MSG(contains(e.out, "K* = 3"), "estimate finds 3 blobs, got: "
                      << e.out);
    }

    // generate determinism: same seed, byte-identical file
    {
        fs::path again = dir / "blobs3_again.csv";
        run_cli(bin,
                "generate --blobs 3 --per-cluster 60 --spread 0.4 "
                "--separation 8 --seed 5 --out " + again.string(),
                dir);
        CHECK_MSG(slurp(blobs) == slurp(again), "same seed, same file bytes");
    }

    // invalid k range exits 1 with a diagnostic on stderr
    {
        RunResult r = run_cli(bin,
                              "estimate --input " + blobs.string() +
                              " --k-min 5 --k-max 3",
                              dir);
        CHECK_MSG(r.code == 1, "bad k range should exit 1, got " << r.code);
        CHECK_MSG(!r.err.empty(), "bad k range reports to stderr");
        CHECK_MSG(r.out.empty(), "bad k range keeps stdout clean");
    }

    // missing input file
    {
        RunResult r = run_cli(bin, "estimate --input " + dir.string() +
                                       "/missing.csv", dir);
        CHECK_MSG(r.code == 1, "missing input should exit 1, got " << r.code);
    }

    // degenerate data: identical points exit 2
    {
        fs::path degenerate = dir / "degenerate.csv";
        std::ofstream out(degenerate);
        for (int i = 0; i < 10; ++i)
            out << "1.5,2.5\n";
        out.close();
        RunResult r = run_cli(bin, "estimate --input " + degenerate.string(),
                              dir);
        CHECK_MSG(r.code == 2, "identical points should exit 2, got " << r.code);
    }

    // curve export has one row per candidate k
    {
        fs::path curve = dir / "curve.csv";
        RunResult r = run_cli(bin,
                              "estimate --input " + blobs.string() +
                              " --label-col label --k-min 2 --k-max 8 "
                              "--seed 1 --emit-curve " + curve.string(),
                              dir);
        CHECK_MSG(r.code == 0, "curve run should exit 0, got " << r.code);
        std::string text = slurp(curve);
        CHECK_MSG(text.rfind("k,loss\n", 0) == 0, "curve header");
        CHECK_MSG(count_lines(text) == 8, "7 candidate rows plus header, got "
                      << count_lines(text));
    }

    // trials: one trial has a 0-or-1 accuracy; unlabeled data has none
    {
        RunResult r = run_cli(bin,
                              "trials --input " + blobs.string() +
                              " --label-col label --trials 1 --seed 3",
                              dir);
        CHECK_MSG(r.code == 0, "trials should exit 0, got " << r.code);
        CHECK_MSG(contains(r.out, "NC = "), "trials print NC");
        CHECK_MSG(contains(r.out, "ACC = 0") || contains(r.out, "ACC = 1"),
                  "single trial accuracy is 0 or 1, got: " << r.out);

        RunResult u = run_cli(bin,
                              "trials --input " + blobs.string() +
                              " --trials 1 --seed 3",
                              dir);
        CHECK_MSG(contains(u.out, "ACC = unavailable"),
                  "accuracy needs labels, got: " << u.out);
    }

    // boundary: header-only at --top 0, full csv export via --out
    {
        fs::path scores = dir / "scores.csv";
        RunResult r = run_cli(bin,
                              "boundary --input " + blobs.string() +
                              " --label-col label --top 0 --out " +
                              scores.string(),
                              dir);
        CHECK_MSG(r.code == 0, "boundary should exit 0, got " << r.code);
        CHECK_MSG(r.out == "rank,original_index,phi\n",
                  "--top 0 prints the header only, got: " << r.out);
        CHECK_MSG(count_lines(slurp(scores)) == 181,
                  "score csv covers all 180 points");

        RunResult t = run_cli(bin,
                              "boundary --input " + blobs.string() +
                              " --label-col label --top 5",
                              dir);
        CHECK_MSG(count_lines(t.out) == 6, "--top 5 prints 5 rows");
    }

    // noise scenario carries -1 labels
    {
        fs::path noisy = dir / "noise30.csv";
        RunResult r = run_cli(bin,
                              "generate --scenario noise-30 --seed 2 --out " +
                              noisy.string(),
                              dir);
        CHECK_MSG(r.code == 0, "scenario generate should exit 0, got "
                      << r.code);
        CHECK_MSG(contains(slurp(noisy), ",-1\n"), "noise rows are labeled -1");

        RunResult bad = run_cli(bin,
                                "generate --scenario noise-35 --seed 2 --out " +
                                (dir / "bad.csv").string(),
                                dir);
        CHECK_MSG(bad.code == 1, "unknown scenario level exits 1, got "
                      << bad.code);
    }

    // report JSON is byte-stable modulo timings
    {
        fs::path report = dir / "report.json";
        RunResult a = run_cli(bin,
                              "estimate --input " + blobs.string() +
                              " --label-col label --seed 11 --out " +
                              report.string(),
                              dir);
        CHECK_MSG(a.code == 0, "estimate with --out should exit 0");
        std::string first = slurp(report);
        RunResult b = run_cli(bin,
                              "estimate --input " + blobs.string() +
                              " --label-col label --seed 11 --out " +
                              report.string(),
                              dir);
        std::string second = slurp(report);

        auto ja = nlohmann::ordered_json::parse(first);
        auto jb = nlohmann::ordered_json::parse(second);
        CHECK_MSG(ja.contains("timings"), "report carries timings");
        CHECK_MSG(ja.contains("manifest"), "report carries a manifest");
        CHECK_MSG(ja["manifest"]["input"]["fnv1a64"] ==
                      jb["manifest"]["input"]["fnv1a64"],
                  "fingerprint is stable");
        ja.erase("timings");
        jb.erase("timings");
        CHECK_MSG(ja.dump() == jb.dump(), "reports agree modulo timings");
    }

    if (failures == 0) {
        std::cout << "all cli checks passed\n";
        return 0;
    }
    std::cerr << failures << " cli check(s) failed\n";
    return 1;
}

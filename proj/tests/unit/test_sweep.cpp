#include "cnmbi/errors.hpp"
#include "cnmbi/generators.hpp"
#include "cnmbi/sweep.hpp"

#include <doctest.h>

#include <cmath>

using namespace cnmbi;

TEST_CASE("well-separated blobs land on the true k") {
    Dataset data = generate_blobs(3, 100, 4, 0.5, 6.0, 1);
    SweepConfig cfg;
    cfg.seed = 1;
    SweepReport report = estimate(data, cfg);

    CHECK(report.k_star == 3);
    CHECK(report.n == 300);
    CHECK(report.core_n == 270); // 10% trimmed
    CHECK(report.resolved_k_max == 17);
    CHECK(report.k_max_was_auto);
    REQUIRE(report.entries.size() == 16);
    for (const SweepEntry& entry : report.entries) {
        REQUIRE(!entry.skipped);
        CHECK(entry.loss >= report.k_star_loss);
        CHECK(entry.pairs.size() == entry.k);
    }
}

TEST_CASE("planar three-blob case separates the candidate losses") {
    Dataset data = generate_blobs(3, 100, 2, 0.5, 6.0, 1);
    SweepConfig cfg;
    cfg.seed = 1;
    SweepReport report = estimate(data, cfg);

    CHECK(report.k_star == 3);
    double l2 = 0.0, l3 = 0.0, l5 = 0.0;
    for (const SweepEntry& entry : report.entries) {
        if (entry.k == 2) l2 = entry.loss;
        if (entry.k == 3) l3 = entry.loss;
        if (entry.k == 5) l5 = entry.loss;
    }
    CHECK(l3 < l2);
    CHECK(l3 < l5);
}

TEST_CASE("estimate is deterministic for a fixed seed") {
    Dataset data = generate_blobs(3, 30, 2, 0.5, 7.0, 33);
    SweepConfig cfg;
    cfg.seed = 11;
    SweepReport a = estimate(data, cfg);
    SweepReport b = estimate(data, cfg);
    REQUIRE(a.entries.size() == b.entries.size());
    CHECK(a.k_star == b.k_star);
    CHECK(a.k_star_loss == b.k_star_loss);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].loss == b.entries[i].loss);
        CHECK(a.entries[i].skipped.has_value() ==
              b.entries[i].skipped.has_value());
    }
    CHECK(a.boundary.kept_indices == b.boundary.kept_indices);
}

TEST_CASE("no-filter mode keeps every point") {
    Dataset data = generate_blobs(2, 30, 2, 0.5, 7.0, 2);
    SweepConfig cfg;
    cfg.filtering_enabled = false;
    SweepReport report = estimate(data, cfg);
    CHECK(!report.filtering_applied);
    CHECK(report.core_n == report.n);
    CHECK(report.boundary.kept_indices.size() == report.n);
}

TEST_CASE("mean-vs-mean mode completes with a full report") {
    Dataset data = generate_blobs(3, 30, 2, 0.5, 7.0, 6);
    SweepConfig cfg;
    cfg.mean_vs_mean = true;
    cfg.seed = 4;
    SweepReport report = estimate(data, cfg);
    CHECK(report.k_star >= 2);
    for (const SweepEntry& entry : report.entries)
        if (!entry.skipped)
            CHECK(std::isfinite(entry.loss));
}

TEST_CASE("infeasible k values are skipped, not fatal") {
    // 3 distinct locations, each duplicated 4 times
    Dataset dup;
    dup.n = 12;
    dup.d = 1;
    for (int rep = 0; rep < 4; ++rep)
        for (int v = 0; v < 3; ++v)
            dup.points.push_back(static_cast<double>(v) * 5.0);
    SweepConfig dcfg;
    dcfg.filtering_enabled = false;
    dcfg.k_min = 2;
    dcfg.k_max = 5;
    SweepReport dreport = estimate(dup, dcfg);
    REQUIRE(dreport.entries.size() == 4);
    CHECK(!dreport.entries[0].skipped);              // k=2 feasible
    CHECK(!dreport.entries[1].skipped);              // k=3 feasible
    CHECK(dreport.entries[2].skipped.has_value());   // k=4 > 3 distinct
    CHECK(dreport.entries[3].skipped.has_value());   // k=5
    CHECK(dreport.k_star <= 3);
}

TEST_CASE("configuration validation") {
    Dataset data = generate_blobs(2, 20, 2, 0.5, 7.0, 1);
    SweepConfig bad;
    bad.k_min = 5;
    bad.k_max = 3;
    CHECK_THROWS_AS(estimate(data, bad), ConfigError);

    SweepConfig huge;
    huge.k_max = 1000;
    CHECK_THROWS_AS(estimate(data, huge), ConfigError);

    SweepConfig lam;
    lam.lambda = 1.0;
    CHECK_THROWS_AS(estimate(data, lam), ConfigError);

    SweepConfig dc;
    dc.dc_percentile = 0.0;
    CHECK_THROWS_AS(estimate(data, dc), ConfigError);

    Dataset tiny;
    tiny.n = 3;
    tiny.d = 1;
    tiny.points = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(estimate(tiny, SweepConfig{}), DegenerateDataError);
}

TEST_CASE("trials aggregate the modal estimate") {
    Dataset data = generate_blobs(3, 100, 4, 0.5, 6.0, 14);
    SweepConfig cfg;
    cfg.seed = 100;
    TrialsResult result = run_trials(data, cfg, 5);
    REQUIRE(result.k_stars.size() == 5);
    REQUIRE(result.seeds.size() == 5);
    CHECK(result.nc == 3);
    REQUIRE(result.acc.has_value());
    CHECK(*result.acc == 1.0);

    Dataset unlabeled = data;
    unlabeled.labels.reset();
    unlabeled.true_k.reset();
    TrialsResult anon = run_trials(unlabeled, cfg, 3);
    CHECK(anon.nc == 3);
    CHECK(!anon.acc.has_value());

    CHECK_THROWS_AS(run_trials(data, cfg, 0), ConfigError);
}

TEST_CASE("trial seeds differ across trials") {
    Dataset data = generate_blobs(2, 25, 2, 0.5, 7.0, 3);
    SweepConfig cfg;
    cfg.seed = 9;
    TrialsResult result = run_trials(data, cfg, 4);
    for (std::size_t a = 0; a < result.seeds.size(); ++a)
        for (std::size_t b = a + 1; b < result.seeds.size(); ++b)
            CHECK(result.seeds[a] != result.seeds[b]);
}

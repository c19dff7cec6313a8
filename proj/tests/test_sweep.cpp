#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <numbers>
#include <vector>

#include "qwalk/sweep.hpp"

using namespace qwalk;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("parallel_for visits every index exactly once", "[sweep]") {
    std::vector<int> hits(101, 0);
    parallel_for(101, 4, [&](int i) { hits[i] += 1; });
    for (int h : hits) REQUIRE(h == 1);
}

TEST_CASE("parallel_for propagates worker exceptions", "[sweep]") {
    REQUIRE_THROWS_AS(parallel_for(50, 3,
                                   [](int i) {
                                       if (i == 37)
                                           throw std::invalid_argument("boom");
                                   }),
                      std::invalid_argument);
}

TEST_CASE("sweep axis endpoints are exact", "[sweep]") {
    const SweepAxis axis{"gamma", 0.0, 2 * pi, 15};
    REQUIRE(axis.value(0) == 0.0);
    REQUIRE(axis.value(14) == 2 * pi);
    REQUIRE_THROWS_AS(SweepAxis("gamma", 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("sweep grid fills and checks axis names", "[sweep]") {
    const SweepGrid bloch{SweepMode::bloch,
                          SweepAxis{"", 0.0, pi, 3},
                          SweepAxis{"", 0.0, 2 * pi, 4}};
    REQUIRE(bloch.axis1.name == "gamma");
    REQUIRE(bloch.axis2.name == "phi");
    REQUIRE(bloch.size() == 12);

    const SweepGrid plane{SweepMode::q0_plane,
                          SweepAxis{"", -0.01, 0.01, 2},
                          SweepAxis{"", -0.01, 0.01, 2}};
    REQUIRE(plane.axis1.name == "mu");
    REQUIRE(plane.axis2.name == "nu");

    REQUIRE_THROWS_AS(SweepGrid(SweepMode::q0_plane,
                                SweepAxis{"gamma", 0.0, 1.0, 2},
                                SweepAxis{"nu", 0.0, 1.0, 2}),
                      std::invalid_argument);
}

TEST_CASE("interference-plane sweep is row-major with axis1 outermost",
          "[sweep]") {
    const SweepGrid grid{SweepMode::q0_plane,
                         SweepAxis{"mu", -0.01, 0.01, 2},
                         SweepAxis{"nu", -0.01, 0.01, 2}};
    const std::vector<RunRecord> records = run_sweep(grid);
    REQUIRE(records.size() == 4);
    REQUIRE(records[0].mu == -0.01);
    REQUIRE(records[0].nu == -0.01);
    REQUIRE(records[1].mu == -0.01);
    REQUIRE(records[1].nu == 0.01);
    REQUIRE(records[2].mu == 0.01);
    REQUIRE(records[2].nu == -0.01);
    REQUIRE(records[3].mu == 0.01);
    REQUIRE(records[3].nu == 0.01);

    for (const RunRecord& rec : records) {
        REQUIRE_FALSE(rec.skipped);
        REQUIRE(rec.dS_exact > 0.0);
        REQUIRE(std::isnan(rec.gamma));
        REQUIRE(std::isnan(rec.est_pi_L));
        REQUIRE(rec.t1 == 0);
        REQUIRE(rec.horizon == 0);
        // The stored gap is exactly the bound minus the exact entropy.
        REQUIRE(rec.gap_exact == rec.S2_bound - rec.S_rho2c);
    }
}

TEST_CASE("points outside the reachable disk are marked, not dropped",
          "[sweep]") {
    const SweepGrid grid{SweepMode::q0_plane,
                         SweepAxis{"mu", 0.1, 0.25, 2},
                         SweepAxis{"nu", 0.1, 0.25, 2}};
    const std::vector<RunRecord> records = run_sweep(grid);
    REQUIRE(records.size() == 4);
    REQUIRE_FALSE(records[0].skipped);
    REQUIRE(records[0].dS_exact > 0.0);
    for (int i : {1, 2, 3}) {
        REQUIRE(records[i].skipped);
        REQUIRE(std::isnan(records[i].dS_exact));
        REQUIRE_FALSE(std::isnan(records[i].mu));
    }
}

TEST_CASE("Bloch sweep carries angles and optionally a tail estimate",
          "[sweep]") {
    const SweepGrid grid{SweepMode::bloch,
                         SweepAxis{"gamma", 0.0, pi, 3},
                         SweepAxis{"phi", 0.0, 2 * pi, 3}};
    SECTION("closed form only") {
        const std::vector<RunRecord> records = run_sweep(grid);
        REQUIRE(records.size() == 9);
        REQUIRE(records[0].gamma == 0.0);
        REQUIRE(records[8].gamma == pi);
        REQUIRE(records[8].phi == 2 * pi);
        for (const RunRecord& rec : records) {
            REQUIRE(std::isnan(rec.est_pi_L));
            REQUIRE_FALSE(rec.skipped);
            REQUIRE(rec.rho1c_pi_L >= 0.0);
            REQUIRE(rec.rho1c_pi_L <= 1.0);
        }
    }
    SECTION("with simulation") {
        SweepFixed fixed;
        fixed.simulate = true;
        fixed.horizon = 150;
        const std::vector<RunRecord> records = run_sweep(grid, fixed);
        for (const RunRecord& rec : records) {
            REQUIRE(rec.horizon == 150);
            REQUIRE_FALSE(std::isnan(rec.est_pi_L));
            REQUIRE_THAT(rec.est_pi_L, WithinAbs(rec.rho1c_pi_L, 0.05));
        }
    }
}

TEST_CASE("sweep rejects inconsistent requests", "[sweep]") {
    const SweepGrid plane{SweepMode::q0_plane,
                          SweepAxis{"mu", -0.01, 0.01, 2},
                          SweepAxis{"nu", -0.01, 0.01, 2}};
    SweepFixed simulate;
    simulate.simulate = true;
    REQUIRE_THROWS_AS(run_sweep(plane, simulate), std::invalid_argument);

    SweepFixed tilted;
    tilted.coin = CoinAngle{0.6};
    REQUIRE_THROWS_AS(run_sweep(plane, tilted), std::domain_error);
}

TEST_CASE("thread count does not change sweep bytes", "[sweep]") {
    const SweepGrid grid{SweepMode::q0_plane,
                         SweepAxis{"mu", -0.02, 0.02, 6},
                         SweepAxis{"nu", -0.02, 0.02, 6}};
    SweepFixed one;
    one.threads = 1;
    SweepFixed three;
    three.threads = 3;
    REQUIRE(to_csv(run_sweep(grid, one), runrecord_schema) ==
            to_csv(run_sweep(grid, three), runrecord_schema));
}

TEST_CASE("entropy-change curve is uniform in mu^2 and anchored at zero",
          "[sweep]") {
    const std::vector<Figure1Row> rows = figure1_rows(5);
    REQUIRE(rows.size() == 5);
    REQUIRE(rows[0].mu2 == 0.0);
    REQUIRE(rows[1].mu2 == 0.01);
    REQUIRE(rows[4].mu2 == 0.04);
    REQUIRE(rows[0].dS_exact == 0.0);
    REQUIRE_THAT(rows[0].gap_exact, WithinAbs(branch_entropy(), 1e-12));
    for (int i = 1; i < 5; ++i) {
        REQUIRE(rows[i].mu2 > rows[i - 1].mu2);
        REQUIRE(rows[i].dS_exact > rows[i - 1].dS_exact);
    }
    REQUIRE_THROWS_AS(figure1_rows(1), std::invalid_argument);
}

TEST_CASE("entropy-production grid covers the square and marks the rim",
          "[sweep]") {
    const std::vector<Figure2Row> rows = figure2_rows(10);
    REQUIRE(rows.size() == 100);
    REQUIRE(rows.front().mu == -q0_reach_radius);
    REQUIRE(rows.front().nu == -q0_reach_radius);
    REQUIRE(rows.front().skipped);
    REQUIRE(std::isnan(rows.front().dS_exact));

    int skipped = 0;
    for (const Figure2Row& row : rows) {
        if (row.skipped) {
            ++skipped;
            continue;
        }
        REQUIRE(row.dS_exact >= 0.0);
        REQUIRE(row.J1 >= row.dS_exact - 1e-15);
        REQUIRE(row.J2_exact >= -1e-15);
    }
    // 10 points per side put 40 of the 100 square nodes outside the disk.
    REQUIRE(skipped == 40);
}

TEST_CASE("protocol run packs inputs, estimate, closed form, and the "
          "optional brute-force block",
          "[sweep]") {
    const BlochAngles bloch{pi / 3, 0.9};
    ProtocolParams params;
    params.t1 = 8;
    params.horizon = 120;

    SECTION("without the oracle block") {
        const RunRecord rec = run_protocol(bloch, CoinAngle{}, params);
        REQUIRE(rec.gamma == bloch.gamma);
        REQUIRE(rec.phi == bloch.phi);
        REQUIRE(rec.t1 == 8);
        REQUIRE(rec.horizon == 120);
        REQUIRE(rec.epsilon == 1.0);
        REQUIRE_FALSE(std::isnan(rec.est_pi_L));
        REQUIRE(std::isnan(rec.rho2c_bf_pi_L));
        REQUIRE(rec.T1_kind == "finite");
        REQUIRE(rec.first_law_ok);
    }
    SECTION("with the oracle block") {
        params.oracle = true;
        const RunRecord rec = run_protocol(bloch, CoinAngle{}, params);
        REQUIRE_FALSE(std::isnan(rec.rho2c_bf_pi_L));
        REQUIRE(rec.rho2c_bf_pi_L >= 0.0);
        REQUIRE(rec.rho2c_bf_pi_L <= 1.0);
        REQUIRE_THAT(rec.rho2c_bf_pi_L + rec.rho2c_bf_pi_R,
                     WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(rec.rho2c_bf_pi_L, WithinAbs(rec.rho2c_pi_L, 0.15));
    }
}

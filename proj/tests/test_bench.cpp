// SPDX-License-Identifier: Apache-2.0
//
// anfdoa - multi-transmitter separation and DoA estimation with adaptive notch filters
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch.hpp>

#include <random>
#include <sstream>

#include "anfdoa/bench.hpp"
#include "anfdoa/report.hpp"
#include "oracles.hpp"

using namespace anfdoa;

namespace
{

// Single far transmitter in a huge reflection-free room: the pipeline should
// be exact to the grid step.
ScenarioConfig clean_single_tx(double theta_deg)
{
    ScenarioConfig cfg = default_two_tx_config();
    cfg.scene.room.dims = {400.0, 400.0, 50.0};
    cfg.scene.room.refl_min = 0.0;
    cfg.scene.room.refl_max = 0.0;
    cfg.scene.rx_center = {200.0, 100.0, 10.0};
    cfg.scene.noise_sigma = 0.0;

    Transmitter tx;
    const double s = std::sin(deg2rad(theta_deg));
    const double c = std::cos(deg2rad(theta_deg));
    tx.pos = cfg.scene.rx_center + Vec3{s, c, 0.0} * 150.0;
    tx.kind = WaveformKind::tone;
    tx.f0_hz = 0.5e6;
    tx.power = 30.0; // received amplitude 0.2 at 150 m
    tx.orient = Vec3{-s, -c, 0.0};
    cfg.scene.txs = {tx};
    return cfg;
}

std::vector<TxTruth> truth_with_centers(std::initializer_list<double> centers)
{
    std::vector<TxTruth> t;
    for (double c : centers)
        t.push_back({0.0, c, c});
    return t;
}

std::string trials_csv_string(const McResult &result)
{
    const std::string path = "bench_test_tmp.csv";
    write_trials_csv(path, result);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(path.c_str());
    return ss.str();
}

} // namespace

TEST_CASE("rmse arithmetic", "[bench]")
{
    const std::vector<double> exact{5.0, 5.0, 5.0};
    CHECK(rmse(exact, 5.0) == 0.0);

    const std::vector<double> two{3.0, -4.0};
    CHECK(rmse(two, 0.0) == Approx(std::sqrt(12.5)).margin(1e-12));

    const std::vector<double> one{-2.5};
    CHECK(rmse(one, 0.0) == Approx(2.5));

    CHECK_THROWS_AS(rmse(std::vector<double>{}, 0.0), std::invalid_argument);
}

TEST_CASE("association maps medians to band centers", "[bench]")
{
    const std::vector<double> medians{-1.6e6, 1.1e6};
    const std::vector<TxTruth> truth = truth_with_centers({-1.6e6, 1.1e6});
    CHECK(associate_estimates(medians, truth) == std::vector<std::size_t>{0, 1});

    const std::vector<double> swapped{1.1e6, -1.6e6};
    CHECK(associate_estimates(swapped, truth) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("association matches an independent brute-force solver", "[bench]")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-2e6, 2e6);
    for (int trial = 0; trial < 200; trial++)
    {
        const std::size_t s = 2 + trial % 3; // 2..4 stages
        std::vector<double> medians(s), centers(s);
        for (double &v : medians)
            v = u(rng);
        for (double &v : centers)
            v = u(rng);
        std::vector<TxTruth> truth;
        for (double c : centers)
            truth.push_back({0.0, c, c});

        const std::vector<std::size_t> got = associate_estimates(medians, truth);
        const std::vector<std::size_t> want = oracles::brute_force_assignment(medians, centers);

        // same cost; the mapping itself may differ only on exact ties
        double got_cost = 0.0, want_cost = 0.0;
        for (std::size_t tx = 0; tx < s; tx++)
        {
            got_cost += std::abs(medians[got[tx]] - centers[tx]);
            want_cost += std::abs(medians[want[tx]] - centers[tx]);
        }
        REQUIRE(got_cost == Approx(want_cost).margin(1e-9));

        // bijection
        std::vector<bool> used(s, false);
        for (std::size_t stage : got)
        {
            REQUIRE_FALSE(used[stage]);
            used[stage] = true;
        }
    }
}

TEST_CASE("association tie breaks by stage index", "[bench]")
{
    const std::vector<double> medians{1e6, 1e6};
    const std::vector<TxTruth> truth = truth_with_centers({1e6, 1e6});
    CHECK(associate_estimates(medians, truth) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("clean single-transmitter scenario is grid-exact", "[bench]")
{
    const ScenarioConfig cfg = clean_single_tx(24.0);
    const McResult mc = run_monte_carlo(cfg, 3, 100);
    CHECK(mc.summary.failures == 0);
    CHECK(mc.summary.rmse_anf[0] <= cfg.array.grid_step_deg);
    CHECK(mc.summary.rmse_oracle[0] <= cfg.array.grid_step_deg);
}

TEST_CASE("three-element array runs through the generic covariance path", "[bench]")
{
    ScenarioConfig cfg = clean_single_tx(18.0);
    cfg.scene.channels = 3;
    cfg.array.elements = 3;
    cfg.scene.noise_sigma = 0.05;
    const McResult mc = run_monte_carlo(cfg, 5, 11);
    CHECK(mc.summary.failures == 0);
    CHECK(mc.summary.rmse_anf[0] <= cfg.array.grid_step_deg);
}

TEST_CASE("oracle never loses to the cascade on the clean scenario", "[bench]")
{
    ScenarioConfig cfg = clean_single_tx(-35.0);
    cfg.scene.noise_sigma = 0.05;
    const McResult mc = run_monte_carlo(cfg, 20, 7);
    CHECK(mc.summary.rmse_oracle[0] <= mc.summary.rmse_anf[0] + 1e-9);
}

TEST_CASE("monte carlo is reproducible trial by trial", "[bench]")
{
    ScenarioConfig cfg = default_two_tx_config();
    const McResult a = run_monte_carlo(cfg, 3, 42);
    const McResult b = run_monte_carlo(cfg, 3, 42);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); i++)
        for (std::size_t tx = 0; tx < a.trials[i].per_tx.size(); tx++)
        {
            CHECK(a.trials[i].per_tx[tx].theta_anf == b.trials[i].per_tx[tx].theta_anf);
            CHECK(a.trials[i].per_tx[tx].theta_oracle == b.trials[i].per_tx[tx].theta_oracle);
        }
    CHECK(trials_csv_string(a) == trials_csv_string(b));
}

TEST_CASE("oracle estimate shares the trial realization", "[bench]")
{
    const ScenarioConfig cfg = default_two_tx_config();
    const std::vector<double> a = oracle_estimate(cfg.scene, cfg.array, 0, 9);
    const std::vector<double> b = oracle_estimate(cfg.scene, cfg.array, 0, 9);
    CHECK(a == b);
    REQUIRE(a.size() == 2);

    // matches what run_monte_carlo records for the same seed
    const McResult mc = run_monte_carlo(cfg, 1, 9);
    for (std::size_t tx = 0; tx < 2; tx++)
        CHECK(mc.trials[0].per_tx[tx].theta_oracle == a[tx]);
}

TEST_CASE("boundary sweep validates the retuned tone", "[bench]")
{
    const ScenarioConfig cfg = default_two_tx_config();
    // -3000 kHz below the 0.8 MHz edge lands at -2.2 MHz, outside Nyquist
    const std::vector<double> bad{-3000.0};
    CHECK_THROWS_AS(boundary_sweep(cfg, bad, false, 1, 1), std::invalid_argument);

    CHECK_THROWS_AS(boundary_sweep(cfg, std::vector<double>{50.0}, false, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(boundary_sweep(cfg, std::vector<double>{}, false, 1, 1), std::invalid_argument);
}

TEST_CASE("boundary sweep degrades as the tone approaches the chirp", "[bench]")
{
    // full-grid trend on the shipped boundary scenario: Tx0 RMSE is
    // non-decreasing within a 20% slack per step as |delta_f| shrinks
    const ScenarioConfig cfg = load_scenario(std::string(ANFDOA_CONFIG_DIR) + "/boundary.json");
    const std::vector<SweepRow> rows =
        boundary_sweep(cfg, cfg.mc.sweep_delta_khz, cfg.mc.sweep_include_overlap, 400, 1);
    REQUIRE(rows.size() >= 3);
    for (std::size_t i = 0; i + 1 < rows.size(); i++)
    {
        INFO("step " << i << ": " << rows[i].tx0_rmse_deg << " -> " << rows[i + 1].tx0_rmse_deg);
        CHECK(rows[i + 1].tx0_rmse_deg >= 0.8 * rows[i].tx0_rmse_deg);
    }
}

TEST_CASE("boundary sweep rows stay sorted with overlap last", "[bench]")
{
    const ScenarioConfig cfg = default_two_tx_config();
    const std::vector<double> deltas{-900.0, -2500.0};
    const std::vector<SweepRow> rows = boundary_sweep(cfg, deltas, true, 2, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].delta_f_khz == -2500.0);
    CHECK(rows[1].delta_f_khz == -900.0);
    CHECK(rows[2].overlap);
    for (const SweepRow &row : rows)
    {
        CHECK(row.tx0_rmse_deg >= 0.0);
        CHECK(row.trials == 2);
    }
}

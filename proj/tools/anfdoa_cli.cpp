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

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "anfdoa/anfdoa.hpp"

namespace fs = std::filesystem;
using namespace anfdoa;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_runtime = 2;

void export_first_trial(const fs::path &out_dir, const McResult &result)
{
    const Snapshot &x = result.first_trial.snapshot;
    const SnapshotEstimate &est = result.first_trial.estimate;
    if (x.channels() == 0)
        return; // first trial failed, nothing to plot

    write_psd_csv((out_dir / "psd_raw.csv").string(), periodogram(x.row(0), x.sample_rate_hz()));
    for (std::size_t s = 0; s < est.isolated.size(); s++)
    {
        write_psd_csv((out_dir / ("psd_ch" + std::to_string(s) + ".csv")).string(),
                      periodogram(est.isolated[s].row(0), x.sample_rate_hz()));
        write_capon_csv((out_dir / ("capon_ch" + std::to_string(s) + ".csv")).string(), est.spectra[s]);
    }
    write_cf32((out_dir / "snapshot0.cf32").string(), x);
}

int cmd_simulate(const std::string &config_path, const std::string &out_dir, long trials_override,
                 long seed_override)
{
    ScenarioConfig cfg = config_path.empty() ? default_two_tx_config() : load_scenario(config_path);
    const std::size_t trials = trials_override >= 0 ? static_cast<std::size_t>(trials_override) : cfg.mc.trials;
    const std::uint64_t seed = seed_override >= 0 ? static_cast<std::uint64_t>(seed_override) : cfg.mc.base_seed;

    fs::create_directories(out_dir);
    const McResult result = run_monte_carlo(cfg, trials, seed);

    write_trials_csv((fs::path(out_dir) / "results.csv").string(), result);
    write_summary_json((fs::path(out_dir) / "summary.json").string(), result, scenario_to_json(cfg), seed);
    export_first_trial(out_dir, result);

    for (std::size_t tx = 0; tx < result.summary.rmse_anf.size(); tx++)
        std::cout << "tx" << tx << ": rmse_anf=" << fmt_double(result.summary.rmse_anf[tx])
                  << " deg, rmse_oracle=" << fmt_double(result.summary.rmse_oracle[tx]) << " deg\n";
    if (result.summary.failures > 0)
        std::cout << result.summary.failures << " of " << trials << " trials failed\n";
    return exit_ok;
}

int cmd_sweep(const std::string &config_path, const std::string &out_dir, long trials_override,
              long seed_override)
{
    ScenarioConfig cfg = config_path.empty() ? default_two_tx_config() : load_scenario(config_path);
    const std::size_t trials = trials_override >= 0 ? static_cast<std::size_t>(trials_override) : cfg.mc.trials;
    const std::uint64_t seed = seed_override >= 0 ? static_cast<std::uint64_t>(seed_override) : cfg.mc.base_seed;

    fs::create_directories(out_dir);
    const std::vector<SweepRow> rows =
        boundary_sweep(cfg, cfg.mc.sweep_delta_khz, cfg.mc.sweep_include_overlap, trials, seed);
    write_sweep_csv((fs::path(out_dir) / "sweep.csv").string(), rows);

    for (const SweepRow &row : rows)
        std::cout << (row.overlap ? "overlap" : fmt_double(row.delta_f_khz) + " kHz")
                  << ": tx0_rmse=" << fmt_double(row.tx0_rmse_deg)
                  << " deg, tx1_rmse=" << fmt_double(row.tx1_rmse_deg) << " deg\n";
    return exit_ok;
}

int cmd_process_iq(const std::string &recording_path, const std::string &config_path,
                   const std::string &out_dir, double sample_rate_hz, double carrier_hz,
                   std::size_t channels, std::size_t stages)
{
    ScenarioConfig cfg = config_path.empty() ? default_two_tx_config() : load_scenario(config_path);
    PipelineOptions opt = pipeline_options(cfg);
    opt.array.elements = channels;
    if (opt.init_offsets.size() != stages)
        opt.init_offsets.clear(); // fall back to the default spacing for this stage count

    const IqRecording rec = read_cf32(recording_path, channels, sample_rate_hz, carrier_hz);
    const std::vector<Snapshot> snaps = segment_snapshots(rec, cfg.scene.samples);
    if (snaps.empty())
        throw std::runtime_error("recording shorter than one " + std::to_string(cfg.scene.samples) +
                                 "-sample snapshot");

    fs::create_directories(out_dir);
    std::ofstream csv = open_out((fs::path(out_dir) / "estimates.csv").string());
    csv << "snapshot,stage,theta_deg,trace_median_hz\n";

    for (std::size_t w = 0; w < snaps.size(); w++)
    {
        const SnapshotEstimate est = estimate_snapshot(snaps[w], stages, opt);
        for (std::size_t s = 0; s < stages; s++)
            csv << w << ',' << s << ',' << fmt_double(est.stages[s].theta_deg) << ','
                << fmt_double(est.stages[s].trace_median_hz) << '\n';
        if (w == 0)
        {
            write_psd_csv((fs::path(out_dir) / "psd_raw.csv").string(),
                          periodogram(snaps[w].row(0), sample_rate_hz));
            for (std::size_t s = 0; s < stages; s++)
            {
                write_psd_csv((fs::path(out_dir) / ("psd_ch" + std::to_string(s) + ".csv")).string(),
                              periodogram(est.isolated[s].row(0), sample_rate_hz));
                write_capon_csv((fs::path(out_dir) / ("capon_ch" + std::to_string(s) + ".csv")).string(),
                                est.spectra[s]);
            }
        }
    }
    std::cout << "processed " << snaps.size() << " snapshot(s), " << stages << " stage(s) each\n";
    return exit_ok;
}

int cmd_schema(const std::string &out_path, bool force)
{
    if (fs::exists(out_path) && !force)
        throw std::runtime_error(out_path + " exists; pass --force to overwrite");
    std::ofstream out = open_out(out_path);
    out << scenario_to_json(default_two_tx_config()).dump(2) << '\n';
    std::cout << "wrote " << out_path << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Adaptive-notch transmitter separation and two-element Capon DoA estimation"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", recording_path, schema_path = "scenario.json";
    long trials = -1, seed = -1;
    double sample_rate_hz = 4e6, carrier_hz = 2e9;
    std::size_t channels = 2, stages = 2;
    bool force = false;

    CLI::App *sim = app.add_subcommand("simulate", "Monte Carlo run of a scenario");
    sim->add_option("--config", config_path, "scenario JSON (defaults to the built-in two-tx scenario)");
    sim->add_option("--trials", trials, "override the config's trial count");
    sim->add_option("--seed", seed, "override the config's base seed");
    sim->add_option("--out", out_dir, "output directory")->capture_default_str();

    CLI::App *sweep = app.add_subcommand("sweep", "boundary analysis over approaching frequencies");
    sweep->add_option("--config", config_path, "scenario JSON with a sweep grid");
    sweep->add_option("--trials", trials, "override the config's trial count per sweep point");
    sweep->add_option("--seed", seed, "override the config's base seed");
    sweep->add_option("--out", out_dir, "output directory")->capture_default_str();

    CLI::App *piq = app.add_subcommand("process-iq", "estimate DoA from a recorded cf32 capture");
    piq->add_option("recording", recording_path, "interleaved cf32 file")->required();
    piq->add_option("--config", config_path, "estimator parameters (ANF/DoA sections)");
    piq->add_option("--fs", sample_rate_hz, "sample rate in Hz")->capture_default_str();
    piq->add_option("--fc", carrier_hz, "carrier frequency in Hz (metadata)")->capture_default_str();
    piq->add_option("--channels", channels, "channel count in the recording")->capture_default_str();
    piq->add_option("--stages", stages, "number of transmitters to separate")->capture_default_str();
    piq->add_option("--out", out_dir, "output directory")->capture_default_str();

    CLI::App *schema = app.add_subcommand("schema", "write an editable scenario file with defaults");
    schema->add_option("--out", schema_path, "where to write the scenario")->capture_default_str();
    schema->add_flag("--force", force, "overwrite an existing file");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (sim->parsed())
            return cmd_simulate(config_path, out_dir, trials, seed);
        if (sweep->parsed())
            return cmd_sweep(config_path, out_dir, trials, seed);
        if (piq->parsed())
            return cmd_process_iq(recording_path, config_path, out_dir, sample_rate_hz, carrier_hz,
                                  channels, stages);
        if (schema->parsed())
            return cmd_schema(schema_path, force);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_usage;
}

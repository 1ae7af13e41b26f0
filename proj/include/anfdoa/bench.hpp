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

#ifndef ANFDOA_BENCH_HPP
#define ANFDOA_BENCH_HPP

#include <numeric>
#include <string>

#include "anfdoa/config.hpp"
#include "anfdoa/pipeline.hpp"
#include "anfdoa/sim.hpp"

namespace anfdoa
{

struct TxTrialRecord
{
    double theta_true = 0.0;
    double theta_anf = 0.0;
    double theta_oracle = 0.0;
    std::size_t stage = 0; // cascade stage this transmitter was associated with
    double trace_median_hz = 0.0;
};

struct TrialResult
{
    std::size_t trial_id = 0;
    std::vector<TxTrialRecord> per_tx;
    bool failed = false;
    std::string error;
};

struct McSummary
{
    std::vector<double> rmse_anf;    // per tx, degrees
    std::vector<double> rmse_oracle; // per tx, degrees
    std::size_t trials = 0;
    std::size_t failures = 0;
};

// Artifacts of the first trial kept for plot export.
struct FirstTrialArtifacts
{
    Snapshot snapshot;
    SnapshotEstimate estimate;
};

struct McResult
{
    std::vector<TrialResult> trials;
    McSummary summary;
    FirstTrialArtifacts first_trial;
};

// sqrt(mean((estimate - truth)^2)) in degrees.
inline double rmse(std::span<const double> estimates_deg, double truth_deg)
{
    if (estimates_deg.empty())
        throw std::invalid_argument("rmse: empty estimate list");
    double acc = 0.0;
    for (double e : estimates_deg)
    {
        const double d = e - truth_deg;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(estimates_deg.size()));
}

// Assignment of cascade stages to transmitters: minimize the total distance
// between each stage's tail-median trace frequency and the true band center,
// exhaustively over permutations (S <= 4 in practice). Returns a[tx] = stage.
// Ties resolve to the lexicographically smallest permutation, i.e. by stage
// index.
inline std::vector<std::size_t> associate_estimates(std::span<const double> stage_medians_hz,
                                                    std::span<const TxTruth> truth)
{
    const std::size_t s = stage_medians_hz.size();
    if (s != truth.size() || s == 0)
        throw std::invalid_argument("associate_estimates: stage count must equal transmitter count");

    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do
    {
        double cost = 0.0;
        for (std::size_t tx = 0; tx < s; tx++)
            cost += std::abs(stage_medians_hz[perm[tx]] - truth[tx].band_center_hz());
        if (cost < best_cost)
        {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Pipeline options implied by a scenario config.
inline PipelineOptions pipeline_options(const ScenarioConfig &cfg)
{
    PipelineOptions opt;
    opt.notch = cfg.notch;
    opt.array = cfg.array;
    opt.array.elements = cfg.scene.channels;
    opt.init_offsets = cfg.init_offsets;
    opt.isolation_pole_radius = cfg.isolation_pole_radius.value_or(-1.0);
    opt.capon_warmup_samples = cfg.capon_warmup_samples;
    return opt;
}

// Reference estimator that is handed each transmitter's contribution in
// perfect isolation: same propagation, same noise realization, no cascade.
inline std::vector<double> oracle_estimate(const Scene &scene, const ArrayConfig &array,
                                           std::size_t capon_warmup, std::uint64_t seed)
{
    const SceneComponents parts = synth_components(scene, seed);
    std::vector<double> thetas;
    thetas.reserve(parts.per_tx.size());
    for (const Snapshot &contrib : parts.per_tx)
    {
        Snapshot isolated(scene.channels, scene.samples, scene.sample_rate_hz);
        for (std::size_t k = 0; k < isolated.channels(); k++)
            for (std::size_t i = 0; i < isolated.samples(); i++)
                isolated.at(k, i) = contrib.at(k, i) + parts.noise.at(k, i);
        const CovMatrix cov = windowed_cov(isolated, array.loading_rel, capon_warmup);
        thetas.push_back(peak_angle(capon_spectrum(cov, array)));
    }
    return thetas;
}

// Seeded Monte Carlo over one scenario. Per trial: synthesize, run the
// cascade pipeline with S = transmitter count, associate stages with
// transmitters, and score both the cascade estimates and the paired oracle
// on the identical noise/multipath realization. Trial seeds are
// base_seed + trial_id, so results are reproducible and order-independent.
inline McResult run_monte_carlo(const ScenarioConfig &cfg, std::size_t trials, std::uint64_t base_seed)
{
    if (trials < 1)
        throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    cfg.validate();

    const std::size_t n_tx = cfg.scene.txs.size();
    const PipelineOptions opt = pipeline_options(cfg);

    McResult result;
    result.trials.reserve(trials);
    std::vector<std::vector<double>> err_anf(n_tx), err_oracle(n_tx);

    for (std::size_t trial = 0; trial < trials; trial++)
    {
        TrialResult tr;
        tr.trial_id = trial;
        const std::uint64_t seed = base_seed + trial;
        try
        {
            const SceneComponents parts = synth_components(cfg.scene, seed);
            Snapshot x(cfg.scene.channels, cfg.scene.samples, cfg.scene.sample_rate_hz);
            for (std::size_t k = 0; k < x.channels(); k++)
                for (std::size_t i = 0; i < x.samples(); i++)
                {
                    cxd acc = parts.noise.at(k, i);
                    for (const Snapshot &c : parts.per_tx)
                        acc += c.at(k, i);
                    x.at(k, i) = acc;
                }

            SnapshotEstimate est = estimate_snapshot(x, n_tx, opt);

            std::vector<double> medians(n_tx);
            for (std::size_t s = 0; s < n_tx; s++)
                medians[s] = est.stages[s].trace_median_hz;
            const std::vector<std::size_t> stage_of_tx = associate_estimates(medians, parts.truth);

            for (std::size_t tx = 0; tx < n_tx; tx++)
            {
                TxTrialRecord rec;
                rec.theta_true = parts.truth[tx].theta_deg;
                const std::size_t stage = stage_of_tx[tx];
                rec.stage = stage;
                rec.theta_anf = est.stages[stage].theta_deg;
                rec.trace_median_hz = est.stages[stage].trace_median_hz;

                Snapshot oracle_channel(x.channels(), x.samples(), x.sample_rate_hz());
                for (std::size_t k = 0; k < x.channels(); k++)
                    for (std::size_t i = 0; i < x.samples(); i++)
                        oracle_channel.at(k, i) = parts.per_tx[tx].at(k, i) + parts.noise.at(k, i);
                const CovMatrix cov =
                    windowed_cov(oracle_channel, opt.array.loading_rel, opt.capon_warmup_samples);
                rec.theta_oracle = peak_angle(capon_spectrum(cov, opt.array));

                err_anf[tx].push_back(rec.theta_anf - rec.theta_true);
                err_oracle[tx].push_back(rec.theta_oracle - rec.theta_true);
                tr.per_tx.push_back(rec);
            }

            if (trial == 0)
            {
                result.first_trial.snapshot = x;
                result.first_trial.estimate = std::move(est);
            }
        }
        catch (const std::exception &e)
        {
            tr.failed = true;
            tr.error = e.what();
        }
        result.trials.push_back(std::move(tr));
    }

    result.summary.trials = trials;
    for (const TrialResult &tr : result.trials)
        if (tr.failed)
            result.summary.failures++;
    for (std::size_t tx = 0; tx < n_tx; tx++)
    {
        result.summary.rmse_anf.push_back(err_anf[tx].empty() ? 0.0 : rmse(err_anf[tx], 0.0));
        result.summary.rmse_oracle.push_back(err_oracle[tx].empty() ? 0.0 : rmse(err_oracle[tx], 0.0));
    }
    return result;
}

struct SweepRow
{
    double delta_f_khz = 0.0; // tone offset from the chirp's lower edge (negative), or the
                              // center offset for the overlap row
    bool overlap = false;
    double tx0_rmse_deg = 0.0;
    double tx1_rmse_deg = 0.0;
    std::size_t trials = 0;
};

namespace detail
{

// The boundary scenario keeps Tx1's chirp fixed and retunes the Tx0 tone.
inline ScenarioConfig retuned_scenario(const ScenarioConfig &base, double tone_hz)
{
    if (base.scene.txs.size() != 2)
        throw std::invalid_argument("boundary_sweep: scenario must have exactly 2 transmitters");
    if (base.scene.txs[0].kind != WaveformKind::tone || base.scene.txs[1].kind != WaveformKind::chirp)
        throw std::invalid_argument("boundary_sweep: expects txs[0] tone and txs[1] chirp");
    ScenarioConfig cfg = base;
    cfg.scene.txs[0].f0_hz = tone_hz;
    const double nyquist = cfg.scene.sample_rate_hz / 2.0;
    if (std::abs(tone_hz) > nyquist)
        throw std::invalid_argument("boundary_sweep: retuned tone outside Nyquist");
    return cfg;
}

} // namespace detail

// Table-style boundary analysis: per delta, the Tx0 tone sits at the chirp's
// lower band edge plus delta (delta < 0); the overlap row centers the tone
// inside the chirp band. Rows come out sorted by delta, overlap last.
inline std::vector<SweepRow> boundary_sweep(const ScenarioConfig &base, std::span<const double> delta_khz,
                                            bool include_overlap, std::size_t trials,
                                            std::uint64_t base_seed)
{
    if (delta_khz.empty() && !include_overlap)
        throw std::invalid_argument("boundary_sweep: empty sweep grid");

    std::vector<double> deltas(delta_khz.begin(), delta_khz.end());
    std::sort(deltas.begin(), deltas.end());

    const Transmitter &chirp = base.scene.txs.size() > 1 ? base.scene.txs[1] : base.scene.txs[0];
    const double edge = std::min(chirp.f_start_hz, chirp.f_end_hz);
    const double center = 0.5 * (chirp.f_start_hz + chirp.f_end_hz);

    std::vector<SweepRow> rows;
    for (double dk : deltas)
    {
        if (!(dk < 0.0))
            throw std::invalid_argument("boundary_sweep: deltas must be negative (below the chirp edge)");
        const ScenarioConfig cfg = detail::retuned_scenario(base, edge + dk * 1e3);
        const McResult mc = run_monte_carlo(cfg, trials, base_seed);
        rows.push_back({dk, false, mc.summary.rmse_anf[0], mc.summary.rmse_anf[1], trials});
    }
    if (include_overlap)
    {
        const ScenarioConfig cfg = detail::retuned_scenario(base, center);
        const McResult mc = run_monte_carlo(cfg, trials, base_seed);
        rows.push_back({(center - edge) / 1e3, true, mc.summary.rmse_anf[0], mc.summary.rmse_anf[1], trials});
    }
    return rows;
}

} // namespace anfdoa

#endif

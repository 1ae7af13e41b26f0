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

#ifndef ANFDOA_PIPELINE_HPP
#define ANFDOA_PIPELINE_HPP

#include "anfdoa/doa.hpp"
#include "anfdoa/isolation.hpp"

namespace anfdoa
{

// Estimator knobs shared by the simulator benchmark and the recorded-IQ path.
struct PipelineOptions
{
    NotchParams notch;
    ArrayConfig array;
    std::vector<double> init_offsets;            // empty selects default spacing
    double isolation_pole_radius = -1.0;         // < 0 reuses notch.pole_radius
    std::size_t capon_warmup_samples = 0;        // samples dropped before the covariance
};

struct StageEstimate
{
    double theta_deg = 0.0;
    double trace_median_hz = 0.0; // median of the combined trace over the last quarter
};

struct SnapshotEstimate
{
    std::vector<StageEstimate> stages;
    TraceSet traces;
    std::vector<Snapshot> isolated;      // one per stage
    std::vector<CaponSpectrum> spectra;  // one per stage
};

// Median of the last quarter of a trace (at least one sample).
inline double tail_median(std::span<const double> trace)
{
    if (trace.empty())
        throw std::invalid_argument("tail_median: empty trace");
    const std::size_t tail = std::max<std::size_t>(1, trace.size() / 4);
    std::vector<double> v(trace.end() - static_cast<std::ptrdiff_t>(tail), trace.end());
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Covariance of a snapshot with an optional warm-up prefix dropped.
inline CovMatrix windowed_cov(const Snapshot &x, double loading_rel, std::size_t warmup)
{
    if (warmup == 0)
        return sample_cov(x, loading_rel);
    if (warmup >= x.samples())
        throw std::invalid_argument("windowed_cov: warmup consumes the whole snapshot");
    Snapshot tail(x.channels(), x.samples() - warmup, x.sample_rate_hz());
    for (std::size_t k = 0; k < x.channels(); k++)
        for (std::size_t i = warmup; i < x.samples(); i++)
            tail.at(k, i - warmup) = x.at(k, i);
    return sample_cov(tail, loading_rel);
}

// The whole per-snapshot estimator: S-stage cascade, per-stage isolation of
// the raw snapshot, Capon peak on each isolated channel.
inline SnapshotEstimate estimate_snapshot(const Snapshot &x, std::size_t stages,
                                          const PipelineOptions &opt)
{
    std::vector<double> offsets = opt.init_offsets.empty() ? default_init_offsets(stages) : opt.init_offsets;
    if (offsets.size() != stages)
        throw std::invalid_argument("estimate_snapshot: init offsets do not match stage count");

    SnapshotEstimate est;
    est.traces = run_cascade(x, stages, opt.notch, offsets);
    if (opt.isolation_pole_radius > 0.0)
        est.traces.isolation_pole_radius = opt.isolation_pole_radius;

    est.stages.reserve(stages);
    for (std::size_t s = 0; s < stages; s++)
    {
        Snapshot channel = isolate_channel(x, est.traces, s);
        const CovMatrix cov = windowed_cov(channel, opt.array.loading_rel, opt.capon_warmup_samples);
        CaponSpectrum spec = capon_spectrum(cov, opt.array);
        StageEstimate se;
        se.theta_deg = peak_angle(spec);
        se.trace_median_hz = tail_median(est.traces.combined[s]);
        est.stages.push_back(se);
        est.isolated.push_back(std::move(channel));
        est.spectra.push_back(std::move(spec));
    }
    return est;
}

} // namespace anfdoa

#endif

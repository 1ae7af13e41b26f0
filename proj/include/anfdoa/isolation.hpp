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

#ifndef ANFDOA_ISOLATION_HPP
#define ANFDOA_ISOLATION_HPP

#include <span>
#include <vector>

#include "anfdoa/anf.hpp"
#include "anfdoa/snapshot.hpp"

namespace anfdoa
{

// Frequency traces of an S-stage cascade over an M-channel snapshot.
// Traces are stored in Hz; combined[s] is the per-sample arithmetic mean of
// per_channel[s] across antennas.
struct TraceSet
{
    std::size_t stages = 0;
    std::size_t channels = 0;
    std::size_t samples = 0;
    double sample_rate_hz = 0.0;
    double isolation_pole_radius = 0.70; // k_a used when the traces are replayed as fixed notches

    std::vector<std::vector<std::vector<double>>> per_channel; // [stage][channel][sample], Hz
    std::vector<std::vector<double>> combined;                 // [stage][sample], Hz
    std::vector<std::vector<std::vector<cxd>>> residuals;      // [stage][channel][sample]
    std::vector<double> init_offsets;                          // normalized f/fs per stage
};

// Sample-wise arithmetic mean across antennas of one stage's traces.
inline std::vector<double> combine_traces(const std::vector<std::vector<double>> &per_channel)
{
    if (per_channel.empty())
        throw std::invalid_argument("combine_traces: no traces");
    const std::size_t n = per_channel.front().size();
    for (const auto &row : per_channel)
        if (row.size() != n)
            throw std::invalid_argument("combine_traces: trace length mismatch");
    std::vector<double> combined(n, 0.0);
    for (const auto &row : per_channel)
        for (std::size_t i = 0; i < n; i++)
            combined[i] += row[i];
    const double inv = 1.0 / static_cast<double>(per_channel.size());
    for (double &v : combined)
        v *= inv;
    return combined;
}

// Evenly spaced initial offsets in [-0.25, 0.25] of fs, matching the
// three-stage {-0.25, 0, 0.25} placement for S = 3.
inline std::vector<double> default_init_offsets(std::size_t stages)
{
    std::vector<double> offsets(stages, 0.0);
    if (stages == 1)
        return offsets;
    for (std::size_t s = 0; s < stages; s++)
        offsets[s] = -0.25 + 0.5 * static_cast<double>(s) / static_cast<double>(stages - 1);
    return offsets;
}

// Run an S-stage cascaded tracker on every antenna independently. Stage 0
// consumes the raw channel, stage s consumes stage s-1's residual of the
// same antenna. Traces are converted to Hz.
inline TraceSet run_cascade(const Snapshot &x, std::size_t stages, const NotchParams &params,
                            std::span<const double> init_offsets)
{
    if (stages == 0)
        throw std::invalid_argument("run_cascade: stage count must be >= 1");
    if (init_offsets.size() != stages)
        throw std::invalid_argument("run_cascade: init_offsets size must equal stage count");
    for (double off : init_offsets)
        if (!(off >= -0.5 && off <= 0.5))
            throw std::invalid_argument("run_cascade: init offset outside [-0.5, 0.5] of fs");
    x.validate();
    params.validate();

    const std::size_t m = x.channels();
    const std::size_t n = x.samples();
    const double fs = x.sample_rate_hz();

    TraceSet t;
    t.stages = stages;
    t.channels = m;
    t.samples = n;
    t.sample_rate_hz = fs;
    t.isolation_pole_radius = params.pole_radius;
    t.init_offsets.assign(init_offsets.begin(), init_offsets.end());
    t.per_channel.assign(stages, std::vector<std::vector<double>>(m));
    t.residuals.assign(stages, std::vector<std::vector<cxd>>(m));
    t.combined.resize(stages);

    const double rad_to_hz = fs / two_pi;
    for (std::size_t k = 0; k < m; k++)
    {
        std::vector<cxd> input(x.row(k).begin(), x.row(k).end());
        for (std::size_t s = 0; s < stages; s++)
        {
            NotchRun run = run_notch(input, params, two_pi * init_offsets[s]);
            std::vector<double> trace_hz(n);
            for (std::size_t i = 0; i < n; i++)
                trace_hz[i] = run.omega_trace[i] * rad_to_hz;
            t.per_channel[s][k] = std::move(trace_hz);
            t.residuals[s][k] = run.residual;
            input = std::move(run.residual);
        }
    }
    for (std::size_t s = 0; s < stages; s++)
        t.combined[s] = combine_traces(t.per_channel[s]);
    return t;
}

// Replay a frozen frequency schedule through the notch recurrence: no
// adaptation, the intermediate state carries across samples.
inline std::vector<cxd> apply_scheduled_notch(std::span<const cxd> x, std::span<const double> schedule_hz,
                                              double sample_rate_hz, double pole_radius)
{
    if (schedule_hz.size() != x.size())
        throw std::invalid_argument("apply_scheduled_notch: schedule length must equal signal length");
    const double nyquist = sample_rate_hz / 2.0;
    for (double f : schedule_hz)
        if (!(f >= -nyquist && f <= nyquist))
            throw std::invalid_argument("apply_scheduled_notch: schedule frequency outside Nyquist");

    std::vector<cxd> out(x.size());
    cxd xr_prev{0.0, 0.0};
    const double hz_to_rad = two_pi / sample_rate_hz;
    for (std::size_t i = 0; i < x.size(); i++)
    {
        const cxd z = std::polar(1.0, schedule_hz[i] * hz_to_rad);
        const cxd zxr = z * xr_prev;
        const cxd xr = x[i] + pole_radius * zxr;
        out[i] = xr - zxr;
        xr_prev = xr;
    }
    return out;
}

// Isolated channel for one target stage: every other stage's combined trace
// is replayed as a fixed notch over the RAW snapshot (never over cascade
// residuals), in ascending stage order.
inline Snapshot isolate_channel(const Snapshot &x, const TraceSet &traces, std::size_t target_stage)
{
    if (target_stage >= traces.stages)
        throw std::out_of_range("isolate_channel: stage index out of range");
    if (traces.samples != x.samples() || traces.channels != x.channels())
        throw std::invalid_argument("isolate_channel: trace set does not match snapshot");

    Snapshot out = x;
    for (std::size_t s = 0; s < traces.stages; s++)
    {
        if (s == target_stage)
            continue;
        for (std::size_t k = 0; k < x.channels(); k++)
        {
            std::vector<cxd> filtered = apply_scheduled_notch(out.row(k), traces.combined[s],
                                                              x.sample_rate_hz(),
                                                              traces.isolation_pole_radius);
            std::copy(filtered.begin(), filtered.end(), out.row(k).begin());
        }
    }
    return out;
}

} // namespace anfdoa

#endif

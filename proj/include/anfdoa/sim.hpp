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

#ifndef ANFDOA_SIM_HPP
#define ANFDOA_SIM_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "anfdoa/snapshot.hpp"

namespace anfdoa
{

// Rectangular room with one reflection-coefficient magnitude range shared by
// the six wall surfaces.
struct RoomConfig
{
    Vec3 dims{20.0, 12.0, 3.0};
    double refl_min = 0.33;
    double refl_max = 0.52;

    bool contains(const Vec3 &p) const
    {
        return p.x > 0.0 && p.x < dims.x && p.y > 0.0 && p.y < dims.y && p.z > 0.0 && p.z < dims.z;
    }

    void validate() const
    {
        if (!(dims.x > 0.0 && dims.y > 0.0 && dims.z > 0.0))
            throw std::invalid_argument("room.dims: all dimensions must be > 0");
        if (!(refl_min >= 0.0 && refl_min <= refl_max && refl_max < 1.0))
            throw std::invalid_argument("room.refl_range: need 0 <= min <= max < 1");
    }
};

enum class WaveformKind
{
    tone,
    chirp
};

enum class BeamKind
{
    lambertian,
    directional
};

struct Transmitter
{
    Vec3 pos;
    WaveformKind kind = WaveformKind::tone;
    double f0_hz = 0.0;      // tone offset
    double f_start_hz = 0.0; // chirp sweep over the snapshot window
    double f_end_hz = 0.0;
    double power = 1.0; // linear amplitude at 1 m
    BeamKind beam = BeamKind::lambertian;
    Vec3 orient{0.0, 1.0, 0.0}; // outward normal / boresight, unit vector
    double beam_exponent = 1.0; // cos^m falloff for directional beams
    double phase0 = 0.0;

    double band_lo_hz() const
    {
        return kind == WaveformKind::tone ? f0_hz : std::min(f_start_hz, f_end_hz);
    }
    double band_hi_hz() const
    {
        return kind == WaveformKind::tone ? f0_hz : std::max(f_start_hz, f_end_hz);
    }
    double band_center_hz() const { return 0.5 * (band_lo_hz() + band_hi_hz()); }
};

struct Scene
{
    RoomConfig room;
    std::vector<Transmitter> txs;
    Vec3 rx_center{8.2, 2.8, 1.2};
    Vec3 rx_axis{1.0, 0.0, 0.0}; // ULA baseline direction
    double carrier_hz = 2.0e9;
    double sample_rate_hz = 4.0e6;
    std::size_t samples = 512;
    double noise_sigma = 0.12; // total complex std per antenna sample
    std::size_t channels = 2;
    double spacing_m = 0.0; // 0 resolves to lambda/2

    double spacing() const
    {
        return spacing_m > 0.0 ? spacing_m : speed_of_light / carrier_hz / 2.0;
    }

    void validate() const
    {
        room.validate();
        if (!(carrier_hz > 0.0) || !(sample_rate_hz > 0.0))
            throw std::invalid_argument("scene: carrier_hz and sample_rate_hz must be > 0");
        if (samples < 1)
            throw std::invalid_argument("scene.samples: must be >= 1");
        if (channels < 2)
            throw std::invalid_argument("scene.channels: must be >= 2");
        if (noise_sigma < 0.0)
            throw std::invalid_argument("scene.noise_sigma: must be >= 0");
        if (spacing_m < 0.0)
            throw std::invalid_argument("scene.spacing_m: must be >= 0 (0 selects lambda/2)");
        if (!room.contains(rx_center))
            throw std::invalid_argument("scene.rx_center: outside room");
        if (rx_axis.norm() == 0.0)
            throw std::invalid_argument("scene.rx_axis: zero vector");
        if (txs.empty())
            throw std::invalid_argument("scene.txs: at least one transmitter required");
        const double nyquist = sample_rate_hz / 2.0;
        for (std::size_t i = 0; i < txs.size(); i++)
        {
            const Transmitter &tx = txs[i];
            const std::string field = "scene.txs[" + std::to_string(i) + "]";
            if (!room.contains(tx.pos))
                throw std::invalid_argument(field + ".pos: outside room");
            if (!(tx.power > 0.0))
                throw std::invalid_argument(field + ".power: must be > 0");
            if (tx.orient.norm() == 0.0)
                throw std::invalid_argument(field + ".orient: zero vector");
            if (tx.beam == BeamKind::directional && !(tx.beam_exponent >= 0.0))
                throw std::invalid_argument(field + ".exponent: must be >= 0");
            if (std::abs(tx.band_lo_hz()) > nyquist || std::abs(tx.band_hi_hz()) > nyquist)
                throw std::invalid_argument(field + ": instantaneous frequency outside Nyquist");
        }
    }
};

// Per-transmitter ground truth of one synthesized snapshot.
struct TxTruth
{
    double theta_deg = 0.0; // direct-path broadside angle to the ULA
    double band_lo_hz = 0.0;
    double band_hi_hz = 0.0;

    double band_center_hz() const { return 0.5 * (band_lo_hz + band_hi_hz); }
};

// Mirror images of a transmitter across the six wall planes, in fixed order
// x=0, x=L, y=0, y=W, z=0, z=H.
inline std::array<Vec3, 6> image_sources(const Vec3 &tx_pos, const RoomConfig &room)
{
    if (!room.contains(tx_pos))
        throw std::invalid_argument("image_sources: transmitter outside room");
    const Vec3 d = room.dims;
    return {Vec3{-tx_pos.x, tx_pos.y, tx_pos.z},          Vec3{2.0 * d.x - tx_pos.x, tx_pos.y, tx_pos.z},
            Vec3{tx_pos.x, -tx_pos.y, tx_pos.z},          Vec3{tx_pos.x, 2.0 * d.y - tx_pos.y, tx_pos.z},
            Vec3{tx_pos.x, tx_pos.y, -tx_pos.z},          Vec3{tx_pos.x, tx_pos.y, 2.0 * d.z - tx_pos.z}};
}

// Baseband sample of a transmitter at (possibly negative) integer index n.
// Tones and chirps are analytic, so out-of-window indices extrapolate cleanly.
// The chirp sweeps linearly from f_start to f_end across the N-sample window
// with the closed-form quadratic phase.
inline cxd tx_baseband(const Transmitter &tx, long n, double sample_rate_hz, std::size_t window_samples)
{
    const double t = static_cast<double>(n);
    double phase = tx.phase0;
    if (tx.kind == WaveformKind::tone)
    {
        phase += two_pi * tx.f0_hz * t / sample_rate_hz;
    }
    else
    {
        const double sweep = tx.f_end_hz - tx.f_start_hz;
        phase += two_pi * (tx.f_start_hz * t + sweep * t * t / (2.0 * static_cast<double>(window_samples))) /
                 sample_rate_hz;
    }
    return std::polar(tx.power, phase);
}

// Beam gain toward a unit direction: Lambertian max(0, cos psi) or
// directional max(0, cos psi)^m, psi measured from the orientation vector.
inline double beam_gain(BeamKind beam, const Vec3 &orient, double exponent, const Vec3 &direction)
{
    const double c = orient.normalized().dot(direction);
    if (c <= 0.0)
        return 0.0;
    return beam == BeamKind::lambertian ? c : std::pow(c, exponent);
}

inline double antenna_gain(const Transmitter &tx, const Vec3 &direction)
{
    return beam_gain(tx.beam, tx.orient, tx.beam_exponent, direction);
}

// One transmitter's contribution split out, plus the shared noise block.
// synth_snapshot sums these; the oracle estimator consumes per_tx[j] + noise.
struct SceneComponents
{
    std::vector<Snapshot> per_tx;
    Snapshot noise;
    std::vector<TxTruth> truth;
};

namespace detail
{

// Fractional-delay evaluation of the analytic baseband model, first-order
// (linear) interpolation between integer-sample values. Room delay spread is
// well below one sample at the simulated rates.
inline cxd tx_sample_delayed(const Transmitter &tx, double t_samples, double sample_rate_hz,
                             std::size_t window_samples)
{
    const double fl = std::floor(t_samples);
    const double frac = t_samples - fl;
    const long n0 = static_cast<long>(fl);
    const cxd s0 = tx_baseband(tx, n0, sample_rate_hz, window_samples);
    if (frac == 0.0)
        return s0;
    const cxd s1 = tx_baseband(tx, n0 + 1, sample_rate_hz, window_samples);
    return (1.0 - frac) * s0 + frac * s1;
}

inline Vec3 mirror_across_wall(const Vec3 &v, std::size_t wall)
{
    Vec3 out = v;
    if (wall < 2)
        out.x = -out.x;
    else if (wall < 4)
        out.y = -out.y;
    else
        out.z = -out.z;
    return out;
}

} // namespace detail

// Synthesize one snapshot, split per transmitter. Every path (direct plus six
// single-bounce images) contributes gain * refl * (1/d) * e^{-j 2 pi fc tau}
// times the delayed baseband signal. Reflection coefficients are drawn once
// per wall per call (magnitude uniform in the room's range, phase uniform),
// then per-antenna circular white noise. Deterministic in the seed; the draw
// order (six walls, then noise) is part of the determinism contract.
inline SceneComponents synth_components(const Scene &scene, std::uint64_t seed)
{
    scene.validate();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag_dist(scene.room.refl_min, scene.room.refl_max);
    std::uniform_real_distribution<double> phase_dist(0.0, two_pi);
    std::array<cxd, 6> wall_coeff;
    for (cxd &c : wall_coeff)
    {
        const double mag = mag_dist(rng);
        const double ph = phase_dist(rng);
        c = std::polar(mag, ph);
    }

    const std::size_t m = scene.channels;
    const std::size_t n = scene.samples;
    const double fs = scene.sample_rate_hz;
    const Vec3 axis = scene.rx_axis.normalized();
    const double d = scene.spacing();

    std::vector<Vec3> antennas(m);
    for (std::size_t k = 0; k < m; k++)
        antennas[k] = scene.rx_center + axis * ((static_cast<double>(k) - (static_cast<double>(m) - 1.0) / 2.0) * d);

    SceneComponents out;
    out.per_tx.reserve(scene.txs.size());
    out.truth.reserve(scene.txs.size());

    struct Path
    {
        Vec3 pos;
        Vec3 orient;
        cxd refl;
    };

    for (const Transmitter &tx : scene.txs)
    {
        Snapshot contrib(m, n, fs);

        std::vector<Path> paths;
        paths.push_back({tx.pos, tx.orient, cxd{1.0, 0.0}});
        const std::array<Vec3, 6> images = image_sources(tx.pos, scene.room);
        for (std::size_t w = 0; w < 6; w++)
            paths.push_back({images[w], detail::mirror_across_wall(tx.orient, w), wall_coeff[w]});

        for (const Path &path : paths)
        {
            if (path.refl == cxd{0.0, 0.0})
                continue;
            for (std::size_t k = 0; k < m; k++)
            {
                const Vec3 to_rx = antennas[k] - path.pos;
                const double dist = to_rx.norm();
                const double tau = dist / speed_of_light;
                const double delay_samples = tau * fs;
                const double gain = beam_gain(tx.beam, path.orient, tx.beam_exponent, to_rx * (1.0 / dist));
                if (gain == 0.0)
                    continue;
                const cxd coeff = path.refl * std::polar(gain / dist, -two_pi * scene.carrier_hz * tau);
                for (std::size_t i = 0; i < n; i++)
                    contrib.at(k, i) +=
                        coeff * detail::tx_sample_delayed(tx, static_cast<double>(i) - delay_samples, fs, n);
            }
        }
        out.per_tx.push_back(std::move(contrib));

        const Vec3 u = (tx.pos - scene.rx_center).normalized();
        double s = axis.dot(u);
        s = std::max(-1.0, std::min(1.0, s));
        out.truth.push_back({rad2deg(std::asin(s)), tx.band_lo_hz(), tx.band_hi_hz()});
    }

    out.noise = Snapshot(m, n, fs);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sigma_component = scene.noise_sigma / std::sqrt(2.0);
    for (std::size_t k = 0; k < m; k++)
        for (std::size_t i = 0; i < n; i++)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            out.noise.at(k, i) = cxd(re * sigma_component, im * sigma_component);
        }
    return out;
}

// Full observation: sum of all transmitter contributions plus noise.
inline std::pair<Snapshot, std::vector<TxTruth>> synth_snapshot(const Scene &scene, std::uint64_t seed)
{
    SceneComponents parts = synth_components(scene, seed);
    Snapshot x(scene.channels, scene.samples, scene.sample_rate_hz);
    for (std::size_t k = 0; k < x.channels(); k++)
        for (std::size_t i = 0; i < x.samples(); i++)
        {
            cxd acc = parts.noise.at(k, i);
            for (const Snapshot &c : parts.per_tx)
                acc += c.at(k, i);
            x.at(k, i) = acc;
        }
    return {std::move(x), std::move(parts.truth)};
}

} // namespace anfdoa

#endif

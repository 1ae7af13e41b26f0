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
//
// Reference implementations used only to check the library. Everything here
// is deliberately written the slow, obvious way and shares no code path with
// the implementation under test.

#ifndef ANFDOA_TESTS_ORACLES_HPP
#define ANFDOA_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace oracles
{

using cxd = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Plain O(N^2) DFT.
inline std::vector<cxd> naive_dft(std::span<const cxd> x)
{
    const std::size_t n = x.size();
    std::vector<cxd> out(n);
    for (std::size_t k = 0; k < n; k++)
    {
        cxd acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; i++)
            acc += x[i] * std::polar(1.0, -2.0 * pi * static_cast<double>(k) * static_cast<double>(i) /
                                              static_cast<double>(n));
        out[k] = acc;
    }
    return out;
}

// Frequency (Hz, in [-fs/2, fs/2)) of the strongest DFT bin.
inline double dft_argmax_hz(std::span<const cxd> x, double fs)
{
    const std::vector<cxd> spec = naive_dft(x);
    std::size_t best = 0;
    for (std::size_t k = 1; k < spec.size(); k++)
        if (std::abs(spec[k]) > std::abs(spec[best]))
            best = k;
    double f = static_cast<double>(best) / static_cast<double>(spec.size()) * fs;
    if (f >= fs / 2.0)
        f -= fs;
    return f;
}

// Band power (linear) of the DFT bins whose center frequency falls inside
// [f_lo, f_hi].
inline double band_power(std::span<const cxd> x, double fs, double f_lo, double f_hi)
{
    const std::vector<cxd> spec = naive_dft(x);
    const std::size_t n = spec.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; k++)
    {
        double f = static_cast<double>(k) / static_cast<double>(n) * fs;
        if (f >= fs / 2.0)
            f -= fs;
        if (f >= f_lo && f <= f_hi)
            acc += std::norm(spec[k]);
    }
    return acc;
}

// Closed-form magnitude of H(z) = (1 - z_n z^-1) / (1 - k_a z_n z^-1) at a
// tone frequency omega_tone, notch frozen at omega_notch.
inline double notch_gain(double omega_notch, double omega_tone, double pole_radius)
{
    const double delta = omega_notch - omega_tone;
    const double num = 2.0 - 2.0 * std::cos(delta);
    const double den = 1.0 + pole_radius * pole_radius - 2.0 * pole_radius * std::cos(delta);
    return std::sqrt(num / den);
}

// Instantaneous notch output power |y(omega)|^2 with the input sample and
// the previous intermediate state held fixed.
inline double notch_cost(double omega, cxd x, cxd xr_prev, double pole_radius)
{
    const cxd z = std::polar(1.0, omega);
    const cxd xr = x + pole_radius * z * xr_prev;
    const cxd y = xr - z * xr_prev;
    return std::norm(y);
}

// Central finite difference of the cost above.
inline double notch_cost_fd(double omega, cxd x, cxd xr_prev, double pole_radius, double h)
{
    return (notch_cost(omega + h, x, xr_prev, pole_radius) -
            notch_cost(omega - h, x, xr_prev, pole_radius)) /
           (2.0 * h);
}

// Min-total-distance assignment by plain recursion over all permutations,
// coded independently of the library's next_permutation scan. Returns
// a[tx] = stage.
inline void assign_recurse(std::span<const double> medians, std::span<const double> centers,
                           std::vector<std::size_t> &current, std::vector<bool> &used, double cost,
                           std::vector<std::size_t> &best, double &best_cost)
{
    const std::size_t tx = current.size();
    if (tx == centers.size())
    {
        if (cost < best_cost)
        {
            best_cost = cost;
            best = current;
        }
        return;
    }
    for (std::size_t s = 0; s < medians.size(); s++)
    {
        if (used[s])
            continue;
        used[s] = true;
        current.push_back(s);
        assign_recurse(medians, centers, current, used, cost + std::abs(medians[s] - centers[tx]), best,
                       best_cost);
        current.pop_back();
        used[s] = false;
    }
}

inline std::vector<std::size_t> brute_force_assignment(std::span<const double> medians,
                                                       std::span<const double> centers)
{
    std::vector<std::size_t> best, current;
    std::vector<bool> used(medians.size(), false);
    double best_cost = std::numeric_limits<double>::infinity();
    assign_recurse(medians, centers, current, used, 0.0, best, best_cost);
    return best;
}

// Chirp phase by midpoint cumulative sum of the instantaneous frequency
// f(t) = f_start + (f_end - f_start) t / N, evaluated at half-sample points.
inline double chirp_phase_cumsum(long n, double f_start, double f_end, double fs, std::size_t window)
{
    const double k = (f_end - f_start) / static_cast<double>(window);
    double phase = 0.0;
    const long step = n >= 0 ? 1 : -1;
    for (long m = 0; m != n; m += step)
    {
        const double mid = static_cast<double>(m) + 0.5 * static_cast<double>(step);
        phase += static_cast<double>(step) * 2.0 * pi * (f_start + k * mid) / fs;
    }
    return phase;
}

// Largest eigenvalue / eigenvector of a Hermitian 2x2 by power iteration.
inline std::vector<cxd> principal_eigenvector_2x2(const cxd r00, const cxd r01, const cxd r10,
                                                  const cxd r11)
{
    std::vector<cxd> v{cxd{1.0, 0.0}, cxd{0.37, 0.21}};
    for (int it = 0; it < 200; it++)
    {
        const cxd a = r00 * v[0] + r01 * v[1];
        const cxd b = r10 * v[0] + r11 * v[1];
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        v = {a / norm, b / norm};
    }
    return v;
}

} // namespace oracles

#endif

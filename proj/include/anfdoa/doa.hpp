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

#ifndef ANFDOA_DOA_HPP
#define ANFDOA_DOA_HPP

#include <algorithm>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "anfdoa/snapshot.hpp"

namespace anfdoa
{

// ULA description plus the Capon scan grid. Angles are measured from
// broadside, phase reference at element 0.
struct ArrayConfig
{
    std::size_t elements = 2;
    double spacing_wavelengths = 0.5; // d / lambda
    double grid_start_deg = -90.0;
    double grid_stop_deg = 90.0;
    double grid_step_deg = 0.5;
    double loading_rel = 1e-6; // diagonal loading relative to trace(R)/M

    void validate() const
    {
        if (elements < 2)
            throw std::invalid_argument("ArrayConfig: needs at least 2 elements");
        if (!(spacing_wavelengths > 0.0 && spacing_wavelengths <= 0.5))
            throw std::invalid_argument("ArrayConfig: spacing_wavelengths must be in (0, 0.5]");
        if (!(grid_step_deg > 0.0) || !(grid_stop_deg > grid_start_deg))
            throw std::invalid_argument("ArrayConfig: grid must be ascending with positive step");
        if (grid_start_deg < -90.0 || grid_stop_deg > 90.0)
            throw std::invalid_argument("ArrayConfig: grid must lie within [-90, 90] degrees");
        if (!(loading_rel > 0.0))
            throw std::invalid_argument("ArrayConfig: loading_rel must be > 0");
    }

    std::vector<double> grid() const
    {
        std::vector<double> angles;
        const auto steps = static_cast<std::size_t>(
            std::floor((grid_stop_deg - grid_start_deg) / grid_step_deg + 1e-9));
        angles.reserve(steps + 1);
        for (std::size_t i = 0; i <= steps; i++)
            angles.push_back(grid_start_deg + static_cast<double>(i) * grid_step_deg);
        return angles;
    }
};

// Diagonally loaded sample covariance, row-major Hermitian M x M.
struct CovMatrix
{
    std::size_t dim = 0;
    std::vector<cxd> r;
    double loading = 0.0;

    cxd &at(std::size_t i, std::size_t j) { return r[i * dim + j]; }
    cxd at(std::size_t i, std::size_t j) const { return r[i * dim + j]; }
};

struct CaponSpectrum
{
    std::vector<double> angles_deg;
    std::vector<double> power; // linear power units, strictly positive
};

// ULA steering vector, element m = e^{j 2 pi (d/lambda) m sin(theta)}.
inline std::vector<cxd> steering(double theta_deg, std::size_t elements, double spacing_wavelengths)
{
    if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
        throw std::invalid_argument("steering: angle outside [-90, 90] degrees");
    const double phase = two_pi * spacing_wavelengths * std::sin(deg2rad(theta_deg));
    std::vector<cxd> a(elements);
    for (std::size_t m = 0; m < elements; m++)
        a[m] = std::polar(1.0, phase * static_cast<double>(m));
    return a;
}

// R = (1/N) X X^H plus diagonal loading eps I, eps = loading_rel tr(R)/M
// (absolute loading_rel when the trace is zero).
inline CovMatrix sample_cov(const Snapshot &x, double loading_rel)
{
    const std::size_t m = x.channels();
    const std::size_t n = x.samples();
    if (n < 1)
        throw std::invalid_argument("sample_cov: empty snapshot");

    CovMatrix cov;
    cov.dim = m;
    cov.r.assign(m * m, cxd{0.0, 0.0});
    for (std::size_t i = 0; i < m; i++)
    {
        std::span<const cxd> xi = x.row(i);
        for (std::size_t j = i; j < m; j++)
        {
            std::span<const cxd> xj = x.row(j);
            cxd acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; k++)
                acc += xi[k] * std::conj(xj[k]);
            acc /= static_cast<double>(n);
            cov.at(i, j) = acc;
            cov.at(j, i) = std::conj(acc);
        }
    }

    double trace = 0.0;
    for (std::size_t i = 0; i < m; i++)
        trace += cov.at(i, i).real();
    const double eps = trace > 0.0 ? loading_rel * trace / static_cast<double>(m) : loading_rel;
    for (std::size_t i = 0; i < m; i++)
        cov.at(i, i) += eps;
    cov.loading = eps;
    return cov;
}

// Capon power 1 / (a^H R^{-1} a) through the closed-form 2x2 inverse.
// Assumes unit-modulus steering entries (always true for a ULA), which lets
// |a_m|^2 = 1 be used exactly; a flat covariance then yields an exactly flat
// spectrum and the peak tie-break stays meaningful.
inline double capon_power_2x2(const CovMatrix &cov, std::span<const cxd> a)
{
    if (cov.dim != 2 || a.size() != 2)
        throw std::invalid_argument("capon_power_2x2: expects a 2x2 covariance");
    const double r00 = cov.at(0, 0).real();
    const double r11 = cov.at(1, 1).real();
    const cxd r01 = cov.at(0, 1);
    const double det = r00 * r11 - std::norm(r01);
    const double quad = r11 + r00 - 2.0 * std::real(r01 * std::conj(a[0]) * a[1]);
    if (!(det > 0.0) || !(quad > 0.0))
    {
        std::ostringstream msg;
        msg << "capon_power_2x2: covariance singular after loading (condition estimate ~ "
            << ((r00 + r11) * (r00 + r11) / std::max(det, 1e-300)) << ")";
        throw std::runtime_error(msg.str());
    }
    return det / quad;
}

// Same quantity through an explicit Gauss-Jordan inverse, any M. Slow path,
// kept for M > 2 and as the independent route the 2x2 form is checked against.
inline double capon_power_generic(const CovMatrix &cov, std::span<const cxd> a)
{
    const std::size_t m = cov.dim;
    if (a.size() != m)
        throw std::invalid_argument("capon_power_generic: steering size mismatch");

    // Augmented [R | I], partial pivoting.
    std::vector<cxd> aug(m * 2 * m, cxd{0.0, 0.0});
    auto at = [&](std::size_t i, std::size_t j) -> cxd & { return aug[i * 2 * m + j]; };
    double max_abs = 0.0;
    for (std::size_t i = 0; i < m; i++)
    {
        for (std::size_t j = 0; j < m; j++)
        {
            at(i, j) = cov.at(i, j);
            max_abs = std::max(max_abs, std::abs(cov.at(i, j)));
        }
        at(i, m + i) = 1.0;
    }

    double min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < m; col++)
    {
        std::size_t pivot_row = col;
        for (std::size_t row = col + 1; row < m; row++)
            if (std::abs(at(row, col)) > std::abs(at(pivot_row, col)))
                pivot_row = row;
        if (pivot_row != col)
            for (std::size_t j = 0; j < 2 * m; j++)
                std::swap(at(col, j), at(pivot_row, j));

        const cxd pivot = at(col, col);
        min_pivot = std::min(min_pivot, std::abs(pivot));
        if (std::abs(pivot) <= 1e-14 * max_abs)
        {
            std::ostringstream msg;
            msg << "capon_power_generic: covariance numerically singular after loading"
                << " (condition estimate ~ " << (max_abs / std::max(std::abs(pivot), 1e-300)) << ")";
            throw std::runtime_error(msg.str());
        }
        for (std::size_t j = 0; j < 2 * m; j++)
            at(col, j) /= pivot;
        for (std::size_t row = 0; row < m; row++)
        {
            if (row == col)
                continue;
            const cxd factor = at(row, col);
            if (factor == cxd{0.0, 0.0})
                continue;
            for (std::size_t j = 0; j < 2 * m; j++)
                at(row, j) -= factor * at(col, j);
        }
    }

    cxd quad{0.0, 0.0};
    for (std::size_t i = 0; i < m; i++)
        for (std::size_t j = 0; j < m; j++)
            quad += std::conj(a[i]) * at(i, m + j) * a[j];
    const double q = quad.real();
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::runtime_error("capon_power_generic: non-positive quadratic form");
    return 1.0 / q;
}

// Capon spatial spectrum over the configured grid. M = 2 takes the
// closed-form inverse, larger arrays the generic one.
inline CaponSpectrum capon_spectrum(const CovMatrix &cov, const ArrayConfig &cfg)
{
    cfg.validate();
    if (cov.dim != cfg.elements)
        throw std::invalid_argument("capon_spectrum: covariance dimension mismatch");
    CaponSpectrum spec;
    spec.angles_deg = cfg.grid();
    spec.power.reserve(spec.angles_deg.size());
    for (double theta : spec.angles_deg)
    {
        const std::vector<cxd> a = steering(theta, cfg.elements, cfg.spacing_wavelengths);
        const double p = cov.dim == 2 ? capon_power_2x2(cov, a) : capon_power_generic(cov, a);
        spec.power.push_back(p);
    }
    return spec;
}

// Grid angle of the global spectrum maximum; ties break toward the smaller
// angle so the result is deterministic.
inline double peak_angle(const CaponSpectrum &spec)
{
    if (spec.angles_deg.empty() || spec.power.size() != spec.angles_deg.size())
        throw std::invalid_argument("peak_angle: empty or inconsistent spectrum");
    std::size_t best = 0;
    for (std::size_t i = 1; i < spec.power.size(); i++)
        if (spec.power[i] > spec.power[best])
            best = i;
    return spec.angles_deg[best];
}

} // namespace anfdoa

#endif

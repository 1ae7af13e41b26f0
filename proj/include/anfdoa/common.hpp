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

#ifndef ANFDOA_COMMON_HPP
#define ANFDOA_COMMON_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace anfdoa
{

using cxd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(cxd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Minimal 3-vector for scene geometry.
struct Vec3
{
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    Vec3 normalized() const
    {
        const double n = norm();
        if (n == 0.0)
            throw std::invalid_argument("Vec3::normalized: zero vector");
        return {x / n, y / n, z / n};
    }
};

} // namespace anfdoa

#endif

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

#include "anfdoa/doa.hpp"
#include "oracles.hpp"

using namespace anfdoa;

namespace
{

// Noiseless plane-wave snapshot a(theta) s[n] with a unit tone.
Snapshot plane_wave(double theta_deg, std::size_t samples, double noise_sigma = 0.0,
                    std::uint64_t seed = 0)
{
    Snapshot x(2, samples, 4e6);
    const std::vector<cxd> a = steering(theta_deg, 2, 0.5);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = 0; i < samples; i++)
    {
        const cxd s = std::polar(1.0, two_pi * 0.11 * static_cast<double>(i));
        for (std::size_t m = 0; m < 2; m++)
        {
            cxd noise{0.0, 0.0};
            if (noise_sigma > 0.0)
                noise = cxd{g(rng), g(rng)} * (noise_sigma / std::sqrt(2.0));
            x.at(m, i) = a[m] * s + noise;
        }
    }
    return x;
}

CovMatrix random_psd_2x2(std::mt19937_64 &rng)
{
    // A A^H + small ridge is Hermitian PSD by construction.
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const cxd a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)}, d{u(rng), u(rng)};
    CovMatrix cov;
    cov.dim = 2;
    cov.r.resize(4);
    cov.at(0, 0) = std::norm(a) + std::norm(b) + 0.01;
    cov.at(0, 1) = a * std::conj(c) + b * std::conj(d);
    cov.at(1, 0) = std::conj(cov.at(0, 1));
    cov.at(1, 1) = std::norm(c) + std::norm(d) + 0.01;
    return cov;
}

} // namespace

TEST_CASE("steering vectors at reference angles", "[doa]")
{
    const std::vector<cxd> broadside = steering(0.0, 2, 0.5);
    CHECK(broadside[0] == cxd{1.0, 0.0});
    CHECK(broadside[1].real() == Approx(1.0).margin(1e-12));
    CHECK(broadside[1].imag() == Approx(0.0).margin(1e-12));

    const std::vector<cxd> endfire = steering(90.0, 2, 0.5);
    CHECK(endfire[1].real() == Approx(-1.0).margin(1e-12));
    CHECK(endfire[1].imag() == Approx(0.0).margin(1e-9));

    const std::vector<cxd> thirty = steering(30.0, 2, 0.5);
    CHECK(thirty[1].real() == Approx(0.0).margin(1e-9));
    CHECK(thirty[1].imag() == Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(steering(91.0, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(steering(-90.5, 2, 0.5), std::invalid_argument);
}

TEST_CASE("sample covariance of silence falls back to absolute loading", "[doa]")
{
    Snapshot x(2, 64, 4e6);
    const CovMatrix cov = sample_cov(x, 1e-6);
    CHECK(cov.loading == 1e-6);
    CHECK(cov.at(0, 0).real() == Approx(1e-6));
    CHECK(cov.at(1, 1).real() == Approx(1e-6));
    CHECK(std::abs(cov.at(0, 1)) == 0.0);
}

TEST_CASE("sample covariance of a plane wave is rank-1 plus loading", "[doa]")
{
    const double theta = 37.0;
    const Snapshot x = plane_wave(theta, 256);
    const CovMatrix cov = sample_cov(x, 1e-6);

    const std::vector<cxd> v = oracles::principal_eigenvector_2x2(cov.at(0, 0), cov.at(0, 1),
                                                                  cov.at(1, 0), cov.at(1, 1));
    const std::vector<cxd> a = steering(theta, 2, 0.5);
    // collinearity: |<v, a>| = |v| |a|
    const cxd inner = std::conj(v[0]) * a[0] + std::conj(v[1]) * a[1];
    CHECK(std::abs(inner) == Approx(std::sqrt(2.0)).margin(1e-6));
}

TEST_CASE("sample covariance is Hermitian", "[doa]")
{
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g(0.0, 1.0);
    Snapshot x(2, 128, 4e6);
    for (std::size_t m = 0; m < 2; m++)
        for (std::size_t i = 0; i < 128; i++)
            x.at(m, i) = cxd{g(rng), g(rng)};
    const CovMatrix cov = sample_cov(x, 1e-6);
    CHECK(cov.at(0, 1) == std::conj(cov.at(1, 0)));
    CHECK(cov.at(0, 0).imag() == 0.0);
}

TEST_CASE("identity covariance gives a flat spectrum of 1/M", "[doa]")
{
    CovMatrix cov;
    cov.dim = 2;
    cov.r = {cxd{1.0, 0.0}, cxd{0.0, 0.0}, cxd{0.0, 0.0}, cxd{1.0, 0.0}};
    ArrayConfig cfg;
    const CaponSpectrum spec = capon_spectrum(cov, cfg);
    for (double p : spec.power)
        CHECK(p == Approx(0.5).margin(1e-12));
    // flat spectrum resolves to the smallest grid angle
    CHECK(peak_angle(spec) == -90.0);
}

TEST_CASE("capon peak finds a noisy plane wave", "[doa]")
{
    const double theta = 23.0;
    // 20 dB SNR
    const Snapshot x = plane_wave(theta, 512, 0.1, 99);
    ArrayConfig cfg;
    const CaponSpectrum spec = capon_spectrum(sample_cov(x, cfg.loading_rel), cfg);
    CHECK(std::abs(peak_angle(spec) - theta) <= cfg.grid_step_deg);
}

TEST_CASE("scaling the covariance scales the spectrum and keeps the argmax", "[doa]")
{
    std::mt19937_64 rng(31);
    CovMatrix cov = random_psd_2x2(rng);
    ArrayConfig cfg;
    const CaponSpectrum base = capon_spectrum(cov, cfg);

    CovMatrix scaled = cov;
    for (cxd &v : scaled.r)
        v *= 3.7;
    const CaponSpectrum spec = capon_spectrum(scaled, cfg);
    for (std::size_t i = 0; i < base.power.size(); i++)
        CHECK(spec.power[i] == Approx(3.7 * base.power[i]).epsilon(1e-12));
    CHECK(peak_angle(spec) == peak_angle(base));
}

TEST_CASE("closed-form 2x2 inverse matches the generic elimination path", "[doa]")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; trial++)
    {
        const CovMatrix cov = random_psd_2x2(rng);
        for (double theta : {-81.0, -30.5, 0.0, 12.5, 44.0, 88.5})
        {
            const std::vector<cxd> a = steering(theta, 2, 0.5);
            const double fast = capon_power_2x2(cov, a);
            const double slow = capon_power_generic(cov, a);
            REQUIRE(std::abs(fast - slow) <= 1e-10 * std::abs(slow));
        }
    }
}

TEST_CASE("capon power stays positive with loading", "[doa]")
{
    const Snapshot x = plane_wave(-47.0, 128); // noiseless: near-singular before loading
    ArrayConfig cfg;
    const CaponSpectrum spec = capon_spectrum(sample_cov(x, cfg.loading_rel), cfg);
    for (double p : spec.power)
        CHECK(p > 0.0);
}

TEST_CASE("peak_angle trivia", "[doa]")
{
    CaponSpectrum spec;
    spec.angles_deg = {-10.0, 0.0, 10.0};
    spec.power = {1.0, 5.0, 1.0};
    CHECK(peak_angle(spec) == 0.0);

    spec.power = {2.0, 2.0, 2.0};
    CHECK(peak_angle(spec) == -10.0); // tie toward the smaller angle

    CaponSpectrum empty;
    CHECK_THROWS_AS(peak_angle(empty), std::invalid_argument);
}

TEST_CASE("noiseless round trip recovers every grid angle", "[doa]")
{
    ArrayConfig cfg;
    for (double theta = -80.0; theta <= 80.0; theta += 0.5)
    {
        const Snapshot x = plane_wave(theta, 64);
        const CaponSpectrum spec = capon_spectrum(sample_cov(x, cfg.loading_rel), cfg);
        REQUIRE(std::abs(peak_angle(spec) - theta) <= cfg.grid_step_deg);
    }
}

TEST_CASE("array config validation", "[doa]")
{
    ArrayConfig cfg;
    cfg.spacing_wavelengths = 0.6;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ArrayConfig{};
    cfg.grid_step_deg = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ArrayConfig{};
    cfg.grid_start_deg = 10.0;
    cfg.grid_stop_deg = -10.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

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

#ifndef ANFDOA_SPECTRUM_HPP
#define ANFDOA_SPECTRUM_HPP

#include <bit>
#include <span>
#include <vector>

#include "anfdoa/common.hpp"

namespace anfdoa
{

// In-place iterative radix-2 DIT FFT. Only used for exported plot data; the
// estimator itself never transforms.
inline void fft_inplace(std::vector<cxd> &v)
{
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_inplace: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; i++)
    {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1)
    {
        const double ang = -two_pi / static_cast<double>(len);
        const cxd wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len)
        {
            cxd w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; k++)
            {
                const cxd u = v[i + k];
                const cxd t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
}

struct PsdData
{
    std::vector<double> freq_hz;  // ascending, [-fs/2, fs/2)
    std::vector<double> power_db; // 10 log10 of the periodogram
};

// Periodogram of a record, zero-padded to the next power of two and shifted
// so the frequency axis runs from -fs/2 upward.
inline PsdData periodogram(std::span<const cxd> x, double sample_rate_hz)
{
    if (x.empty())
        throw std::invalid_argument("periodogram: empty input");
    std::size_t n = std::bit_ceil(x.size());
    std::vector<cxd> buf(x.begin(), x.end());
    buf.resize(n, cxd{0.0, 0.0});
    fft_inplace(buf);

    PsdData psd;
    psd.freq_hz.resize(n);
    psd.power_db.resize(n);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (std::size_t k = 0; k < n; k++)
    {
        // fftshift: output index k holds FFT bin (k + n/2) mod n
        const std::size_t bin = (k + n / 2) % n;
        const double f = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * sample_rate_hz /
                         static_cast<double>(n);
        psd.freq_hz[k] = f;
        psd.power_db[k] = 10.0 * std::log10(std::norm(buf[bin]) * scale + 1e-300);
    }
    return psd;
}

} // namespace anfdoa

#endif

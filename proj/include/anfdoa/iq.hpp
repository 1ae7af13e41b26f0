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

#ifndef ANFDOA_IQ_HPP
#define ANFDOA_IQ_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "anfdoa/snapshot.hpp"

namespace anfdoa
{

static_assert(std::endian::native == std::endian::little,
              "cf32 recordings are little-endian; big-endian hosts need byte swapping");

// A multichannel cf32 capture: per sample frame, channels in order, each as
// little-endian float32 I then Q. frames[n * channels + m] is channel m of
// frame n.
struct IqRecording
{
    std::size_t channels = 0;
    double sample_rate_hz = 0.0;
    double carrier_hz = 0.0; // metadata only
    std::vector<cxd> frames;

    std::size_t frame_count() const { return channels == 0 ? 0 : frames.size() / channels; }
};

inline cxd quantize_cf32(cxd v)
{
    return {static_cast<double>(static_cast<float>(v.real())),
            static_cast<double>(static_cast<float>(v.imag()))};
}

// Snapshot with every sample passed through float32, i.e. exactly what a
// write/read round trip through a cf32 recording produces.
inline Snapshot quantize_cf32(const Snapshot &x)
{
    Snapshot out = x;
    for (std::size_t k = 0; k < out.channels(); k++)
        for (std::size_t i = 0; i < out.samples(); i++)
            out.at(k, i) = quantize_cf32(out.at(k, i));
    return out;
}

inline void write_cf32(const std::string &path, const Snapshot &x)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_cf32: cannot open " + path);
    for (std::size_t i = 0; i < x.samples(); i++)
        for (std::size_t k = 0; k < x.channels(); k++)
        {
            const float iq[2] = {static_cast<float>(x.at(k, i).real()),
                                 static_cast<float>(x.at(k, i).imag())};
            out.write(reinterpret_cast<const char *>(iq), sizeof(iq));
        }
    if (!out)
        throw std::runtime_error("write_cf32: write failed for " + path);
}

inline IqRecording read_cf32(const std::string &path, std::size_t channels, double sample_rate_hz,
                             double carrier_hz)
{
    if (channels < 2)
        throw std::invalid_argument("read_cf32: at least 2 channels required for DoA");
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in)
        throw std::runtime_error("read_cf32: cannot open " + path);
    const std::streamoff size = in.tellg();
    const std::size_t frame_bytes = 8 * channels; // 2 float32 per channel
    if (static_cast<std::size_t>(size) % frame_bytes != 0)
    {
        const std::size_t offset = static_cast<std::size_t>(size) - static_cast<std::size_t>(size) % frame_bytes;
        throw std::runtime_error("read_cf32: " + path + " is not a whole number of " +
                                 std::to_string(frame_bytes) + "-byte frames (partial frame at byte offset " +
                                 std::to_string(offset) + ")");
    }
    in.seekg(0);

    IqRecording rec;
    rec.channels = channels;
    rec.sample_rate_hz = sample_rate_hz;
    rec.carrier_hz = carrier_hz;
    const std::size_t n_values = static_cast<std::size_t>(size) / sizeof(float);
    std::vector<float> raw(n_values);
    if (n_values > 0)
        in.read(reinterpret_cast<char *>(raw.data()), size);
    if (!in && n_values > 0)
        throw std::runtime_error("read_cf32: short read on " + path);
    rec.frames.reserve(n_values / 2);
    for (std::size_t i = 0; i + 1 < n_values; i += 2)
        rec.frames.emplace_back(static_cast<double>(raw[i]), static_cast<double>(raw[i + 1]));
    return rec;
}

// Cut a recording into consecutive non-overlapping snapshots; a trailing
// partial window is dropped.
inline std::vector<Snapshot> segment_snapshots(const IqRecording &rec, std::size_t samples_per_snapshot)
{
    if (samples_per_snapshot < 1)
        throw std::invalid_argument("segment_snapshots: window must be >= 1 sample");
    const std::size_t n_windows = rec.frame_count() / samples_per_snapshot;
    std::vector<Snapshot> out;
    out.reserve(n_windows);
    for (std::size_t w = 0; w < n_windows; w++)
    {
        Snapshot snap(rec.channels, samples_per_snapshot, rec.sample_rate_hz);
        for (std::size_t i = 0; i < samples_per_snapshot; i++)
        {
            const std::size_t frame = w * samples_per_snapshot + i;
            for (std::size_t k = 0; k < rec.channels; k++)
                snap.at(k, i) = rec.frames[frame * rec.channels + k];
        }
        out.push_back(std::move(snap));
    }
    return out;
}

} // namespace anfdoa

#endif

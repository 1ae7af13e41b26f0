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

#ifndef ANFDOA_SNAPSHOT_HPP
#define ANFDOA_SNAPSHOT_HPP

#include <span>
#include <vector>

#include "anfdoa/common.hpp"

namespace anfdoa
{

// A block of N simultaneous complex baseband samples on M antennas.
// Row-major, rows are antennas.
class Snapshot
{
  public:
    Snapshot() = default;

    Snapshot(std::size_t channels, std::size_t samples, double sample_rate_hz)
        : channels_(channels), samples_(samples), sample_rate_hz_(sample_rate_hz),
          data_(channels * samples, cxd{0.0, 0.0})
    {
    }

    std::size_t channels() const { return channels_; }
    std::size_t samples() const { return samples_; }
    double sample_rate_hz() const { return sample_rate_hz_; }

    cxd &at(std::size_t channel, std::size_t sample) { return data_[channel * samples_ + sample]; }
    cxd at(std::size_t channel, std::size_t sample) const { return data_[channel * samples_ + sample]; }

    std::span<cxd> row(std::size_t channel) { return {data_.data() + channel * samples_, samples_}; }
    std::span<const cxd> row(std::size_t channel) const
    {
        return {data_.data() + channel * samples_, samples_};
    }

    void validate() const
    {
        if (channels_ < 2)
            throw std::invalid_argument("Snapshot: needs at least 2 channels");
        if (samples_ < 1)
            throw std::invalid_argument("Snapshot: needs at least 1 sample");
        if (!(sample_rate_hz_ > 0.0))
            throw std::invalid_argument("Snapshot: sample rate must be > 0");
        for (const cxd &v : data_)
            if (!is_finite(v))
                throw std::invalid_argument("Snapshot: non-finite sample");
    }

    bool operator==(const Snapshot &) const = default;

  private:
    std::size_t channels_ = 0;
    std::size_t samples_ = 0;
    double sample_rate_hz_ = 0.0;
    std::vector<cxd> data_;
};

} // namespace anfdoa

#endif

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

#ifndef ANFDOA_REPORT_HPP
#define ANFDOA_REPORT_HPP

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "anfdoa/bench.hpp"
#include "anfdoa/spectrum.hpp"

namespace anfdoa
{

// Locale-independent fixed formatting so identical runs produce identical
// bytes.
inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

inline void write_trials_csv(const std::string &path, const McResult &result)
{
    std::ofstream out = open_out(path);
    out << "trial_id,tx,theta_true,theta_anf,theta_oracle,stage,trace_median_hz\n";
    for (const TrialResult &tr : result.trials)
    {
        if (tr.failed)
        {
            out << tr.trial_id << ",,,,,,\n";
            continue;
        }
        for (std::size_t tx = 0; tx < tr.per_tx.size(); tx++)
        {
            const TxTrialRecord &rec = tr.per_tx[tx];
            out << tr.trial_id << ',' << tx << ',' << fmt_double(rec.theta_true) << ','
                << fmt_double(rec.theta_anf) << ',' << fmt_double(rec.theta_oracle) << ',' << rec.stage
                << ',' << fmt_double(rec.trace_median_hz) << '\n';
        }
    }
}

inline void write_summary_json(const std::string &path, const McResult &result,
                               const nlohmann::json &config_echo, std::uint64_t base_seed)
{
    nlohmann::json j;
    j["trials"] = result.summary.trials;
    j["failures"] = result.summary.failures;
    j["base_seed"] = base_seed;
    j["rmse_deg"] = nlohmann::json::array();
    for (std::size_t tx = 0; tx < result.summary.rmse_anf.size(); tx++)
        j["rmse_deg"].push_back({{"tx", tx},
                                 {"anf", result.summary.rmse_anf[tx]},
                                 {"oracle", result.summary.rmse_oracle[tx]}});
    j["config"] = config_echo;
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

inline void write_sweep_csv(const std::string &path, std::span<const SweepRow> rows)
{
    std::ofstream out = open_out(path);
    out << "delta_f_khz,label,tx0_rmse_deg,tx1_rmse_deg,trials\n";
    for (const SweepRow &row : rows)
        out << fmt_double(row.delta_f_khz) << ',' << (row.overlap ? "overlap" : "offset") << ','
            << fmt_double(row.tx0_rmse_deg) << ',' << fmt_double(row.tx1_rmse_deg) << ',' << row.trials
            << '\n';
}

inline void write_psd_csv(const std::string &path, const PsdData &psd)
{
    std::ofstream out = open_out(path);
    out << "freq_hz,power_db\n";
    for (std::size_t i = 0; i < psd.freq_hz.size(); i++)
        out << fmt_double(psd.freq_hz[i]) << ',' << fmt_double(psd.power_db[i]) << '\n';
}

inline void write_capon_csv(const std::string &path, const CaponSpectrum &spec)
{
    std::ofstream out = open_out(path);
    out << "angle_deg,power_db\n";
    for (std::size_t i = 0; i < spec.angles_deg.size(); i++)
        out << fmt_double(spec.angles_deg[i]) << ','
            << fmt_double(10.0 * std::log10(spec.power[i] + 1e-300)) << '\n';
}

} // namespace anfdoa

#endif

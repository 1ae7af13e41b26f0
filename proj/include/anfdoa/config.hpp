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

#ifndef ANFDOA_CONFIG_HPP
#define ANFDOA_CONFIG_HPP

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "anfdoa/anf.hpp"
#include "anfdoa/doa.hpp"
#include "anfdoa/sim.hpp"

namespace anfdoa
{

// Monte Carlo options plus the boundary-sweep grid.
struct McConfig
{
    std::size_t trials = 400;
    std::uint64_t base_seed = 1;
    std::vector<double> sweep_delta_khz = {-2500.0, -1200.0, -900.0, -750.0, -600.0, -200.0};
    bool sweep_include_overlap = true;
};

// Everything one scenario run needs: scene, tracker constants, array/grid,
// and the pipeline knobs left open by the estimator.
struct ScenarioConfig
{
    Scene scene;
    NotchParams notch;
    ArrayConfig array;
    McConfig mc;
    std::vector<double> init_offsets;          // empty selects the evenly spaced default
    std::optional<double> isolation_pole_radius; // unset reuses notch.pole_radius
    std::size_t capon_warmup_samples = 0;      // samples dropped before the covariance

    void validate() const
    {
        scene.validate();
        notch.validate();
        array.validate();
        if (capon_warmup_samples >= scene.samples)
            throw std::invalid_argument("doa.warmup_samples: must be smaller than scene.samples");
        for (double off : init_offsets)
            if (!(off >= -0.5 && off <= 0.5))
                throw std::invalid_argument("anf.init_offsets: values must lie in [-0.5, 0.5]");
        if (isolation_pole_radius && !(*isolation_pole_radius > 0.0 && *isolation_pole_radius < 1.0))
            throw std::invalid_argument("anf.isolation_pole_radius: must be in (0, 1)");
    }
};

namespace detail
{

inline Vec3 vec3_from_json(const nlohmann::json &j, const std::string &field)
{
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument(field + ": expected an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json vec3_to_json(const Vec3 &v) { return nlohmann::json::array({v.x, v.y, v.z}); }

} // namespace detail

// Reference two-transmitter scenario: a tone near -0.4 fs and a chirp
// sweeping 0.2 to 0.35 fs, true angles close to -31 and +23 degrees from
// broadside. Tx0 is tilted 25 degrees off the array so its channel picks up
// more wall bounces than the tightly aimed Tx1.
inline ScenarioConfig default_two_tx_config()
{
    ScenarioConfig cfg;

    Transmitter tx0;
    const double theta0 = deg2rad(-31.0);
    const Vec3 u0{std::sin(theta0), std::cos(theta0), 0.0};
    tx0.pos = cfg.scene.rx_center + u0 * 4.0;
    tx0.kind = WaveformKind::tone;
    tx0.f0_hz = -1.6e6;
    tx0.beam = BeamKind::directional;
    tx0.beam_exponent = 2.0;
    const double tilt = deg2rad(25.0);
    const double bore = std::atan2(-u0.y, -u0.x) + tilt;
    tx0.orient = Vec3{std::cos(bore), std::sin(bore), 0.0};
    tx0.power = 1.5 * 4.0 / std::pow(std::cos(tilt), 2.0); // amplitude ~1.5 at the array

    Transmitter tx1;
    const double theta1 = deg2rad(23.0);
    const Vec3 u1{std::sin(theta1), std::cos(theta1), 0.0};
    tx1.pos = cfg.scene.rx_center + u1 * 3.0;
    tx1.kind = WaveformKind::chirp;
    tx1.f_start_hz = 0.8e6;
    tx1.f_end_hz = 1.4e6;
    tx1.power = 0.5 * 3.0; // amplitude ~0.5 at the array
    tx1.beam = BeamKind::directional;
    tx1.beam_exponent = 10.0;
    tx1.orient = (cfg.scene.rx_center - tx1.pos).normalized();

    cfg.scene.txs = {tx0, tx1};
    return cfg;
}

inline nlohmann::json scenario_to_json(const ScenarioConfig &cfg)
{
    nlohmann::json j;
    j["room"] = {{"dims", detail::vec3_to_json(cfg.scene.room.dims)},
                 {"refl_range", {cfg.scene.room.refl_min, cfg.scene.room.refl_max}}};
    j["rx"] = {{"center", detail::vec3_to_json(cfg.scene.rx_center)},
               {"axis", detail::vec3_to_json(cfg.scene.rx_axis)},
               {"channels", cfg.scene.channels},
               {"spacing_m", cfg.scene.spacing_m}};
    j["carrier_hz"] = cfg.scene.carrier_hz;
    j["sample_rate_hz"] = cfg.scene.sample_rate_hz;
    j["samples"] = cfg.scene.samples;
    j["noise_sigma"] = cfg.scene.noise_sigma;

    j["txs"] = nlohmann::json::array();
    for (const Transmitter &tx : cfg.scene.txs)
    {
        nlohmann::json t;
        t["pos"] = detail::vec3_to_json(tx.pos);
        if (tx.kind == WaveformKind::tone)
        {
            t["kind"] = "tone";
            t["f0_hz"] = tx.f0_hz;
        }
        else
        {
            t["kind"] = "chirp";
            t["f_start_hz"] = tx.f_start_hz;
            t["f_end_hz"] = tx.f_end_hz;
        }
        t["power"] = tx.power;
        t["beam"] = tx.beam == BeamKind::lambertian ? "lambertian" : "directional";
        t["orient"] = detail::vec3_to_json(tx.orient);
        if (tx.beam == BeamKind::directional)
            t["exponent"] = tx.beam_exponent;
        t["phase0"] = tx.phase0;
        j["txs"].push_back(t);
    }

    j["anf"] = {{"k_a", cfg.notch.pole_radius},
                {"mu", cfg.notch.step_gain},
                {"alpha", cfg.notch.power_alpha},
                {"p_floor", cfg.notch.power_floor},
                {"init_offsets", cfg.init_offsets}};
    if (cfg.isolation_pole_radius)
        j["anf"]["isolation_k_a"] = *cfg.isolation_pole_radius;

    j["doa"] = {{"d_over_lambda", cfg.array.spacing_wavelengths},
                {"grid_start_deg", cfg.array.grid_start_deg},
                {"grid_stop_deg", cfg.array.grid_stop_deg},
                {"grid_step_deg", cfg.array.grid_step_deg},
                {"loading_rel", cfg.array.loading_rel},
                {"warmup_samples", cfg.capon_warmup_samples}};

    j["mc"] = {{"trials", cfg.mc.trials},
               {"base_seed", cfg.mc.base_seed},
               {"sweep_delta_khz", cfg.mc.sweep_delta_khz},
               {"sweep_include_overlap", cfg.mc.sweep_include_overlap}};
    return j;
}

// Parse a scenario from JSON. Unknown keys are rejected so typos do not pass
// silently; missing sections fall back to the two-transmitter defaults.
inline ScenarioConfig scenario_from_json(const nlohmann::json &j)
{
    ScenarioConfig cfg = default_two_tx_config();

    auto check_keys = [](const nlohmann::json &obj, const std::string &where,
                         std::initializer_list<const char *> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
        {
            bool ok = false;
            for (const char *k : allowed)
                if (it.key() == k)
                {
                    ok = true;
                    break;
                }
            if (!ok)
                throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
        }
    };

    check_keys(j, "config",
               {"room", "rx", "carrier_hz", "sample_rate_hz", "samples", "noise_sigma", "txs", "anf",
                "doa", "mc"});

    if (j.contains("room"))
    {
        const auto &r = j["room"];
        check_keys(r, "room", {"dims", "refl_range"});
        if (r.contains("dims"))
            cfg.scene.room.dims = detail::vec3_from_json(r["dims"], "room.dims");
        if (r.contains("refl_range"))
        {
            if (!r["refl_range"].is_array() || r["refl_range"].size() != 2)
                throw std::invalid_argument("room.refl_range: expected [min, max]");
            cfg.scene.room.refl_min = r["refl_range"][0].get<double>();
            cfg.scene.room.refl_max = r["refl_range"][1].get<double>();
        }
    }
    if (j.contains("rx"))
    {
        const auto &r = j["rx"];
        check_keys(r, "rx", {"center", "axis", "channels", "spacing_m"});
        if (r.contains("center"))
            cfg.scene.rx_center = detail::vec3_from_json(r["center"], "rx.center");
        if (r.contains("axis"))
            cfg.scene.rx_axis = detail::vec3_from_json(r["axis"], "rx.axis");
        if (r.contains("channels"))
            cfg.scene.channels = r["channels"].get<std::size_t>();
        if (r.contains("spacing_m"))
            cfg.scene.spacing_m = r["spacing_m"].get<double>();
    }
    if (j.contains("carrier_hz"))
        cfg.scene.carrier_hz = j["carrier_hz"].get<double>();
    if (j.contains("sample_rate_hz"))
        cfg.scene.sample_rate_hz = j["sample_rate_hz"].get<double>();
    if (j.contains("samples"))
        cfg.scene.samples = j["samples"].get<std::size_t>();
    if (j.contains("noise_sigma"))
        cfg.scene.noise_sigma = j["noise_sigma"].get<double>();

    if (j.contains("txs"))
    {
        if (!j["txs"].is_array() || j["txs"].empty())
            throw std::invalid_argument("txs: expected a non-empty array");
        cfg.scene.txs.clear();
        std::size_t idx = 0;
        for (const auto &t : j["txs"])
        {
            const std::string field = "txs[" + std::to_string(idx++) + "]";
            check_keys(t, field,
                       {"pos", "kind", "f0_hz", "f_start_hz", "f_end_hz", "power", "beam", "orient",
                        "exponent", "phase0"});
            Transmitter tx;
            if (!t.contains("pos"))
                throw std::invalid_argument(field + ".pos: required");
            tx.pos = detail::vec3_from_json(t["pos"], field + ".pos");
            const std::string kind = t.value("kind", std::string("tone"));
            if (kind == "tone")
            {
                tx.kind = WaveformKind::tone;
                tx.f0_hz = t.value("f0_hz", 0.0);
            }
            else if (kind == "chirp")
            {
                tx.kind = WaveformKind::chirp;
                if (!t.contains("f_start_hz") || !t.contains("f_end_hz"))
                    throw std::invalid_argument(field + ": chirp needs f_start_hz and f_end_hz");
                tx.f_start_hz = t["f_start_hz"].get<double>();
                tx.f_end_hz = t["f_end_hz"].get<double>();
            }
            else
                throw std::invalid_argument(field + ".kind: expected 'tone' or 'chirp'");
            tx.power = t.value("power", 1.0);
            const std::string beam = t.value("beam", std::string("lambertian"));
            if (beam == "lambertian")
                tx.beam = BeamKind::lambertian;
            else if (beam == "directional")
                tx.beam = BeamKind::directional;
            else
                throw std::invalid_argument(field + ".beam: expected 'lambertian' or 'directional'");
            if (t.contains("orient"))
                tx.orient = detail::vec3_from_json(t["orient"], field + ".orient");
            tx.beam_exponent = t.value("exponent", 1.0);
            tx.phase0 = t.value("phase0", 0.0);
            cfg.scene.txs.push_back(tx);
        }
    }

    if (j.contains("anf"))
    {
        const auto &a = j["anf"];
        check_keys(a, "anf", {"k_a", "mu", "alpha", "p_floor", "init_offsets", "isolation_k_a"});
        cfg.notch.pole_radius = a.value("k_a", cfg.notch.pole_radius);
        cfg.notch.step_gain = a.value("mu", cfg.notch.step_gain);
        cfg.notch.power_alpha = a.value("alpha", cfg.notch.power_alpha);
        cfg.notch.power_floor = a.value("p_floor", cfg.notch.power_floor);
        if (a.contains("init_offsets"))
            cfg.init_offsets = a["init_offsets"].get<std::vector<double>>();
        if (a.contains("isolation_k_a"))
            cfg.isolation_pole_radius = a["isolation_k_a"].get<double>();
    }
    if (j.contains("doa"))
    {
        const auto &d = j["doa"];
        check_keys(d, "doa",
                   {"d_over_lambda", "grid_start_deg", "grid_stop_deg", "grid_step_deg", "loading_rel",
                    "warmup_samples"});
        cfg.array.spacing_wavelengths = d.value("d_over_lambda", cfg.array.spacing_wavelengths);
        cfg.array.grid_start_deg = d.value("grid_start_deg", cfg.array.grid_start_deg);
        cfg.array.grid_stop_deg = d.value("grid_stop_deg", cfg.array.grid_stop_deg);
        cfg.array.grid_step_deg = d.value("grid_step_deg", cfg.array.grid_step_deg);
        cfg.array.loading_rel = d.value("loading_rel", cfg.array.loading_rel);
        cfg.capon_warmup_samples = d.value("warmup_samples", cfg.capon_warmup_samples);
    }
    if (j.contains("mc"))
    {
        const auto &m = j["mc"];
        check_keys(m, "mc", {"trials", "base_seed", "sweep_delta_khz", "sweep_include_overlap"});
        cfg.mc.trials = m.value("trials", cfg.mc.trials);
        cfg.mc.base_seed = m.value("base_seed", cfg.mc.base_seed);
        if (m.contains("sweep_delta_khz"))
            cfg.mc.sweep_delta_khz = m["sweep_delta_khz"].get<std::vector<double>>();
        cfg.mc.sweep_include_overlap = m.value("sweep_include_overlap", cfg.mc.sweep_include_overlap);
    }

    cfg.array.elements = cfg.scene.channels;
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace anfdoa

#endif

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

#ifndef ANFDOA_ANF_HPP
#define ANFDOA_ANF_HPP

#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "anfdoa/common.hpp"

namespace anfdoa
{

// Constants of the single-pole complex adaptive notch filter.
struct NotchParams
{
    double pole_radius = 0.70; // k_a, notch pole distance from the unit circle, in (0, 1)
    double step_gain = 0.10;   // NLMS gain, > 0
    double power_alpha = 0.01; // EMA coefficient for the input-power estimate, in (0, 1]
    double power_floor = 1e-12; // lower bound on the power estimate used for normalization

    void validate() const
    {
        if (!(pole_radius > 0.0 && pole_radius < 1.0))
            throw std::invalid_argument("NotchParams: pole_radius must be in (0, 1)");
        if (!(step_gain > 0.0))
            throw std::invalid_argument("NotchParams: step_gain must be > 0");
        if (!(power_alpha > 0.0 && power_alpha <= 1.0))
            throw std::invalid_argument("NotchParams: power_alpha must be in (0, 1]");
        if (!(power_floor > 0.0))
            throw std::invalid_argument("NotchParams: power_floor must be > 0");
    }
};

// Running state of one notch stage on one stream. Plain value, safe to copy
// and move between threads; all adaptation is single-threaded per stream.
struct NotchState
{
    double omega = 0.0; // notch frequency, rad/sample, always in [-pi, pi]
    cxd xr_prev = {0.0, 0.0}; // intermediate state x^r of the previous sample
    double power = 0.0; // EMA estimate of the input power
};

static_assert(std::is_trivially_copyable_v<NotchState>);

// Saturating clamp to the Nyquist interval [-pi, pi]. Deliberately not a
// wrap-around: wrapping would let an adapting notch jump across Nyquist.
inline double clip_to_nyquist(double omega)
{
    if (!std::isfinite(omega))
        throw std::invalid_argument("clip_to_nyquist: non-finite frequency");
    if (omega > pi)
        return pi;
    if (omega < -pi)
        return -pi;
    return omega;
}

// One sample through the notch recurrence
//   x^r_n = x_n + k_a z x^r_{n-1},  y_n = x^r_n - z x^r_{n-1},  z = e^{j omega}.
// Returns the output sample and the state with x^r advanced; frequency and
// power are untouched (adaptation is a separate step).
[[nodiscard]] inline std::pair<cxd, NotchState> notch_step(NotchState s, cxd x, const NotchParams &p)
{
    if (!is_finite(x))
        throw std::invalid_argument("notch_step: non-finite input sample");
    const cxd z = std::polar(1.0, s.omega);
    const cxd zxr = z * s.xr_prev;
    const cxd xr = x + p.pole_radius * zxr;
    const cxd y = xr - zxr;
    s.xr_prev = xr;
    return {y, s};
}

// EMA power recurrence with a floor: max(p_floor, (1-alpha) p + alpha |x|^2).
[[nodiscard]] inline double ema_power(double p_hat, cxd x, double alpha, double p_floor)
{
    if (!is_finite(x))
        throw std::invalid_argument("ema_power: non-finite input sample");
    const double p = (1.0 - alpha) * p_hat + alpha * std::norm(x);
    return p < p_floor ? p_floor : p;
}

// Derivative of the instantaneous output power |y_n|^2 with respect to the
// notch frequency, holding the input sample and x^r_{n-1} fixed:
//   d|y|^2/dw = 2 (k_a - 1) Re{ y* j z x^r_{n-1} },  z = e^{j omega}.
inline double frequency_gradient(cxd y, double omega, cxd xr_prev, double pole_radius)
{
    const cxd z = std::polar(1.0, omega);
    const cxd jz_xr = cxd(0.0, 1.0) * z * xr_prev;
    return 2.0 * (pole_radius - 1.0) * std::real(std::conj(y) * jz_xr);
}

// NLMS frequency update. `s` must carry the pre-step intermediate state
// x^r_{n-1} (the one `y` was produced from) and the current power estimate.
// Degenerate inputs (y = 0 or x^r_{n-1} = 0) leave the frequency unchanged.
[[nodiscard]] inline NotchState nlms_update(NotchState s, cxd y, const NotchParams &p)
{
    const double grad = frequency_gradient(y, s.omega, s.xr_prev, p.pole_radius);
    const double power = s.power < p.power_floor ? p.power_floor : s.power;
    s.omega = clip_to_nyquist(s.omega - p.step_gain / power * grad);
    return s;
}

// Streaming tracker: per sample runs filter -> power EMA -> frequency update.
// Constant work per sample, no allocation, no transform.
class AdaptiveNotch
{
  public:
    AdaptiveNotch(const NotchParams &params, double omega0) : params_(params)
    {
        params_.validate();
        state_.omega = clip_to_nyquist(omega0);
    }

    cxd process(cxd x)
    {
        if (!primed_)
        {
            // Power EMA starts from the first sample so the very first NLMS
            // step is already scale-normalized.
            const double p0 = std::norm(x);
            state_.power = p0 > params_.power_floor ? p0 : params_.power_floor;
            primed_ = true;
        }
        auto [y, next] = notch_step(state_, x, params_);
        const double p = ema_power(state_.power, x, params_.power_alpha, params_.power_floor);
        NotchState pre_update{state_.omega, state_.xr_prev, p};
        next.omega = nlms_update(pre_update, y, params_).omega;
        next.power = p;
        state_ = next;
        return y;
    }

    double omega() const { return state_.omega; }
    double power() const { return state_.power; }
    const NotchState &state() const { return state_; }

  private:
    NotchParams params_;
    NotchState state_;
    bool primed_ = false;
};

struct NotchRun
{
    std::vector<cxd> residual;      // notch output stream
    std::vector<double> omega_trace; // post-update frequency per sample, rad/sample
};

// Run the tracker over a whole record. The trace records the frequency after
// the update for each sample, in rad/sample; callers convert to Hz.
inline NotchRun run_notch(std::span<const cxd> x, const NotchParams &params, double omega0)
{
    if (x.empty())
        throw std::invalid_argument("run_notch: empty input");
    AdaptiveNotch notch(params, omega0);
    NotchRun out;
    out.residual.reserve(x.size());
    out.omega_trace.reserve(x.size());
    for (const cxd &sample : x)
    {
        out.residual.push_back(notch.process(sample));
        out.omega_trace.push_back(notch.omega());
    }
    return out;
}

} // namespace anfdoa

#endif

// SPDX-License-Identifier: Apache-2.0
//
// subthz - TTD/PS hybrid precoding simulator for multi-user sub-THz MIMO-OFDM
// Copyright (C) 2026 The subthz authors
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

#include "subthz/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subthz
{

namespace
{

template <typename Count>
double min_objective(std::span<const double> alpha_tilde, std::span<const Count> counts)
{
    if (alpha_tilde.size() != counts.size() || alpha_tilde.empty())
        throw std::invalid_argument("min_subarray_objective: gains and counts must have the same non-zero length");
    double best = alpha_tilde[0] * static_cast<double>(counts[0]);
    for (std::size_t n = 1; n < counts.size(); ++n)
        best = std::min(best, alpha_tilde[n] * static_cast<double>(counts[n]));
    return best;
}

double bound_prefactor(const SystemConfig &cfg, double omega)
{
    return cfg.snr_linear * omega * cfg.num_rx_antennas * cfg.num_tx_antennas / (std::numbers::ln2 * cfg.num_users);
}

} // namespace

std::vector<double> achievable_rates(const ChannelRealization &real, const AnalogPrecoder &analog,
                                     const DigitalPrecoder &digital, const SubcarrierGrid &grid,
                                     const SystemConfig &cfg)
{
    const int N = real.num_users();
    const double per_stream = cfg.snr_linear / N;
    std::vector<double> rates(N, 0.0);
    for (int k = 1; k <= grid.size(); ++k)
    {
        const AnalogBlocks blocks = assemble_analog_precoder(analog, grid, k);
        const Eigen::MatrixXcd received = effective_channel(real, blocks, grid, k, cfg) * digital.at(k);
        for (int n = 0; n < N; ++n)
        {
            double interference = 0.0;
            for (int j = 0; j < N; ++j)
                if (j != n)
                    interference += per_stream * std::norm(received(n, j));
            const double signal = per_stream * std::norm(received(n, n));
            rates[n] += std::log2(1.0 + signal / (interference + 1.0));
        }
    }
    return rates;
}

double achievable_rate(const ChannelRealization &real, const AnalogPrecoder &analog, const DigitalPrecoder &digital,
                       const SubcarrierGrid &grid, const SystemConfig &cfg, int n)
{
    if (n < 1 || n > real.num_users())
        throw std::out_of_range("user index out of range");
    return achievable_rates(real, analog, digital, grid, cfg)[n - 1];
}

std::vector<double> subarray_gains(const ChannelRealization &real, const AnalogPrecoder &analog,
                                   const SubcarrierGrid &grid, const Allocation &alloc, int k)
{
    std::vector<double> out;
    out.reserve(analog.num_subarrays());
    for (int l = 1; l <= analog.num_subarrays(); ++l)
    {
        const double psi = real.user(alloc.serving_user(l)).psi;
        const ArrayVector u = subarray_response(grid, psi, k, l, analog.ttds_per_subarray, analog.ps_per_ttd,
                                                analog.num_tx);
        out.push_back(std::abs(u.dot(subprecoder(analog, grid, k, l))));
    }
    return out;
}

SubarrayGain average_subarray_gain(const ChannelRealization &real, const AnalogPrecoder &analog,
                                   const SubcarrierGrid &grid, const Allocation &alloc, int k)
{
    const auto gains = subarray_gains(real, analog, grid, alloc, k);
    double sum = 0.0;
    for (double g : gains)
        sum += g;
    const double L = static_cast<double>(gains.size());
    return {sum / L, sum};
}

GainProfile gain_profile(const ChannelRealization &real, const AnalogPrecoder &analog, const SubcarrierGrid &grid,
                         const Allocation &alloc)
{
    GainProfile out;
    out.raw.reserve(grid.size());
    out.normalized.reserve(grid.size());
    for (int k = 1; k <= grid.size(); ++k)
    {
        const SubarrayGain g = average_subarray_gain(real, analog, grid, alloc, k);
        out.raw.push_back(g.raw);
        out.normalized.push_back(g.normalized);
    }
    return out;
}

double rate_upper_bound(double alpha_tilde_n, int subarray_count, const SystemConfig &cfg, double omega)
{
    return bound_prefactor(cfg, omega) * (static_cast<double>(subarray_count) / cfg.num_rf_chains) * alpha_tilde_n;
}

double finite_size_rate_bound(const ChannelRealization &real, const AnalogPrecoder &analog,
                              const SubcarrierGrid &grid, const SystemConfig &cfg, double omega, int n)
{
    const UserChannel &user = real.user(n);
    double acc = 0.0;
    for (int k = 1; k <= grid.size(); ++k)
    {
        double projection = 0.0; // ||u_{k,n}^H F||^2
        for (int l = 1; l <= analog.num_subarrays(); ++l)
        {
            const ArrayVector u = subarray_response(grid, user.psi, k, l, analog.ttds_per_subarray,
                                                    analog.ps_per_ttd, analog.num_tx);
            projection += std::norm(u.dot(subprecoder(analog, grid, k, l)));
        }
        acc += std::norm(user.gains[k - 1]) * projection;
    }
    return bound_prefactor(cfg, omega) * acc;
}

double min_subarray_objective(std::span<const double> alpha_tilde, std::span<const int> counts)
{
    return min_objective(alpha_tilde, counts);
}

double min_subarray_objective(std::span<const double> alpha_tilde, std::span<const double> counts)
{
    return min_objective(alpha_tilde, counts);
}

CdfSeries empirical_cdf(std::vector<double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_cdf: no samples");
    std::sort(samples.begin(), samples.end());
    CdfSeries out;
    const double n = static_cast<double>(samples.size());
    out.probabilities.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out.probabilities.push_back(static_cast<double>(i + 1) / n);
    out.values = std::move(samples);
    return out;
}

} // namespace subthz

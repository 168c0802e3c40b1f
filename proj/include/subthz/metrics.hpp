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

#ifndef SUBTHZ_METRICS_HPP
#define SUBTHZ_METRICS_HPP

#include "subthz/allocation.hpp"
#include "subthz/analog_precoder.hpp"
#include "subthz/digital_precoder.hpp"

#include <span>
#include <vector>

namespace subthz
{

struct RateReport
{
    std::vector<double> rates;        // R_n in bit/s/Hz, summed over subcarriers
    double min_rate = 0.0;
    std::vector<double> bound_lemma1; // asymptotic (large subarray) bound
    std::vector<double> bound_finite; // non-asymptotic bound, holds at any subarray size
};

struct SubarrayGain
{
    double raw = 0.0;        // (1/N_RF) sum_n sum_{l in S_n} |u_{k,n,l}^H f_{k,l}|
    double normalized = 0.0; // raw * N_RF, 1 for ideal sub-precoders
};

struct GainProfile
{
    std::vector<double> raw;        // per subcarrier, 0-based
    std::vector<double> normalized;
};

struct CdfSeries
{
    std::vector<double> values;        // ascending
    std::vector<double> probabilities; // i / n
};

/// Achievable rate of user n (1-based):
/// sum_k log2(1 + (rho/N) |g_n w_n|^2 / (sum_{n' != n} (rho/N) |g_n w_n'|^2 + 1)),
/// where g_n = v^H H_{k,n} F_1 F_{2,k}. The rank-1 channel gives ||H F w|| = |g_n w|.
double achievable_rate(const ChannelRealization &real, const AnalogPrecoder &analog, const DigitalPrecoder &digital,
                       const SubcarrierGrid &grid, const SystemConfig &cfg, int n);
std::vector<double> achievable_rates(const ChannelRealization &real, const AnalogPrecoder &analog,
                                     const DigitalPrecoder &digital, const SubcarrierGrid &grid,
                                     const SystemConfig &cfg);

// |u_{k,n,l}^H f_{k,l}| for every subarray l, with n the serving user of l.
std::vector<double> subarray_gains(const ChannelRealization &real, const AnalogPrecoder &analog,
                                   const SubcarrierGrid &grid, const Allocation &alloc, int k);
SubarrayGain average_subarray_gain(const ChannelRealization &real, const AnalogPrecoder &analog,
                                   const SubcarrierGrid &grid, const Allocation &alloc, int k);
GainProfile gain_profile(const ChannelRealization &real, const AnalogPrecoder &analog, const SubcarrierGrid &grid,
                         const Allocation &alloc);

// (rho omega N_r N_t / (ln 2 N)) (|S_n| / N_RF) alpha_tilde_n
double rate_upper_bound(double alpha_tilde_n, int subarray_count, const SystemConfig &cfg, double omega);

// (omega rho N_r N_t / (ln 2 N)) sum_k |alpha_{k,n}|^2 ||u_{k,n}^H F_1 F_{2,k}||^2
double finite_size_rate_bound(const ChannelRealization &real, const AnalogPrecoder &analog,
                              const SubcarrierGrid &grid, const SystemConfig &cfg, double omega, int n);

// min_n alpha_tilde_n |S_n|
double min_subarray_objective(std::span<const double> alpha_tilde, std::span<const int> counts);
double min_subarray_objective(std::span<const double> alpha_tilde, std::span<const double> counts);

// Throws std::invalid_argument on empty input.
CdfSeries empirical_cdf(std::vector<double> samples);

} // namespace subthz

#endif

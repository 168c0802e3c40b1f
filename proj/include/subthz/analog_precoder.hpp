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

#ifndef SUBTHZ_ANALOG_PRECODER_HPP
#define SUBTHZ_ANALOG_PRECODER_HPP

#include "subthz/allocation.hpp"
#include "subthz/channel.hpp"
#include "subthz/config.hpp"

#include <span>
#include <vector>

namespace subthz
{

struct SolverTraceRow
{
    int l = 0;
    int m = 0;
    int iteration = 0;
    double delay_s = 0.0;
    double nmse = 0.0;
};

/// PS/TTD values of one subarray.
///
/// Phases are unwrapped reals applied as exp(j pi x); they are never reduced
/// modulo 2, since the phase-domain objective is quadratic in x itself.
struct SubarraySolution
{
    std::vector<double> delays; // t_{l,m}, m = 1..M
    std::vector<double> phases; // x_{l,m,p} stored at (m-1)*P + (p-1)
    int iterations_used = 0;    // largest iteration count over the M TTDs
    double final_nmse = 0.0;    // largest final NMSE over the M TTDs
    int clamped_ttds = 0;       // TTDs whose last proposed delay fell outside the grid range
    std::vector<SolverTraceRow> trace;
};

enum class PrecoderMethod
{
    algorithm1,
    ideal
};

struct AnalogPrecoder
{
    PrecoderMethod method = PrecoderMethod::algorithm1;
    int ttds_per_subarray = 0;
    int ps_per_ttd = 0;
    int num_tx = 0;
    std::vector<SubarraySolution> solutions; // algorithm1, one per subarray
    std::vector<double> steering;            // ideal, psi of the serving user per subarray

    int num_subarrays() const { return num_tx / (ttds_per_subarray * ps_per_ttd); }
    int clamped_ttds() const;
};

// Per-subcarrier analog precoder F_1 F_{2,k} kept in block-diagonal form: block l is f_{k,l}.
struct AnalogBlocks
{
    std::vector<ArrayVector> blocks;

    int num_subarrays() const { return static_cast<int>(blocks.size()); }
    Eigen::MatrixXcd dense() const; // N_t x N_RF
};

// gamma_{l,m,p} = ((l-1) M P + (m-1) P + p - 1) psi, stored at (m-1)*P + (p-1).
std::vector<double> gamma_coefficients(int l, double psi, int ttds_per_subarray, int ps_per_ttd);

// Minimizer over t of sum_k sum_p (-2 f_c xi_k t + x_p + xi_k gamma_p)^2 with the phases held fixed.
double ttd_update(std::span<const double> phases, std::span<const double> gammas, const SubcarrierGrid &grid);

// Minimizer over x of the same objective with t held fixed: x_p = 2 f_c t - gamma_p.
std::vector<double> ps_update(double delay_s, std::span<const double> gammas, double carrier_hz);

// Alternating PS/TTD design of subarray l (1-based) steered at psi.
SubarraySolution optimize_subarray(const SubcarrierGrid &grid, double psi, int l, const TtdGrid &ttd_grid,
                                   const SystemConfig &cfg);

// Algorithm-1 design for every subarray, each steered at its serving user.
AnalogPrecoder design_algorithm1(const ChannelRealization &real, const Allocation &alloc, const SubcarrierGrid &grid,
                                 const TtdGrid &ttd_grid, const SystemConfig &cfg);

// Ideal sub-precoders f_{k,l} = u_{k,n,l} (no hardware constraint).
AnalogPrecoder design_ideal(const ChannelRealization &real, const Allocation &alloc, const SystemConfig &cfg);

ArrayVector ideal_subprecoder(const SubcarrierGrid &grid, double psi, int k, int l, const SystemConfig &cfg);

// f_{k,l}; entry (m,p) = N_t^{-1/2} exp(j pi x_{l,m,p}) exp(-j 2 pi f_k t_{l,m}) for algorithm1.
ArrayVector subprecoder(const AnalogPrecoder &precoder, const SubcarrierGrid &grid, int k, int l);

AnalogBlocks assemble_analog_precoder(const AnalogPrecoder &precoder, const SubcarrierGrid &grid, int k);

} // namespace subthz

#endif

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

#include "subthz/analog_precoder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace subthz
{

int AnalogPrecoder::clamped_ttds() const
{
    int total = 0;
    for (const auto &s : solutions)
        total += s.clamped_ttds;
    return total;
}

Eigen::MatrixXcd AnalogBlocks::dense() const
{
    int rows = 0;
    for (const auto &b : blocks)
        rows += static_cast<int>(b.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, num_subarrays());
    int offset = 0;
    for (int l = 0; l < num_subarrays(); ++l)
    {
        out.block(offset, l, blocks[l].size(), 1) = blocks[l];
        offset += static_cast<int>(blocks[l].size());
    }
    return out;
}

std::vector<double> gamma_coefficients(int l, double psi, int ttds_per_subarray, int ps_per_ttd)
{
    if (l < 1)
        throw std::out_of_range("subarray index must be >= 1");
    const int M = ttds_per_subarray;
    const int P = ps_per_ttd;
    std::vector<double> out(static_cast<std::size_t>(M) * P);
    for (int m = 1; m <= M; ++m)
        for (int p = 1; p <= P; ++p)
            out[(m - 1) * P + (p - 1)] = static_cast<double>((l - 1) * M * P + (m - 1) * P + p - 1) * psi;
    return out;
}

double ttd_update(std::span<const double> phases, std::span<const double> gammas, const SubcarrierGrid &grid)
{
    if (phases.size() != gammas.size() || phases.empty())
        throw std::invalid_argument("ttd_update: phases and gammas must have the same non-zero length");
    const double P = static_cast<double>(phases.size());
    const double sum_x = std::accumulate(phases.begin(), phases.end(), 0.0);
    const double sum_g = std::accumulate(gammas.begin(), gammas.end(), 0.0);
    return (sum_x / grid.gamma_factor() + sum_g) / (2.0 * grid.carrier_hz() * P);
}

std::vector<double> ps_update(double delay_s, std::span<const double> gammas, double carrier_hz)
{
    std::vector<double> out(gammas.size());
    const double common = 2.0 * carrier_hz * delay_s;
    for (std::size_t p = 0; p < gammas.size(); ++p)
        out[p] = common - gammas[p];
    return out;
}

SubarraySolution optimize_subarray(const SubcarrierGrid &grid, double psi, int l, const TtdGrid &ttd_grid,
                                   const SystemConfig &cfg)
{
    const int M = cfg.ttds_per_subarray;
    const int P = cfg.ps_per_ttd;
    const SolverOptions &opt = cfg.solver;
    const double fc = grid.carrier_hz();
    const auto gammas = gamma_coefficients(l, psi, M, P);

    SubarraySolution sol;
    sol.delays.assign(M, 0.0);
    sol.phases.assign(static_cast<std::size_t>(M) * P, 0.0);

    for (int m = 0; m < M; ++m)
    {
        const std::span<const double> gamma_m(gammas.data() + m * P, P);

        double t = 0.0;
        std::vector<double> x(P, 0.0);
        double nmse = 0.0;
        bool clamped = false;
        int iter = 0;
        while (iter < opt.max_iterations)
        {
            ++iter;
            const double proposed = ttd_update(x, gamma_m, grid);
            double t_next = proposed;
            if (opt.quantize_delays)
            {
                t_next = quantize_delay(proposed, ttd_grid);
                clamped = proposed < 0.0 || proposed > ttd_grid.max_delay();
            }
            const auto x_next = ps_update(opt.literal_step7 ? t : t_next, gamma_m, fc);

            double num = (t_next - t) * (t_next - t);
            double den = t_next * t_next;
            for (int p = 0; p < P; ++p)
            {
                num += (x_next[p] - x[p]) * (x_next[p] - x[p]);
                den += x_next[p] * x_next[p];
            }
            // den == 0 only at the all-zero fixed point
            nmse = den > 0.0 ? num / den : 0.0;

            t = t_next;
            x = x_next;
            if (opt.record_trace)
                sol.trace.push_back({l, m + 1, iter, t, nmse});
            if (nmse <= opt.nmse_threshold)
                break;
        }

        sol.delays[m] = t;
        std::copy(x.begin(), x.end(), sol.phases.begin() + m * P);
        sol.iterations_used = std::max(sol.iterations_used, iter);
        sol.final_nmse = std::max(sol.final_nmse, nmse);
        sol.clamped_ttds += clamped ? 1 : 0;
    }
    return sol;
}

AnalogPrecoder design_algorithm1(const ChannelRealization &real, const Allocation &alloc, const SubcarrierGrid &grid,
                                 const TtdGrid &ttd_grid, const SystemConfig &cfg)
{
    AnalogPrecoder out;
    out.method = PrecoderMethod::algorithm1;
    out.ttds_per_subarray = cfg.ttds_per_subarray;
    out.ps_per_ttd = cfg.ps_per_ttd;
    out.num_tx = cfg.num_tx_antennas;
    out.solutions.reserve(cfg.num_rf_chains);
    for (int l = 1; l <= cfg.num_rf_chains; ++l)
    {
        const double psi = real.user(alloc.serving_user(l)).psi;
        out.solutions.push_back(optimize_subarray(grid, psi, l, ttd_grid, cfg));
    }
    return out;
}

AnalogPrecoder design_ideal(const ChannelRealization &real, const Allocation &alloc, const SystemConfig &cfg)
{
    AnalogPrecoder out;
    out.method = PrecoderMethod::ideal;
    out.ttds_per_subarray = cfg.ttds_per_subarray;
    out.ps_per_ttd = cfg.ps_per_ttd;
    out.num_tx = cfg.num_tx_antennas;
    out.steering.reserve(cfg.num_rf_chains);
    for (int l = 1; l <= cfg.num_rf_chains; ++l)
        out.steering.push_back(real.user(alloc.serving_user(l)).psi);
    return out;
}

ArrayVector ideal_subprecoder(const SubcarrierGrid &grid, double psi, int k, int l, const SystemConfig &cfg)
{
    return subarray_response(grid, psi, k, l, cfg.ttds_per_subarray, cfg.ps_per_ttd, cfg.num_tx_antennas);
}

ArrayVector subprecoder(const AnalogPrecoder &precoder, const SubcarrierGrid &grid, int k, int l)
{
    if (l < 1 || l > precoder.num_subarrays())
        throw std::out_of_range("subarray index " + std::to_string(l) + " outside 1.." +
                                std::to_string(precoder.num_subarrays()));
    const int M = precoder.ttds_per_subarray;
    const int P = precoder.ps_per_ttd;

    if (precoder.method == PrecoderMethod::ideal)
        return subarray_response(grid, precoder.steering[l - 1], k, l, M, P, precoder.num_tx);

    const SubarraySolution &sol = precoder.solutions[l - 1];
    const double fk = grid.frequency(k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(precoder.num_tx));
    ArrayVector f(M * P);
    for (int m = 0; m < M; ++m)
    {
        const double ttd_phase = -2.0 * std::numbers::pi * fk * sol.delays[m];
        for (int p = 0; p < P; ++p)
        {
            const int i = m * P + p;
            f[i] = std::polar(scale, std::numbers::pi * sol.phases[i] + ttd_phase);
        }
    }
    return f;
}

AnalogBlocks assemble_analog_precoder(const AnalogPrecoder &precoder, const SubcarrierGrid &grid, int k)
{
    AnalogBlocks out;
    out.blocks.reserve(precoder.num_subarrays());
    for (int l = 1; l <= precoder.num_subarrays(); ++l)
        out.blocks.push_back(subprecoder(precoder, grid, k, l));
    return out;
}

} // namespace subthz

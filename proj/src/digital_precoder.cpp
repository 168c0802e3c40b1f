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

#include "subthz/digital_precoder.hpp"
#include "subthz/errors.hpp"

#include <algorithm>
#include <cmath>

namespace subthz
{

Eigen::MatrixXcd effective_channel(const ChannelRealization &real, const AnalogBlocks &analog,
                                   const SubcarrierGrid &grid, int k, const SystemConfig &cfg)
{
    const int N = real.num_users();
    const int L = analog.num_subarrays();
    Eigen::MatrixXcd G(N, L);
    for (int n = 1; n <= N; ++n)
    {
        const cdouble coeff = channel_coefficient(real, grid, k, n, cfg);
        const double psi = real.user(n).psi;
        for (int l = 1; l <= L; ++l)
        {
            const ArrayVector u = subarray_response(grid, psi, k, l, cfg.ttds_per_subarray, cfg.ps_per_ttd,
                                                    cfg.num_tx_antennas);
            G(n - 1, l - 1) = coeff * u.dot(analog.blocks[l - 1]); // dot() conjugates u
        }
    }
    return G;
}

Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd &effective)
{
    if (effective.rows() > effective.cols())
        throw SingularChannelError("zero-forcing needs at least as many RF chains as users");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(effective);
    const auto &sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
    if (!(smax > 0.0) || smin < 1e-10 * smax)
        throw SingularChannelError("effective channel is rank deficient or ill-conditioned");

    const Eigen::MatrixXcd gram = effective * effective.adjoint();
    return effective.adjoint() * gram.partialPivLu().inverse();
}

Eigen::MatrixXcd matched_precoder(const Allocation &alloc)
{
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(alloc.num_subarrays(), alloc.num_users());
    for (int n = 0; n < alloc.num_users(); ++n)
        for (int l = alloc.ranges[n].first; l <= alloc.ranges[n].last; ++l)
            W(l - 1, n) = 1.0;
    return W;
}

double transmit_power(const AnalogBlocks &analog, const Eigen::MatrixXcd &digital)
{
    // F W stacks f_l W(l, :) per subarray, so the blocks never overlap.
    double power = 0.0;
    for (int l = 0; l < analog.num_subarrays(); ++l)
        power += analog.blocks[l].squaredNorm() * digital.row(l).squaredNorm();
    return power;
}

Eigen::MatrixXcd normalize_power(const AnalogBlocks &analog, const Eigen::MatrixXcd &digital)
{
    const double power = transmit_power(analog, digital);
    if (!(power > 0.0) || !std::isfinite(power))
        throw DegeneratePrecoderError("cannot normalize a precoder with zero or non-finite power");
    return digital * std::sqrt(static_cast<double>(digital.cols()) / power);
}

Eigen::MatrixXcd normalize_columns(const AnalogBlocks &analog, const Eigen::MatrixXcd &digital)
{
    Eigen::MatrixXcd out = digital;
    for (Eigen::Index n = 0; n < digital.cols(); ++n)
    {
        double power = 0.0;
        for (int l = 0; l < analog.num_subarrays(); ++l)
            power += analog.blocks[l].squaredNorm() * std::norm(digital(l, n));
        if (!(power > 0.0) || !std::isfinite(power))
            throw DegeneratePrecoderError("cannot normalize a precoder column with zero or non-finite power");
        out.col(n) *= 1.0 / std::sqrt(power);
    }
    return out;
}

double max_column_power(const DigitalPrecoder &digital)
{
    double omega = 0.0;
    for (const auto &W : digital.per_subcarrier)
        for (Eigen::Index n = 0; n < W.cols(); ++n)
            omega = std::max(omega, W.col(n).squaredNorm());
    return omega;
}

DigitalPrecoder design_digital_precoder(const ChannelRealization &real, const AnalogPrecoder &analog,
                                        const SubcarrierGrid &grid, const Allocation &alloc,
                                        const SystemConfig &cfg)
{
    DigitalPrecoder out;
    out.per_subcarrier.reserve(grid.size());
    for (int k = 1; k <= grid.size(); ++k)
    {
        const AnalogBlocks blocks = assemble_analog_precoder(analog, grid, k);
        const Eigen::MatrixXcd G = effective_channel(real, blocks, grid, k, cfg);
        Eigen::MatrixXcd W;
        try
        {
            W = zf_precoder(G);
        }
        catch (const SingularChannelError &)
        {
            W = matched_precoder(alloc);
            ++out.fallback_subcarriers;
        }
        out.per_subcarrier.push_back(cfg.power_split == PowerSplit::per_user ? normalize_columns(blocks, W)
                                                                             : normalize_power(blocks, W));
    }
    out.omega = max_column_power(out);
    return out;
}

} // namespace subthz

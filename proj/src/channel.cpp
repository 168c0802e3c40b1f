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

#include "subthz/channel.hpp"
#include "subthz/errors.hpp"
#include "format_util.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace subthz
{

namespace
{

void check_subcarrier(const SubcarrierGrid &grid, int k)
{
    if (k < 1 || k > grid.size())
        throw std::out_of_range("subcarrier index " + std::to_string(k) + " outside 1.." +
                                std::to_string(grid.size()));
}

// (1/sqrt(len)) exp(-j pi xi s (i + offset)), i = 0..count-1
ArrayVector steering(double xi_s, int count, int offset, double scale)
{
    ArrayVector out(count);
    for (int i = 0; i < count; ++i)
        out[i] = std::polar(scale, -std::numbers::pi * xi_s * static_cast<double>(offset + i));
    return out;
}

} // namespace

const UserChannel &ChannelRealization::user(int n) const
{
    if (n < 1 || n > num_users())
        throw std::out_of_range("user index " + std::to_string(n) + " outside 1.." + std::to_string(num_users()));
    return users[n - 1];
}

ChannelRealization synthesize_channel(const SystemConfig &cfg, std::mt19937_64 &rng)
{
    if (static_cast<int>(cfg.distances_m.size()) != cfg.num_users)
        throw ConfigError(ConfigErrorKind::dimension_mismatch, "distances_m must list exactly num_users entries");
    for (double d : cfg.distances_m)
        if (!(d > 0.0))
            throw ConfigError(ConfigErrorKind::domain, "user distances must be positive");

    const SubcarrierGrid grid(cfg);
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    ChannelRealization real;
    real.users.resize(cfg.num_users);
    for (int n = 0; n < cfg.num_users; ++n)
    {
        UserChannel &u = real.users[n];
        const double d = cfg.distances_m[n];
        u.psi = std::sin(angle(rng));
        u.phi = std::sin(angle(rng));
        const double theta = phase(rng);
        u.distance_m = d;
        u.delay_s = d / speed_of_light;

        const double absorption = std::exp(-0.5 * cfg.absorption_coeff_per_m * d);
        u.gains.resize(grid.size());
        for (int k = 0; k < grid.size(); ++k)
        {
            const double spreading = speed_of_light / (4.0 * std::numbers::pi * grid.frequencies()[k] * d);
            u.gains[k] = std::polar(spreading * absorption, theta);
        }
    }
    return real;
}

ArrayVector tx_array_response(const SubcarrierGrid &grid, double psi, int k, int num_tx)
{
    check_subcarrier(grid, k);
    if (num_tx < 1)
        throw std::invalid_argument("num_tx must be >= 1");
    return steering(grid.ratio(k) * psi, num_tx, 0, 1.0 / std::sqrt(static_cast<double>(num_tx)));
}

ArrayVector rx_array_response(const SubcarrierGrid &grid, double phi, int k, int num_rx)
{
    check_subcarrier(grid, k);
    if (num_rx < 1)
        throw std::invalid_argument("num_rx must be >= 1");
    return steering(grid.ratio(k) * phi, num_rx, 0, 1.0 / std::sqrt(static_cast<double>(num_rx)));
}

ArrayVector subarray_response(const SubcarrierGrid &grid, double psi, int k, int l, int ttds_per_subarray,
                              int ps_per_ttd, int num_tx)
{
    check_subcarrier(grid, k);
    const int size = ttds_per_subarray * ps_per_ttd;
    if (size < 1 || num_tx % size != 0)
        throw std::invalid_argument("num_tx must be a multiple of the subarray size");
    const int num_subarrays = num_tx / size;
    if (l < 1 || l > num_subarrays)
        throw std::out_of_range("subarray index " + std::to_string(l) + " outside 1.." +
                                std::to_string(num_subarrays));
    return steering(grid.ratio(k) * psi, size, (l - 1) * size, 1.0 / std::sqrt(static_cast<double>(num_tx)));
}

cdouble channel_coefficient(const ChannelRealization &real, const SubcarrierGrid &grid, int k, int n,
                            const SystemConfig &cfg)
{
    check_subcarrier(grid, k);
    const UserChannel &u = real.user(n);
    const double scale = std::sqrt(static_cast<double>(cfg.num_tx_antennas) * cfg.num_rx_antennas);
    return scale * u.gains[k - 1] * std::polar(1.0, -2.0 * std::numbers::pi * grid.frequency(k) * u.delay_s);
}

Eigen::MatrixXcd channel_matrix(const ChannelRealization &real, const SubcarrierGrid &grid, int k, int n,
                                const SystemConfig &cfg)
{
    const UserChannel &u = real.user(n);
    const ArrayVector v = rx_array_response(grid, u.phi, k, cfg.num_rx_antennas);
    const ArrayVector t = tx_array_response(grid, u.psi, k, cfg.num_tx_antennas);
    return channel_coefficient(real, grid, k, n, cfg) * (v * t.adjoint());
}

void write_channel_csv(const ChannelRealization &real, std::ostream &out)
{
    out << "user,psi,phi,tau_s,k,re_alpha,im_alpha\n";
    for (int n = 0; n < real.num_users(); ++n)
    {
        const UserChannel &u = real.users[n];
        for (std::size_t k = 0; k < u.gains.size(); ++k)
        {
            out << n + 1 << ',' << fmt_double(u.psi) << ',' << fmt_double(u.phi) << ',' << fmt_double(u.delay_s)
                << ',' << k + 1 << ',' << fmt_double(u.gains[k].real()) << ',' << fmt_double(u.gains[k].imag())
                << '\n';
        }
    }
}

} // namespace subthz

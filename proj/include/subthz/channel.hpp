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

#ifndef SUBTHZ_CHANNEL_HPP
#define SUBTHZ_CHANNEL_HPP

#include "subthz/config.hpp"

#include <Eigen/Dense>

#include <complex>
#include <ostream>
#include <random>
#include <vector>

namespace subthz
{

using cdouble = std::complex<double>;
using ArrayVector = Eigen::VectorXcd;

// Single-path channel of one user.
struct UserChannel
{
    double psi = 0.0;        // sin(AoD)
    double phi = 0.0;        // sin(AoA)
    double delay_s = 0.0;    // propagation delay d / c
    double distance_m = 0.0;
    std::vector<cdouble> gains; // alpha_{k,n}, one per subcarrier (0-based storage)
};

struct ChannelRealization
{
    std::vector<UserChannel> users;

    int num_users() const { return static_cast<int>(users.size()); }
    const UserChannel &user(int n) const; // 1-based
};

/// Draws one multi-user realization.
///
/// AoD and AoA are uniform on [-pi/2, pi/2]; each user has one path with
/// alpha_{k,n} = c / (4 pi f_k d_n) * exp(-absorption * d_n / 2) * exp(j theta_n),
/// theta_n uniform on [0, 2 pi). The draw order per user is AoD, AoA, theta.
ChannelRealization synthesize_channel(const SystemConfig &cfg, std::mt19937_64 &rng);

// Array responses. Subcarrier k and subarray l are 1-based.
ArrayVector tx_array_response(const SubcarrierGrid &grid, double psi, int k, int num_tx);
ArrayVector rx_array_response(const SubcarrierGrid &grid, double phi, int k, int num_rx);

// Length M*P slice of the transmit response that feeds subarray l.
ArrayVector subarray_response(const SubcarrierGrid &grid, double psi, int k, int l, int ttds_per_subarray,
                              int ps_per_ttd, int num_tx);

// H_{k,n} = sqrt(N_t N_r) alpha_{k,n} exp(-j 2 pi f_k tau_n) v_{k,n} u_{k,n}^H, N_r x N_t.
Eigen::MatrixXcd channel_matrix(const ChannelRealization &real, const SubcarrierGrid &grid, int k, int n,
                                const SystemConfig &cfg);

// Scalar part of H_{k,n}: sqrt(N_t N_r) alpha_{k,n} exp(-j 2 pi f_k tau_n).
cdouble channel_coefficient(const ChannelRealization &real, const SubcarrierGrid &grid, int k, int n,
                            const SystemConfig &cfg);

// Columns: user,psi,phi,tau_s,k,re_alpha,im_alpha
void write_channel_csv(const ChannelRealization &real, std::ostream &out);

} // namespace subthz

#endif

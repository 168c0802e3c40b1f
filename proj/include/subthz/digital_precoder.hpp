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

#ifndef SUBTHZ_DIGITAL_PRECODER_HPP
#define SUBTHZ_DIGITAL_PRECODER_HPP

#include "subthz/allocation.hpp"
#include "subthz/analog_precoder.hpp"
#include "subthz/channel.hpp"

#include <Eigen/Dense>

#include <vector>

namespace subthz
{

struct DigitalPrecoder
{
    std::vector<Eigen::MatrixXcd> per_subcarrier; // W_k (N_RF x N), stored at k-1
    double omega = 0.0;                           // max_{k,n} ||w_{k,n}||^2
    int fallback_subcarriers = 0;                 // subcarriers that used the matched precoder

    bool fallback_used() const { return fallback_subcarriers > 0; }
    const Eigen::MatrixXcd &at(int k) const { return per_subcarrier.at(k - 1); }
};

// Row n = v_{k,n}^H H_{k,n} F_1 F_{2,k}, an N x N_RF matrix.
Eigen::MatrixXcd effective_channel(const ChannelRealization &real, const AnalogBlocks &analog,
                                   const SubcarrierGrid &grid, int k, const SystemConfig &cfg);

// Right pseudo-inverse G^H (G G^H)^{-1}. Throws SingularChannelError when
// sigma_min(G) < 1e-10 sigma_max(G).
Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd &effective);

// Column n is the indicator of S_n (unnormalized).
Eigen::MatrixXcd matched_precoder(const Allocation &alloc);

// ||F_1 F_{2,k} W||_F^2, using the block-diagonal structure of the analog stage.
double transmit_power(const AnalogBlocks &analog, const Eigen::MatrixXcd &digital);

// Scales W by one scalar so that ||F_1 F_{2,k} W||_F^2 = N (number of columns).
Eigen::MatrixXcd normalize_power(const AnalogBlocks &analog, const Eigen::MatrixXcd &digital);

// Scales every column separately so that ||F_1 F_{2,k} w_n||^2 = 1, giving a total of N.
// Column scaling keeps G W diagonal, so zero-forcing still nulls interference.
Eigen::MatrixXcd normalize_columns(const AnalogBlocks &analog, const Eigen::MatrixXcd &digital);

double max_column_power(const DigitalPrecoder &digital);

// Zero-forcing on every subcarrier with the matched precoder as fallback, then power
// normalization according to cfg.power_split.
DigitalPrecoder design_digital_precoder(const ChannelRealization &real, const AnalogPrecoder &analog,
                                        const SubcarrierGrid &grid, const Allocation &alloc,
                                        const SystemConfig &cfg);

} // namespace subthz

#endif

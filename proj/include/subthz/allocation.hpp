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

#ifndef SUBTHZ_ALLOCATION_HPP
#define SUBTHZ_ALLOCATION_HPP

#include "subthz/channel.hpp"

#include <span>
#include <vector>

namespace subthz
{

// Consecutive 1-based subarray indices [first, last].
struct SubarrayRange
{
    int first = 1;
    int last = 0;

    int size() const { return last - first + 1; }
    bool contains(int l) const { return l >= first && l <= last; }
};

/// Subarray-to-user assignment.
///
/// Users keep their input order: S_1 = {1..|S_1|}, S_2 follows, and so on.
/// Every user holds at least one subarray and the counts sum to N_RF.
struct Allocation
{
    std::vector<int> counts;
    std::vector<SubarrayRange> ranges;
    std::vector<double> continuous_counts; // before discretization (equal to counts for the uniform baseline)

    int num_users() const { return static_cast<int>(counts.size()); }
    int num_subarrays() const;
    int serving_user(int l) const; // 1-based subarray -> 1-based user
};

// alpha_tilde_n = sum_k |alpha_{k,n}|^2
std::vector<double> sum_channel_gains(const ChannelRealization &real);

// Max-min relaxation over positive reals: |S_n| = (N_RF / a_n) / sum_n' (1 / a_n').
std::vector<double> continuous_allocation(std::span<const double> alpha_tilde, int num_rf_chains);

// Floors the first N-1 entries, gives the remainder to user N, then lifts any
// empty user to one subarray by taking from the largest count (lowest index on ties).
Allocation discretize_allocation(std::span<const double> continuous, int num_rf_chains);

// Equal split; a remainder goes to the lowest-indexed users.
Allocation uniform_allocation(int num_users, int num_rf_chains);

// Continuous closed form followed by discretization.
Allocation fair_allocation(std::span<const double> alpha_tilde, int num_rf_chains);

// Consecutive ranges for given counts; checks sum and positivity.
std::vector<SubarrayRange> consecutive_ranges(std::span<const int> counts, int num_rf_chains);

} // namespace subthz

#endif

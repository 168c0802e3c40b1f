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

#include "subthz/allocation.hpp"
#include "subthz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace subthz
{

int Allocation::num_subarrays() const
{
    return std::accumulate(counts.begin(), counts.end(), 0);
}

int Allocation::serving_user(int l) const
{
    for (std::size_t n = 0; n < ranges.size(); ++n)
        if (ranges[n].contains(l))
            return static_cast<int>(n) + 1;
    throw std::out_of_range("subarray " + std::to_string(l) + " is not allocated");
}

std::vector<double> sum_channel_gains(const ChannelRealization &real)
{
    std::vector<double> out;
    out.reserve(real.users.size());
    for (const auto &u : real.users)
    {
        double acc = 0.0;
        for (const auto &g : u.gains)
            acc += std::norm(g);
        out.push_back(acc);
    }
    return out;
}

std::vector<double> continuous_allocation(std::span<const double> alpha_tilde, int num_rf_chains)
{
    if (alpha_tilde.empty())
        throw std::invalid_argument("continuous_allocation: no users");
    double inv_sum = 0.0;
    for (double a : alpha_tilde)
    {
        if (!(a > 0.0) || !std::isfinite(a))
            throw ConfigError(ConfigErrorKind::domain, "sum channel gains must be positive and finite");
        inv_sum += 1.0 / a;
    }
    std::vector<double> out;
    out.reserve(alpha_tilde.size());
    for (double a : alpha_tilde)
        out.push_back(num_rf_chains * ((1.0 / a) / inv_sum)); // share first: a lone user gets N_RF exactly
    return out;
}

std::vector<SubarrayRange> consecutive_ranges(std::span<const int> counts, int num_rf_chains)
{
    std::vector<SubarrayRange> ranges;
    ranges.reserve(counts.size());
    int next = 1;
    for (int c : counts)
    {
        if (c < 1)
            throw InfeasibleAllocation("every user needs at least one subarray");
        ranges.push_back({next, next + c - 1});
        next += c;
    }
    if (next - 1 != num_rf_chains)
        throw InfeasibleAllocation("subarray counts sum to " + std::to_string(next - 1) + ", expected " +
                                   std::to_string(num_rf_chains));
    return ranges;
}

Allocation discretize_allocation(std::span<const double> continuous, int num_rf_chains)
{
    const int N = static_cast<int>(continuous.size());
    if (N < 1)
        throw std::invalid_argument("discretize_allocation: no users");
    if (N > num_rf_chains)
        throw InfeasibleAllocation("cannot give " + std::to_string(N) + " users a subarray each out of " +
                                   std::to_string(num_rf_chains));
    double total = 0.0;
    for (double c : continuous)
    {
        if (!(c > 0.0))
            throw std::invalid_argument("discretize_allocation: continuous counts must be positive");
        total += c;
    }
    if (std::abs(total - num_rf_chains) > 1e-9 * num_rf_chains)
        throw std::invalid_argument("discretize_allocation: continuous counts must sum to N_RF");

    Allocation alloc;
    alloc.continuous_counts.assign(continuous.begin(), continuous.end());
    alloc.counts.resize(N);
    int assigned = 0;
    for (int n = 0; n < N - 1; ++n)
    {
        // Absorb round-off so that 2.9999999999999996 floors to 3.
        alloc.counts[n] = static_cast<int>(std::floor(continuous[n] + 1e-9));
        assigned += alloc.counts[n];
    }
    alloc.counts[N - 1] = num_rf_chains - assigned;

    for (int n = 0; n < N; ++n)
    {
        if (alloc.counts[n] >= 1)
            continue;
        auto largest = std::max_element(alloc.counts.begin(), alloc.counts.end()); // first maximum
        alloc.counts[n] = 1;
        --*largest;
    }

    alloc.ranges = consecutive_ranges(alloc.counts, num_rf_chains);
    return alloc;
}

Allocation uniform_allocation(int num_users, int num_rf_chains)
{
    if (num_users < 1)
        throw std::invalid_argument("uniform_allocation: no users");
    if (num_users > num_rf_chains)
        throw InfeasibleAllocation("cannot give " + std::to_string(num_users) + " users a subarray each out of " +
                                   std::to_string(num_rf_chains));
    Allocation alloc;
    alloc.counts.assign(num_users, num_rf_chains / num_users);
    for (int n = 0; n < num_rf_chains % num_users; ++n)
        ++alloc.counts[n];
    alloc.continuous_counts.assign(alloc.counts.begin(), alloc.counts.end());
    alloc.ranges = consecutive_ranges(alloc.counts, num_rf_chains);
    return alloc;
}

Allocation fair_allocation(std::span<const double> alpha_tilde, int num_rf_chains)
{
    const auto continuous = continuous_allocation(alpha_tilde, num_rf_chains);
    return discretize_allocation(continuous, num_rf_chains);
}

} // namespace subthz

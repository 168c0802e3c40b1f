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

// Hand-rolled generators shared by the unit tests.

#ifndef SUBTHZ_TESTS_SUPPORT_HPP
#define SUBTHZ_TESTS_SUPPORT_HPP

#include "subthz/config.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace testgen
{

class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::complex<double> complex_normal()
    {
        std::normal_distribution<double> d;
        return {d(rng_), d(rng_)};
    }
    std::vector<double> positive_reals(int n, double lo = 0.05, double hi = 20.0)
    {
        std::vector<double> out(n);
        for (auto &v : out)
            v = uniform(lo, hi);
        return out;
    }
    std::mt19937_64 &engine() { return rng_; }

    // Small but structurally valid configuration.
    subthz::SystemConfig config()
    {
        subthz::SystemConfig c;
        c.carrier_frequency_hz = uniform(50e9, 1e12);
        c.bandwidth_hz = c.carrier_frequency_hz * uniform(0.001, 0.5);
        c.num_subcarriers = 2 * integer(0, 40) + 1;
        c.num_rf_chains = integer(1, 6);
        c.num_users = integer(1, c.num_rf_chains);
        c.ttds_per_subarray = integer(1, 4);
        c.ps_per_ttd = integer(1, 4);
        c.num_tx_antennas = c.num_rf_chains * c.ttds_per_subarray * c.ps_per_ttd;
        c.num_rx_antennas = integer(1, 4);
        c.snr_linear = uniform(0.1, 100.0);
        c.ttd_levels = integer(1, 500);
        c.ttd_step_s = uniform(1e-13, 1e-11);
        c.distances_m = positive_reals(c.num_users, 1.0, 50.0);
        c.absorption_coeff_per_m = uniform(0.0, 0.01);
        return c;
    }

  private:
    std::mt19937_64 rng_;
};

} // namespace testgen

#endif

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
#include "subthz/metrics.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace subthz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

double min_product(const std::vector<double> &alpha, const std::vector<int> &counts)
{
    double m = std::numeric_limits<double>::infinity();
    for (size_t n = 0; n < alpha.size(); ++n)
        m = std::min(m, alpha[n] * counts[n]);
    return m;
}

// Best min-product over every composition of nrf into alpha.size() positive parts.
double exhaustive_optimum(const std::vector<double> &alpha, int nrf)
{
    const int N = static_cast<int>(alpha.size());
    std::vector<int> counts(N, 0);
    double best = -1.0;
    std::function<void(int, int)> rec = [&](int n, int left) {
        if (n == N - 1)
        {
            counts[n] = left;
            best = std::max(best, min_product(alpha, counts));
            return;
        }
        for (int c = 1; c <= left - (N - 1 - n); ++c)
        {
            counts[n] = c;
            rec(n + 1, left - c);
        }
    };
    rec(0, nrf);
    return best;
}

void check_structure(const Allocation &a, int nrf)
{
    REQUIRE(a.ranges.size() == a.counts.size());
    CHECK(std::accumulate(a.counts.begin(), a.counts.end(), 0) == nrf);
    CHECK(a.num_subarrays() == nrf);
    int next = 1;
    for (size_t n = 0; n < a.counts.size(); ++n)
    {
        CHECK(a.counts[n] >= 1);
        CHECK(a.ranges[n].first == next);
        CHECK(a.ranges[n].size() == a.counts[n]);
        next = a.ranges[n].last + 1;
        for (int l = a.ranges[n].first; l <= a.ranges[n].last; ++l)
            CHECK(a.serving_user(l) == int(n) + 1);
    }
    CHECK(next == nrf + 1);
}

} // namespace

TEST_CASE("sum channel gains examples")
{
    ChannelRealization real;
    real.users.resize(2);
    real.users[0].gains = {1.0, cdouble(0.0, 1.0), cdouble(-1.0, 0.0)};
    real.users[1].gains = {1.0, cdouble(0.0, 2.0), cdouble(-2.0, 0.0)};
    auto a = sum_channel_gains(real);
    CHECK_THAT(a[0], WithinRel(3.0, 1e-15));
    CHECK_THAT(a[1], WithinRel(9.0, 1e-15));
}

TEST_CASE("sum channel gains matches a loop oracle")
{
    testgen::Gen gen(3);
    for (int trial = 0; trial < 50; ++trial)
    {
        ChannelRealization real;
        real.users.resize(gen.integer(1, 4));
        std::vector<double> oracle;
        for (auto &u : real.users)
        {
            double acc = 0.0;
            for (int k = 0; k < 8; ++k)
            {
                cdouble g = gen.complex_normal();
                u.gains.push_back(g);
                acc += g.real() * g.real() + g.imag() * g.imag();
            }
            oracle.push_back(acc);
        }
        auto a = sum_channel_gains(real);
        for (size_t n = 0; n < a.size(); ++n)
            CHECK_THAT(a[n], WithinRel(oracle[n], 1e-12));
    }
}

TEST_CASE("continuous allocation examples")
{
    auto eq = continuous_allocation(std::vector<double>{2.5, 2.5, 2.5, 2.5}, 16);
    for (double c : eq)
        CHECK_THAT(c, WithinRel(4.0, 1e-14));

    auto c = continuous_allocation(std::vector<double>{1.0, 3.0}, 4);
    CHECK_THAT(c[0], WithinRel(3.0, 1e-14));
    CHECK_THAT(c[1], WithinRel(1.0, 1e-14));

    // grid search over s in (0, 4) maximizing min(s, 3 (4 - s))
    double best_s = 0.0, best = -1.0;
    for (int i = 1; i < 400000; ++i)
    {
        double s = 4.0 * i / 400000.0;
        double v = std::min(1.0 * s, 3.0 * (4.0 - s));
        if (v > best)
        {
            best = v;
            best_s = s;
        }
    }
    CHECK_THAT(c[0], WithinAbs(best_s, 1e-4));
    CHECK_THAT(min_subarray_objective(std::vector<double>{1.0, 3.0}, c), WithinRel(3.0, 1e-14));
}

TEST_CASE("continuous allocation rejects non-positive gains")
{
    CHECK_THROWS_AS(continuous_allocation(std::vector<double>{1.0, 0.0}, 4), ConfigError);
    CHECK_THROWS_AS(continuous_allocation(std::vector<double>{1.0, -2.0}, 4), ConfigError);
    CHECK_THROWS_AS(continuous_allocation(std::vector<double>{}, 4), std::invalid_argument);
}

TEST_CASE("continuous allocation properties")
{
    testgen::Gen gen(7);
    for (int trial = 0; trial < 500; ++trial)
    {
        int N = gen.integer(1, 6);
        int nrf = gen.integer(N, 32);
        auto alpha = gen.positive_reals(N, 1e-3, 1e3);
        auto c = continuous_allocation(alpha, nrf);
        double sum = 0.0, inv = 0.0, lo = 1e300, hi = 0.0;
        for (int n = 0; n < N; ++n)
        {
            CHECK(c[n] > 0.0);
            sum += c[n];
            inv += 1.0 / alpha[n];
            lo = std::min(lo, alpha[n] * c[n]);
            hi = std::max(hi, alpha[n] * c[n]);
        }
        CHECK_THAT(sum, WithinRel(double(nrf), 1e-12));
        CHECK(hi - lo <= 1e-9 * hi);
        CHECK_THAT(lo, WithinRel(nrf / inv, 1e-12));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                if (alpha[a] < alpha[b])
                    CHECK(c[a] > c[b]);
    }
}

TEST_CASE("discretization examples")
{
    auto a = discretize_allocation(std::vector<double>{3.0, 1.0}, 4);
    CHECK(a.counts == std::vector<int>{3, 1});

    auto r = discretize_allocation(std::vector<double>{0.4, 7.6}, 8);
    CHECK(r.counts == std::vector<int>{1, 7});
    check_structure(r, 8);

    // two empty users, both repaired from the largest count
    CHECK(discretize_allocation(std::vector<double>{0.5, 0.5, 7.0}, 8).counts == std::vector<int>{1, 1, 6});

    // tie for the largest count goes to the lowest index
    CHECK(discretize_allocation(std::vector<double>{0.5, 4.9, 0.3, 2.3}, 8).counts ==
          std::vector<int>{1, 3, 1, 3});

    // values a hair below an integer still floor to it
    auto c = continuous_allocation(std::vector<double>{1.0, 3.0}, 4);
    CHECK(discretize_allocation(c, 4).counts == std::vector<int>{3, 1});
    CHECK(discretize_allocation(std::vector<double>{3.0 - 1e-12, 1.0 + 1e-12}, 4).counts ==
          std::vector<int>{3, 1});
}

TEST_CASE("four-user example with two weak users")
{
    // users 3 and 4 have the weakest sum gains
    const std::vector<double> inv{2.2, 3.3, 5.3, 5.2};
    std::vector<double> alpha;
    for (double v : inv)
        alpha.push_back(1.0 / v);
    auto a = fair_allocation(alpha, 16);
    CHECK(a.counts == std::vector<int>{2, 3, 5, 6});
    check_structure(a, 16);
}

TEST_CASE("discretization errors")
{
    CHECK_THROWS_AS(discretize_allocation(std::vector<double>{1.0, 1.0, 1.0}, 2), InfeasibleAllocation);
    CHECK_THROWS_AS(discretize_allocation(std::vector<double>{1.0, 2.0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(discretize_allocation(std::vector<double>{-1.0, 5.0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(discretize_allocation(std::vector<double>{}, 4), std::invalid_argument);
}

TEST_CASE("uniform allocation examples")
{
    CHECK(uniform_allocation(4, 16).counts == std::vector<int>{4, 4, 4, 4});
    CHECK(uniform_allocation(1, 8).counts == std::vector<int>{8});
    CHECK(uniform_allocation(3, 8).counts == std::vector<int>{3, 3, 2});
    check_structure(uniform_allocation(3, 8), 8);
    auto u = uniform_allocation(2, 8);
    CHECK(u.continuous_counts == std::vector<double>{4.0, 4.0});
    CHECK_THROWS_AS(uniform_allocation(5, 4), InfeasibleAllocation);
}

TEST_CASE("consecutive ranges")
{
    auto r = consecutive_ranges(std::vector<int>{2, 3, 5, 6}, 16);
    REQUIRE(r.size() == 4);
    CHECK((r[0].first == 1 && r[0].last == 2));
    CHECK((r[1].first == 3 && r[1].last == 5));
    CHECK((r[2].first == 6 && r[2].last == 10));
    CHECK((r[3].first == 11 && r[3].last == 16));
    CHECK(r[2].contains(6));
    CHECK_FALSE(r[2].contains(11));
    CHECK_THROWS_AS(consecutive_ranges(std::vector<int>{2, 3}, 6), InfeasibleAllocation);
    CHECK_THROWS_AS(consecutive_ranges(std::vector<int>{0, 6}, 6), InfeasibleAllocation);
    Allocation a;
    a.counts = {2, 3};
    a.ranges = consecutive_ranges(a.counts, 5);
    CHECK_THROWS_AS(a.serving_user(6), std::out_of_range);
    CHECK_THROWS_AS(a.serving_user(0), std::out_of_range);
}

TEST_CASE("discretized allocation keeps the structural invariants")
{
    testgen::Gen gen(13);
    for (int trial = 0; trial < 1000; ++trial)
    {
        int N = gen.integer(1, 8);
        int nrf = gen.integer(N, 40);
        auto alpha = gen.positive_reals(N, 1e-4, 1e4);
        auto a = fair_allocation(alpha, nrf);
        check_structure(a, nrf);
        CHECK(a.continuous_counts == continuous_allocation(alpha, nrf));
    }
}

TEST_CASE("optimality sandwich against exhaustive enumeration")
{
    testgen::Gen gen(19);
    for (int trial = 0; trial < 300; ++trial)
    {
        int N = gen.integer(1, 3);
        int nrf = gen.integer(N, 12);
        auto alpha = gen.positive_reals(N, 0.01, 100.0);
        auto cont = continuous_allocation(alpha, nrf);
        auto disc = discretize_allocation(cont, nrf);
        double upper = min_subarray_objective(alpha, cont);
        double middle = exhaustive_optimum(alpha, nrf);
        double lower = min_subarray_objective(alpha, disc.counts);
        CHECK(upper >= middle * (1 - 1e-12));
        CHECK(middle >= lower);
    }
}

TEST_CASE("continuous optimum dominates uniform")
{
    testgen::Gen gen(23);
    for (int trial = 0; trial < 500; ++trial)
    {
        int N = gen.integer(1, 6);
        int nrf = gen.integer(N, 32);
        auto alpha = gen.positive_reals(N, 0.01, 100.0);
        auto cont = continuous_allocation(alpha, nrf);
        auto uni = uniform_allocation(N, nrf);
        CHECK(min_subarray_objective(alpha, cont) >= min_subarray_objective(alpha, uni.counts) * (1 - 1e-12));
    }
}

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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "subthz/allocation.hpp"
#include "subthz/analog_precoder.hpp"
#include "subthz/campaign.hpp"
#include "subthz/config.hpp"
#include "subthz/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace subthz;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const char *name, double limit_s, const std::function<Outcome()> &body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try
    {
        out = body();
    }
    catch (const std::exception &e)
    {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < limit_s;
    const bool pass = out.ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s; %.2f s of %.0f s%s\n", pass ? "PASS" : "FAIL", id, name,
                out.detail.c_str(), secs, limit_s, in_time ? "" : " (over time)");
    std::fflush(stdout);
}

SystemConfig random_config(std::mt19937_64 &rng)
{
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    SystemConfig c;
    c.carrier_frequency_hz = uni(10e9, 1e12);
    c.bandwidth_hz = c.carrier_frequency_hz * uni(0.001, 0.9);
    c.num_subcarriers = 2 * pick(0, 2048) + 1;
    c.num_rf_chains = pick(1, 16);
    c.num_users = pick(1, c.num_rf_chains);
    c.ttds_per_subarray = pick(1, 16);
    c.ps_per_ttd = pick(1, 8);
    c.num_tx_antennas = c.num_rf_chains * c.ttds_per_subarray * c.ps_per_ttd;
    c.distances_m.assign(c.num_users, 10.0);
    return c;
}

std::vector<double> random_gains(std::mt19937_64 &rng, int n)
{
    // log-uniform over four decades
    std::uniform_real_distribution<double> e(-2.0, 2.0);
    std::vector<double> out(n);
    for (auto &v : out)
        v = std::pow(10.0, e(rng));
    return out;
}

double exhaustive_optimum(const std::vector<double> &alpha, int nrf)
{
    const int N = static_cast<int>(alpha.size());
    std::vector<int> counts(N);
    double best = -1.0;
    std::function<void(int, int)> rec = [&](int n, int left) {
        if (n == N - 1)
        {
            counts[n] = left;
            best = std::max(best, min_subarray_objective(alpha, counts));
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

std::string fmt(const char *f, double a, double b = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

CampaignResults desk_campaign(int parallelism, const std::vector<double> &distances = {10.0, 20.0})
{
    CampaignSpec spec;
    spec.config = desk_preset();
    spec.config.distances_m = distances;
    spec.trials = 200;
    spec.master_seed = 1;
    spec.parallelism = parallelism;
    return run_campaign(spec);
}

std::string slurp(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome grid_identities()
{
    std::mt19937_64 rng(2024);
    std::vector<SystemConfig> configs{reference_preset()};
    for (int i = 0; i < 50; ++i)
        configs.push_back(random_config(rng));
    double worst = 0.0;
    for (const auto &cfg : configs)
    {
        SubcarrierGrid grid(cfg);
        double s1 = 0.0, s2 = 0.0;
        for (double xi : grid.ratios())
        {
            s1 += xi;
            s2 += xi * xi;
        }
        const double K = cfg.num_subcarriers;
        worst = std::max({worst, std::abs(s1 - K) / K, std::abs(s2 - grid.gamma_factor() * K) / (grid.gamma_factor() * K)});
    }
    return {worst <= 1e-12, fmt("51 configs, worst relative error %.2e (limit 1e-12)", worst)};
}

Outcome allocation_sandwich()
{
    std::mt19937_64 rng(7);
    int violations = 0;
    double worst_spread = 0.0;
    for (int i = 0; i < 200; ++i)
    {
        const int N = std::uniform_int_distribution<int>(1, 3)(rng);
        const int nrf = std::uniform_int_distribution<int>(N, 12)(rng);
        const auto alpha = random_gains(rng, N);
        const auto cont = continuous_allocation(alpha, nrf);
        const auto disc = discretize_allocation(cont, nrf);
        const double upper = min_subarray_objective(alpha, cont);
        const double middle = exhaustive_optimum(alpha, nrf);
        const double lower = min_subarray_objective(alpha, disc.counts);
        if (!(upper >= middle && middle >= lower))
            ++violations;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int n = 0; n < N; ++n)
        {
            lo = std::min(lo, alpha[n] * cont[n]);
            hi = std::max(hi, alpha[n] * cont[n]);
        }
        worst_spread = std::max(worst_spread, (hi - lo) / hi);
    }
    return {violations == 0 && worst_spread <= 1e-9,
            fmt("200 instances, %.0f sandwich violations, worst product spread %.2e (limit 1e-9)", violations,
                worst_spread)};
}

Outcome continuous_dominance()
{
    std::mt19937_64 rng(11);
    int violations = 0;
    for (int i = 0; i < 500; ++i)
    {
        const int nrf = std::uniform_int_distribution<int>(1, 32)(rng);
        const int N = std::uniform_int_distribution<int>(1, std::min(nrf, 8))(rng);
        const auto alpha = random_gains(rng, N);
        const auto cont = continuous_allocation(alpha, nrf);
        const auto uni = uniform_allocation(N, nrf);
        if (!(min_subarray_objective(alpha, cont) >= min_subarray_objective(alpha, uni.counts)))
            ++violations;
    }
    return {violations == 0, fmt("500 instances, %.0f violations", violations)};
}

Outcome fixed_point()
{
    SystemConfig cfg = desk_preset();
    cfg.solver.quantize_delays = false;
    cfg.solver.record_trace = true;
    const SubcarrierGrid grid(cfg);
    const TtdGrid ttd(cfg);
    const int M = cfg.ttds_per_subarray, P = cfg.ps_per_ttd;
    const double fc = cfg.carrier_frequency_hz;
    std::mt19937_64 rng(13);
    double worst = 0.0;
    int slowest = 0;
    for (int i = 0; i < 100; ++i)
    {
        const double psi = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const int l = std::uniform_int_distribution<int>(1, cfg.num_rf_chains)(rng);
        const int m = std::uniform_int_distribution<int>(1, M)(rng);
        const auto sol = optimize_subarray(grid, psi, l, ttd, cfg);
        const auto g = gamma_coefficients(l, psi, M, P);
        const double t_star = std::accumulate(g.begin() + (m - 1) * P, g.begin() + m * P, 0.0) / (2.0 * fc * P);
        // delay error measured in phase units, 2 f_c (t - t*)
        worst = std::max(worst, std::abs(2.0 * fc * (sol.delays[m - 1] - t_star)));
        for (int p = 0; p < P; ++p)
            worst = std::max(worst, std::abs(sol.phases[(m - 1) * P + p] - (2.0 * fc * t_star - g[(m - 1) * P + p])));
        for (const auto &row : sol.trace)
            if (row.m == m)
                slowest = std::max(slowest, row.iteration);
    }
    return {worst <= 1e-9 && slowest <= 3,
            fmt("100 (psi, l, m) tuples, worst deviation %.2e (limit 1e-9), max %.0f iterations (limit 3)", worst,
                slowest)};
}

Outcome gain_trend()
{
    const auto res = desk_campaign(1);
    const auto &cfg = res.spec.config;
    const SubcarrierGrid grid(cfg);
    const int K = cfg.num_subcarriers;

    // per k: mean over trials of the mean normalized gain of subarrays whose serving user has psi >= 0
    std::vector<double> alg1_sum(K, 0.0), uni_sum(K, 0.0);
    int alg1_trials = 0, uni_trials = 0;
    for (const auto &trial : res.trials)
    {
        for (Scheme s : {Scheme::proposed_alg1, Scheme::uniform_alg1})
        {
            const auto &r = trial.scheme(s);
            std::vector<int> served;
            for (int l = 1; l <= cfg.num_rf_chains; ++l)
                if (trial.channel.user(r.allocation.serving_user(l)).psi >= 0.0)
                    served.push_back(l);
            if (served.empty())
                continue;
            auto &acc = s == Scheme::proposed_alg1 ? alg1_sum : uni_sum;
            (s == Scheme::proposed_alg1 ? alg1_trials : uni_trials) += 1;
            for (int k = 1; k <= K; ++k)
            {
                const auto gains = subarray_gains(trial.channel, r.analog, grid, r.allocation, k);
                double sum = 0.0;
                for (int l : served)
                    sum += gains[l - 1] * cfg.num_rf_chains;
                acc[k - 1] += sum / served.size();
            }
        }
    }
    double alg1_min = std::numeric_limits<double>::infinity(), uni_min = alg1_min;
    for (int k = 0; k < K; ++k)
    {
        alg1_min = std::min(alg1_min, alg1_sum[k] / alg1_trials);
        uni_min = std::min(uni_min, uni_sum[k] / uni_trials);
    }
    double iasp_dev = 0.0;
    for (double g : res.summary(Scheme::proposed_iasp).mean_gain.normalized)
        iasp_dev = std::max(iasp_dev, std::abs(g - 1.0));
    const bool ok = res.trials.size() == 200 && alg1_min >= 0.90 && uni_min >= 0.90 && iasp_dev <= 1e-9;
    return {ok, fmt("min over k of psi>=0 gain: proposed %.4f, ", alg1_min) +
                    fmt("uniform %.4f (limit 0.90); ", uni_min) + fmt("IASP max |gain-1| %.2e", iasp_dev)};
}

Outcome bound_inequality()
{
    const auto res = desk_campaign(1);
    int violations = 0, checked = 0;
    for (const auto &trial : res.trials)
        for (const auto &r : trial.schemes)
            for (std::size_t n = 0; n < r.rates.rates.size(); ++n)
            {
                ++checked;
                if (!(r.rates.rates[n] <= r.rates.bound_finite[n]))
                    ++violations;
            }
    return {violations == 0 && checked == 200 * 3 * 2,
            fmt("%.0f user rates checked, %.0f violations", checked, violations)};
}

Outcome fairness_trend()
{
    const auto res = desk_campaign(1, {10.0, 25.0});
    const auto &prop = res.summary(Scheme::proposed_alg1);
    const auto &uni = res.summary(Scheme::uniform_alg1);
    const bool ok = res.trials.size() == 200 && prop.mean_min_rate > uni.mean_min_rate &&
                    prop.median_min_rate > uni.median_min_rate;
    return {ok, fmt("mean min-rate proposed %.4e vs uniform %.4e, ", prop.mean_min_rate, uni.mean_min_rate) +
                    fmt("median %.4e vs %.4e", prop.median_min_rate, uni.median_min_rate)};
}

Outcome determinism()
{
    const fs::path root = fs::temp_directory_path() / "subthz_acceptance_determinism";
    fs::remove_all(root);
    write_outputs(desk_campaign(1), root / "p1");
    write_outputs(desk_campaign(8), root / "p8");
    int differing = 0, files = 0;
    for (const auto &entry : fs::directory_iterator(root / "p1"))
    {
        ++files;
        if (slurp(entry.path()) != slurp(root / "p8" / entry.path().filename()))
            ++differing;
    }
    fs::remove_all(root);
    return {differing == 0 && files >= 7, fmt("%.0f output files compared, %.0f differ", files, differing)};
}

} // namespace

int main()
{
    run(1, "grid identities", 1.0, grid_identities);
    run(2, "allocation oracle sandwich", 5.0, allocation_sandwich);
    run(3, "continuous dominance over uniform", 1.0, continuous_dominance);
    run(4, "alternating solver fixed point", 1.0, fixed_point);
    run(5, "subarray gain trend", 120.0, gain_trend);
    run(6, "rate bound inequality", 120.0, bound_inequality);
    run(7, "min-rate fairness trend at 10 m / 25 m", 120.0, fairness_trend);
    run(8, "determinism across parallelism", 240.0, determinism);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

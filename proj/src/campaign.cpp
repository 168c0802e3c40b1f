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

#include "subthz/campaign.hpp"
#include "subthz/digital_precoder.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace subthz
{

std::string_view scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::proposed_alg1:
        return "proposed_alg1";
    case Scheme::uniform_alg1:
        return "uniform_alg1";
    case Scheme::proposed_iasp:
        return "proposed_iasp";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : all_schemes())
        if (scheme_name(s) == name)
            return s;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::vector<Scheme> parse_schemes(std::string_view list)
{
    std::vector<Scheme> out;
    std::size_t start = 0;
    while (start <= list.size())
    {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const Scheme s = parse_scheme(list.substr(start, comma - start));
        if (std::find(out.begin(), out.end(), s) != out.end())
            throw std::invalid_argument("scheme '" + std::string(scheme_name(s)) + "' listed twice");
        out.push_back(s);
        start = comma + 1;
    }
    return out;
}

std::vector<Scheme> all_schemes()
{
    return {Scheme::proposed_alg1, Scheme::uniform_alg1, Scheme::proposed_iasp};
}

const SchemeResult &TrialResult::scheme(Scheme s) const
{
    for (const auto &r : schemes)
        if (r.scheme == s)
            return r;
    throw std::out_of_range("scheme '" + std::string(scheme_name(s)) + "' was not run in this trial");
}

const SchemeSummary &CampaignResults::summary(Scheme s) const
{
    for (const auto &r : summaries)
        if (r.scheme == s)
            return r;
    throw std::out_of_range("scheme '" + std::string(scheme_name(s)) + "' was not part of the campaign");
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index)
{
    // splitmix64 output for counter position trial_index + 1
    std::uint64_t z = master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace
{

SchemeResult evaluate_scheme(Scheme scheme, const SystemConfig &cfg, const SubcarrierGrid &grid,
                             const TtdGrid &ttd_grid, const ChannelRealization &channel,
                             const std::vector<double> &alpha_tilde)
{
    SchemeResult out;
    out.scheme = scheme;
    out.allocation = scheme == Scheme::uniform_alg1 ? uniform_allocation(cfg.num_users, cfg.num_rf_chains)
                                                    : fair_allocation(alpha_tilde, cfg.num_rf_chains);
    out.analog = scheme == Scheme::proposed_iasp ? design_ideal(channel, out.allocation, cfg)
                                                 : design_algorithm1(channel, out.allocation, grid, ttd_grid, cfg);

    const DigitalPrecoder digital = design_digital_precoder(channel, out.analog, grid, out.allocation, cfg);
    out.omega = digital.omega;
    out.fallback_used = digital.fallback_used();

    out.rates.rates = achievable_rates(channel, out.analog, digital, grid, cfg);
    out.rates.min_rate = *std::min_element(out.rates.rates.begin(), out.rates.rates.end());
    for (int n = 1; n <= cfg.num_users; ++n)
    {
        out.rates.bound_lemma1.push_back(
            rate_upper_bound(alpha_tilde[n - 1], out.allocation.counts[n - 1], cfg, digital.omega));
        out.rates.bound_finite.push_back(finite_size_rate_bound(channel, out.analog, grid, cfg, digital.omega, n));
    }

    out.gain = gain_profile(channel, out.analog, grid, out.allocation);
    out.min_objective = min_subarray_objective(alpha_tilde, out.allocation.counts);
    out.clamp_rate = static_cast<double>(out.analog.clamped_ttds()) / (cfg.num_rf_chains * cfg.ttds_per_subarray);
    return out;
}

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

TrialResult run_trial(const SystemConfig &cfg, std::span<const Scheme> schemes, std::uint64_t seed, int trial_index)
{
    try
    {
        validate_config(cfg);
        const SubcarrierGrid grid(cfg);
        const TtdGrid ttd_grid(cfg);

        TrialResult out;
        out.trial = trial_index;
        out.seed = seed;
        std::mt19937_64 rng(seed);
        out.channel = synthesize_channel(cfg, rng);
        out.alpha_tilde = sum_channel_gains(out.channel);
        for (Scheme s : schemes)
            out.schemes.push_back(evaluate_scheme(s, cfg, grid, ttd_grid, out.channel, out.alpha_tilde));
        return out;
    }
    catch (const TrialError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw TrialError(trial_index, e.what());
    }
}

std::vector<SchemeSummary> summarize(const std::vector<TrialResult> &trials, std::span<const Scheme> schemes)
{
    std::vector<SchemeSummary> out;
    if (trials.empty())
        return out;
    for (Scheme s : schemes)
    {
        SchemeSummary sum;
        sum.scheme = s;
        std::vector<double> min_rates, min_objectives;
        for (const auto &trial : trials)
        {
            const SchemeResult &r = trial.scheme(s);
            if (sum.mean_gain.raw.empty())
            {
                sum.mean_gain.raw.assign(r.gain.raw.size(), 0.0);
                sum.mean_gain.normalized.assign(r.gain.normalized.size(), 0.0);
            }
            for (std::size_t k = 0; k < r.gain.raw.size(); ++k)
            {
                sum.mean_gain.raw[k] += r.gain.raw[k];
                sum.mean_gain.normalized[k] += r.gain.normalized[k];
            }
            min_rates.push_back(r.rates.min_rate);
            min_objectives.push_back(r.min_objective);
        }
        const double count = static_cast<double>(trials.size());
        for (auto &v : sum.mean_gain.raw)
            v /= count;
        for (auto &v : sum.mean_gain.normalized)
            v /= count;

        double total = 0.0;
        for (double v : min_rates)
            total += v;
        sum.mean_min_rate = total / count;
        sum.median_min_rate = median(min_rates);
        sum.min_rate_cdf = empirical_cdf(std::move(min_rates));
        sum.min_objective_cdf = empirical_cdf(std::move(min_objectives));
        out.push_back(std::move(sum));
    }
    return out;
}

bool exceeds_failure_limit(std::size_t failures, int trials)
{
    return failures * 10 > static_cast<std::size_t>(std::max(trials, 0));
}

CampaignResults run_campaign(const CampaignSpec &spec)
{
    if (spec.trials < 1)
        throw std::invalid_argument("campaign needs at least one trial");
    if (spec.schemes.empty())
        throw std::invalid_argument("campaign needs at least one scheme");
    validate_config(spec.config);

    const int workers = std::clamp(spec.parallelism, 1, spec.trials);
    std::vector<std::optional<TrialResult>> slots(spec.trials);
    std::vector<std::string> errors(spec.trials);
    std::atomic<int> next{0};

    auto work = [&] {
        for (int i = next.fetch_add(1); i < spec.trials; i = next.fetch_add(1))
        {
            try
            {
                slots[i] = run_trial(spec.config, spec.schemes, trial_seed(spec.master_seed, i), i);
            }
            catch (const std::exception &e)
            {
                errors[i] = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
    }

    CampaignResults out;
    out.spec = spec;
    for (int i = 0; i < spec.trials; ++i)
    {
        if (slots[i])
            out.trials.push_back(std::move(*slots[i]));
        else
            out.failures.push_back({i, errors[i]});
    }

    if (exceeds_failure_limit(out.failures.size(), spec.trials))
    {
        std::ostringstream msg;
        msg << out.failures.size() << " of " << spec.trials << " trials failed (limit 10%); first failure: "
            << out.failures.front().message;
        throw CampaignAborted(msg.str());
    }

    out.summaries = summarize(out.trials, spec.schemes);
    return out;
}

} // namespace subthz

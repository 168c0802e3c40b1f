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

#ifndef SUBTHZ_CAMPAIGN_HPP
#define SUBTHZ_CAMPAIGN_HPP

#include "subthz/allocation.hpp"
#include "subthz/analog_precoder.hpp"
#include "subthz/channel.hpp"
#include "subthz/config.hpp"
#include "subthz/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subthz
{

enum class Scheme
{
    proposed_alg1, // fair allocation + PS/TTD alternating design
    uniform_alg1,  // equal allocation + PS/TTD alternating design
    proposed_iasp  // fair allocation + ideal analog sub-precoders
};

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);
// Comma separated list, e.g. "proposed_alg1,uniform_alg1". Duplicates are rejected.
std::vector<Scheme> parse_schemes(std::string_view list);
std::vector<Scheme> all_schemes();

struct SchemeResult
{
    Scheme scheme = Scheme::proposed_alg1;
    Allocation allocation;
    AnalogPrecoder analog;
    RateReport rates;
    GainProfile gain;
    double min_objective = 0.0; // min_n alpha_tilde_n |S_n|
    double omega = 0.0;
    double clamp_rate = 0.0; // clamped TTDs / (N_RF M)
    bool fallback_used = false;
};

struct TrialResult
{
    int trial = 0;
    std::uint64_t seed = 0;
    ChannelRealization channel; // shared by every scheme of the trial
    std::vector<double> alpha_tilde;
    std::vector<SchemeResult> schemes;

    const SchemeResult &scheme(Scheme s) const;
};

class TrialError : public std::runtime_error
{
  public:
    TrialError(int trial, const std::string &what)
        : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}
    int trial() const noexcept { return trial_; }

  private:
    int trial_;
};

class CampaignAborted : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Counter-based split of the master seed; independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// One channel realization evaluated under every requested scheme.
///
/// Throws TrialError (carrying the trial index) if any stage fails.
TrialResult run_trial(const SystemConfig &cfg, std::span<const Scheme> schemes, std::uint64_t seed,
                      int trial_index = 0);

struct CampaignSpec
{
    SystemConfig config;
    int trials = 200;
    std::uint64_t master_seed = 1;
    std::vector<Scheme> schemes = all_schemes();
    int parallelism = 1;
};

struct SchemeSummary
{
    Scheme scheme = Scheme::proposed_alg1;
    GainProfile mean_gain; // averaged over successful trials, in trial order
    CdfSeries min_rate_cdf;
    CdfSeries min_objective_cdf;
    double mean_min_rate = 0.0;
    double median_min_rate = 0.0;
};

struct TrialFailure
{
    int trial = 0;
    std::string message;
};

struct CampaignResults
{
    CampaignSpec spec;
    std::vector<TrialResult> trials; // successful trials, ascending trial index
    std::vector<TrialFailure> failures;
    std::vector<SchemeSummary> summaries; // same order as spec.schemes

    const SchemeSummary &summary(Scheme s) const;
};

/// Runs spec.trials trials on a pool of spec.parallelism workers.
///
/// Trial i uses trial_seed(master_seed, i). Failed trials are dropped; more than
/// 10% failures throws CampaignAborted.
// True when more than 10% of the requested trials failed.
bool exceeds_failure_limit(std::size_t failures, int trials);

CampaignResults run_campaign(const CampaignSpec &spec);

// Deterministic in-order fold of per-trial results into per-scheme summaries.
std::vector<SchemeSummary> summarize(const std::vector<TrialResult> &trials, std::span<const Scheme> schemes);

struct OutputOptions
{
    bool dump_channels = false; // channels/trial_<i>.csv
    bool solver_trace = false;  // traces/trial_<i>_<scheme>.csv, needs config.solver.record_trace
};

/// Writes allocation.csv, rates.csv, gain.csv, cdf_minrate.csv, cdf_minobj.csv,
/// trials.csv and manifest.json into dir (created if missing).
void write_outputs(const CampaignResults &results, const std::filesystem::path &dir, const OutputOptions &options = {});

std::string_view code_version();

} // namespace subthz

#endif

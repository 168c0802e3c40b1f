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

// Monte Carlo campaign driver.
//
//   simulate --config configs/desk.json --trials 200 --seed 1
//            --schemes proposed_alg1,uniform_alg1,proposed_iasp --out results --parallelism 4
//
// Exit codes: 0 success, 2 configuration error, 3 campaign aborted, 1 anything else.

#include "subthz/campaign.hpp"
#include "subthz/errors.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

namespace
{

constexpr int exit_config_error = 2;
constexpr int exit_campaign_aborted = 3;

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multi-user sub-THz TTD/PS hybrid precoding Monte Carlo campaign"};

    std::string config_path;
    std::string out_dir;
    std::string schemes = "proposed_alg1,uniform_alg1,proposed_iasp";
    int trials = 200;
    std::uint64_t seed = 1;
    int parallelism = 1;
    std::optional<double> snr_db;
    std::optional<std::string> power_split;
    bool unquantized = false;
    bool literal_step7 = false;
    bool dump_channels = false;
    bool trace = false;

    app.add_option("--config", config_path, "JSON system configuration")->required();
    app.add_option("--trials", trials, "Number of channel realizations")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Master seed (64-bit)");
    app.add_option("--schemes", schemes, "Comma separated subset of proposed_alg1,uniform_alg1,proposed_iasp");
    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--snr-db", snr_db, "Override the configured transmit SNR, in dB");
    app.add_option("--power-split", power_split, "Digital power split: per_user or common");
    app.add_flag("--unquantized", unquantized, "Keep TTD delays continuous (no grid quantization)");
    app.add_flag("--literal-step7", literal_step7, "Update phases from the previous delay iterate");
    app.add_flag("--dump-channels", dump_channels, "Write channels/trial_<i>.csv");
    app.add_flag("--trace", trace, "Write per-TTD solver traces to traces/");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config_error;
    }

    subthz::CampaignSpec spec;
    try
    {
        spec.config = subthz::load_config(config_path);
        if (snr_db)
            spec.config.snr_linear = subthz::db_to_linear(*snr_db);
        if (power_split)
            spec.config.power_split = subthz::parse_power_split(*power_split);
        if (unquantized)
            spec.config.solver.quantize_delays = false;
        if (literal_step7)
            spec.config.solver.literal_step7 = true;
        if (trace)
            spec.config.solver.record_trace = true;
        subthz::validate_config(spec.config);
        spec.schemes = subthz::parse_schemes(schemes);
    }
    catch (const std::exception &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    spec.trials = trials;
    spec.master_seed = seed;
    spec.parallelism = parallelism;

    try
    {
        const subthz::CampaignResults results = subthz::run_campaign(spec);
        subthz::write_outputs(results, out_dir, {dump_channels, trace});

        std::cout << "trials completed: " << results.trials.size() << " / " << spec.trials << '\n';
        for (const auto &s : results.summaries)
        {
            const auto &g = s.mean_gain.normalized;
            const double mean_gain = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
            std::cout << subthz::scheme_name(s.scheme) << ": mean min-rate " << s.mean_min_rate
                      << ", median min-rate " << s.median_min_rate << ", mean normalized gain " << mean_gain
                      << '\n';
        }
        std::cout << "outputs written to " << out_dir << '\n';
    }
    catch (const subthz::CampaignAborted &e)
    {
        std::cerr << "campaign aborted: " << e.what() << '\n';
        return exit_campaign_aborted;
    }
    catch (const subthz::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

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
#include "format_util.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef SUBTHZ_VERSION
#define SUBTHZ_VERSION "unknown"
#endif

namespace subthz
{

std::string_view code_version()
{
    return SUBTHZ_VERSION;
}

namespace
{

namespace fs = std::filesystem;

// Binary mode keeps '\n' line endings on every platform.
class CsvFile
{
  public:
    explicit CsvFile(const fs::path &path) : path_(path), out_(path, std::ios::binary | std::ios::trunc)
    {
        if (!out_)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
    }

    std::ostream &stream() { return out_; }

    void close()
    {
        out_.close();
        if (!out_)
            throw std::runtime_error("failed writing " + path_.string());
    }

  private:
    fs::path path_;
    std::ofstream out_;
};

std::string padded(int trial)
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06d", trial);
    return buf;
}

void write_allocation(const CampaignResults &results, const fs::path &dir)
{
    CsvFile file(dir / "allocation.csv");
    auto &out = file.stream();
    out << "trial,scheme,user,alpha_tilde,s_count,min_objective\n";
    for (const auto &trial : results.trials)
        for (const auto &r : trial.schemes)
            for (int n = 0; n < r.allocation.num_users(); ++n)
                out << trial.trial << ',' << scheme_name(r.scheme) << ',' << n + 1 << ','
                    << fmt_double(trial.alpha_tilde[n]) << ',' << r.allocation.counts[n] << ','
                    << fmt_double(r.min_objective) << '\n';
    file.close();
}

void write_rates(const CampaignResults &results, const fs::path &dir)
{
    CsvFile file(dir / "rates.csv");
    auto &out = file.stream();
    out << "trial,scheme,user,rate,min_rate,bound_lemma1,bound_finite\n";
    for (const auto &trial : results.trials)
        for (const auto &r : trial.schemes)
            for (std::size_t n = 0; n < r.rates.rates.size(); ++n)
                out << trial.trial << ',' << scheme_name(r.scheme) << ',' << n + 1 << ','
                    << fmt_double(r.rates.rates[n]) << ',' << fmt_double(r.rates.min_rate) << ','
                    << fmt_double(r.rates.bound_lemma1[n]) << ',' << fmt_double(r.rates.bound_finite[n]) << '\n';
    file.close();
}

void write_gain(const CampaignResults &results, const fs::path &dir)
{
    const SubcarrierGrid grid(results.spec.config);
    CsvFile file(dir / "gain.csv");
    auto &out = file.stream();
    out << "scheme,k,f_hz,raw_gain_mean,normalized_gain_mean\n";
    for (const auto &s : results.summaries)
        for (std::size_t k = 0; k < s.mean_gain.raw.size(); ++k)
            out << scheme_name(s.scheme) << ',' << k + 1 << ',' << fmt_double(grid.frequencies()[k]) << ','
                << fmt_double(s.mean_gain.raw[k]) << ',' << fmt_double(s.mean_gain.normalized[k]) << '\n';
    file.close();
}

void write_cdf(const CampaignResults &results, const fs::path &path, bool min_rate)
{
    CsvFile file(path);
    auto &out = file.stream();
    out << "scheme,value,prob\n";
    for (const auto &s : results.summaries)
    {
        const CdfSeries &cdf = min_rate ? s.min_rate_cdf : s.min_objective_cdf;
        for (std::size_t i = 0; i < cdf.values.size(); ++i)
            out << scheme_name(s.scheme) << ',' << fmt_double(cdf.values[i]) << ','
                << fmt_double(cdf.probabilities[i]) << '\n';
    }
    file.close();
}

void write_trials(const CampaignResults &results, const fs::path &dir)
{
    CsvFile file(dir / "trials.csv");
    auto &out = file.stream();
    out << "trial,seed,scheme,omega,clamp_rate,fallback_used\n";
    for (const auto &trial : results.trials)
        for (const auto &r : trial.schemes)
            out << trial.trial << ',' << trial.seed << ',' << scheme_name(r.scheme) << ',' << fmt_double(r.omega)
                << ',' << fmt_double(r.clamp_rate) << ',' << (r.fallback_used ? 1 : 0) << '\n';
    file.close();
}

void write_manifest(const CampaignResults &results, const fs::path &dir)
{
    nlohmann::ordered_json doc;
    doc["code_version"] = code_version();
    doc["master_seed"] = results.spec.master_seed;
    doc["trials_requested"] = results.spec.trials;
    doc["trials_completed"] = results.trials.size();
    std::vector<std::string> schemes;
    for (Scheme s : results.spec.schemes)
        schemes.emplace_back(scheme_name(s));
    doc["schemes"] = schemes;
    auto failures = nlohmann::ordered_json::array();
    for (const auto &f : results.failures)
        failures.push_back({{"trial", f.trial}, {"message", f.message}});
    doc["failures"] = failures;
    doc["config"] = nlohmann::ordered_json::parse(config_to_json(results.spec.config));

    const fs::path path = dir / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace

void write_outputs(const CampaignResults &results, const fs::path &dir, const OutputOptions &options)
{
    if (results.trials.empty())
        throw std::invalid_argument("write_outputs: no successful trials to write");

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

    write_allocation(results, dir);
    write_rates(results, dir);
    write_gain(results, dir);
    write_cdf(results, dir / "cdf_minrate.csv", true);
    write_cdf(results, dir / "cdf_minobj.csv", false);
    write_trials(results, dir);
    write_manifest(results, dir);

    if (options.dump_channels)
    {
        fs::create_directories(dir / "channels", ec);
        if (ec)
            throw std::runtime_error("cannot create " + (dir / "channels").string() + ": " + ec.message());
        for (const auto &trial : results.trials)
        {
            CsvFile file(dir / "channels" / ("trial_" + padded(trial.trial) + ".csv"));
            write_channel_csv(trial.channel, file.stream());
            file.close();
        }
    }

    if (options.solver_trace)
    {
        fs::create_directories(dir / "traces", ec);
        if (ec)
            throw std::runtime_error("cannot create " + (dir / "traces").string() + ": " + ec.message());
        for (const auto &trial : results.trials)
            for (const auto &r : trial.schemes)
            {
                if (r.analog.method != PrecoderMethod::algorithm1)
                    continue;
                CsvFile file(dir / "traces" /
                             ("trial_" + padded(trial.trial) + "_" + std::string(scheme_name(r.scheme)) + ".csv"));
                auto &out = file.stream();
                out << "l,m,iteration,t_seconds,nmse\n";
                for (const auto &sol : r.analog.solutions)
                    for (const auto &row : sol.trace)
                        out << row.l << ',' << row.m << ',' << row.iteration << ',' << fmt_double(row.delay_s) << ','
                            << fmt_double(row.nmse) << '\n';
                file.close();
            }
    }
}

} // namespace subthz

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

#include "subthz/config.hpp"
#include "subthz/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace subthz
{

namespace
{

void require_positive(double value, const char *name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw ConfigError(ConfigErrorKind::domain, std::string(name) + " must be positive and finite");
}

void require_positive(int value, const char *name)
{
    if (value < 1)
        throw ConfigError(ConfigErrorKind::domain, std::string(name) + " must be >= 1");
}

} // namespace

const SystemConfig &validate_config(const SystemConfig &cfg)
{
    require_positive(cfg.carrier_frequency_hz, "carrier_frequency_hz");
    require_positive(cfg.bandwidth_hz, "bandwidth_hz");
    require_positive(cfg.num_subcarriers, "num_subcarriers");
    require_positive(cfg.num_users, "num_users");
    require_positive(cfg.num_rf_chains, "num_rf_chains");
    require_positive(cfg.ttds_per_subarray, "ttds_per_subarray");
    require_positive(cfg.ps_per_ttd, "ps_per_ttd");
    require_positive(cfg.num_tx_antennas, "num_tx_antennas");
    require_positive(cfg.num_rx_antennas, "num_rx_antennas");
    require_positive(cfg.snr_linear, "snr");
    require_positive(cfg.ttd_levels, "ttd_levels");
    require_positive(cfg.ttd_step_s, "ttd_step_s");
    require_positive(cfg.solver.max_iterations, "max_iterations");
    require_positive(cfg.solver.nmse_threshold, "nmse_threshold");

    // The lowest subcarrier must stay above DC.
    if (cfg.bandwidth_hz >= 2.0 * cfg.carrier_frequency_hz)
        throw ConfigError(ConfigErrorKind::domain, "bandwidth_hz must be below twice the carrier frequency");

    if (!(cfg.absorption_coeff_per_m >= 0.0) || !std::isfinite(cfg.absorption_coeff_per_m))
        throw ConfigError(ConfigErrorKind::domain, "absorption_coeff_per_m must be finite and non-negative");

    if (cfg.num_subcarriers % 2 == 0)
        throw ConfigError(ConfigErrorKind::parity,
                          "num_subcarriers must be odd so that a central subcarrier exists (got " +
                              std::to_string(cfg.num_subcarriers) + ")");

    const long long structured = static_cast<long long>(cfg.num_rf_chains) * cfg.ttds_per_subarray * cfg.ps_per_ttd;
    if (structured != cfg.num_tx_antennas)
    {
        std::ostringstream msg;
        msg << "num_tx_antennas (" << cfg.num_tx_antennas << ") must equal num_rf_chains * ttds_per_subarray * ps_per_ttd ("
            << cfg.num_rf_chains << " * " << cfg.ttds_per_subarray << " * " << cfg.ps_per_ttd << " = " << structured
            << ")";
        throw ConfigError(ConfigErrorKind::dimension_mismatch, msg.str());
    }

    if (cfg.num_users > cfg.num_rf_chains)
        throw ConfigError(ConfigErrorKind::dimension_mismatch, "num_users must not exceed num_rf_chains");

    if (static_cast<int>(cfg.distances_m.size()) != cfg.num_users)
        throw ConfigError(ConfigErrorKind::dimension_mismatch,
                          "distances_m must list exactly num_users entries (got " +
                              std::to_string(cfg.distances_m.size()) + ")");
    for (double d : cfg.distances_m)
        require_positive(d, "distances_m entries");

    return cfg;
}

std::string power_split_name(PowerSplit split)
{
    return split == PowerSplit::common ? "common" : "per_user";
}

PowerSplit parse_power_split(const std::string &name)
{
    if (name == "per_user")
        return PowerSplit::per_user;
    if (name == "common")
        return PowerSplit::common;
    throw ConfigError(ConfigErrorKind::domain, "power_split must be 'per_user' or 'common' (got '" + name + "')");
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

SystemConfig config_from_json(const std::string &text)
{
    using nlohmann::json;

    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(ConfigErrorKind::domain, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError(ConfigErrorKind::domain, "config must be a JSON object");

    static const std::set<std::string> known = {
        "carrier_frequency_hz", "bandwidth_hz", "num_subcarriers", "num_users", "num_rf_chains",
        "ttds_per_subarray", "ps_per_ttd", "num_tx_antennas", "num_rx_antennas", "snr_db",
        "snr_linear", "ttd_levels", "ttd_step_s", "max_iterations", "nmse_threshold",
        "distances_m", "absorption_coeff_per_m", "quantize_delays", "literal_step7", "power_split"};
    for (const auto &item : doc.items())
        if (!known.contains(item.key()))
            throw ConfigError(ConfigErrorKind::domain, "unknown config key '" + item.key() + "'");

    if (doc.contains("snr_db") && doc.contains("snr_linear"))
        throw ConfigError(ConfigErrorKind::domain, "give either snr_db or snr_linear, not both");

    SystemConfig cfg;
    try
    {
        auto get = [&](const char *key, auto &target) {
            if (!doc.contains(key))
                return;
            if constexpr (std::is_same_v<std::decay_t<decltype(target)>, int>)
                if (!doc.at(key).is_number_integer())
                    throw ConfigError(ConfigErrorKind::domain, std::string(key) + " must be an integer");
            doc.at(key).get_to(target);
        };
        get("carrier_frequency_hz", cfg.carrier_frequency_hz);
        get("bandwidth_hz", cfg.bandwidth_hz);
        get("num_subcarriers", cfg.num_subcarriers);
        get("num_users", cfg.num_users);
        get("num_rf_chains", cfg.num_rf_chains);
        get("ttds_per_subarray", cfg.ttds_per_subarray);
        get("ps_per_ttd", cfg.ps_per_ttd);
        get("num_tx_antennas", cfg.num_tx_antennas);
        get("num_rx_antennas", cfg.num_rx_antennas);
        get("snr_linear", cfg.snr_linear);
        if (doc.contains("snr_db"))
            cfg.snr_linear = db_to_linear(doc.at("snr_db").get<double>());
        get("ttd_levels", cfg.ttd_levels);
        get("ttd_step_s", cfg.ttd_step_s);
        get("max_iterations", cfg.solver.max_iterations);
        get("nmse_threshold", cfg.solver.nmse_threshold);
        get("distances_m", cfg.distances_m);
        get("absorption_coeff_per_m", cfg.absorption_coeff_per_m);
        get("quantize_delays", cfg.solver.quantize_delays);
        get("literal_step7", cfg.solver.literal_step7);
        if (doc.contains("power_split"))
            cfg.power_split = parse_power_split(doc.at("power_split").get<std::string>());
    }
    catch (const json::exception &e)
    {
        throw ConfigError(ConfigErrorKind::domain, std::string("config field has the wrong type: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

SystemConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(ConfigErrorKind::domain, "cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

std::string config_to_json(const SystemConfig &cfg)
{
    nlohmann::ordered_json doc;
    doc["carrier_frequency_hz"] = cfg.carrier_frequency_hz;
    doc["bandwidth_hz"] = cfg.bandwidth_hz;
    doc["num_subcarriers"] = cfg.num_subcarriers;
    doc["num_users"] = cfg.num_users;
    doc["num_rf_chains"] = cfg.num_rf_chains;
    doc["ttds_per_subarray"] = cfg.ttds_per_subarray;
    doc["ps_per_ttd"] = cfg.ps_per_ttd;
    doc["num_tx_antennas"] = cfg.num_tx_antennas;
    doc["num_rx_antennas"] = cfg.num_rx_antennas;
    doc["snr_linear"] = cfg.snr_linear;
    doc["ttd_levels"] = cfg.ttd_levels;
    doc["ttd_step_s"] = cfg.ttd_step_s;
    doc["max_iterations"] = cfg.solver.max_iterations;
    doc["nmse_threshold"] = cfg.solver.nmse_threshold;
    doc["distances_m"] = cfg.distances_m;
    doc["absorption_coeff_per_m"] = cfg.absorption_coeff_per_m;
    doc["quantize_delays"] = cfg.solver.quantize_delays;
    doc["literal_step7"] = cfg.solver.literal_step7;
    doc["power_split"] = power_split_name(cfg.power_split);
    return doc.dump(2);
}

SystemConfig desk_preset()
{
    SystemConfig cfg; // defaults are the desk-scale values
    cfg.snr_linear = db_to_linear(10.0);
    return cfg;
}

SystemConfig reference_preset()
{
    SystemConfig cfg;
    cfg.num_subcarriers = 1025;
    cfg.num_users = 4;
    cfg.num_rf_chains = 16;
    cfg.ttds_per_subarray = 16;
    cfg.ps_per_ttd = 4;
    cfg.num_tx_antennas = 1024;
    cfg.num_rx_antennas = 4;
    cfg.snr_linear = db_to_linear(10.0);
    cfg.distances_m = {10.0, 15.0, 20.0, 25.0};
    return cfg;
}

// ------------------------------------------------------------------------

SubcarrierGrid::SubcarrierGrid(const SystemConfig &cfg)
    : carrier_hz_(validate_config(cfg).carrier_frequency_hz)
{
    const int K = cfg.num_subcarriers;
    const double spacing = cfg.bandwidth_hz / K;
    const double half = (K - 1) / 2.0;

    freqs_.resize(K);
    ratios_.resize(K);
    for (int k = 1; k <= K; ++k)
    {
        const double f = carrier_hz_ + spacing * (k - 1 - half);
        freqs_[k - 1] = f;
        ratios_[k - 1] = f / carrier_hz_;
    }

    const double b_over_fc = cfg.bandwidth_hz / carrier_hz_;
    const double k2 = static_cast<double>(K) * K;
    gamma_ = 1.0 + b_over_fc * b_over_fc * (k2 - 1.0) / (12.0 * k2);
}

double SubcarrierGrid::frequency(int k) const
{
    if (k < 1 || k > size())
        throw std::out_of_range("subcarrier index " + std::to_string(k) + " outside 1.." + std::to_string(size()));
    return freqs_[k - 1];
}

double SubcarrierGrid::ratio(int k) const
{
    if (k < 1 || k > size())
        throw std::out_of_range("subcarrier index " + std::to_string(k) + " outside 1.." + std::to_string(size()));
    return ratios_[k - 1];
}

// ------------------------------------------------------------------------

TtdGrid::TtdGrid(int levels, double step_s)
    : levels_(levels), step_(step_s)
{
    if (levels < 1)
        throw ConfigError(ConfigErrorKind::domain, "ttd_levels must be >= 1");
    if (!(step_s > 0.0) || !std::isfinite(step_s))
        throw ConfigError(ConfigErrorKind::domain, "ttd_step_s must be positive and finite");
}

std::vector<double> TtdGrid::values() const
{
    std::vector<double> out(levels_);
    for (int i = 0; i < levels_; ++i)
        out[i] = i * step_;
    return out;
}

bool TtdGrid::contains(double t) const
{
    if (!std::isfinite(t))
        return false;
    const double idx = std::round(t / step_);
    if (idx < 0.0 || idx > levels_ - 1)
        return false;
    return static_cast<int>(idx) * step_ == t;
}

double quantize_delay(double t, const TtdGrid &grid)
{
    if (!std::isfinite(t))
        throw std::invalid_argument("quantize_delay: delay must be finite");

    const int last = grid.levels() - 1;
    const double u = t / grid.step();
    if (u <= 0.0)
        return 0.0;
    if (u >= last)
        return last * grid.step();

    int lower = static_cast<int>(std::floor(u));
    const double lo = lower * grid.step();
    const double hi = (lower + 1) * grid.step();
    // tie -> smaller grid value
    return (t - lo <= hi - t) ? lo : hi;
}

} // namespace subthz

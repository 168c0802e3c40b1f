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

#ifndef SUBTHZ_CONFIG_HPP
#define SUBTHZ_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace subthz
{

inline constexpr double speed_of_light = 299792458.0; // m/s

// Options of the per-subarray PS/TTD solver.
struct SolverOptions
{
    int max_iterations = 50;     // N_iter
    double nmse_threshold = 0.01; // epsilon
    bool quantize_delays = true;  // false = "unquantized mode", delays stay continuous
    bool literal_step7 = false;   // PS update from the previous delay iterate instead of the fresh one
    bool record_trace = false;    // keep (iteration, delay, nmse) rows per TTD
};

// How the transmit power N is split across the digital precoder columns.
enum class PowerSplit
{
    per_user, // every column gets ||F_1 F_{2,k} w_n||^2 = 1
    common    // one scalar per subcarrier, column ratios kept
};

// All scalar system parameters. SI units throughout; SNR is linear.
struct SystemConfig
{
    double carrier_frequency_hz = 300e9;
    double bandwidth_hz = 30e9;
    int num_subcarriers = 129; // K, odd
    int num_users = 2;         // N
    int num_rf_chains = 8;     // N_RF, one subarray per chain
    int ttds_per_subarray = 8; // M
    int ps_per_ttd = 4;        // P
    int num_tx_antennas = 256; // N_t = N_RF * M * P
    int num_rx_antennas = 2;   // N_r
    double snr_linear = 10.0;  // rho
    int ttd_levels = 400;      // Q
    double ttd_step_s = 4e-12; // tau
    std::vector<double> distances_m{10.0, 20.0};
    double absorption_coeff_per_m = 0.0033;
    SolverOptions solver;
    PowerSplit power_split = PowerSplit::per_user;

    int subarray_size() const { return ttds_per_subarray * ps_per_ttd; }
};

// Throws ConfigError on any violated invariant; returns the config unchanged otherwise.
const SystemConfig &validate_config(const SystemConfig &cfg);

double db_to_linear(double db);

std::string power_split_name(PowerSplit split);
PowerSplit parse_power_split(const std::string &name); // "per_user" | "common"


// JSON configuration. Keys are documented in docs/config_schema.md; missing keys
// keep the defaults above. Throws ConfigError on malformed content or failed validation.
SystemConfig config_from_json(const std::string &text);
SystemConfig load_config(const std::filesystem::path &path);
std::string config_to_json(const SystemConfig &cfg);

// In-repo presets.
SystemConfig desk_preset();
SystemConfig reference_preset();

/// OFDM subcarrier grid.
///
/// Subcarrier indices are 1-based in every public function (k = 1..K), matching
/// f_k = f_c + (B/K)(k - 1 - (K-1)/2). Storage is 0-based.
class SubcarrierGrid
{
  public:
    explicit SubcarrierGrid(const SystemConfig &cfg);

    int size() const { return static_cast<int>(freqs_.size()); }
    double carrier_hz() const { return carrier_hz_; }

    double frequency(int k) const;
    double ratio(int k) const; // xi_k = f_k / f_c

    const std::vector<double> &frequencies() const { return freqs_; }
    const std::vector<double> &ratios() const { return ratios_; }

    // Gamma = (1/K) sum_k xi_k^2 = 1 + B^2 (K^2 - 1) / (12 f_c^2 K^2)
    double gamma_factor() const { return gamma_; }

  private:
    double carrier_hz_;
    std::vector<double> freqs_;
    std::vector<double> ratios_;
    double gamma_;
};

inline SubcarrierGrid build_subcarrier_grid(const SystemConfig &cfg) { return SubcarrierGrid(cfg); }

/// Realizable TTD values {0, tau, ..., (Q-1) tau}.
class TtdGrid
{
  public:
    TtdGrid(int levels, double step_s);
    explicit TtdGrid(const SystemConfig &cfg) : TtdGrid(cfg.ttd_levels, cfg.ttd_step_s) {}

    int levels() const { return levels_; }
    double step() const { return step_; }
    double max_delay() const { return (levels_ - 1) * step_; }
    std::vector<double> values() const;

    bool contains(double t) const;

  private:
    int levels_;
    double step_;
};

/// Nearest grid value; ties go to the smaller value and out-of-range input clamps to the endpoints.
double quantize_delay(double t, const TtdGrid &grid);

} // namespace subthz

#endif

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

#ifndef SUBTHZ_ERRORS_HPP
#define SUBTHZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subthz
{

enum class ConfigErrorKind
{
    dimension_mismatch,
    parity,
    domain
};

// Raised by config validation and anything that consumes raw scalar parameters.
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(ConfigErrorKind kind, const std::string &what)
        : std::invalid_argument(what), kind_(kind) {}

    ConfigErrorKind kind() const noexcept { return kind_; }

  private:
    ConfigErrorKind kind_;
};

// More users than subarrays, or an allocation that cannot cover 1..N_RF.
class InfeasibleAllocation : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Effective channel too ill-conditioned for zero-forcing.
class SingularChannelError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A precoder with zero transmit power cannot be normalized.
class DegeneratePrecoderError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace subthz

#endif

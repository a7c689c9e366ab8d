// Copyright 2026 The mixphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "mixphase/nmr.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

/**
 * Plain-text pulse programmes, one event per line:
 *
 *   pulse    <target> <angle> <phase>    target is H, C or HC
 *   tpulse   <angle> <phase>             selective pulse on |10> - |11>
 *   delay    <duration>                  seconds
 *   gradient
 *
 * Angles and phases are in degrees, durations in seconds. Each numeric field
 * is a sum of terms joined by '+' or '-'. A term is a number, a number
 * followed by "/J" (divided by the coupling constant, so "0.25/J" is
 * 1/(4J)), or a parameter reference "$name". Phase fields additionally
 * accept x, y, -x, -y. '#' starts a comment.
 */
namespace mixphase::nmr {

class PulseFormatError : public std::runtime_error {
  public:
    PulseFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Parameter values, degrees for angles and seconds for durations.
using ParameterMap = std::map<std::string, double, std::less<>>;

[[nodiscard]] PulseProgramme parse_programme(std::string_view text, const SpinSystem& sys,
                                             const ParameterMap& params = {});

[[nodiscard]] PulseProgramme load_programme(const std::filesystem::path& path,
                                            const SpinSystem& sys, const ParameterMap& params = {});

/// Numeric rendering that parses back to the same programme.
[[nodiscard]] std::string format_programme(const PulseProgramme& prog);

}  // namespace mixphase::nmr

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

#include "mixphase/pulse_format.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace mixphase::nmr {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

class ExpressionParser {
  public:
    ExpressionParser(std::size_t line, const SpinSystem& sys, const ParameterMap& params)
        : line_(line), sys_(sys), params_(params) {}

    double evaluate(std::string_view expr) const {
        if (expr.empty()) {
            throw PulseFormatError(line_, "empty expression");
        }
        double total = 0.0;
        double sign = 1.0;
        std::size_t start = 0;
        if (expr[0] == '+' || expr[0] == '-') {
            sign = expr[0] == '-' ? -1.0 : 1.0;
            start = 1;
        }
        for (std::size_t i = start; i <= expr.size(); ++i) {
            const bool at_end = i == expr.size();
            if (!at_end && ((expr[i] != '+' && expr[i] != '-') || exponent_sign(expr, start, i))) {
                continue;
            }
            total += sign * term(expr.substr(start, i - start));
            if (!at_end) {
                sign = expr[i] == '-' ? -1.0 : 1.0;
                start = i + 1;
            }
        }
        return total;
    }

  private:
    // The sign in "1e-3" belongs to the number.
    static bool exponent_sign(std::string_view expr, std::size_t start, std::size_t i) {
        if (i < start + 2 || expr[start] == '$') {
            return false;
        }
        const char e = expr[i - 1];
        const char d = expr[i - 2];
        return (e == 'e' || e == 'E') && ((d >= '0' && d <= '9') || d == '.');
    }

    double term(std::string_view t) const {
        if (t.empty()) {
            throw PulseFormatError(line_, "dangling operator");
        }
        if (t[0] == '$') {
            const auto it = params_.find(t.substr(1));
            if (it == params_.end()) {
                throw PulseFormatError(line_, "unbound parameter '" + std::string(t) + "'");
            }
            return it->second;
        }
        bool per_j = false;
        if (t.size() > 2 && t.substr(t.size() - 2) == "/J") {
            per_j = true;
            t.remove_suffix(2);
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || ptr != t.data() + t.size()) {
            throw PulseFormatError(line_, "bad number '" + std::string(t) + "'");
        }
        return per_j ? value / sys_.j_coupling_hz : value;
    }

    std::size_t line_;
    const SpinSystem& sys_;
    const ParameterMap& params_;
};

double parse_phase_deg(std::string_view field, const ExpressionParser& expr) {
    if (field == "x") return 0.0;
    if (field == "y") return 90.0;
    if (field == "-x") return 180.0;
    if (field == "-y") return 270.0;
    return expr.evaluate(field);
}

Target parse_target(std::string_view field, std::size_t line) {
    if (field == "H") return Target::H;
    if (field == "C") return Target::C;
    if (field == "HC" || field == "CH") return Target::Both;
    throw PulseFormatError(line, "unknown target '" + std::string(field) + "'");
}

void expect_fields(const std::vector<std::string_view>& f, std::size_t n, std::size_t line) {
    if (f.size() != n) {
        throw PulseFormatError(line, "'" + std::string(f[0]) + "' takes " + std::to_string(n - 1) +
                                         " argument(s), got " + std::to_string(f.size() - 1));
    }
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PulseProgramme parse_programme(std::string_view text, const SpinSystem& sys,
                               const ParameterMap& params) {
    sys.validate();
    std::vector<PulseEvent> events;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto f = split_fields(line);
        if (f.empty()) {
            continue;
        }
        const ExpressionParser expr(line_no, sys, params);
        try {
            if (f[0] == "pulse") {
                expect_fields(f, 4, line_no);
                events.push_back(PulseEvent::rf(parse_target(f[1], line_no),
                                                deg2rad(expr.evaluate(f[2])),
                                                deg2rad(parse_phase_deg(f[3], expr))));
            } else if (f[0] == "tpulse") {
                expect_fields(f, 3, line_no);
                events.push_back(PulseEvent::transition(deg2rad(expr.evaluate(f[1])),
                                                        deg2rad(parse_phase_deg(f[2], expr))));
            } else if (f[0] == "delay") {
                expect_fields(f, 2, line_no);
                events.push_back(PulseEvent::delay(expr.evaluate(f[1])));
            } else if (f[0] == "gradient") {
                expect_fields(f, 1, line_no);
                events.push_back(PulseEvent::gradient());
            } else {
                throw PulseFormatError(line_no, "unknown event '" + std::string(f[0]) + "'");
            }
        } catch (const PulseFormatError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw PulseFormatError(line_no, e.what());
        }
    }
    if (events.empty()) {
        throw PulseFormatError(line_no, "programme has no events");
    }
    return PulseProgramme(std::move(events));
}

PulseProgramme load_programme(const std::filesystem::path& path, const SpinSystem& sys,
                              const ParameterMap& params) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open pulse programme " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_programme(buf.str(), sys, params);
}

std::string format_programme(const PulseProgramme& prog) {
    std::ostringstream os;
    for (const auto& e : prog.events()) {
        switch (e.kind) {
            case EventKind::RfPulse: {
                const char* target = e.target == Target::H ? "H" : e.target == Target::C ? "C" : "HC";
                os << "pulse " << target << ' ' << number(rad2deg(e.flip_angle)) << ' '
                   << number(rad2deg(e.phase)) << '\n';
                break;
            }
            case EventKind::TransitionPulse:
                os << "tpulse " << number(rad2deg(e.flip_angle)) << ' ' << number(rad2deg(e.phase))
                   << '\n';
                break;
            case EventKind::Delay:
                os << "delay " << number(e.duration) << '\n';
                break;
            case EventKind::Gradient:
                os << "gradient\n";
                break;
        }
    }
    return os.str();
}

}  // namespace mixphase::nmr

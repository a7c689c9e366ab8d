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

#include "mixphase/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mixphase::harness {

namespace {

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    static constexpr double width = 640.0;
    static constexpr double height = 400.0;
    static constexpr double margin = 56.0;

    [[nodiscard]] double px(double x) const {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2.0 * margin);
    }
    [[nodiscard]] double py(double y) const {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2.0 * margin);
    }
};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

Frame padded_frame(double x_lo, double x_hi, double y_lo, double y_hi) {
    if (x_hi <= x_lo) {
        x_hi = x_lo + 1.0;
    }
    if (y_hi - y_lo < 1e-9) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    return {x_lo, x_hi, y_lo - pad, y_hi + pad};
}

void open_svg(std::ostream& os, const Frame& f, const std::string& title, const std::string& x_label,
              const std::string& y_label) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::width << "\" height=\""
       << Frame::height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << Frame::width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(title) << "</text>\n"
       << "<rect x=\"" << Frame::margin << "\" y=\"" << Frame::margin << "\" width=\""
       << Frame::width - 2 * Frame::margin << "\" height=\"" << Frame::height - 2 * Frame::margin
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = f.x_lo + (f.x_hi - f.x_lo) * i / 4.0;
        const double y = f.y_lo + (f.y_hi - f.y_lo) * i / 4.0;
        os << "<text x=\"" << fixed(f.px(x)) << "\" y=\"" << Frame::height - Frame::margin + 16
           << "\" text-anchor=\"middle\">" << format_number(std::round(x * 1000) / 1000) << "</text>\n";
        os << "<text x=\"" << Frame::margin - 6 << "\" y=\"" << fixed(f.py(y) + 4)
           << "\" text-anchor=\"end\">" << format_number(std::round(y * 1000) / 1000) << "</text>\n";
    }
    os << "<text x=\"" << Frame::width / 2 << "\" y=\"" << Frame::height - 12
       << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
       << "<text transform=\"translate(14," << Frame::height / 2
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
}

void polyline(std::ostream& os, const Frame& f, const std::vector<std::pair<double, double>>& pts) {
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) {
        os << fixed(f.px(x)) << ',' << fixed(f.py(y)) << ' ';
    }
    os << "\"/>\n";
}

void markers(std::ostream& os, const Frame& f, const std::vector<std::pair<double, double>>& pts) {
    for (const auto& [x, y] : pts) {
        os << "<circle cx=\"" << fixed(f.px(x)) << "\" cy=\"" << fixed(f.py(y))
           << "\" r=\"3.5\" fill=\"firebrick\"/>\n";
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

void write_pattern_csv(std::ostream& os, const InterferencePattern& pattern) {
    os << "chi_deg,intensity\n";
    for (const auto& p : pattern.points()) {
        os << format_number(p.chi_deg) << ',' << format_number(p.intensity) << '\n';
    }
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
    os << "r,fitted,theory,abs_err\n";
    for (const auto& r : rows) {
        os << format_number(r.r) << ',' << format_number(r.fitted) << ',' << format_number(r.theory)
           << ',' << format_number(r.abs_err) << '\n';
    }
}

void write_pattern_svg(std::ostream& os, const InterferencePattern& pattern,
                       const std::function<double(double)>& theory, const std::string& title) {
    const auto& pts = pattern.points();
    double x_lo = 0.0, x_hi = 1.0;
    if (!pts.empty()) {
        const auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
            return a.chi_deg < b.chi_deg;
        });
        x_lo = mn->chi_deg;
        x_hi = mx->chi_deg;
    }
    const Frame f = padded_frame(x_lo, x_hi, 0.0, 1.0);
    open_svg(os, f, title, "chi (deg)", "intensity");
    if (theory) {
        std::vector<std::pair<double, double>> line;
        for (int i = 0; i <= 400; ++i) {
            const double x = f.x_lo + (f.x_hi - f.x_lo) * i / 400.0;
            line.emplace_back(x, theory(x));
        }
        polyline(os, f, line);
    }
    std::vector<std::pair<double, double>> dots;
    for (const auto& p : pts) {
        dots.emplace_back(p.chi_deg, p.intensity);
    }
    markers(os, f, dots);
    os << "</svg>\n";
}

void write_curve_svg(std::ostream& os, const std::vector<CurveRow>& rows, const std::string& title,
                     const std::string& y_label) {
    double y_lo = 0.0, y_hi = 0.0;
    for (const auto& r : rows) {
        y_lo = std::min({y_lo, r.fitted, r.theory});
        y_hi = std::max({y_hi, r.fitted, r.theory});
    }
    const Frame f = padded_frame(0.0, 1.0, y_lo, y_hi);
    open_svg(os, f, title, "r", y_label);
    std::vector<CurveRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
    std::vector<std::pair<double, double>> line, dots;
    for (const auto& r : sorted) {
        line.emplace_back(r.r, r.theory);
        dots.emplace_back(r.r, r.fitted);
    }
    polyline(os, f, line);
    markers(os, f, dots);
    os << "</svg>\n";
}

}  // namespace mixphase::harness

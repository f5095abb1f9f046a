#include "raman/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "raman/cli/formats.hpp"
#include "raman/version.hpp"

namespace raman::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v)
{
    // coordinates only need to be stable, not precise
    return format_number(std::round(v * 100.0) / 100.0);
}

} // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series)
{
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("plot series '" + s.label + "' has mismatched x/y");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (spec.log_x && !(s.x[i] > 0.0)))
                continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (tx(x) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
        << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\" font-family=\"sans-serif\">\n";
    svg << "<!-- schema_version=" << kSchemaVersion << " artifact_version=" << kArtifactVersion << " -->\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(spec.title) << "</text>\n";
    svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\""
        << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks: five per axis, decades on a log axis
    for (int t = 0; t <= 4; ++t) {
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(py(yv)) << "\" x2=\"" << fmt(kLeft)
            << "\" y2=\"" << fmt(py(yv)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py(yv) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(std::round(yv * 1000.0) / 1000.0)
            << "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double xt = xmin + (xmax - xmin) * t / 4.0;
        const double xv = spec.log_x ? std::pow(10.0, xt) : xt;
        const double x = kLeft + (xt - xmin) / (xmax - xmin) * pw;
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
            << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(std::round(xv * 1000.0) / 1000.0)
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 15)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(spec.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << fmt(kTop + ph / 2) << ")\">" << escape(spec.y_label) << "</text>\n";
    if (spec.zero_line && ymin < 0.0 && ymax > 0.0)
        svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(py(0.0)) << "\" x2=\"" << fmt(kLeft + pw)
            << "\" y2=\"" << fmt(py(0.0)) << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* colour = kPalette[s % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (!std::isfinite(series[s].y[i]) || (spec.log_x && !(series[s].x[i] > 0.0)))
                continue;
            svg << (first ? "" : " ") << fmt(px(series[s].x[i])) << ',' << fmt(py(series[s].y[i]));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(s);
        svg << "<line x1=\"" << fmt(kLeft + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(kLeft + pw + 36)
            << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(kLeft + pw + 42) << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"12\">"
            << escape(series[s].label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace raman::cli

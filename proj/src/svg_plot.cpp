#include "netprof/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace netprof {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 60.0;

struct Axis {
    double lo = 0.0, hi = 1.0;
    double to_x(double v) const {
        return kMarginLeft + (v - lo) / (hi - lo) * (kWidth - kMarginLeft - kMarginRight);
    }
    double to_y(double v) const {
        return kHeight - kMarginBottom -
               (v - lo) / (hi - lo) * (kHeight - kMarginTop - kMarginBottom);
    }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void open_svg(std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
}

void frame(std::ostream& out) {
    out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
        << num(kWidth - kMarginLeft - kMarginRight) << "\" height=\""
        << num(kHeight - kMarginTop - kMarginBottom)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void text(std::ostream& out, double x, double y, const std::string& s,
          const char* anchor = "middle", const char* fill = "black") {
    out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\""
        << " font-size=\"13\" text-anchor=\"" << anchor << "\" fill=\"" << fill << "\">" << s
        << "</text>\n";
}

}  // namespace

void write_ccdf_figure(const Ccdf& in_ccdf, const Ccdf& out_ccdf, const PowerLawFit* fit_in,
                       const PowerLawFit* fit_out, const CrossingResult* crossing,
                       std::ostream& out) {
    double max_k = 1.0, min_p = 1.0;
    for (const auto* c : {&in_ccdf, &out_ccdf}) {
        for (const auto& pt : c->points) {
            max_k = std::max(max_k, static_cast<double>(pt.k));
            min_p = std::min(min_p, pt.p);
        }
    }
    Axis ax{0.0, std::max(0.5, std::ceil(std::log10(max_k) * 2.0) / 2.0)};
    Axis ay{std::min(std::floor(std::log10(std::max(min_p, 1e-12))), -1.0), 0.0};

    open_svg(out);
    // Decade grid lines with 10^d labels.
    for (int d = 0; d <= static_cast<int>(ax.hi); ++d) {
        double x = ax.to_x(d);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kMarginTop) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(kHeight - kMarginBottom)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        text(out, x, kHeight - kMarginBottom + 20.0, "1e" + std::to_string(d));
    }
    for (int d = static_cast<int>(ay.lo); d <= 0; ++d) {
        double y = ay.to_y(d);
        out << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kWidth - kMarginRight) << "\" y2=\"" << num(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        text(out, kMarginLeft - 8.0, y + 4.0, "1e" + std::to_string(d), "end");
    }

    auto draw_curve = [&](const Ccdf& c, const char* color) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& pt : c.points)
            out << num(ax.to_x(std::log10(static_cast<double>(pt.k)))) << ","
                << num(ay.to_y(std::log10(pt.p))) << " ";
        out << "\"/>\n";
        for (const auto& pt : c.points)
            out << "<circle cx=\"" << num(ax.to_x(std::log10(static_cast<double>(pt.k))))
                << "\" cy=\"" << num(ay.to_y(std::log10(pt.p))) << "\" r=\"2.5\" fill=\"" << color
                << "\"/>\n";
    };
    auto draw_fit = [&](const Ccdf& c, const PowerLawFit& fit, const char* color) {
        double x1 = std::log10(static_cast<double>(fit.k_min));
        double x2 = std::log10(static_cast<double>(std::max<std::uint32_t>(c.max_k(), fit.k_min + 1)));
        double y1 = fit.ols_log10_intercept + fit.ols_log10_slope * x1;
        double y2 = fit.ols_log10_intercept + fit.ols_log10_slope * x2;
        out << "<line x1=\"" << num(ax.to_x(x1)) << "\" y1=\"" << num(ay.to_y(y1)) << "\" x2=\""
            << num(ax.to_x(x2)) << "\" y2=\"" << num(ay.to_y(y2)) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";
    };

    draw_curve(in_ccdf, "#1f77b4");
    draw_curve(out_ccdf, "#d62728");
    if (fit_in) draw_fit(in_ccdf, *fit_in, "#1f77b4");
    if (fit_out) draw_fit(out_ccdf, *fit_out, "#d62728");
    if (crossing && crossing->k_star) {
        double x = ax.to_x(std::log10(*crossing->k_star));
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kMarginTop) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(kHeight - kMarginBottom)
            << "\" stroke=\"#444444\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n";
        text(out, x + 4.0, kMarginTop + 16.0, "k* = " + sci(*crossing->k_star), "start");
    }

    frame(out);
    text(out, kMarginLeft + 14.0, kMarginTop + 16.0, "in-degree", "start", "#1f77b4");
    text(out, kMarginLeft + 14.0, kMarginTop + 34.0, "out-degree", "start", "#d62728");
    text(out, (kMarginLeft + kWidth - kMarginRight) / 2.0, kHeight - 16.0, "degree k");
    text(out, 18.0, (kMarginTop + kHeight - kMarginBottom) / 2.0, "P(k)", "middle");
    out << "</svg>\n";
}

void write_scatter_figure(std::span<const DegreeRecord> records, const CorrelationResult* fit,
                          std::ostream& out) {
    double max_in = 1.0, max_out = 1.0;
    for (const auto& rec : records) {
        max_in = std::max(max_in, static_cast<double>(rec.k_in));
        max_out = std::max(max_out, static_cast<double>(rec.k_out));
    }
    Axis ax{0.0, max_in * 1.05};
    Axis ay{0.0, max_out * 1.05};

    open_svg(out);
    for (const auto& rec : records)
        out << "<circle cx=\"" << num(ax.to_x(rec.k_in)) << "\" cy=\"" << num(ay.to_y(rec.k_out))
            << "\" r=\"2.5\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
    if (fit) {
        double y1 = fit->intercept;
        double y2 = fit->intercept + fit->slope * ax.hi;
        auto clamp_y = [&](double y) { return std::clamp(y, ay.lo, ay.hi); };
        out << "<line x1=\"" << num(ax.to_x(0.0)) << "\" y1=\"" << num(ay.to_y(clamp_y(y1)))
            << "\" x2=\"" << num(ax.to_x(ax.hi)) << "\" y2=\"" << num(ay.to_y(clamp_y(y2)))
            << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
        text(out, kWidth - kMarginRight - 10.0, kMarginTop + 16.0, "R^2 = " + sci(fit->r2), "end");
    }
    frame(out);
    text(out, (kMarginLeft + kWidth - kMarginRight) / 2.0, kHeight - 16.0, "in-degree");
    text(out, 18.0, (kMarginTop + kHeight - kMarginBottom) / 2.0, "out-degree", "middle");
    out << "</svg>\n";
}

}  // namespace netprof

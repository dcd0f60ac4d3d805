#include "polybraid/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace polybraid::svg {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 400;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

/// Hue from the imaginary part, mapped into a blue-red ramp.
std::string stroke_color(double im, double im_scale) {
    const double t = 0.5 + 0.5 * std::clamp(im / (im_scale > 0 ? im_scale : 1.0), -1.0, 1.0);
    const int r = static_cast<int>(std::lround(40 + 180 * t));
    const int b = static_cast<int>(std::lround(220 - 180 * t));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x40%02x", r, b);
    return buf;
}

std::string strand_plot(const std::vector<double>& ts, const std::vector<std::vector<polycore::Cx>>& strands,
                        const std::string& title) {
    double re_min = std::numeric_limits<double>::infinity();
    double re_max = -std::numeric_limits<double>::infinity();
    double im_scale = 0.0;
    for (const auto& strand : strands)
        for (const auto& z : strand) {
            re_min = std::min(re_min, z.real());
            re_max = std::max(re_max, z.real());
            im_scale = std::max(im_scale, std::abs(z.imag()));
        }
    if (!(re_max > re_min)) {
        re_max = re_min + 1.0;
        re_min -= 1.0;
    }
    const double t_min = ts.front();
    const double t_max = ts.back() > t_min ? ts.back() : t_min + 1.0;

    auto sx = [&](double t) { return kMargin + (t - t_min) / (t_max - t_min) * (kWidth - 2 * kMargin); };
    auto sy = [&](double re) {
        return kHeight - kMargin - (re - re_min) / (re_max - re_min) * (kHeight - 2 * kMargin);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) + "\" height=\"" +
           std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
           std::to_string(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kMargin) + "\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" + title +
           "</text>\n";
    for (size_t k = 0; k < strands.size(); ++k) {
        const auto& strand = strands[k];
        // Split into short segments so the imaginary part can recolor the stroke.
        for (size_t i = 0; i + 1 < strand.size(); ++i) {
            out += "<line x1=\"" + fmt(sx(ts[i])) + "\" y1=\"" + fmt(sy(strand[i].real())) + "\" x2=\"" +
                   fmt(sx(ts[i + 1])) + "\" y2=\"" + fmt(sy(strand[i + 1].real())) + "\" stroke=\"" +
                   stroke_color(0.5 * (strand[i].imag() + strand[i + 1].imag()), im_scale) +
                   "\" stroke-width=\"1.5\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace

std::string render_trajectory(const tracking::RootTrajectory& t) {
    if (t.strands.empty()) throw Error("EmptyInput", "trajectory has no strands");
    return strand_plot(t.ts, t.strands, "edge " + t.edge + (t.reversed ? " (reversed)" : ""));
}

std::string render_loop(const tracking::LoopMonodromy& m) {
    if (m.strands.empty()) throw Error("EmptyInput", "monodromy carries no strand paths");
    return strand_plot(m.ts, m.strands, "loop " + family::loop_to_string(m.loop));
}

std::string render_braid(const braid::BraidWord& b) {
    const int n = b.strands;
    if (n < 1) throw Error("EmptyInput", "braid needs at least one strand");
    const int cols = static_cast<int>(b.letters.size());
    const double col_w = 60.0;
    const double row_h = 50.0;
    const double width = 2 * kMargin + std::max(1, cols) * col_w;
    const double height = 2 * kMargin + (n - 1) * row_h;

    auto y_of = [&](int pos) { return kMargin + pos * row_h; };
    auto x_of = [&](double col) { return kMargin + col * col_w; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
           "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (cols == 0) {
        for (int p = 0; p < n; ++p)
            out += "<line x1=\"" + fmt(x_of(0)) + "\" y1=\"" + fmt(y_of(p)) + "\" x2=\"" + fmt(x_of(1)) +
                   "\" y2=\"" + fmt(y_of(p)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        out += "</svg>\n";
        return out;
    }

    // One crossing block per letter; the under strand is drawn with a gap.
    for (int col = 0; col < cols; ++col) {
        const double x0 = x_of(col);
        const double x1 = x_of(col + 1);
        const int letter = b.letters[static_cast<size_t>(col)];
        const int i = std::abs(letter) - 1; // crossing between positions i, i+1
        for (int p = 0; p < n; ++p) {
            if (p == i || p == i + 1) continue;
            out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y_of(p)) + "\" x2=\"" + fmt(x1) + "\" y2=\"" +
                   fmt(y_of(p)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        // Positive letter: the strand moving down-right passes over.
        const std::string down = "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y_of(i)) + "\" x2=\"" + fmt(x1) +
                                 "\" y2=\"" + fmt(y_of(i + 1)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const std::string up_broken =
            "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y_of(i + 1)) + "\" x2=\"" +
            fmt(x0 + 0.38 * col_w) + "\" y2=\"" + fmt(y_of(i + 1) - 0.38 * row_h) +
            "\" stroke=\"black\" stroke-width=\"2\"/>\n" + "<line x1=\"" + fmt(x0 + 0.62 * col_w) +
            "\" y1=\"" + fmt(y_of(i) + 0.38 * row_h) + "\" x2=\"" + fmt(x1) + "\" y2=\"" + fmt(y_of(i)) +
            "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const std::string up = "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y_of(i + 1)) + "\" x2=\"" + fmt(x1) +
                               "\" y2=\"" + fmt(y_of(i)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const std::string down_broken =
            "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y_of(i)) + "\" x2=\"" + fmt(x0 + 0.38 * col_w) +
            "\" y2=\"" + fmt(y_of(i) + 0.38 * row_h) + "\" stroke=\"black\" stroke-width=\"2\"/>\n" +
            "<line x1=\"" + fmt(x0 + 0.62 * col_w) + "\" y1=\"" + fmt(y_of(i + 1) - 0.38 * row_h) +
            "\" x2=\"" + fmt(x1) + "\" y2=\"" + fmt(y_of(i + 1)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        if (letter > 0)
            out += up_broken + down;
        else
            out += down_broken + up;
    }
    out += "</svg>\n";
    return out;
}

} // namespace polybraid::svg

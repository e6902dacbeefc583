#include "achci/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace achci::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kMargin = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v, int precision = 2) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

std::string tick_label(double v) {
    std::ostringstream s;
    s << std::setprecision(3) << v;
    return s.str();
}

std::string escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) {
            lo = 0;
            hi = 1;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

// Maps data coordinates to the plotting area; y grows upwards.
struct Frame {
    Range x, y;
    bool equal_aspect = false;

    double px(double v) const { return kMargin + (v - x.lo) / (x.hi - x.lo) * (kWidth - 2 * kMargin); }
    double py(double v) const {
        return kHeight - kMargin - (v - y.lo) / (y.hi - y.lo) * (kHeight - 2 * kMargin);
    }

    void fit_aspect() {
        const double sx = (x.hi - x.lo) / (kWidth - 2 * kMargin);
        const double sy = (y.hi - y.lo) / (kHeight - 2 * kMargin);
        const double s = std::max(sx, sy);
        const double cx = 0.5 * (x.lo + x.hi);
        const double cy = 0.5 * (y.lo + y.hi);
        x.lo = cx - 0.5 * s * (kWidth - 2 * kMargin);
        x.hi = cx + 0.5 * s * (kWidth - 2 * kMargin);
        y.lo = cy - 0.5 * s * (kHeight - 2 * kMargin);
        y.hi = cy + 0.5 * s * (kHeight - 2 * kMargin);
    }
};

void open(std::ostream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
            << escape(title) << "</text>\n";
    }
}

void close(std::ostream& out) { out << "</svg>\n"; }

// Axes with five ticks per side; `label` maps data values to tick text.
template <typename Label>
void axes(std::ostream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel,
          Label label) {
    const double x0 = kMargin;
    const double x1 = kWidth - kMargin;
    const double y0 = kHeight - kMargin;
    const double y1 = kMargin;
    out << "<g stroke=\"black\" stroke-width=\"1\">"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\"/>"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\"/>"
        << "</g>\n<g font-size=\"11\">\n";
    for (int t = 0; t <= 4; ++t) {
        const double vx = f.x.lo + (f.x.hi - f.x.lo) * t / 4.0;
        const double vy = f.y.lo + (f.y.hi - f.y.lo) * t / 4.0;
        out << "<text x=\"" << num(f.px(vx)) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">"
            << label(vx) << "</text>\n";
        out << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(f.py(vy) + 4) << "\" text-anchor=\"end\">"
            << label(vy) << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(xlabel) << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << escape(ylabel) << "</text>\n";
}

}  // namespace

void write_scene(std::ostream& out, const Instance& inst, const SeparatorSet& seps, const Tour* tour,
                 const std::string& title) {
    Frame f;
    for (const auto& p : inst.coords()) {
        f.x.add(p.x);
        f.y.add(p.y);
    }
    for (const auto& s : seps.segments) {
        f.x.add(s.a.x);
        f.x.add(s.b.x);
        f.y.add(s.a.y);
        f.y.add(s.b.y);
    }
    f.x.pad();
    f.y.pad();
    f.fit_aspect();

    open(out, title);
    if (tour && !tour->order.empty()) {
        out << "<polygon fill=\"none\" stroke=\"" << kPalette[0] << "\" stroke-width=\"1.2\" points=\"";
        for (const std::size_t v : tour->order) out << num(f.px(inst[v].x)) << ',' << num(f.py(inst[v].y)) << ' ';
        out << "\"/>\n";
    }
    for (const auto& s : seps.segments) {
        out << "<line x1=\"" << num(f.px(s.a.x)) << "\" y1=\"" << num(f.py(s.a.y)) << "\" x2=\""
            << num(f.px(s.b.x)) << "\" y2=\"" << num(f.py(s.b.y))
            << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
    }
    for (const auto& p : inst.coords()) {
        out << "<circle cx=\"" << num(f.px(p.x)) << "\" cy=\"" << num(f.py(p.y))
            << "\" r=\"2.5\" fill=\"" << kPalette[1] << "\"/>\n";
    }
    close(out);
}

void write_points(std::ostream& out, const std::vector<Point>& points, const std::vector<std::size_t>& hull,
                  const std::string& title) {
    Frame f;
    for (const auto& p : points) {
        f.x.add(p.x);
        f.y.add(p.y);
    }
    f.x.pad();
    f.y.pad();
    f.fit_aspect();
    open(out, title);
    if (!hull.empty()) {
        out << "<polygon fill=\"#eef4fb\" stroke=\"" << kPalette[0] << "\" points=\"";
        for (const std::size_t v : hull) out << num(f.px(points[v].x)) << ',' << num(f.py(points[v].y)) << ' ';
        out << "\"/>\n";
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << "<circle cx=\"" << num(f.px(points[i].x)) << "\" cy=\"" << num(f.py(points[i].y))
            << "\" r=\"2.5\" fill=\"" << kPalette[1] << "\"><title>" << (i + 1) << "</title></circle>\n";
    }
    close(out);
}

void write_scatter(std::ostream& out, const Series& s, const std::string& title, const std::string& xlabel,
                   const std::string& ylabel, const double* reference_y) {
    Frame f;
    for (double v : s.x) f.x.add(v);
    for (double v : s.y) f.y.add(v);
    if (reference_y) f.y.add(*reference_y);
    f.x.pad();
    f.y.pad();
    open(out, title);
    axes(out, f, xlabel, ylabel, tick_label);
    if (reference_y) {
        out << "<line x1=\"" << kMargin << "\" y1=\"" << num(f.py(*reference_y)) << "\" x2=\""
            << kWidth - kMargin << "\" y2=\"" << num(f.py(*reference_y))
            << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        out << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(s.y[i]))
            << "\" r=\"3\" fill=\"" << kPalette[0] << "\" fill-opacity=\"0.7\"/>\n";
    }
    close(out);
}

void write_histogram(std::ostream& out, const std::vector<double>& values, int bins, const std::string& title,
                     const std::string& xlabel) {
    bins = std::max(bins, 1);
    Range r;
    for (double v : values) r.add(v);
    if (!std::isfinite(r.lo)) {
        r.lo = 0;
        r.hi = 1;
    }
    if (r.hi - r.lo < 1e-12) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    const double width = (r.hi - r.lo) / bins;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        auto b = static_cast<int>((v - r.lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    Frame f;
    f.x = r;
    f.y.lo = 0;
    f.y.hi = std::max(1, *std::max_element(counts.begin(), counts.end())) * 1.05;
    open(out, title);
    axes(out, f, xlabel, "count", tick_label);
    for (int b = 0; b < bins; ++b) {
        const double left = r.lo + b * width;
        const double top = f.py(counts[static_cast<std::size_t>(b)]);
        out << "<rect x=\"" << num(f.px(left)) << "\" y=\"" << num(top) << "\" width=\""
            << num(f.px(left + width) - f.px(left)) << "\" height=\"" << num(f.py(0) - top) << "\" fill=\""
            << kPalette[0] << "\" stroke=\"white\"/>\n";
    }
    close(out);
}

void write_loglog(std::ostream& out, const std::vector<Series>& series, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel, const std::vector<std::string>& notes) {
    Frame f;
    for (const auto& s : series) {
        for (double v : s.x) {
            if (v > 0) f.x.add(std::log10(v));
        }
        for (double v : s.y) {
            if (v > 0) f.y.add(std::log10(v));
        }
    }
    f.x.pad();
    f.y.pad();
    open(out, title);
    axes(out, f, "log10 " + xlabel, "log10 " + ylabel, tick_label);
    for (std::size_t n = 0; n < notes.size(); ++n) {
        out << "<text x=\"" << kMargin + 8 << "\" y=\"" << kMargin + 16 + 16 * n << "\" font-size=\"12\">"
            << escape(notes[n]) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        const auto& s = series[k];
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (s.x[i] <= 0 || s.y[i] <= 0) continue;
            out << "<circle cx=\"" << num(f.px(std::log10(s.x[i]))) << "\" cy=\"" << num(f.py(std::log10(s.y[i])))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 + 16 * k
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << escape(s.label)
            << "</text>\n";
    }
    close(out);
}

}  // namespace achci::svg

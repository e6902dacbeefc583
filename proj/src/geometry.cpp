#include "achci/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "achci/tsplib_io.hpp"

namespace achci {

namespace {

constexpr double kOrientEps = 1e-12;

struct Box {
    double xmin, xmax, ymin, ymax;
};

Box bounds(const Segment& s) {
    return {std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x), std::min(s.a.y, s.b.y),
            std::max(s.a.y, s.b.y)};
}

bool boxes_overlap(const Box& p, const Box& q) {
    return p.xmin <= q.xmax && q.xmin <= p.xmax && p.ymin <= q.ymax && q.ymin <= p.ymax;
}

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

// Rotation by 2*pi*m/k; quarter turns are applied exactly.
Point rotate(Point v, int m, int k) {
    if ((4 * m) % k == 0) {
        switch ((4 * m / k) % 4) {
            case 0: return v;
            case 1: return {-v.y, v.x};
            case 2: return {-v.x, -v.y};
            default: return {v.y, -v.x};
        }
    }
    const double theta = 2.0 * std::numbers::pi * m / k;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

int orientation(Point a, Point b, Point c) {
    const Point u = b - a;
    const Point v = c - a;
    const double cr = cross(u, v);
    const double scale = std::hypot(u.x, u.y) * std::hypot(v.x, v.y);
    if (std::abs(cr) <= kOrientEps * scale) return 0;
    return cr > 0 ? 1 : -1;
}

Point centroid(std::span<const Point> points) {
    if (points.empty()) throw std::invalid_argument("centroid of an empty point set");
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& p : points) {
        sx += p.x;
        sy += p.y;
    }
    const auto n = static_cast<double>(points.size());
    return {sx / n, sy / n};
}

Point centroid(const Instance& inst) { return centroid(std::span<const Point>(inst.coords())); }

SeparatorSet generate_separators(const Instance& inst, int k) {
    if (k < 0) throw std::invalid_argument("separator count must be nonnegative");
    if (inst.size() < 2) throw std::invalid_argument("separators need at least 2 points");

    SeparatorSet out{inst.name(), k, {}};
    if (k == 0) return out;

    const Point c = centroid(inst);
    std::vector<double> dist(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) dist[i] = distance(inst[i], c);

    // Increasing distance from the centroid; among equals the lowest index sorts last.
    std::vector<std::size_t> order(inst.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a > b;
    });
    const std::size_t far = order.back();
    if (!(dist[far] > 0.0)) {
        throw std::invalid_argument("instance '" + inst.name() +
                                    "': all points coincide, separator has zero length");
    }

    const Point ray = inst[far] - c;
    out.segments.reserve(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
        const Point r = rotate(ray, m, k);
        out.segments.push_back({c + 0.05 * r, c + 0.95 * r});
    }
    return out;
}

bool on_segment_interior(Point p, const Segment& s) {
    if (orientation(s.a, s.b, p) != 0) return false;
    const Point d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return false;
    const double t = dot(p - s.a, d) / len2;
    const double tol = kOrientEps;
    return t > tol && t < 1.0 - tol;
}

bool segment_blocked(const Segment& path, const Segment& separator) {
    if (path.a == path.b) return false;
    if (!boxes_overlap(bounds(path), bounds(separator))) return false;

    const int o1 = orientation(path.a, path.b, separator.a);
    const int o2 = orientation(path.a, path.b, separator.b);
    const int o3 = orientation(separator.a, separator.b, path.a);
    const int o4 = orientation(separator.a, separator.b, path.b);

    if (o1 * o2 < 0 && o3 * o4 < 0) return true;

    if (o1 == 0 && o2 == 0) {
        // Collinear: blocked only by overlap of positive length.
        const Point d = separator.b - separator.a;
        const double len2 = dot(d, d);
        if (len2 == 0.0) return false;
        double t0 = dot(path.a - separator.a, d) / len2;
        double t1 = dot(path.b - separator.a, d) / len2;
        if (t0 > t1) std::swap(t0, t1);
        const double overlap = std::min(t1, 1.0) - std::max(t0, 0.0);
        return overlap > kOrientEps;
    }
    return false;
}

bool segments_block(const Segment& path, const SeparatorSet& separators) {
    return std::any_of(separators.segments.begin(), separators.segments.end(),
                       [&](const Segment& s) { return segment_blocked(path, s); });
}

std::vector<std::size_t> convex_hull(std::span<const Point> points) {
    if (points.empty()) return {};

    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        if (points[a].y != points[b].y) return points[a].y < points[b].y;
        return a < b;
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
              idx.end());
    if (idx.size() < 3) return idx;

    std::vector<std::size_t> hull;
    hull.reserve(2 * idx.size());
    auto turns_left = [&](std::size_t a, std::size_t b, std::size_t c) {
        return orientation(points[a], points[b], points[c]) > 0;
    };
    for (const std::size_t i : idx) {
        while (hull.size() >= 2 && !turns_left(hull[hull.size() - 2], hull.back(), i)) {
            hull.pop_back();
        }
        hull.push_back(i);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
        while (hull.size() >= lower && !turns_left(hull[hull.size() - 2], hull.back(), *it)) {
            hull.pop_back();
        }
        hull.push_back(*it);
    }
    hull.pop_back();
    return hull;
}

void write_separators_json(std::ostream& out, const SeparatorSet& seps) {
    nlohmann::json j;
    j["instance"] = seps.instance;
    j["k"] = seps.k;
    j["segments"] = nlohmann::json::array();
    for (const auto& s : seps.segments) {
        j["segments"].push_back({s.a.x, s.a.y, s.b.x, s.b.y});
    }
    out << j.dump(2) << '\n';
}

SeparatorSet read_separators_json(std::istream& in) {
    const auto j = nlohmann::json::parse(in);
    SeparatorSet seps;
    seps.instance = j.at("instance").get<std::string>();
    seps.k = j.at("k").get<int>();
    for (const auto& s : j.at("segments")) {
        const auto v = s.get<std::vector<double>>();
        if (v.size() != 4) throw std::runtime_error("separator entry needs 4 coordinates");
        seps.segments.push_back({{v[0], v[1]}, {v[2], v[3]}});
    }
    if (static_cast<int>(seps.segments.size()) != seps.k) {
        throw std::runtime_error("separator file lists " + std::to_string(seps.segments.size()) +
                                 " segments for k = " + std::to_string(seps.k));
    }
    return seps;
}

}  // namespace achci

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace achci {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double cross(Point a, Point b);
double distance(Point a, Point b);

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
///
/// The cross product is treated as zero when its magnitude is below
/// 1e-12 * |b - a| * |c - a|.
int orientation(Point a, Point b, Point c);

/// An impassable, open line segment.
struct Segment {
    Point a;
    Point b;

    double length() const { return distance(a, b); }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct SeparatorSet {
    std::string instance;
    int k = 0;
    std::vector<Segment> segments;
};

class Instance;

Point centroid(std::span<const Point> points);
Point centroid(const Instance& inst);

/// Star of k equiangular separators around the centroid.
///
/// The base separator runs from the centroid towards the point farthest from
/// it (lowest index on ties), trimmed by 5% at both ends. Copies are rotated
/// about the centroid by multiples of 2*pi/k.
SeparatorSet generate_separators(const Instance& inst, int k);

/// True if p lies strictly between the endpoints of s (on its line).
bool on_segment_interior(Point p, const Segment& s);

/// True if the straight path is blocked by the separator.
///
/// A transversal crossing of the open separator blocks, as does collinear
/// overlap of positive length. Touching a separator endpoint, or ending on
/// the separator without crossing it, does not.
bool segment_blocked(const Segment& path, const Segment& separator);

bool segments_block(const Segment& path, const SeparatorSet& separators);

/// Convex hull vertex indices in counterclockwise order, starting from the
/// lexicographically smallest point. Points interior to hull edges are
/// excluded; all-collinear input yields the two extreme points, and a
/// single (possibly repeated) point yields one index.
std::vector<std::size_t> convex_hull(std::span<const Point> points);

void write_separators_json(std::ostream& out, const SeparatorSet& seps);
SeparatorSet read_separators_json(std::istream& in);

}  // namespace achci

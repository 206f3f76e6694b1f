#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sturm {

using Coord = long long;
using Point = std::vector<Coord>;

Point zero_point(int dim);
Point unit_point(int dim, int axis);
Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point neg(const Point& a);

// Finite subset of Z^d; points kept sorted and deduplicated, so equality
// is structural and iteration order is canonical.
class Support {
  public:
    Support() = default;
    Support(int dim, std::vector<Point> pts);

    int dim() const { return dim_; }
    bool empty() const { return pts_.empty(); }
    size_t size() const { return pts_.size(); }
    const std::vector<Point>& points() const { return pts_; }
    // iterable directly so that ranging over a temporary is safe
    std::vector<Point>::const_iterator begin() const { return pts_.begin(); }
    std::vector<Point>::const_iterator end() const { return pts_.end(); }
    bool contains(const Point& p) const;
    Support translated(const Point& t) const;
    bool operator==(const Support& o) const { return dim_ == o.dim_ && pts_ == o.pts_; }

  private:
    int dim_ = 0;
    std::vector<Point> pts_;
};

// {0, m1) x ... x {0, md); every m_i must be positive
Support box(const std::vector<Coord>& m);
// box anchored at an arbitrary corner
Support box_at(const Point& corner, const std::vector<Coord>& m);
// {0, -e_1, ..., -e_d}
Support canonical_difference_set(int dim);
// {f - s : f in F, s in S}
Support minkowski_diff(const Support& f, const Support& s);
// adjacency via +-e_i steps; empty -> false, singleton -> true
bool is_connected(const Support& s);
// max |coordinate| over all points; 0 for empty
Coord radius_linf(const Support& s);
// cells not in s at l1-distance exactly 1 from s
std::vector<Point> boundary_cells(const Support& s);

// One representative per translation class of connected subsets of Z^d,
// sizes 1..max_size, each translated so its lexicographic minimum is the
// origin.  Deterministic order.  Guarded: max_size <= 10.
std::vector<Support> enumerate_connected_supports(int dim, int max_size);

// n -> A n + b with A unimodular over Z
struct AffineMap {
    std::vector<std::vector<Coord>> a;  // row-major
    Point b;

    int dim() const { return static_cast<int>(b.size()); }
    Point apply(const Point& n) const;
    Coord det() const;
    AffineMap inverse() const;                     // exact; requires |det| = 1
    AffineMap after(const AffineMap& inner) const;  // n -> this(inner(n))
    static AffineMap identity(int dim);
    static AffineMap translation(const Point& t);
};

Support apply_affine(const AffineMap& map, const Support& s);

// "dim d" header followed by one point per line, sorted
std::string to_text(const Support& s);
Support support_from_text(std::string_view text);

}  // namespace sturm

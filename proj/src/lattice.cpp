#include "lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sturm {

Point zero_point(int dim) {
    return Point(static_cast<size_t>(dim), 0);
}

Point unit_point(int dim, int axis) {
    Point p = zero_point(dim);
    p[static_cast<size_t>(axis)] = 1;
    return p;
}

Point add(const Point& a, const Point& b) {
    Point out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Point sub(const Point& a, const Point& b) {
    Point out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Point neg(const Point& a) {
    Point out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

Support::Support(int dim, std::vector<Point> pts) : dim_(dim), pts_(std::move(pts)) {
    for (const Point& p : pts_) {
        if (static_cast<int>(p.size()) != dim) {
            throw std::invalid_argument("support point dimension mismatch");
        }
    }
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool Support::contains(const Point& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
}

Support Support::translated(const Point& t) const {
    std::vector<Point> out;
    out.reserve(pts_.size());
    for (const Point& p : pts_) out.push_back(add(p, t));
    return Support(dim_, std::move(out));
}

Support box(const std::vector<Coord>& m) {
    return box_at(zero_point(static_cast<int>(m.size())), m);
}

Support box_at(const Point& corner, const std::vector<Coord>& m) {
    const int dim = static_cast<int>(m.size());
    for (Coord side : m) {
        if (side <= 0) throw std::invalid_argument("box sides must be positive");
    }
    std::vector<Point> pts{corner};
    for (int axis = 0; axis < dim; ++axis) {
        std::vector<Point> next;
        for (const Point& p : pts) {
            for (Coord k = 0; k < m[static_cast<size_t>(axis)]; ++k) {
                Point q = p;
                q[static_cast<size_t>(axis)] += k;
                next.push_back(std::move(q));
            }
        }
        pts = std::move(next);
    }
    return Support(dim, std::move(pts));
}

Support canonical_difference_set(int dim) {
    std::vector<Point> pts{zero_point(dim)};
    for (int i = 0; i < dim; ++i) pts.push_back(neg(unit_point(dim, i)));
    return Support(dim, std::move(pts));
}

Support minkowski_diff(const Support& f, const Support& s) {
    if (f.dim() != s.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<Point> pts;
    pts.reserve(f.size() * s.size());
    for (const Point& a : f.points()) {
        for (const Point& b : s.points()) pts.push_back(sub(a, b));
    }
    return Support(f.dim(), std::move(pts));
}

bool is_connected(const Support& s) {
    if (s.empty()) return false;
    std::set<Point> todo(s.points().begin(), s.points().end());
    std::queue<Point> frontier;
    frontier.push(*todo.begin());
    todo.erase(todo.begin());
    while (!frontier.empty()) {
        const Point p = frontier.front();
        frontier.pop();
        for (int axis = 0; axis < s.dim(); ++axis) {
            for (int dir : {-1, 1}) {
                Point q = p;
                q[static_cast<size_t>(axis)] += dir;
                auto it = todo.find(q);
                if (it != todo.end()) {
                    frontier.push(*it);
                    todo.erase(it);
                }
            }
        }
    }
    return todo.empty();
}

Coord radius_linf(const Support& s) {
    Coord r = 0;
    for (const Point& p : s.points()) {
        for (Coord c : p) r = std::max(r, c < 0 ? -c : c);
    }
    return r;
}

std::vector<Point> boundary_cells(const Support& s) {
    std::set<Point> out;
    for (const Point& p : s.points()) {
        for (int axis = 0; axis < s.dim(); ++axis) {
            for (int dir : {-1, 1}) {
                Point q = p;
                q[static_cast<size_t>(axis)] += dir;
                if (!s.contains(q)) out.insert(q);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Support> enumerate_connected_supports(int dim, int max_size) {
    if (max_size > 10) {
        throw std::invalid_argument("enumerate_connected_supports guard: max_size <= 10");
    }
    std::vector<Support> out;
    if (max_size < 1 || dim < 1) return out;

    auto canonical = [](const std::set<Point>& cells) {
        const Point& anchor = *cells.begin();  // lexicographic minimum
        std::vector<Point> pts;
        pts.reserve(cells.size());
        for (const Point& p : cells) pts.push_back(sub(p, anchor));
        return pts;
    };

    std::set<std::vector<Point>> seen;
    std::vector<std::set<Point>> current;
    current.push_back({zero_point(dim)});
    seen.insert(canonical(current.back()));

    for (const auto& c : current) out.emplace_back(dim, canonical(c));
    for (int size = 2; size <= max_size; ++size) {
        std::vector<std::set<Point>> next;
        std::set<std::vector<Point>> level;
        for (const auto& cells : current) {
            for (const Point& p : cells) {
                for (int axis = 0; axis < dim; ++axis) {
                    for (int dir : {-1, 1}) {
                        Point q = p;
                        q[static_cast<size_t>(axis)] += dir;
                        if (cells.count(q)) continue;
                        std::set<Point> grown = cells;
                        grown.insert(q);
                        auto canon = canonical(grown);
                        if (level.insert(canon).second) next.push_back(std::move(grown));
                    }
                }
            }
        }
        for (const auto& canon : level) out.emplace_back(dim, canon);
        current = std::move(next);
    }
    return out;
}

Point AffineMap::apply(const Point& n) const {
    if (n.size() != b.size()) throw std::invalid_argument("affine map dimension mismatch");
    Point out = b;
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < n.size(); ++j) out[i] += a[i][j] * n[j];
    }
    return out;
}

Coord AffineMap::det() const {
    // fraction-free Gaussian elimination (Bareiss)
    std::vector<std::vector<Coord>> m = a;
    const size_t n = m.size();
    Coord sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

AffineMap AffineMap::inverse() const {
    const Coord d = det();
    if (d != 1 && d != -1) throw std::invalid_argument("affine map is not unimodular");
    const size_t n = a.size();
    // adjugate via cofactors; n is small everywhere this is used
    std::vector<std::vector<Coord>> inv(n, std::vector<Coord>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Coord>> minor;
            for (size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<Coord> row;
                for (size_t c = 0; c < n; ++c) {
                    if (c != j) row.push_back(a[r][c]);
                }
                minor.push_back(std::move(row));
            }
            AffineMap msub{minor, zero_point(static_cast<int>(n - 1))};
            const Coord cof = ((i + j) % 2 == 0 ? 1 : -1) * (n == 1 ? 1 : msub.det());
            inv[j][i] = cof * d;  // d = 1/d for d in {1, -1}
        }
    }
    AffineMap out{inv, zero_point(static_cast<int>(n))};
    out.b = neg(out.apply(b));
    return out;
}

AffineMap AffineMap::after(const AffineMap& inner) const {
    const size_t n = a.size();
    AffineMap out{std::vector<std::vector<Coord>>(n, std::vector<Coord>(n, 0)), apply(inner.b)};
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            for (size_t k = 0; k < n; ++k) out.a[i][j] += a[i][k] * inner.a[k][j];
        }
    }
    return out;
}

AffineMap AffineMap::identity(int dim) {
    const size_t n = static_cast<size_t>(dim);
    AffineMap out{std::vector<std::vector<Coord>>(n, std::vector<Coord>(n, 0)), zero_point(dim)};
    for (size_t i = 0; i < n; ++i) out.a[i][i] = 1;
    return out;
}

AffineMap AffineMap::translation(const Point& t) {
    AffineMap out = identity(static_cast<int>(t.size()));
    out.b = t;
    return out;
}

Support apply_affine(const AffineMap& map, const Support& s) {
    std::vector<Point> pts;
    pts.reserve(s.size());
    for (const Point& p : s.points()) pts.push_back(map.apply(p));
    return Support(s.dim(), std::move(pts));
}

std::string to_text(const Support& s) {
    std::ostringstream out;
    out << "dim " << s.dim() << "\n";
    for (const Point& p : s.points()) {
        for (size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
        out << "\n";
    }
    return out.str();
}

Support support_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word;
    if (!(in >> word) || word != "dim") throw std::invalid_argument("support text: missing dim header");
    int dim = 0;
    if (!(in >> dim) || dim < 1) throw std::invalid_argument("support text: bad dimension");
    std::vector<Point> pts;
    Coord v = 0;
    Point p;
    while (in >> v) {
        p.push_back(v);
        if (static_cast<int>(p.size()) == dim) {
            pts.push_back(p);
            p.clear();
        }
    }
    if (!p.empty()) throw std::invalid_argument("support text: truncated point");
    in.clear();
    if (in >> word) throw std::invalid_argument("support text: trailing content");
    return Support(dim, std::move(pts));
}

}  // namespace sturm

#include "combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sturm {

// ---------------------------------------------------------------------------
// LanguageSource

LanguageSource LanguageSource::exact(SlopeVector alpha) {
    LanguageSource out;
    out.exact_ = std::move(alpha);
    out.tag_ = "exact";
    return out;
}

LanguageSource LanguageSource::windowed(ConfigView view, Point corner, std::vector<Coord> size) {
    LanguageSource out;
    out.grid_ = view.read(box_at(corner, size));
    out.view_ = std::move(view);
    out.corner_ = std::move(corner);
    out.size_ = std::move(size);
    std::ostringstream tag;
    tag << "window ";
    for (size_t i = 0; i < out.size_.size(); ++i) tag << (i ? "x" : "") << out.size_[i];
    tag << " at (";
    for (size_t i = 0; i < out.corner_.size(); ++i) tag << (i ? "," : "") << out.corner_[i];
    tag << ")";
    out.tag_ = tag.str();
    return out;
}

int LanguageSource::alphabet() const {
    return exact_ ? exact_->dim() + 1 : view_->alphabet();
}

const SlopeVector& LanguageSource::slope() const {
    if (!exact_) throw std::logic_error("not an exact language source");
    return *exact_;
}

const ConfigView& LanguageSource::view() const {
    if (!view_) throw std::logic_error("not a windowed language source");
    return *view_;
}

namespace {

// positions n such that n + offsets stays inside [corner, corner + size)
std::vector<Point> inner_positions(const Point& corner, const std::vector<Coord>& size,
                                   const std::vector<Point>& offsets) {
    if (offsets.empty()) return box_at(corner, size).points();
    Point lo = corner;
    std::vector<Coord> len = size;
    for (size_t axis = 0; axis < size.size(); ++axis) {
        Coord omin = offsets.front()[axis], omax = offsets.front()[axis];
        for (const Point& p : offsets) {
            omin = std::min(omin, p[axis]);
            omax = std::max(omax, p[axis]);
        }
        lo[axis] = corner[axis] - omin;
        len[axis] = size[axis] - (omax - omin);
        if (len[axis] <= 0) return {};
    }
    return box_at(lo, len).points();
}

}  // namespace

bool LanguageSource::occurs(const Patch& patch) const {
    if (exact_) {
        if (patch.support.empty()) return true;
        return pattern_interval(*exact_, patch).has_interior();
    }
    const auto& pts = patch.support.points();
    for (const Point& n : inner_positions(corner_, size_, pts)) {
        bool match = true;
        for (size_t i = 0; i < pts.size() && match; ++i) {
            match = grid_.at(add(n, pts[i])) == patch.values[i];
        }
        if (match) return true;
    }
    return false;
}

std::vector<Patch> LanguageSource::patterns(const Support& support) const {
    if (exact_) return language(*exact_, support);
    if (support.empty()) return {Patch{support, {}}};
    std::set<Patch> seen;
    const auto& pts = support.points();
    for (const Point& n : inner_positions(corner_, size_, pts)) {
        Patch p{support, {}};
        p.values.reserve(pts.size());
        for (const Point& q : pts) p.values.push_back(grid_.at(add(n, q)));
        seen.insert(std::move(p));
    }
    return {seen.begin(), seen.end()};
}

long long LanguageSource::complexity(const Support& support) const {
    return static_cast<long long>(patterns(support).size());
}

long long complexity(const LanguageSource& source, const Support& support) {
    return source.complexity(support);
}

long long rectangular_complexity(const std::vector<Coord>& sides) {
    if (sides.empty()) throw std::invalid_argument("box shape must be nonempty");
    long long product = 1;
    for (Coord m : sides) {
        if (m <= 0) throw std::invalid_argument("box sides must be positive");
        product *= m;
    }
    long long total = product;
    for (Coord m : sides) total += product / m;
    return total;
}

// ---------------------------------------------------------------------------
// extension graphs

namespace {

Patch extended(const Patch& w, const std::vector<std::pair<Point, int>>& extra) {
    std::vector<std::pair<Point, int>> cells;
    cells.reserve(w.support.size() + extra.size());
    for (size_t i = 0; i < w.support.size(); ++i) {
        cells.emplace_back(w.support.points()[i], w.values[i]);
    }
    for (const auto& cell : extra) cells.push_back(cell);
    std::sort(cells.begin(), cells.end());
    std::vector<Point> pts;
    std::vector<int> values;
    for (auto& [p, v] : cells) {
        pts.push_back(std::move(p));
        values.push_back(v);
    }
    const int dim = extra.empty() ? w.support.dim() : static_cast<int>(extra.front().first.size());
    return Patch{Support(dim, std::move(pts)), std::move(values)};
}

void require_outside(const Support& s, const Point& position) {
    if (s.contains(position)) {
        throw std::invalid_argument("extension position lies inside the support");
    }
}

}  // namespace

std::set<int> extensions(const LanguageSource& source, const Patch& w, const Point& position) {
    require_outside(w.support, position);
    std::set<int> out;
    for (int a = 0; a < source.alphabet(); ++a) {
        if (source.occurs(extended(w, {{position, a}}))) out.insert(a);
    }
    return out;
}

int ExtensionGraph::components() const {
    const int nl = static_cast<int>(left.size());
    const int nr = static_cast<int>(right.size());
    std::vector<int> parent(static_cast<size_t>(nl + nr));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    auto index_in = [](const std::vector<int>& v, int sym) {
        const auto it = std::lower_bound(v.begin(), v.end(), sym);
        if (it == v.end() || *it != sym) {
            throw std::invalid_argument("edge endpoint missing from vertex set");
        }
        return static_cast<int>(it - v.begin());
    };
    for (const auto& [a, b] : edges) {
        const int u = find(index_in(left, a));
        const int v = find(nl + index_in(right, b));
        if (u != v) parent[static_cast<size_t>(u)] = v;
    }
    int count = 0;
    for (int v = 0; v < nl + nr; ++v) count += find(v) == v;
    return count;
}

bool ExtensionGraph::acyclic() const {
    return static_cast<int>(edges.size()) ==
           static_cast<int>(left.size() + right.size()) - components();
}

int ExtensionGraph::multiplicity() const {
    return static_cast<int>(edges.size()) - static_cast<int>(left.size()) -
           static_cast<int>(right.size()) + 1;
}

namespace {

// exact path: the extension sets only depend on how the shifted windows
// overlay the pattern's interval
ExtensionGraph graph_from_interval(const SlopeVector& alpha, const WindowPartition& part,
                                   const CircularSet& iw, const Point& l, const Point& r) {
    const int q = alpha.dim() + 1;
    ExtensionGraph g;
    std::vector<CircularSet> at_l(static_cast<size_t>(q));
    for (int a = 0; a < q; ++a) {
        at_l[static_cast<size_t>(a)] = intersect(iw, shifted_cell(part, alpha, a, l));
        if (at_l[static_cast<size_t>(a)].has_interior()) g.left.push_back(a);
        if (intersect(iw, shifted_cell(part, alpha, a, r)).has_interior()) g.right.push_back(a);
    }
    for (int a : g.left) {
        for (int b : g.right) {
            if (intersect(at_l[static_cast<size_t>(a)], shifted_cell(part, alpha, b, r))
                    .has_interior()) {
                g.edges.emplace_back(a, b);
            }
        }
    }
    return g;
}

}  // namespace

ExtensionGraph extension_graph(const LanguageSource& source, const Patch& w, const Point& l,
                               const Point& r) {
    require_outside(w.support, l);
    require_outside(w.support, r);
    if (l == r) throw std::invalid_argument("extension positions must differ");
    if (source.is_exact()) {
        // bulk callers go through bispecial_scan, which shares the interval
        // table; here I_w is recomputed from scratch
        const WindowPartition part = window_partition(source.slope());
        return graph_from_interval(source.slope(), part,
                                   pattern_interval(source.slope(), w), l, r);
    }
    ExtensionGraph g;
    const std::set<int> el = extensions(source, w, l);
    const std::set<int> er = extensions(source, w, r);
    g.left.assign(el.begin(), el.end());
    g.right.assign(er.begin(), er.end());
    for (int a : g.left) {
        for (int b : g.right) {
            if (source.occurs(extended(w, {{l, a}, {r, b}}))) g.edges.emplace_back(a, b);
        }
    }
    return g;
}

int bilateral_multiplicity(const LanguageSource& source, const Patch& w, const Point& l,
                           const Point& r) {
    return extension_graph(source, w, l, r).multiplicity();
}

MultiplicityClass classify_multiplicity(int m) {
    if (m > 0) return MultiplicityClass::strong;
    if (m < 0) return MultiplicityClass::weak;
    return MultiplicityClass::neutral;
}

// ---------------------------------------------------------------------------
// evil triples

EvilWitness evil_witness(const Support& s, const Point& l, const Point& r, const Support& f) {
    for (const Point& base : f.points()) {
        const Point t = sub(base, l);
        if (!f.contains(add(t, r))) continue;
        bool clear = true;
        for (const Point& p : s.points()) {
            if (f.contains(add(t, p))) {
                clear = false;
                break;
            }
        }
        if (clear) return EvilWitness{true, t};
    }
    return EvilWitness{false, std::nullopt};
}

Patch evil_pattern(const ConfigView& x, const Support& s, const Point& t) {
    Patch out{s, {}};
    out.values.reserve(s.size());
    for (const Point& p : s.points()) out.values.push_back(x.eval(add(t, p)));
    return out;
}

// ---------------------------------------------------------------------------
// bispecial scan

std::vector<MultiplicityRecord> bispecial_scan(const LanguageSource& source, const Support& s,
                                               const Support& f,
                                               const std::vector<Point>& positions) {
    std::vector<Point> pos = positions.empty() ? boundary_cells(s) : positions;
    for (const Point& p : pos) require_outside(s, p);

    std::vector<Patch> pats;
    std::vector<CircularSet> intervals;  // aligned with pats on the exact path
    std::optional<WindowPartition> part;
    if (source.is_exact()) {
        part = window_partition(source.slope());
        const auto table = language_table(source.slope(), s);
        // pattern intervals tile the circle, split at the sorted cut points
        for (size_t k = 0; k < table.size(); ++k) {
            pats.push_back(table[k].pattern);
            const SurdReal& lo = table[k].cut_point;
            if (k + 1 < table.size()) {
                intervals.push_back(CircularSet{{{lo, table[k + 1].cut_point}}});
            } else if (table.front().cut_point.is_zero()) {
                intervals.push_back(CircularSet{{{lo, SurdReal(1)}}});
            } else {
                intervals.push_back(
                    CircularSet{{{SurdReal(0), table.front().cut_point}, {lo, SurdReal(1)}}});
            }
        }
    } else {
        pats = source.patterns(s);
    }

    std::vector<MultiplicityRecord> out;
    for (size_t i = 0; i < pos.size(); ++i) {
        for (size_t j = i + 1; j < pos.size(); ++j) {
            const Point& l = pos[i];
            const Point& r = pos[j];
            const EvilWitness ew = evil_witness(s, l, r, f);
            std::optional<Patch> evil_w;
            if (ew.evil) {
                evil_w = source.is_exact()
                             ? evil_pattern(ConfigView(SturmianConfig{source.slope(), SurdReal(0),
                                                                      Side::lower}),
                                            s, *ew.t)
                             : evil_pattern(source.view(), s, *ew.t);
            }
            for (size_t k = 0; k < pats.size(); ++k) {
                const Patch& w = pats[k];
                const ExtensionGraph g =
                    source.is_exact()
                        ? graph_from_interval(source.slope(), *part, intervals[k], l, r)
                        : extension_graph(source, w, l, r);
                MultiplicityRecord rec;
                rec.w = w;
                rec.l = l;
                rec.r = r;
                rec.e_left = static_cast<int>(g.left.size());
                rec.e_right = static_cast<int>(g.right.size());
                rec.e_joint = static_cast<int>(g.edges.size());
                rec.m = g.multiplicity();
                rec.cls = classify_multiplicity(rec.m);
                rec.components = g.components();
                rec.acyclic = g.acyclic();
                rec.evil = ew.evil && evil_w && w == *evil_w;
                if (rec.evil) rec.evil_t = ew.t;
                rec.bispecial = rec.e_left >= 2 && rec.e_right >= 2;
                rec.separation = sub(r, l);
                rec.source = source.tag();
                out.push_back(std::move(rec));
            }
        }
    }
    return out;
}

namespace {

std::string point_text(const Point& p) {
    std::string out = "(";
    for (size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
    return out + ")";
}

std::string_view class_text(MultiplicityClass cls) {
    switch (cls) {
        case MultiplicityClass::strong: return "strong";
        case MultiplicityClass::weak: return "weak";
        case MultiplicityClass::neutral: return "neutral";
    }
    return "neutral";
}

}  // namespace

std::string records_to_text(const std::vector<MultiplicityRecord>& records) {
    std::ostringstream out;
    out << "w\tl\tr\te_left\te_right\te_joint\tm\tclass\tcomponents\tacyclic\tevil\tevil_t"
        << "\tbispecial\tseparation\tsource\n";
    for (const MultiplicityRecord& rec : records) {
        out << rec.w.value_string() << "\t" << point_text(rec.l) << "\t" << point_text(rec.r)
            << "\t" << rec.e_left << "\t" << rec.e_right << "\t" << rec.e_joint << "\t" << rec.m
            << "\t" << class_text(rec.cls) << "\t" << rec.components << "\t"
            << (rec.acyclic ? "yes" : "no") << "\t" << (rec.evil ? "yes" : "no") << "\t"
            << (rec.evil_t ? point_text(*rec.evil_t) : "-") << "\t"
            << (rec.bispecial ? "yes" : "no") << "\t" << point_text(rec.separation) << "\t"
            << rec.source << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// unit-scale counting facts

BipartiteStats analyze_bipartite(int left_count, int right_count,
                                 const std::vector<std::pair<int, int>>& edges) {
    if (left_count < 0 || right_count < 0) {
        throw std::invalid_argument("vertex counts must be nonnegative");
    }
    std::set<std::pair<int, int>> unique;
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= left_count || b < 0 || b >= right_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        unique.emplace(a, b);
    }
    BipartiteStats stats;
    stats.left_vertices = left_count;
    stats.right_vertices = right_count;
    stats.edges = static_cast<int>(unique.size());

    const int vertices = left_count + right_count;
    std::vector<int> parent(static_cast<size_t>(vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    for (const auto& [a, b] : unique) {
        const int u = find(a);
        const int v = find(left_count + b);
        if (u != v) parent[static_cast<size_t>(u)] = v;
    }
    stats.components = 0;
    for (int v = 0; v < vertices; ++v) stats.components += find(v) == v;
    stats.acyclic = stats.edges == vertices - stats.components;
    stats.m = stats.edges - left_count - right_count + 1;
    return stats;
}

bool multiplicity_laws_hold(const BipartiteStats& stats) {
    if (stats.m < 1 - stats.components) return false;
    if ((stats.m == 1 - stats.components) != stats.acyclic) return false;
    if (stats.components == 1 && stats.m < 0) return false;
    if (stats.components == 1 && !stats.acyclic && stats.m <= 0) return false;
    return true;
}

bool pair_count_inequality_holds(const std::vector<int>& cycle_next, const std::vector<bool>& in_a,
                                 const std::vector<int>& fiber_label) {
    const size_t n = cycle_next.size();
    if (in_a.size() != n || fiber_label.size() != n) {
        throw std::invalid_argument("argument sizes must agree");
    }
    if (n == 0) throw std::invalid_argument("the ground set must be nonempty");
    std::vector<bool> seen(n, false);
    size_t at = 0;
    for (size_t step = 0; step < n; ++step) {
        if (seen[at]) throw std::invalid_argument("cycle_next is not a single cycle");
        seen[at] = true;
        const int nx = cycle_next[at];
        if (nx < 0 || static_cast<size_t>(nx) >= n) {
            throw std::invalid_argument("cycle_next entry out of range");
        }
        at = static_cast<size_t>(nx);
    }
    if (at != 0) throw std::invalid_argument("cycle_next is not a single cycle");

    size_t a_count = 0;
    for (bool flag : in_a) a_count += flag;
    if (a_count == n) throw std::invalid_argument("A must be a proper subset of the cycle");

    std::set<int> image;
    std::set<std::pair<size_t, int>> pairs;
    for (size_t v = 0; v < n; ++v) {
        if (!in_a[v]) continue;
        image.insert(fiber_label[v]);
        pairs.emplace(v, fiber_label[v]);
        pairs.emplace(static_cast<size_t>(cycle_next[v]), fiber_label[v]);
    }
    return pairs.size() >= a_count + image.size();
}

}  // namespace sturm

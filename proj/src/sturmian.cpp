#include "sturmian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sturm {

Side side_from_text(std::string_view text) {
    if (text == "lower") return Side::lower;
    if (text == "upper") return Side::upper;
    throw std::invalid_argument("side must be 'lower' or 'upper'");
}

std::string_view side_to_text(Side side) {
    return side == Side::lower ? "lower" : "upper";
}

WindowPartition window_partition(const SlopeVector& alpha) {
    const int d = alpha.dim();
    const SurdReal one(1);
    for (const SurdReal& a : alpha.entries) {
        if (a.sign() <= 0 || compare(a, one) >= 0) {
            throw std::invalid_argument("slope entries must lie in (0, 1)");
        }
    }
    // sort indices 1..d by descending entry value; ties are an error
    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return compare(alpha.entries[i - 1], alpha.entries[j - 1]) > 0;
    });
    for (int i = 0; i + 1 < d; ++i) {
        if (alpha.entries[order[i] - 1] == alpha.entries[order[i + 1] - 1]) {
            throw std::invalid_argument("slope entries must be pairwise distinct");
        }
    }
    WindowPartition part;
    part.tau.push_back(0);
    part.bounds.push_back(SurdReal(0));
    for (int i = 0; i < d; ++i) {
        part.tau.push_back(order[i]);
        part.bounds.push_back(one - alpha.entries[order[i] - 1]);
    }
    part.tau.push_back(d + 1);
    part.bounds.push_back(one);
    return part;
}

std::vector<SurdReal> window_lengths(const SlopeVector& alpha) {
    const WindowPartition part = window_partition(alpha);
    std::vector<SurdReal> out;
    for (int i = 0; i < part.cells(); ++i) out.push_back(part.cell_length(i));
    return out;
}

int WindowPartition::cell_of(const SurdReal& t, Side side) const {
    const int n = cells();
    for (int i = 0; i < n; ++i) {
        const int lo = compare(t, bounds[i]);
        const int hi = compare(t, bounds[i + 1]);
        const bool in = side == Side::lower ? (lo >= 0 && hi < 0) : (lo > 0 && hi <= 0);
        if (in) return i;
    }
    throw std::domain_error("point outside the unit circle parametrization");
}

SurdReal SturmianConfig::phase(const Point& n) const {
    if (static_cast<int>(n.size()) != dim()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    SurdReal t = rho;
    for (size_t i = 0; i < n.size(); ++i) t += alpha.entries[i].scaled(BigRat(n[i]));
    return t;
}

int SturmianConfig::eval(const Point& n) const {
    const SurdReal t = phase(n);
    int symbol = 0;
    if (side == Side::lower) {
        const BigInt base = t.floor();
        for (const SurdReal& a : alpha.entries) {
            symbol += static_cast<int>((a + t).floor() - base);
        }
    } else {
        const BigInt base = t.ceil();
        for (const SurdReal& a : alpha.entries) {
            symbol += static_cast<int>((a + t).ceil() - base);
        }
    }
    return symbol;
}

int SturmianConfig::eval_by_window(const Point& n, const WindowPartition& part) const {
    SurdReal t = phase(n).frac();
    if (side == Side::upper && t.is_zero()) t = SurdReal(1);
    return part.cell_of(t, side);
}

int Patch::at(const Point& p) const {
    const auto& pts = support.points();
    const auto it = std::lower_bound(pts.begin(), pts.end(), p);
    if (it == pts.end() || *it != p) throw std::out_of_range("point not in patch support");
    return values[static_cast<size_t>(it - pts.begin())];
}

bool Patch::operator<(const Patch& o) const {
    if (support.points() != o.support.points()) return support.points() < o.support.points();
    return values < o.values;
}

std::string Patch::value_string() const {
    std::string out;
    out.reserve(values.size());
    for (int v : values) out += static_cast<char>('0' + v);
    return out;
}

Patch read_patch(const SturmianConfig& config, const Support& support) {
    Patch out{support, {}};
    out.values.reserve(support.size());
    for (const Point& p : support.points()) out.values.push_back(config.eval(p));
    return out;
}

std::string to_text(const Patch& patch) {
    int alphabet = 0;
    for (int v : patch.values) alphabet = std::max(alphabet, v + 1);
    std::ostringstream out;
    out << "dim " << patch.support.dim() << "\n";
    out << "alphabet " << alphabet << "\n";
    for (size_t i = 0; i < patch.support.size(); ++i) {
        for (Coord c : patch.support.points()[i]) out << c << " ";
        out << patch.values[i] << "\n";
    }
    return out.str();
}

Patch patch_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word;
    int dim = 0, alphabet = 0;
    if (!(in >> word) || word != "dim" || !(in >> dim) || dim < 1) {
        throw std::invalid_argument("patch text: missing dim header");
    }
    if (!(in >> word) || word != "alphabet" || !(in >> alphabet) || alphabet < 1) {
        throw std::invalid_argument("patch text: missing alphabet header");
    }
    std::vector<std::pair<Point, int>> cells;
    while (true) {
        Point p;
        for (int i = 0; i < dim; ++i) {
            Coord c = 0;
            if (!(in >> c)) {
                if (i == 0) goto done;
                throw std::invalid_argument("patch text: truncated cell");
            }
            p.push_back(c);
        }
        int v = 0;
        if (!(in >> v)) throw std::invalid_argument("patch text: cell missing value");
        if (v < 0 || v >= alphabet) throw std::invalid_argument("patch text: value outside alphabet");
        cells.emplace_back(std::move(p), v);
    }
done:
    std::sort(cells.begin(), cells.end());
    std::vector<Point> pts;
    std::vector<int> values;
    for (auto& [p, v] : cells) {
        if (!pts.empty() && pts.back() == p) throw std::invalid_argument("patch text: duplicate cell");
        pts.push_back(std::move(p));
        values.push_back(v);
    }
    return Patch{Support(dim, std::move(pts)), std::move(values)};
}

// ---------------------------------------------------------------------------
// pattern intervals

namespace {

using Arc = std::pair<SurdReal, SurdReal>;

// both inputs are unions of disjoint half-open intervals within [0, 1]
std::vector<Arc> intersect_unions(const std::vector<Arc>& a, const std::vector<Arc>& b) {
    std::vector<Arc> out;
    for (const Arc& x : a) {
        for (const Arc& y : b) {
            const SurdReal lo = compare(x.first, y.first) >= 0 ? x.first : y.first;
            const SurdReal hi = compare(x.second, y.second) <= 0 ? x.second : y.second;
            if (compare(lo, hi) < 0) out.emplace_back(lo, hi);
        }
    }
    std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) {
        return compare(x.first, y.first) < 0;
    });
    return out;
}

// W - t as a union of linear intervals, where W = [lo, hi) within [0, 1]
std::vector<Arc> shifted_window(const SurdReal& lo, const SurdReal& hi, const SurdReal& t) {
    const SurdReal one(1);
    SurdReal start = (lo - t).frac();
    const SurdReal len = hi - lo;
    SurdReal end = start + len;
    if (compare(end, one) <= 0) return {{start, end}};
    return {{SurdReal(0), end - one}, {start, one}};
}

}  // namespace

bool CircularSet::is_single_arc() const {
    if (arcs.size() == 1) return true;
    if (arcs.size() == 2) {
        return arcs.front().first.is_zero() && arcs.back().second == SurdReal(1);
    }
    return false;
}

std::optional<SurdReal> CircularSet::left_endpoint() const {
    if (!is_single_arc()) return std::nullopt;
    if (arcs.size() == 2) return arcs.back().first;  // wraps through 0
    // the full circle [0, 1) has no distinguished endpoint unless it came
    // from a genuine cut at 0
    return arcs.front().first;
}

CircularSet intersect(const CircularSet& a, const CircularSet& b) {
    return CircularSet{intersect_unions(a.arcs, b.arcs)};
}

CircularSet shifted_cell(const WindowPartition& part, const SlopeVector& alpha, int symbol,
                         const Point& n) {
    if (symbol < 0 || symbol >= part.cells()) return CircularSet{};
    const SturmianConfig config{alpha, SurdReal(0), Side::lower};
    return CircularSet{
        shifted_window(part.bounds[symbol], part.bounds[symbol + 1], config.phase(n).frac())};
}

CircularSet pattern_interval(const SlopeVector& alpha, const Patch& patch) {
    const WindowPartition part = window_partition(alpha);
    CircularSet acc{{{SurdReal(0), SurdReal(1)}}};
    for (size_t i = 0; i < patch.support.size() && !acc.empty(); ++i) {
        acc = intersect(acc, shifted_cell(part, alpha, patch.values[i], patch.support.points()[i]));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// exact language via the occurrence bijection with F - S

std::vector<LanguageEntry> language_table(const SlopeVector& alpha, const Support& s) {
    const int d = alpha.dim();
    if (s.dim() != d && !s.empty()) throw std::invalid_argument("support dimension mismatch");
    const SturmianConfig config{alpha, SurdReal(0), Side::lower};
    if (s.empty()) {
        return {LanguageEntry{zero_point(d), Patch{Support(d, {}), {}}, SurdReal(0)}};
    }
    if (!is_connected(s)) {
        throw std::invalid_argument("language requires a connected support");
    }
    const Support diff = minkowski_diff(canonical_difference_set(d), s);
    std::vector<LanguageEntry> out;
    out.reserve(diff.size());
    for (const Point& m : diff.points()) {
        Patch pattern{s, {}};
        pattern.values.reserve(s.size());
        for (const Point& p : s.points()) pattern.values.push_back(config.eval(add(m, p)));
        out.push_back(LanguageEntry{m, std::move(pattern), config.phase(m).frac()});
    }
    std::sort(out.begin(), out.end(), [](const LanguageEntry& a, const LanguageEntry& b) {
        return compare(a.cut_point, b.cut_point) < 0;
    });
    for (size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i].pattern == out[i + 1].pattern) {
            throw std::runtime_error("language table degenerate (slope not totally irrational?)");
        }
    }
    return out;
}

std::vector<Patch> language(const SlopeVector& alpha, const Support& s) {
    std::vector<Patch> out;
    for (auto& entry : language_table(alpha, s)) out.push_back(std::move(entry.pattern));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// window scans

Patch eval_window(const SturmianConfig& config, const Point& corner,
                  const std::vector<Coord>& size) {
    const Support window = box_at(corner, size);
    return read_patch(config, window);
}

std::vector<Point> occurrences_in_window(const SturmianConfig& config, const Patch& patch,
                                         const Point& corner, const std::vector<Coord>& size) {
    const Patch grid = eval_window(config, corner, size);
    std::vector<Point> out;
    // candidate shifts n with n + S inside the window
    std::vector<Coord> inner_size(size.size());
    Point inner_corner = corner;
    const auto& pts = patch.support.points();
    if (pts.empty()) return out;
    for (size_t axis = 0; axis < size.size(); ++axis) {
        Coord lo = pts.front()[axis], hi = pts.front()[axis];
        for (const Point& p : pts) {
            lo = std::min(lo, p[axis]);
            hi = std::max(hi, p[axis]);
        }
        inner_corner[axis] = corner[axis] - lo;
        inner_size[axis] = size[axis] - (hi - lo);
        if (inner_size[axis] <= 0) return out;
    }
    for (const Point& n : box_at(inner_corner, inner_size)) {
        bool match = true;
        for (size_t i = 0; i < pts.size() && match; ++i) {
            match = grid.at(add(n, pts[i])) == patch.values[i];
        }
        if (match) out.push_back(n);
    }
    return out;
}

std::vector<double> symbol_frequencies(const SturmianConfig& config, const Point& corner,
                                       const std::vector<Coord>& size) {
    const Patch grid = eval_window(config, corner, size);
    std::vector<double> counts(static_cast<size_t>(config.alphabet()), 0.0);
    for (int v : grid.values) counts[static_cast<size_t>(v)] += 1.0;
    const double total = static_cast<double>(grid.values.size());
    for (double& c : counts) c /= total;
    return counts;
}

}  // namespace sturm

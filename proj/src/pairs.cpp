#include "pairs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace sturm {

// ---------------------------------------------------------------------------
// ConfigView

ConfigView::ConfigView(SturmianConfig base)
    : base_(std::move(base)),
      origin_(zero_point(base_.dim())),
      view_dim_(base_.dim()),
      view_alphabet_(base_.alphabet()) {
    const size_t d = static_cast<size_t>(base_.dim());
    basis_.assign(d, std::vector<Coord>(d, 0));
    for (size_t i = 0; i < d; ++i) basis_[i][i] = 1;
    symbol_out_.resize(static_cast<size_t>(base_.alphabet()));
    std::iota(symbol_out_.begin(), symbol_out_.end(), 0);
    if (base_.alpha.certificate == SlopeVector::Certificate::asserted) {
        watermarks_.push_back("slope independence asserted");
    }
}

Point ConfigView::to_base(const Point& n) const {
    if (static_cast<int>(n.size()) != view_dim_) {
        throw std::invalid_argument("view point dimension mismatch");
    }
    Point out = origin_;
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < n.size(); ++j) out[i] += basis_[i][j] * n[j];
    }
    return out;
}

int ConfigView::eval(const Point& n) const {
    const Point b = to_base(n);
    const auto it = overrides_.find(b);
    const int raw = it != overrides_.end() ? it->second : base_.eval(b);
    return symbol_out_[static_cast<size_t>(raw)];
}

Patch ConfigView::read(const Support& support) const {
    Patch out{support, {}};
    out.values.reserve(support.size());
    for (const Point& p : support.points()) out.values.push_back(eval(p));
    return out;
}

bool ConfigView::is_plain_sturmian() const {
    if (!overrides_.empty()) return false;
    if (view_dim_ != base_.dim() || view_alphabet_ != base_.alphabet()) return false;
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < basis_[i].size(); ++j) {
            if (basis_[i][j] != (i == j ? 1 : 0)) return false;
        }
    }
    for (Coord c : origin_) {
        if (c != 0) return false;
    }
    for (size_t s = 0; s < symbol_out_.size(); ++s) {
        if (symbol_out_[s] != static_cast<int>(s)) return false;
    }
    return true;
}

ConfigView ConfigView::with_overrides(std::map<Point, int> overrides) const {
    ConfigView out = *this;
    for (const auto& [p, v] : overrides) {
        if (static_cast<int>(p.size()) != base_.dim()) {
            throw std::invalid_argument("override point dimension mismatch");
        }
        if (v < 0 || v >= base_.alphabet()) {
            throw std::invalid_argument("override symbol outside alphabet");
        }
        out.overrides_[p] = v;
    }
    return out;
}

ConfigView ConfigView::transported(const AffineMap& pre, const std::vector<int>& symbol_map) const {
    if (pre.dim() != view_dim_) throw std::invalid_argument("transport dimension mismatch");
    if (symbol_map.size() != static_cast<size_t>(view_alphabet_)) {
        throw std::invalid_argument("transport symbol map has wrong size");
    }
    {
        std::vector<bool> seen(symbol_map.size(), false);
        for (int v : symbol_map) {
            if (v < 0 || v >= view_alphabet_ || seen[static_cast<size_t>(v)]) {
                throw std::invalid_argument("transport symbol map is not a bijection");
            }
            seen[static_cast<size_t>(v)] = true;
        }
    }
    ConfigView out = *this;
    // view'(n) = sym(view(A n + b)) = sym(out[base(origin + B(An + b))])
    out.origin_ = to_base(pre.b);
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < static_cast<size_t>(view_dim_); ++j) {
            Coord acc = 0;
            for (size_t k = 0; k < static_cast<size_t>(view_dim_); ++k) {
                acc += basis_[i][k] * pre.a[k][j];
            }
            out.basis_[i][j] = acc;
        }
    }
    for (size_t s = 0; s < symbol_out_.size(); ++s) {
        out.symbol_out_[s] = symbol_map[static_cast<size_t>(symbol_out_[s])];
    }
    return out;
}

ConfigView ConfigView::restricted(const Point& v,
                                  const std::vector<std::vector<Coord>>& basis_columns) const {
    if (static_cast<int>(v.size()) != view_dim_) {
        throw std::invalid_argument("sublattice origin dimension mismatch");
    }
    ConfigView out = *this;
    out.origin_ = to_base(v);
    const int new_dim = static_cast<int>(basis_columns.size());
    out.basis_.assign(basis_.size(), std::vector<Coord>(static_cast<size_t>(new_dim), 0));
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < static_cast<size_t>(new_dim); ++j) {
            const std::vector<Coord>& col = basis_columns[j];
            if (static_cast<int>(col.size()) != view_dim_) {
                throw std::invalid_argument("sublattice basis column dimension mismatch");
            }
            Coord acc = 0;
            for (size_t k = 0; k < static_cast<size_t>(view_dim_); ++k) {
                acc += basis_[i][k] * col[k];
            }
            out.basis_[i][j] = acc;
        }
    }
    out.view_dim_ = new_dim;
    return out;
}

ConfigView ConfigView::projected() const {
    if (view_dim_ < 2) throw std::invalid_argument("projection requires dimension >= 2");
    if (view_alphabet_ < 2) throw std::invalid_argument("projection requires alphabet >= 2");
    ConfigView out = *this;
    // keep columns 2..d of the input basis: new view point n' embeds as (0, n')
    for (size_t i = 0; i < basis_.size(); ++i) {
        out.basis_[i].assign(basis_[i].begin() + 1, basis_[i].end());
    }
    out.view_dim_ = view_dim_ - 1;
    out.view_alphabet_ = view_alphabet_ - 1;
    for (size_t s = 0; s < symbol_out_.size(); ++s) {
        const int v = symbol_out_[s];
        out.symbol_out_[s] = v == 0 ? 0 : v - 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// difference sets of characteristic pairs

namespace {

// unique n with n . alpha + rho integral, if any; valid for slopes whose
// independence certificate is proven (then {1, alpha} is a basis of the
// relevant rational space and the solution, if it exists, is unique)
std::optional<Point> integral_phase_cell(const SlopeVector& alpha, const SurdReal& rho) {
    const int d = alpha.dim();
    std::vector<long long> radicands;
    auto note = [&](const SurdReal& v) {
        for (const auto& [k, c] : v.surd_terms()) {
            if (std::find(radicands.begin(), radicands.end(), k) == radicands.end()) {
                radicands.push_back(k);
            }
        }
    };
    for (const auto& a : alpha.entries) note(a);
    note(rho);
    std::sort(radicands.begin(), radicands.end());

    // unknowns n_1..n_d, k:  sum_i n_i alpha_i - k = -rho, coordinatewise
    // over the basis {1} u {sqrt(m)}
    const size_t rows_n = radicands.size() + 1;
    const size_t cols_n = static_cast<size_t>(d) + 1;
    std::vector<std::vector<BigRat>> m(rows_n, std::vector<BigRat>(cols_n + 1, BigRat(0)));
    auto coord = [&](const SurdReal& v, size_t row) -> BigRat {
        if (row == 0) return v.rational_part();
        const auto it = v.surd_terms().find(radicands[row - 1]);
        return it == v.surd_terms().end() ? BigRat(0) : it->second;
    };
    for (size_t row = 0; row < rows_n; ++row) {
        for (int i = 0; i < d; ++i) m[row][static_cast<size_t>(i)] = coord(alpha.entries[i], row);
        m[row][static_cast<size_t>(d)] = BigRat(row == 0 ? -1 : 0);
        m[row][cols_n] = -coord(rho, row);
    }
    // exact Gaussian elimination; a unique solution is expected
    size_t pivot_row = 0;
    std::vector<int> pivot_col_of_row;
    for (size_t col = 0; col < cols_n && pivot_row < rows_n; ++col) {
        size_t sel = pivot_row;
        while (sel < rows_n && m[sel][col] == 0) ++sel;
        if (sel == rows_n) return std::nullopt;  // underdetermined: bail out
        std::swap(m[sel], m[pivot_row]);
        for (size_t r = 0; r < rows_n; ++r) {
            if (r == pivot_row || m[r][col] == 0) continue;
            const BigRat f = m[r][col] / m[pivot_row][col];
            for (size_t c = col; c <= cols_n; ++c) m[r][c] -= f * m[pivot_row][c];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++pivot_row;
    }
    if (pivot_row < cols_n) return std::nullopt;
    // consistency of the remaining rows
    for (size_t r = pivot_row; r < rows_n; ++r) {
        if (m[r][cols_n] != 0) return std::nullopt;
    }
    std::vector<BigRat> solution(cols_n);
    for (size_t r = 0; r < pivot_row; ++r) {
        const size_t col = static_cast<size_t>(pivot_col_of_row[r]);
        solution[col] = m[r][cols_n] / m[r][col];
    }
    Point n(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const BigRat& q = solution[static_cast<size_t>(i)];
        if (denominator(q) != 1) return std::nullopt;
        const BigInt num = numerator(q);
        n[static_cast<size_t>(i)] = static_cast<Coord>(num);
    }
    if (denominator(solution[static_cast<size_t>(d)]) != 1) return std::nullopt;
    return n;
}

}  // namespace

AsymptoticPair make_sturmian_pair(const SlopeVector& alpha, const SurdReal& rho) {
    const int d = alpha.dim();
    AsymptoticPair pair{ConfigView(SturmianConfig{alpha, rho, Side::lower}),
                        ConfigView(SturmianConfig{alpha, rho, Side::upper}),
                        Support(d, {}),
                        DifferenceStatus::declared,
                        {}};
    if (alpha.certificate == SlopeVector::Certificate::proven) {
        // cells where the sides disagree: the phase hits a cell boundary,
        // i.e. n . alpha + rho integral or (n + e_j) . alpha + rho integral
        std::vector<Point> cells;
        if (const auto n0 = integral_phase_cell(alpha, rho)) {
            cells.push_back(*n0);
            for (int j = 0; j < d; ++j) cells.push_back(sub(*n0, unit_point(d, j)));
        }
        pair.difference_set = Support(d, std::move(cells));
        pair.status = DifferenceStatus::certified;
        if (rho.is_zero() && !(pair.difference_set == canonical_difference_set(d))) {
            throw std::logic_error("characteristic difference set is not the canonical cross");
        }
    } else {
        // without an independence proof the boundary-hit count is not
        // controlled; assume the characteristic shape and say so
        if (!rho.is_zero()) {
            throw std::invalid_argument(
                "asserted slopes are only supported with intercept zero");
        }
        pair.difference_set = canonical_difference_set(d);
        pair.watermarks.push_back("difference set assumed canonical; slope independence asserted");
    }
    for (const auto& w : pair.x.watermarks()) pair.watermarks.push_back(w);
    std::sort(pair.watermarks.begin(), pair.watermarks.end());
    pair.watermarks.erase(std::unique(pair.watermarks.begin(), pair.watermarks.end()),
                          pair.watermarks.end());
    return pair;
}

// ---------------------------------------------------------------------------
// pair files

namespace {

struct DenseGrid {
    Patch cells;
    bool covers(const Point& p) const { return cells.support.contains(p); }
    int at(const Point& p) const { return cells.at(p); }
};

DenseGrid grid_over(const ConfigView& view, const Point& corner, const std::vector<Coord>& size) {
    return DenseGrid{view.read(box_at(corner, size))};
}

std::pair<Point, std::vector<Coord>> bounding_window(const std::vector<Point>& pts, Coord margin) {
    Point lo = pts.front(), hi = pts.front();
    for (const Point& p : pts) {
        for (size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    std::vector<Coord> size(lo.size());
    for (size_t i = 0; i < lo.size(); ++i) {
        lo[i] -= margin;
        size[i] = hi[i] + margin - lo[i] + 1;
    }
    return {lo, size};
}

}  // namespace

AsymptoticPair pair_from_text(std::string_view text) {
    std::optional<SturmianConfig> background;
    std::string x_block, y_block, f_block;
    std::string* current = nullptr;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("background:", 0) == 0) {
            std::istringstream bg(line.substr(11));
            std::string kind, slope_text, rho_text, side_text;
            if (!(bg >> kind >> slope_text >> rho_text >> side_text) || kind != "sturmian") {
                throw std::invalid_argument("pair file: bad background line");
            }
            background = SturmianConfig{make_slope(parse_slope_entries(slope_text)),
                                        SurdReal::parse(rho_text), side_from_text(side_text)};
            current = nullptr;
        } else if (line == "X:") {
            current = &x_block;
        } else if (line == "Y:") {
            current = &y_block;
        } else if (line == "F:") {
            current = &f_block;
        } else if (current != nullptr) {
            current->append(line);
            current->push_back('\n');
        } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            throw std::invalid_argument("pair file: stray content outside blocks");
        }
    }
    if (x_block.empty() || y_block.empty() || f_block.empty()) {
        throw std::invalid_argument("pair file: X:, Y: and F: blocks are required");
    }
    const Patch px = patch_from_text(x_block);
    const Patch py = patch_from_text(y_block);
    const Support f = support_from_text(f_block);
    if (!background) {
        throw std::invalid_argument("pair file: a sturmian background is required");
    }

    auto overrides_of = [](const Patch& p) {
        std::map<Point, int> out;
        for (size_t i = 0; i < p.support.size(); ++i) out[p.support.points()[i]] = p.values[i];
        return out;
    };
    return AsymptoticPair{ConfigView(*background).with_overrides(overrides_of(px)),
                          ConfigView(SturmianConfig{background->alpha, background->rho,
                                                    background->side == Side::lower ? Side::upper
                                                                                    : Side::lower})
                              .with_overrides(overrides_of(py)),
                          f,
                          DifferenceStatus::declared,
                          {"difference set declared by input"}};
}

std::string to_text(const AsymptoticPair& pair) {
    std::ostringstream out;
    if (!pair.x.is_plain_sturmian()) {
        throw std::invalid_argument(
            "only pairs over a plain sturmian background can be written to text");
    }
    {
        // the background line is whitespace-split on the way back in, so
        // the surd literals are written without their canonical spaces
        const auto compact = [](const SurdReal& v) {
            std::string s = v.str();
            std::erase(s, ' ');
            return s;
        };
        const SturmianConfig& b = pair.x.base();
        out << "background: sturmian ";
        for (int i = 0; i < b.dim(); ++i) {
            if (i) out << ",";
            out << compact(b.alpha.entries[static_cast<size_t>(i)]);
        }
        out << " " << compact(b.rho) << " " << side_to_text(b.side) << "\n";
    }
    const auto [corner, size] = [&] {
        std::vector<Point> pts = pair.difference_set.points();
        pts.push_back(zero_point(pair.dim()));
        return bounding_window(pts, 1);
    }();
    out << "X:\n" << to_text(pair.x.read(box_at(corner, size)));
    out << "Y:\n" << to_text(pair.y.read(box_at(corner, size)));
    out << "F:\n" << to_text(pair.difference_set);
    return out.str();
}

// ---------------------------------------------------------------------------
// occurrence balance

namespace {

bool occurs_at(const DenseGrid& grid, const Patch& patch, const Point& n) {
    for (size_t i = 0; i < patch.support.size(); ++i) {
        if (grid.at(add(n, patch.support.points()[i])) != patch.values[i]) return false;
    }
    return true;
}

bool occurs_at(const ConfigView& view, const Patch& patch, const Point& n) {
    for (size_t i = 0; i < patch.support.size(); ++i) {
        if (view.eval(add(n, patch.support.points()[i])) != patch.values[i]) return false;
    }
    return true;
}

}  // namespace

OccurrencePair occurrence_sets_near_f(const AsymptoticPair& pair, const Patch& patch) {
    const Support diff = minkowski_diff(pair.difference_set, patch.support);
    OccurrencePair out;
    for (const Point& m : diff.points()) {
        if (occurs_at(pair.x, patch, m)) out.in_x.push_back(m);
        if (occurs_at(pair.y, patch, m)) out.in_y.push_back(m);
    }
    return out;
}

int delta_p(const AsymptoticPair& pair, const Patch& patch) {
    const OccurrencePair occ = occurrence_sets_near_f(pair, patch);
    return static_cast<int>(occ.in_y.size()) - static_cast<int>(occ.in_x.size());
}

// ---------------------------------------------------------------------------
// verification

namespace {

std::string point_text(const Point& p) {
    std::string out = "(";
    for (size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
    return out + ")";
}

struct SupportAudit {
    bool balance_pass = true;
    bool occurrence_pass = true;
    bool complexity_pass = true;
    std::string witness;
    size_t universe_size = 0;
    long long predicted = 0;
};

SupportAudit audit_support(const AsymptoticPair& pair, const Support& s, Coord margin) {
    SupportAudit audit;
    const int d = pair.dim();
    const Support diff = minkowski_diff(pair.difference_set, s);
    audit.predicted = static_cast<long long>(diff.size());

    // window of scan positions: everything within the radius of F - S
    // plus margin, so the universe contains every pattern that can touch
    // the difference set and a sample of far ones
    const Coord r = radius_linf(diff) + margin;
    Point scan_corner(static_cast<size_t>(d), -r);
    const std::vector<Coord> scan_size(static_cast<size_t>(d), 2 * r + 1);

    // dense grids covering scan positions + S
    std::vector<Point> needed;
    for (const Point& n : {scan_corner, Point(static_cast<size_t>(d), r)}) needed.push_back(n);
    for (const Point& p : s.points()) {
        needed.push_back(add(scan_corner, p));
        needed.push_back(add(Point(static_cast<size_t>(d), r), p));
    }
    const auto [grid_corner, grid_size] = bounding_window(needed, 0);
    const DenseGrid gx = grid_over(pair.x, grid_corner, grid_size);
    const DenseGrid gy = grid_over(pair.y, grid_corner, grid_size);

    auto pattern_from = [&](const DenseGrid& g, const Point& n) {
        Patch p{s, {}};
        p.values.reserve(s.size());
        for (const Point& q : s.points()) p.values.push_back(g.at(add(n, q)));
        return p;
    };

    std::set<Patch> universe;
    for (const Point& n : box_at(scan_corner, scan_size)) {
        universe.insert(pattern_from(gx, n));
        universe.insert(pattern_from(gy, n));
    }
    audit.universe_size = universe.size();

    for (const Patch& p : universe) {
        std::vector<Point> occ_x, occ_y;
        for (const Point& m : diff.points()) {
            if (occurs_at(gx, p, m)) occ_x.push_back(m);
            if (occurs_at(gy, p, m)) occ_y.push_back(m);
        }
        const int delta = static_cast<int>(occ_y.size()) - static_cast<int>(occ_x.size());
        if (delta != 0 && audit.balance_pass) {
            audit.balance_pass = false;
            audit.witness = "delta != 0 for pattern " + p.value_string() + " on support " +
                            [&] {
                                std::string t;
                                for (const Point& q : s.points()) t += point_text(q);
                                return t;
                            }() +
                            ", delta = " + std::to_string(delta);
        }
        size_t only_x = 0, only_y = 0;
        {
            std::set<Point> sy(occ_y.begin(), occ_y.end());
            std::set<Point> sx(occ_x.begin(), occ_x.end());
            for (const Point& m : occ_x) only_x += sy.count(m) == 0;
            for (const Point& m : occ_y) only_y += sx.count(m) == 0;
        }
        if ((only_x != 1 || only_y != 1) && audit.occurrence_pass) {
            audit.occurrence_pass = false;
            if (audit.witness.empty()) {
                audit.witness = "occurrence difference not a singleton for pattern " +
                                p.value_string() + " (" + std::to_string(only_x) + " vs " +
                                std::to_string(only_y) + ")";
            }
        }
    }
    if (audit.universe_size != static_cast<size_t>(audit.predicted)) {
        audit.complexity_pass = false;
        if (audit.witness.empty()) {
            audit.witness = "complexity mismatch: " + std::to_string(audit.universe_size) +
                            " patterns vs #(F-S) = " + std::to_string(audit.predicted);
        }
    }
    return audit;
}

}  // namespace

VerificationReport verify_indistinguishable(const AsymptoticPair& pair,
                                            const VerifyOptions& options) {
    VerificationReport report;
    report.watermarks = pair.watermarks;
    if (pair.status == DifferenceStatus::declared) {
        report.watermarks.push_back("difference set declared, not certified");
    }

    bool all_pass = true;
    {
        // the members must differ exactly on F; probed on a window around
        // F and the origin, which is where file edits land
        std::vector<Point> probe = pair.difference_set.points();
        probe.push_back(zero_point(pair.dim()));
        const auto [corner, size] = bounding_window(probe, options.margin + 1);
        CheckRecord rec;
        rec.name = "members differ exactly on F (probe window)";
        rec.pass = true;
        for (const Point& p : box_at(corner, size)) {
            const bool differs = pair.x.eval(p) != pair.y.eval(p);
            if (differs != pair.difference_set.contains(p)) {
                rec.pass = false;
                rec.detail = std::string(differs ? "unexpected difference" : "missing difference") +
                             " at " + point_text(p);
                break;
            }
        }
        all_pass = rec.pass;
        report.records.push_back(std::move(rec));
    }

    std::vector<Support> supports;
    if (options.mode == SupportMode::connected) {
        supports = enumerate_connected_supports(pair.dim(), options.max_support_size);
    } else {
        for (const auto& shape : options.boxes) supports.push_back(box(shape));
    }

    for (const Support& s : supports) {
        if (!all_pass) break;
        const SupportAudit audit = audit_support(pair, s, options.margin);
        auto note = [&](const std::string& name, bool enabled, bool pass) {
            if (!enabled) return;
            CheckRecord rec;
            rec.name = name + " |S|=" + std::to_string(s.size()) + " [" +
                       [&] {
                           std::string t;
                           for (const Point& q : s.points()) t += point_text(q);
                           return t;
                       }() +
                       "]";
            rec.pass = pass;
            if (!pass) rec.detail = audit.witness;
            all_pass = all_pass && pass;
            report.records.push_back(std::move(rec));
        };
        note("occurrence balance", options.check_balance, audit.balance_pass);
        note("occurrence singletons", options.check_occurrences, audit.occurrence_pass);
        note("pattern count = #(F-S)", options.check_complexity, audit.complexity_pass);
        if (!all_pass) break;  // first witness wins
    }
    report.verdict = all_pass;
    std::sort(report.watermarks.begin(), report.watermarks.end());
    report.watermarks.erase(std::unique(report.watermarks.begin(), report.watermarks.end()),
                            report.watermarks.end());
    return report;
}

std::string VerificationReport::str() const {
    std::ostringstream out;
    for (const CheckRecord& rec : records) {
        out << (rec.pass ? "pass " : "FAIL ") << rec.name;
        if (!rec.detail.empty()) out << "\n     " << rec.detail;
        out << "\n";
    }
    out << (verdict ? "verdict: indistinguishable on checked corpus" : "verdict: FAILED") << "\n";
    for (const auto& w : watermarks) out << "note: " << w << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// flip conditions

namespace {

std::optional<std::vector<int>> values_on(const ConfigView& view, const Support& f) {
    std::vector<int> out;
    out.reserve(f.size());
    for (const Point& p : f.points()) out.push_back(view.eval(p));
    return out;
}

}  // namespace

FlipDiagnosis check_flip(const AsymptoticPair& pair) {
    const int d = pair.dim();
    if (!(pair.difference_set == canonical_difference_set(d))) {
        return {false, "difference set is not {0, -e_1, ..., -e_d}"};
    }
    const int q = d + 1;
    std::vector<int> seen(static_cast<size_t>(q), 0);
    for (const Point& p : pair.difference_set.points()) {
        const int v = pair.x.eval(p);
        if (v < 0 || v >= q) return {false, "x takes a symbol outside the alphabet on F"};
        ++seen[static_cast<size_t>(v)];
    }
    for (int v = 0; v < q; ++v) {
        if (seen[static_cast<size_t>(v)] != 1) return {false, "x is not bijective on F"};
    }
    if (pair.x.eval(zero_point(d)) != 0) return {false, "x at the origin is not 0"};
    for (const Point& p : pair.difference_set.points()) {
        if (pair.y.eval(p) != (pair.x.eval(p) + d) % q) {
            return {false, "y is not x - 1 mod " + std::to_string(q) + " on F"};
        }
    }
    return {true, ""};
}

FlipDiagnosis check_ordered_flip(const AsymptoticPair& pair) {
    const FlipDiagnosis base = check_flip(pair);
    if (!base.pass) return base;
    const int d = pair.dim();
    for (int i = 0; i < d; ++i) {
        if (pair.x.eval(neg(unit_point(d, i))) != i + 1) {
            return {false, "x at -e_" + std::to_string(i + 1) + " is not " + std::to_string(i + 1)};
        }
    }
    return {true, ""};
}

FlipDiagnosis check_affine_flip(const AsymptoticPair& pair) {
    const int d = pair.dim();
    const Support& f = pair.difference_set;
    if (f.size() != static_cast<size_t>(d + 1)) {
        return {false, "difference set does not have d + 1 cells"};
    }
    bool some_base = false;
    for (const Point& m : f.points()) {
        std::vector<std::vector<Coord>> cols;
        for (const Point& p : f.points()) {
            if (p == m) continue;
            cols.push_back(sub(p, m));
        }
        AffineMap probe{std::vector<std::vector<Coord>>(static_cast<size_t>(d),
                                                        std::vector<Coord>(static_cast<size_t>(d))),
                        zero_point(d)};
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                probe.a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
            }
        }
        const Coord det = probe.det();
        if (det == 1 || det == -1) {
            some_base = true;
            break;
        }
    }
    if (!some_base) return {false, "no cell of F spans a lattice basis with the others"};
    const int q = d + 1;
    std::vector<int> seen(static_cast<size_t>(q), 0);
    for (const Point& p : f.points()) {
        const int v = pair.x.eval(p);
        if (v < 0 || v >= q) return {false, "x takes a symbol outside the alphabet on F"};
        ++seen[static_cast<size_t>(v)];
    }
    for (int v = 0; v < q; ++v) {
        if (seen[static_cast<size_t>(v)] != 1) return {false, "x is not bijective on F"};
    }
    std::vector<int> to(static_cast<size_t>(q), -1);
    for (const Point& p : f.points()) to[static_cast<size_t>(pair.x.eval(p))] = pair.y.eval(p);
    // single (d+1)-cycle check
    std::vector<bool> visited(static_cast<size_t>(q), false);
    int at = 0, steps = 0;
    while (!visited[static_cast<size_t>(at)]) {
        visited[static_cast<size_t>(at)] = true;
        at = to[static_cast<size_t>(at)];
        if (at < 0) return {false, "x -> y on F is not a function into the alphabet"};
        ++steps;
    }
    if (steps != q || at != 0) return {false, "x -> y on F is not a single symbol cycle"};
    return {true, ""};
}

// ---------------------------------------------------------------------------
// affine normalization

Normalization normalize_affine(const AsymptoticPair& pair) {
    const FlipDiagnosis affine = check_affine_flip(pair);
    if (!affine.pass) {
        throw std::invalid_argument("normalize_affine: " + affine.failed_clause);
    }
    const int d = pair.dim();
    const int q = d + 1;
    const Support& f = pair.difference_set;

    std::vector<int> to(static_cast<size_t>(q), -1);
    for (const Point& p : f.points()) to[static_cast<size_t>(pair.x.eval(p))] = pair.y.eval(p);

    for (const Point& m : f.points()) {
        // psi conjugates the observed cycle to s -> s - 1 and anchors
        // x(m) at 0
        std::vector<int> psi(static_cast<size_t>(q), -1);
        int sym = pair.x.eval(m);
        for (int k = 0; k < q; ++k) {
            psi[static_cast<size_t>(sym)] = ((-k) % q + q) % q;
            sym = to[static_cast<size_t>(sym)];
        }
        // f_i = the cell whose relabeled x value is i
        std::vector<Point> cell_of(static_cast<size_t>(q));
        for (const Point& p : f.points()) {
            cell_of[static_cast<size_t>(psi[static_cast<size_t>(pair.x.eval(p))])] = p;
        }
        AffineMap map{std::vector<std::vector<Coord>>(static_cast<size_t>(d),
                                                      std::vector<Coord>(static_cast<size_t>(d))),
                      m};
        for (int i = 1; i <= d; ++i) {
            const Point col = sub(m, cell_of[static_cast<size_t>(i)]);
            for (int row = 0; row < d; ++row) {
                map.a[static_cast<size_t>(row)][static_cast<size_t>(i - 1)] =
                    col[static_cast<size_t>(row)];
            }
        }
        const Coord det = map.det();
        if (det != 1 && det != -1) continue;

        Normalization out{map, psi,
                          AsymptoticPair{pair.x.transported(map, psi),
                                         pair.y.transported(map, psi),
                                         apply_affine(map.inverse(), f),
                                         pair.status,
                                         pair.watermarks}};
        const FlipDiagnosis check = check_ordered_flip(out.pair);
        if (!check.pass) {
            throw std::logic_error("normalization failed to reach the ordered flip form: " +
                                   check.failed_clause);
        }
        return out;
    }
    throw std::logic_error("normalize_affine: no admissible base cell found");
}

// ---------------------------------------------------------------------------
// dimension reduction

AsymptoticPair project_pi(const AsymptoticPair& pair) {
    const int d = pair.dim();
    if (d < 2) throw std::invalid_argument("project_pi requires dimension >= 2");
    AsymptoticPair out{pair.x.projected(), pair.y.projected(), Support(d - 1, {}), pair.status,
                       pair.watermarks};
    // difference cells of the reduced pair: cells of F on the hyperplane
    // {n_1 = 0} whose merged symbols still differ
    std::vector<Point> cells;
    for (const Point& p : pair.difference_set.points()) {
        if (p[0] != 0) continue;
        const Point reduced(p.begin() + 1, p.end());
        if (out.x.eval(reduced) != out.y.eval(reduced)) cells.push_back(reduced);
    }
    out.difference_set = Support(d - 1, std::move(cells));
    return out;
}

// ---------------------------------------------------------------------------
// shift detection and etale reports

std::vector<Point> detect_shift_relation(const AsymptoticPair& pair, Coord radius,
                                         Coord window_radius) {
    const int d = pair.dim();
    Point corner(static_cast<size_t>(d), -window_radius);
    const std::vector<Coord> size(static_cast<size_t>(d), 2 * window_radius + 1);
    const Support window = box_at(corner, size);
    const Patch wy = pair.y.read(window);

    Point tc(static_cast<size_t>(d), -radius);
    const std::vector<Coord> tsize(static_cast<size_t>(d), 2 * radius + 1);
    std::vector<Point> matches;
    for (const Point& t : box_at(tc, tsize)) {
        bool match = true;
        for (const Point& msh : window.points()) {
            if (pair.x.eval(add(msh, t)) != wy.at(msh)) {
                match = false;
                break;
            }
        }
        if (match) matches.push_back(t);
    }
    return matches;
}

EtaleReport etale_consistency(const std::vector<AsymptoticPair>& pairs, const Point& corner,
                              const std::vector<Coord>& size) {
    EtaleReport report;
    report.watermarks.push_back("finite-window evidence only");
    if (pairs.empty()) return report;
    const Support window = box_at(corner, size);
    std::vector<std::pair<Patch, Patch>> grids;
    grids.reserve(pairs.size());
    for (const AsymptoticPair& pair : pairs) {
        grids.emplace_back(pair.x.read(window), pair.y.read(window));
    }
    for (size_t i = 0; i < grids.size(); ++i) {
        EtaleRecord rec;
        rec.index = i;
        rec.equals_final = grids[i] == grids.back();
        if (i > 0) {
            size_t changed = 0;
            for (size_t c = 0; c < grids[i].first.values.size(); ++c) {
                changed += grids[i].first.values[c] != grids[i - 1].first.values[c];
                changed += grids[i].second.values[c] != grids[i - 1].second.values[c];
            }
            rec.cells_changed_from_previous = changed;
        }
        report.records.push_back(rec);
    }
    for (size_t k = 0; k < grids.size(); ++k) {
        bool stable = true;
        for (size_t j = k; j < grids.size() && stable; ++j) stable = grids[j] == grids[k];
        if (stable) {
            report.stabilization_index = k;
            break;
        }
    }
    return report;
}

std::string EtaleReport::str() const {
    std::ostringstream out;
    for (const EtaleRecord& rec : records) {
        out << "index " << rec.index << ": " << (rec.equals_final ? "matches final" : "differs")
            << ", " << rec.cells_changed_from_previous << " cells changed from previous\n";
    }
    if (stabilization_index) {
        out << "stable from index " << *stabilization_index << " on\n";
    } else {
        out << "no stabilization within the sequence\n";
    }
    for (const auto& w : watermarks) out << "note: " << w << "\n";
    return out.str();
}

}  // namespace sturm

#pragma once

#include "exactreal.hpp"
#include "lattice.hpp"

#include <optional>

namespace sturm {

enum class Side { lower, upper };

Side side_from_text(std::string_view text);
std::string_view side_to_text(Side side);

// Partition of the unit circle by the points {1 - alpha_i} together with 0.
// bounds[0] = 0 < bounds[1] < ... < bounds[d] < bounds[d+1] = 1, and cell i
// is [bounds[i], bounds[i+1]) on the lower side, (bounds[i], bounds[i+1]]
// on the upper side.  tau[i] is the slope index whose value 1 - alpha_tau(i)
// equals bounds[i] (with tau(0) = 0 for alpha_0 = 1 and tau(d+1) = d+1 for
// alpha_{d+1} = 0), so tau restricted to 1..d sorts the entries descending.
struct WindowPartition {
    std::vector<SurdReal> bounds;
    std::vector<int> tau;

    int cells() const { return static_cast<int>(bounds.size()) - 1; }
    int cell_of(const SurdReal& t, Side side) const;  // t in [0,1) resp. (0,1]
    SurdReal cell_length(int i) const { return bounds[i + 1] - bounds[i]; }
};

// Throws on duplicate entries (and entries outside (0, 1)).
WindowPartition window_partition(const SlopeVector& alpha);

std::vector<SurdReal> window_lengths(const SlopeVector& alpha);

struct SturmianConfig {
    SlopeVector alpha;
    SurdReal rho;
    Side side = Side::lower;

    int dim() const { return alpha.dim(); }
    int alphabet() const { return alpha.dim() + 1; }
    // n . alpha + rho
    SurdReal phase(const Point& n) const;
    // sum_i (floor(alpha_i + phase) - floor(phase)), or the ceiling
    // analogue on the upper side
    int eval(const Point& n) const;
    // same value via the window partition; kept as an independent path
    // and cross-checked in the tests
    int eval_by_window(const Point& n, const WindowPartition& part) const;
};

// Values on a finite support, stored in the support's canonical order.
struct Patch {
    Support support;
    std::vector<int> values;

    int at(const Point& p) const;
    bool operator==(const Patch& o) const = default;
    bool operator<(const Patch& o) const;
    std::string value_string() const;  // values in support order
};

Patch read_patch(const SturmianConfig& config, const Support& support);

// "dim d" / "alphabet k" headers, then one "x_1 ... x_d value" line per
// cell, sorted
std::string to_text(const Patch& patch);
Patch patch_from_text(std::string_view text);

// Finite union of half-open arcs [lo, hi) on the unit circle, each within
// [0, 1]; arcs sorted and disjoint.  The empty set is a legitimate value.
struct CircularSet {
    std::vector<std::pair<SurdReal, SurdReal>> arcs;

    bool empty() const { return arcs.empty(); }
    bool has_interior() const { return !arcs.empty(); }
    // single arc once wrap-around at 0 is glued; connected supports always
    // land here (or empty)
    bool is_single_arc() const;
    std::optional<SurdReal> left_endpoint() const;  // of the glued arc
};

// I_p = intersection over n in S of (W_{p(n)} - n . alpha); p occurs in
// the characteristic lower configuration iff this has nonempty interior
CircularSet pattern_interval(const SlopeVector& alpha, const Patch& patch);

CircularSet intersect(const CircularSet& a, const CircularSet& b);
// W_symbol - n . alpha, at most two arcs
CircularSet shifted_cell(const WindowPartition& part, const SlopeVector& alpha, int symbol,
                         const Point& n);

struct LanguageEntry {
    Point shift;          // element of F - S witnessing the pattern
    Patch pattern;        // sigma^shift(c_alpha) restricted to S
    SurdReal cut_point;   // frac(shift . alpha), the interval's left endpoint
};

// The exact language of the characteristic lower configuration on a
// connected support: one pattern per element of F - S.  Throws on
// disconnected supports (the occurrence bijection needs connectivity);
// the empty support yields the empty pattern.
std::vector<LanguageEntry> language_table(const SlopeVector& alpha, const Support& s);
std::vector<Patch> language(const SlopeVector& alpha, const Support& s);

// Occurrence positions of patch in config within [corner, corner + size)
std::vector<Point> occurrences_in_window(const SturmianConfig& config, const Patch& patch,
                                         const Point& corner, const std::vector<Coord>& size);

// Empirical symbol counts over a box window, normalized
std::vector<double> symbol_frequencies(const SturmianConfig& config, const Point& corner,
                                       const std::vector<Coord>& size);

// Dense evaluation of a box window
Patch eval_window(const SturmianConfig& config, const Point& corner,
                  const std::vector<Coord>& size);

}  // namespace sturm

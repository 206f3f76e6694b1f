#pragma once

#include "pairs.hpp"

#include <set>

namespace sturm {

// Answers pattern-membership and language questions either exactly (via
// the interval machinery of the characteristic configuration) or from a
// finite window scan of an arbitrary configuration view.  Records derived
// from a window scan carry the window tag.
class LanguageSource {
  public:
    static LanguageSource exact(SlopeVector alpha);
    static LanguageSource windowed(ConfigView view, Point corner, std::vector<Coord> size);

    bool occurs(const Patch& patch) const;
    std::vector<Patch> patterns(const Support& support) const;
    long long complexity(const Support& support) const;
    int alphabet() const;
    const std::string& tag() const { return tag_; }
    bool is_exact() const { return exact_.has_value(); }
    const SlopeVector& slope() const;  // exact sources only
    const ConfigView& view() const;    // windowed sources only

  private:
    LanguageSource() = default;
    std::optional<SlopeVector> exact_;
    std::optional<ConfigView> view_;
    Point corner_;
    std::vector<Coord> size_;
    Patch grid_;  // windowed sources read their window once
    std::string tag_;
};

// one-cell extensions of w at a position outside its support
std::set<int> extensions(const LanguageSource& source, const Patch& w, const Point& position);

struct ExtensionGraph {
    std::vector<int> left;                     // E^l, sorted symbols
    std::vector<int> right;                    // E^r
    std::vector<std::pair<int, int>> edges;    // E^{l,r}

    int components() const;
    bool acyclic() const;
    // #E^{l,r} - #E^l - #E^r + 1
    int multiplicity() const;
};

ExtensionGraph extension_graph(const LanguageSource& source, const Patch& w, const Point& l,
                               const Point& r);
int bilateral_multiplicity(const LanguageSource& source, const Patch& w, const Point& l,
                           const Point& r);

enum class MultiplicityClass { strong, neutral, weak };
MultiplicityClass classify_multiplicity(int m);

// (S, l, r) is evil for F when some translate t puts both extension
// positions inside F while t + S misses F entirely; t is unique for
// l != r since t + l and t + r cannot both range over F independently.
struct EvilWitness {
    bool evil = false;
    std::optional<Point> t;
};
EvilWitness evil_witness(const Support& s, const Point& l, const Point& r, const Support& f);
Patch evil_pattern(const ConfigView& x, const Support& s, const Point& t);

long long complexity(const LanguageSource& source, const Support& support);
// m_1 ... m_d * (1 + 1/m_1 + ... + 1/m_d), an integer for every box
long long rectangular_complexity(const std::vector<Coord>& sides);

struct MultiplicityRecord {
    Patch w;
    Point l;
    Point r;
    int e_left = 0;
    int e_right = 0;
    int e_joint = 0;
    int m = 0;
    MultiplicityClass cls = MultiplicityClass::neutral;
    int components = 0;
    bool acyclic = false;
    bool evil = false;
    std::optional<Point> evil_t;
    bool bispecial = false;   // both extension sets have size >= 2
    Point separation;         // r - l
    std::string source;
};

// One record per (pattern of S, unordered pair of distinct extension
// positions); the swapped pair gives the transposed graph and is skipped.
// Default positions: the boundary cells of S.  Exploratory; callers
// filter/aggregate.
std::vector<MultiplicityRecord> bispecial_scan(const LanguageSource& source, const Support& s,
                                               const Support& f,
                                               const std::vector<Point>& positions = {});

// header + one tab-separated line per record
std::string records_to_text(const std::vector<MultiplicityRecord>& records);

// ---------------------------------------------------------------------------
// unit-scale counting facts, checkable on arbitrary graphs

struct BipartiteStats {
    int left_vertices = 0;
    int right_vertices = 0;
    int edges = 0;
    int components = 0;
    bool acyclic = false;
    int m = 0;  // edges - left - right + 1
};

BipartiteStats analyze_bipartite(int left_count, int right_count,
                                 const std::vector<std::pair<int, int>>& edges);

// m >= 1 - c, with equality iff acyclic; connected implies m >= 0;
// connected with a cycle implies m > 0
bool multiplicity_laws_hold(const BipartiteStats& stats);

// #({(a, f(a))} union {(pi(a), f(a))}) >= #A + #image(f) for pi a cyclic
// permutation of U and f any map on A, a proper subset of U.  The fiber
// labeling stands in for f; only the partition of A matters.
bool pair_count_inequality_holds(const std::vector<int>& cycle_next, const std::vector<bool>& in_a,
                                 const std::vector<int>& fiber_label);

}  // namespace sturm

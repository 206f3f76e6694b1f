#pragma once

#include "sturmian.hpp"

#include <map>

namespace sturm {

// Configuration given by a Sturmian background composed with an affine
// change of coordinates on the input side and a symbol map on the output
// side, with optional cell overrides:
//
//   view(n) = out[ base_or_override( origin + basis * n ) ]
//
// The input map need not be square: restrictions to sublattices and
// dimension reduction both embed a lower-dimensional lattice.  Overrides
// live in base coordinates and carry base symbols.
class ConfigView {
  public:
    explicit ConfigView(SturmianConfig base);

    int dim() const { return view_dim_; }
    int alphabet() const { return view_alphabet_; }
    int eval(const Point& n) const;
    Patch read(const Support& support) const;

    const SturmianConfig& base() const { return base_; }
    bool is_plain_sturmian() const;  // no transform, no overrides
    std::vector<std::string> watermarks() const { return watermarks_; }

    ConfigView with_overrides(std::map<Point, int> overrides) const;
    // precompose with n -> A n + b (A unimodular d x d), postcompose
    // with a symbol bijection
    ConfigView transported(const AffineMap& pre, const std::vector<int>& symbol_map) const;
    // restrict to the affine sublattice n -> v + B n (columns of B
    // linearly independent); the result has dimension = #columns
    ConfigView restricted(const Point& v, const std::vector<std::vector<Coord>>& basis_columns) const;
    // drop the first coordinate and merge the two lowest symbols:
    // n -> view(0, n), symbol 0 -> 0, j -> j - 1
    ConfigView projected() const;  // rejects dim() == 1

  private:
    Point to_base(const Point& n) const;

    SturmianConfig base_;
    std::vector<std::vector<Coord>> basis_;  // base_dim x view_dim
    Point origin_;                            // base coordinates
    std::vector<int> symbol_out_;             // base alphabet -> view alphabet
    std::map<Point, int> overrides_;          // base coords -> base symbol
    int view_dim_ = 0;
    int view_alphabet_ = 0;
    std::vector<std::string> watermarks_;
};

enum class DifferenceStatus { certified, declared };

struct AsymptoticPair {
    ConfigView x;
    ConfigView y;
    Support difference_set;  // view coordinates
    DifferenceStatus status = DifferenceStatus::declared;
    std::vector<std::string> watermarks;

    int dim() const { return x.dim(); }
    int alphabet() const { return x.alphabet(); }
};

// (lower, upper) characteristic pair; the difference set is computed
// exactly (for intercept zero it is {0, -e_1, ..., -e_d}) and certified
// when the slope's independence is proven.
AsymptoticPair make_sturmian_pair(const SlopeVector& alpha, const SurdReal& rho);

// Pair file: a "background: sturmian <slope> <rho> <side>" line, then
// "X:" / "Y:" patch blocks (overrides on the two sides) and an "F:"
// support block.  The declared difference set is not checked here;
// verify_indistinguishable probes it.
AsymptoticPair pair_from_text(std::string_view text);
std::string to_text(const AsymptoticPair& pair);

// Occurrences differing between x and y live in F - S, so this is the
// full discrepancy: delta_p = #occ_p(y) - #occ_p(x) counted over F - S.
int delta_p(const AsymptoticPair& pair, const Patch& patch);

struct OccurrencePair {
    std::vector<Point> in_x;  // occ_p(x) restricted to F - S
    std::vector<Point> in_y;
};
OccurrencePair occurrence_sets_near_f(const AsymptoticPair& pair, const Patch& patch);

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckRecord> records;
    bool verdict = false;
    std::vector<std::string> watermarks;
    std::string str() const;
};

enum class SupportMode { connected, boxes };

struct VerifyOptions {
    SupportMode mode = SupportMode::connected;
    int max_support_size = 4;                 // guard for connected mode
    std::vector<std::vector<Coord>> boxes;    // shapes for box mode
    Coord margin = 2;                          // pattern-universe window margin
    bool check_occurrences = true;            // clause (i)
    bool check_balance = true;                // clause (ii)
    bool check_complexity = true;             // clause (iii)
};

// Checks the three equivalent characterizations on finite data: per-pattern
// occurrence differences are singletons, delta_p vanishes for every pattern
// harvested from a window around F, and the number of distinct patterns on
// each support equals #(F - S).  First failure is reported as a witness.
VerificationReport verify_indistinguishable(const AsymptoticPair& pair,
                                            const VerifyOptions& options);

struct FlipDiagnosis {
    bool pass = false;
    std::string failed_clause;  // empty when pass
};

// F = {0, -e_1, ..., -e_d}, x bijective on F with x_0 = 0, and y = x - 1
// mod (d+1) on F
FlipDiagnosis check_flip(const AsymptoticPair& pair);
// additionally x_{-e_i} = i
FlipDiagnosis check_ordered_flip(const AsymptoticPair& pair);
// #F = d+1, some m in F has (F - m) \ {0} a lattice basis, x bijective
// on F, and n -> (x_n, y_n) induces a cyclic symbol permutation
FlipDiagnosis check_affine_flip(const AsymptoticPair& pair);

struct Normalization {
    AffineMap map;                // n -> A n + m applied to both members
    std::vector<int> symbol_map;  // relabeling applied to both members
    AsymptoticPair pair;          // satisfies the ordered flip condition
};

// Affine normal form; throws std::invalid_argument when check_affine_flip
// fails.  The returned pair is re-checked internally.
Normalization normalize_affine(const AsymptoticPair& pair);

AsymptoticPair project_pi(const AsymptoticPair& pair);  // rejects dim 1

// all shifts t with |t|_inf <= radius such that y = sigma^t x on the
// centered window of radius window_radius; finite-window heuristic
std::vector<Point> detect_shift_relation(const AsymptoticPair& pair, Coord radius,
                                         Coord window_radius);

struct EtaleRecord {
    size_t index = 0;
    bool equals_final = false;
    size_t cells_changed_from_previous = 0;
};

struct EtaleReport {
    std::vector<EtaleRecord> records;
    // first index from which every later pair agrees with the last one
    // on the window, if any
    std::optional<size_t> stabilization_index;
    std::vector<std::string> watermarks;  // always "finite-window evidence only"
    std::string str() const;
};

// Compares the members of a pair sequence on a fixed window.
EtaleReport etale_consistency(const std::vector<AsymptoticPair>& pairs, const Point& corner,
                              const std::vector<Coord>& size);

}  // namespace sturm

// Acceptance gate: ten fixed checks, one line each, nonzero exit when any
// fails.  Budgets and tolerances are pinned here, not configurable.

#include "combinatorics.hpp"
#include "pairs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace sturm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SlopeVector slope_a() {
    return make_slope({SurdReal::parse("sqrt(3)-1"), SurdReal::parse("sqrt(2)-1")});
}

SlopeVector slope_b() {
    return make_slope({SurdReal::parse("sqrt(2)/2"), SurdReal::parse("sqrt(19)-4")});
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s %02d %s%s%s\n", pass ? "pass" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    if (!pass) ++failures;
}

// 01: pattern counts on the five box shapes, plus the classical count in
// dimension one; budget 5 seconds
void criterion_complexity() {
    const auto start = Clock::now();
    const LanguageSource src = LanguageSource::exact(slope_a());
    const std::vector<std::pair<std::vector<Coord>, long long>> shapes = {
        {{1, 3}, 7}, {{3, 1}, 7}, {{2, 2}, 8}, {{2, 3}, 11}, {{3, 2}, 11}};
    bool pass = true;
    std::string detail;
    for (const auto& [shape, expected] : shapes) {
        const long long measured = complexity(src, box(shape));
        if (measured != expected || measured != rectangular_complexity(shape)) {
            pass = false;
            detail = "box " + std::to_string(shape[0]) + "x" + std::to_string(shape[1]) + " gave " +
                     std::to_string(measured);
            break;
        }
    }
    const SlopeVector golden = make_slope({SurdReal::parse("(sqrt(5)-1)/2")});
    const LanguageSource gold = LanguageSource::exact(golden);
    for (Coord n = 1; pass && n <= 20; ++n) {
        if (complexity(gold, box({n})) != n + 1) {
            pass = false;
            detail = "dimension-one count at n = " + std::to_string(n);
        }
    }
    const double elapsed = seconds_since(start);
    if (pass && elapsed >= 5.0) {
        pass = false;
        detail = "budget exceeded";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs (budget 5s)", elapsed);
    report(1, "box complexities 7,7,8,11,11 and n+1 in dimension one", pass,
           detail.empty() ? buf : detail);
}

// 02: every pattern discrepancy vanishes on every connected support of
// size <= 5, both slopes; budget 60 seconds
void criterion_balance() {
    const auto start = Clock::now();
    bool pass = true;
    std::string detail;
    for (const SlopeVector& alpha : {slope_a(), slope_b()}) {
        VerifyOptions options;
        options.max_support_size = 5;
        options.check_occurrences = false;
        options.check_complexity = false;
        const VerificationReport r =
            verify_indistinguishable(make_sturmian_pair(alpha, SurdReal(0)), options);
        if (!r.verdict) {
            pass = false;
            for (const CheckRecord& rec : r.records)
                if (!rec.pass) detail = rec.name + " | " + rec.detail;
            break;
        }
    }
    const double elapsed = seconds_since(start);
    if (pass && elapsed >= 60.0) {
        pass = false;
        detail = "budget exceeded";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs (budget 60s)", elapsed);
    report(2, "delta_p = 0 on all connected supports of size <= 5, both slopes", pass,
           detail.empty() ? buf : detail);
}

// 03: the eight frozen L-shape patterns each lose exactly one occurrence
// and gain exactly one, and the same singleton law holds on every
// connected support of size <= 4
void criterion_singletons() {
    bool pass = true;
    std::string detail;

    std::ifstream in(std::string(STURM_TEST_DATA_DIR) + "/lang_b_lshape.txt");
    std::set<std::string> frozen;
    std::string line;
    std::getline(in, line);  // dim
    std::getline(in, line);  // support
    while (std::getline(in, line))
        if (!line.empty()) frozen.insert(line);
    if (frozen.size() != 8) {
        pass = false;
        detail = "fixture does not list 8 patterns";
    }

    const AsymptoticPair pair = make_sturmian_pair(slope_b(), SurdReal(0));
    const Support lshape(2, {{0, 0}, {0, 1}, {1, 0}, {2, 0}});
    std::set<std::string> seen;
    for (const Patch& p : language(slope_b(), lshape)) {
        seen.insert(p.value_string());
        const OccurrencePair occ = occurrence_sets_near_f(pair, p);
        if (occ.in_x.size() != 1 || occ.in_y.size() != 1 || occ.in_x == occ.in_y) {
            pass = false;
            detail = "pattern " + p.value_string();
        }
    }
    if (pass && seen != frozen) {
        pass = false;
        detail = "language differs from the frozen list";
    }

    for (const SlopeVector& alpha : {slope_a(), slope_b()}) {
        if (!pass) break;
        VerifyOptions options;
        options.max_support_size = 4;
        options.check_balance = false;
        options.check_complexity = false;
        if (!verify_indistinguishable(make_sturmian_pair(alpha, SurdReal(0)), options).verdict) {
            pass = false;
            detail = "singleton audit failed";
        }
    }
    report(3, "occurrence differences are singletons; frozen L-shape list matches", pass, detail);
}

// 04: characteristic pairs satisfy the flip condition with the counting
// values on the difference set
void criterion_flip_values() {
    bool pass = true;
    std::string detail;
    const SlopeVector ascending =
        make_slope({SurdReal::parse("sqrt(2)-1"), SurdReal::parse("sqrt(3)-1")});
    for (const SlopeVector& alpha : {slope_a(), slope_b(), ascending}) {
        const AsymptoticPair p = make_sturmian_pair(alpha, SurdReal(0));
        const int d = alpha.dim();
        if (!check_flip(p).pass || !check_affine_flip(p).pass) {
            pass = false;
            detail = "flip clauses";
            break;
        }
        if (p.x.eval(zero_point(d)) != 0 || p.y.eval(zero_point(d)) != d) {
            pass = false;
            detail = "origin values";
            break;
        }
        for (int i = 0; i < d && pass; ++i) {
            int weak = 0, strict = 0;
            for (int j = 0; j < d; ++j) {
                const int cmp = compare(alpha.entries[static_cast<size_t>(j)],
                                        alpha.entries[static_cast<size_t>(i)]);
                if (cmp >= 0) ++weak;
                if (cmp > 0) ++strict;
            }
            const Point cell = neg(unit_point(d, i));
            if (p.x.eval(cell) != weak || p.y.eval(cell) != strict) {
                pass = false;
                detail = "counting values at -e_" + std::to_string(i + 1);
            }
        }
    }
    if (pass && !check_ordered_flip(make_sturmian_pair(slope_a(), SurdReal(0))).pass) {
        pass = false;
        detail = "descending entries must give the ordered form";
    }
    if (pass && check_ordered_flip(make_sturmian_pair(ascending, SurdReal(0))).pass) {
        pass = false;
        detail = "ascending entries must not give the ordered form";
    }
    report(4, "flip condition with values #{a_j >= a_i} and #{a_j > a_i}", pass, detail);
}

// 05: extension graph laws on every record of every connected support of
// size <= 5, plus the empty-pattern graph
void criterion_extension_laws() {
    bool pass = true;
    std::string detail;
    long long records_seen = 0;
    for (const SlopeVector& alpha : {slope_a(), slope_b()}) {
        const LanguageSource src = LanguageSource::exact(alpha);

        const Patch empty{Support(2, {}), {}};
        const ExtensionGraph eps = extension_graph(src, empty, {0, 0}, {1, 0});
        if (eps.edges.size() != 5 || eps.multiplicity() != 0) {
            pass = false;
            detail = "empty pattern graph";
            break;
        }

        for (const Support& s : enumerate_connected_supports(2, 5)) {
            const auto records = bispecial_scan(src, s, canonical_difference_set(2));
            records_seen += static_cast<long long>(records.size());
            for (const MultiplicityRecord& rec : records) {
                const bool laws = rec.m >= 1 - rec.components &&
                                  ((rec.m == 1 - rec.components) == rec.acyclic) &&
                                  (rec.components != 1 || rec.m >= 0) && (rec.m >= 0 || rec.evil);
                if (!laws) {
                    pass = false;
                    detail = "support [" + to_text(s) + "] pattern " + rec.w.value_string();
                    break;
                }
            }
            if (!pass) break;
        }
        if (!pass) break;
    }
    report(5, "extension graph laws on all size <= 5 scans (" + std::to_string(records_seen) +
                  " records)",
           pass, detail);
}

// 06: the exact language equals the 400x400 window harvest on each tested
// support
void criterion_window_language() {
    bool pass = true;
    std::string detail;
    const std::vector<Support> supports = {
        box({1, 3}), box({3, 1}), box({2, 2}),
        box({2, 3}), box({3, 2}), Support(2, {{0, 0}, {0, 1}, {1, 0}, {2, 0}})};
    for (const SlopeVector& alpha : {slope_a(), slope_b()}) {
        const LanguageSource exact = LanguageSource::exact(alpha);
        const ConfigView view(SturmianConfig{alpha, SurdReal(0), Side::lower});
        const LanguageSource windowed =
            LanguageSource::windowed(view, {-200, -200}, {400, 400});
        for (const Support& s : supports) {
            auto a = exact.patterns(s);
            auto b = windowed.patterns(s);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) {
                pass = false;
                detail = "support [" + to_text(s) + "]";
                break;
            }
        }
        if (!pass) break;
    }
    report(6, "exact language = 400x400 window harvest on the tested supports", pass, detail);
}

// 07: dropping the first coordinate reproduces the tail-slope pair on a
// 200-cell window
void criterion_reduction() {
    bool pass = true;
    std::string detail;
    for (const SlopeVector& alpha : {slope_a(), slope_b()}) {
        const AsymptoticPair reduced = project_pi(make_sturmian_pair(alpha, SurdReal(0)));
        const AsymptoticPair tail = make_sturmian_pair(
            make_slope({alpha.entries[1]}), SurdReal(0));
        for (Coord n = -100; n < 100; ++n) {
            if (reduced.x.eval({n}) != tail.x.eval({n}) ||
                reduced.y.eval({n}) != tail.y.eval({n})) {
                pass = false;
                detail = "cell " + std::to_string(n);
                break;
            }
        }
        if (!pass) break;
    }
    report(7, "projection agrees with the tail slope on 200 cells", pass, detail);
}

// 08: empirical symbol frequencies on 200x200 within 0.02 of the window
// lengths
void criterion_frequencies() {
    bool pass = true;
    std::string detail;
    double worst = 0;
    for (const SlopeVector& alpha : {slope_a(), slope_b()}) {
        const auto lengths = window_lengths(alpha);
        const SturmianConfig config{alpha, SurdReal(0), Side::lower};
        const auto freq = symbol_frequencies(config, {-100, -100}, {200, 200});
        for (size_t i = 0; i < freq.size(); ++i) {
            const double dev = std::abs(freq[i] - lengths[i].approx());
            worst = std::max(worst, dev);
            if (dev >= 0.02) {
                pass = false;
                detail = "symbol " + std::to_string(i);
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.6f (tolerance 0.02)", worst);
    report(8, "frequencies within 0.02 on 200x200", pass, detail.empty() ? buf : detail);
}

// 09: twenty pseudorandom affine transports land back in the ordered flip
// form and still verify
void criterion_normalization() {
    bool pass = true;
    std::string detail;
    const AsymptoticPair p = make_sturmian_pair(slope_a(), SurdReal(0));
    std::mt19937 rng(42);
    std::vector<int> symbols{0, 1, 2};
    for (int trial = 0; trial < 20 && pass; ++trial) {
        AffineMap pre = AffineMap::identity(2);
        for (int step = 0; step < 5; ++step) {
            AffineMap op = AffineMap::identity(2);
            switch (rng() % 3) {
                case 0:
                    op.a = {{1, static_cast<Coord>(rng() % 5) - 2}, {0, 1}};
                    break;
                case 1:
                    op.a = {{1, 0}, {static_cast<Coord>(rng() % 5) - 2, 1}};
                    break;
                default:
                    op.a = {{0, 1}, {1, 0}};
                    break;
            }
            pre = op.after(pre);
        }
        pre.b = {static_cast<Coord>(rng() % 9) - 4, static_cast<Coord>(rng() % 9) - 4};
        std::shuffle(symbols.begin(), symbols.end(), rng);
        const AsymptoticPair moved{p.x.transported(pre, symbols),
                                   p.y.transported(pre, symbols),
                                   apply_affine(pre.inverse(), p.difference_set),
                                   p.status,
                                   p.watermarks};
        try {
            const Normalization norm = normalize_affine(moved);
            if (!check_ordered_flip(norm.pair).pass) {
                pass = false;
                detail = "trial " + std::to_string(trial) + " missed the ordered form";
                break;
            }
            VerifyOptions options;
            options.max_support_size = 3;
            if (!verify_indistinguishable(norm.pair, options).verdict) {
                pass = false;
                detail = "trial " + std::to_string(trial) + " failed verification";
            }
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("trial ") + std::to_string(trial) + ": " + e.what();
        }
    }
    report(9, "20 random transports normalize to the ordered flip and verify", pass, detail);
}

// 10: the cyclic pair-count bound, exhaustively to |U| = 6, and the graph
// counting laws on 1000 random bipartite graphs
void criterion_counting() {
    bool pass = true;
    std::string detail;
    for (int n = 2; n <= 6 && pass; ++n) {
        std::vector<int> next(static_cast<size_t>(n));
        std::iota(next.begin(), next.end(), 1);
        next[static_cast<size_t>(n - 1)] = 0;
        for (int mask = 0; mask < (1 << n) - 1 && pass; ++mask) {
            std::vector<bool> in_a(static_cast<size_t>(n), false);
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    in_a[static_cast<size_t>(i)] = true;
                    members.push_back(i);
                }
            const int k = static_cast<int>(members.size());
            std::vector<int> label(static_cast<size_t>(n), 0);
            std::vector<int> digits(static_cast<size_t>(k), 0);
            while (pass) {
                for (int i = 0; i < k; ++i)
                    label[static_cast<size_t>(members[static_cast<size_t>(i)])] =
                        digits[static_cast<size_t>(i)];
                if (!pair_count_inequality_holds(next, in_a, label)) {
                    pass = false;
                    detail = "cycle length " + std::to_string(n);
                }
                int pos = k - 1;
                while (pos >= 0 && digits[static_cast<size_t>(pos)] == k - 1)
                    digits[static_cast<size_t>(pos--)] = 0;
                if (pos < 0) break;
                ++digits[static_cast<size_t>(pos)];
            }
            if (k == 0) break;
        }
    }
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> side(1, 6);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (int trial = 0; trial < 1000 && pass; ++trial) {
        const int nl = side(rng), nr = side(rng);
        const double p = prob(rng);
        std::vector<std::pair<int, int>> edges;
        for (int l = 0; l < nl; ++l)
            for (int r = 0; r < nr; ++r)
                if (prob(rng) < p) edges.emplace_back(l, r);
        if (!multiplicity_laws_hold(analyze_bipartite(nl, nr, edges))) {
            pass = false;
            detail = "random graph trial " + std::to_string(trial);
        }
    }
    report(10, "pair-count bound to |U| = 6 and graph laws on 1000 random graphs", pass, detail);
}

}  // namespace

int main() {
    criterion_complexity();
    criterion_balance();
    criterion_singletons();
    criterion_flip_values();
    criterion_extension_laws();
    criterion_window_language();
    criterion_reduction();
    criterion_frequencies();
    criterion_normalization();
    criterion_counting();
    if (failures == 0) {
        std::printf("all 10 acceptance checks passed\n");
        return 0;
    }
    std::printf("%d acceptance check(s) failed\n", failures);
    return 1;
}

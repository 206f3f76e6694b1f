#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pairs.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace sturm;

namespace {

SlopeVector slope_a() {
    return make_slope({SurdReal::parse("sqrt(3)-1"), SurdReal::parse("sqrt(2)-1")});
}

SlopeVector slope_b() {
    return make_slope({SurdReal::parse("sqrt(2)/2"), SurdReal::parse("sqrt(19)-4")});
}

AsymptoticPair pair_a() { return make_sturmian_pair(slope_a(), SurdReal(0)); }

bool views_equal_on(const ConfigView& a, const ConfigView& b, Coord radius) {
    for (Coord i = -radius; i <= radius; ++i)
        for (Coord j = -radius; j <= radius; ++j)
            if (a.eval({i, j}) != b.eval({i, j})) return false;
    return true;
}

}  // namespace

TEST_CASE("characteristic pair carries the certified cross") {
    const AsymptoticPair p = pair_a();
    CHECK(p.dim() == 2);
    CHECK(p.alphabet() == 3);
    CHECK(p.status == DifferenceStatus::certified);
    CHECK(p.difference_set == canonical_difference_set(2));
    CHECK(p.x.is_plain_sturmian());
    CHECK(p.y.is_plain_sturmian());
    CHECK(p.watermarks.empty());
    CHECK(p.x.base().side == Side::lower);
    CHECK(p.y.base().side == Side::upper);
    // members differ exactly on F
    for (Coord i = -6; i <= 6; ++i)
        for (Coord j = -6; j <= 6; ++j) {
            const Point n{i, j};
            REQUIRE((p.x.eval(n) != p.y.eval(n)) == p.difference_set.contains(n));
        }
}

TEST_CASE("nonzero intercept moves or erases the difference cell") {
    // rho = -(3,-2) . alpha puts the lattice hit at (3,-2)
    const SurdReal rho = SurdReal::parse("-3*(sqrt(3)-1)+2*(sqrt(2)-1)");
    const AsymptoticPair moved = make_sturmian_pair(slope_a(), rho);
    CHECK(moved.status == DifferenceStatus::certified);
    CHECK(moved.difference_set ==
          Support(2, {{3, -2}, {2, -2}, {3, -3}}));
    for (Coord i = -2; i <= 6; ++i)
        for (Coord j = -6; j <= 2; ++j) {
            const Point n{i, j};
            REQUIRE((moved.x.eval(n) != moved.y.eval(n)) == moved.difference_set.contains(n));
        }

    // rho = 1/3 never hits the lattice: the two sides coincide
    const AsymptoticPair flat = make_sturmian_pair(slope_a(), SurdReal::parse("1/3"));
    CHECK(flat.status == DifferenceStatus::certified);
    CHECK(flat.difference_set.empty());
    CHECK(views_equal_on(flat.x, flat.y, 8));
}

TEST_CASE("asserted slopes fall back to the assumed cross") {
    const SlopeVector asserted =
        make_slope_asserted({SurdReal::parse("sqrt(3)-1"), SurdReal::parse("sqrt(2)-1")});
    const AsymptoticPair p = make_sturmian_pair(asserted, SurdReal(0));
    CHECK(p.status == DifferenceStatus::declared);
    CHECK(p.difference_set == canonical_difference_set(2));
    CHECK(std::count(p.watermarks.begin(), p.watermarks.end(),
                     "difference set assumed canonical; slope independence asserted") == 1);
    CHECK_THROWS_AS(make_sturmian_pair(asserted, SurdReal::parse("1/3")),
                    std::invalid_argument);
}

TEST_CASE("override, transport and restriction views") {
    const ConfigView x = pair_a().x;

    const ConfigView edited = x.with_overrides({{Point{2, 2}, (x.eval({2, 2}) + 1) % 3}});
    CHECK_FALSE(edited.is_plain_sturmian());
    CHECK(edited.eval({2, 2}) == (x.eval({2, 2}) + 1) % 3);
    CHECK(edited.eval({2, 3}) == x.eval({2, 3}));
    CHECK_THROWS_AS(x.with_overrides({{Point{0, 0, 0}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(x.with_overrides({{Point{0, 0}, 7}}), std::invalid_argument);

    const AffineMap shear{{{1, 1}, {0, 1}}, {4, -1}};
    const std::vector<int> rot{1, 2, 0};
    const ConfigView moved = x.transported(shear, rot);
    for (Coord i = -3; i <= 3; ++i)
        for (Coord j = -3; j <= 3; ++j)
            REQUIRE(moved.eval({i, j}) == rot[static_cast<size_t>(x.eval(shear.apply({i, j})))]);
    CHECK_THROWS_AS(x.transported(shear, {0, 0, 1}), std::invalid_argument);

    const ConfigView line = x.restricted({5, 7}, {{1, 1}});
    CHECK(line.dim() == 1);
    for (Coord n = -10; n <= 10; ++n)
        REQUIRE(line.eval({n}) == x.eval({5 + n, 7 + n}));

    CHECK_THROWS_AS(line.projected(), std::invalid_argument);
    CHECK_THROWS_AS(x.read(Support(3, {{0, 0, 0}})), std::invalid_argument);
}

TEST_CASE("pattern discrepancies vanish and occurrences split one against one") {
    const AsymptoticPair p = make_sturmian_pair(slope_b(), SurdReal(0));
    const Support lshape(2, {{0, 0}, {0, 1}, {1, 0}, {2, 0}});
    const auto pats = language(slope_b(), lshape);
    REQUIRE(pats.size() == 8);
    std::set<Point> x_positions, y_positions;
    for (const Patch& pat : pats) {
        CHECK(delta_p(p, pat) == 0);
        const OccurrencePair occ = occurrence_sets_near_f(p, pat);
        REQUIRE(occ.in_x.size() == 1);
        REQUIRE(occ.in_y.size() == 1);
        CHECK(occ.in_x.front() != occ.in_y.front());
        x_positions.insert(occ.in_x.front());
        y_positions.insert(occ.in_y.front());
    }
    // the eight patterns sweep out all of F - S on each side
    CHECK(x_positions.size() == 8);
    CHECK(y_positions.size() == 8);

    // an edit at a cell read from F - S breaks the balance seen through
    // delta_p
    AsymptoticPair broken = p;
    const int old = broken.y.eval({2, 0});
    broken.y = broken.y.with_overrides({{Point{2, 0}, (old + 1) % 3}});
    bool some_delta = false;
    for (const Patch& pat : pats) some_delta |= delta_p(broken, pat) != 0;
    CHECK(some_delta);
}

TEST_CASE("verification passes on honest pairs") {
    VerifyOptions options;
    options.max_support_size = 3;
    const VerificationReport report = verify_indistinguishable(pair_a(), options);
    CHECK(report.verdict);
    CHECK(report.records.size() == 28);  // probe + 3 checks x 9 supports
    for (const CheckRecord& rec : report.records) CHECK(rec.pass);
    CHECK(report.watermarks.empty());
    const std::string text = report.str();
    CHECK(text.find("verdict: indistinguishable on checked corpus") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);

    VerifyOptions box_mode;
    box_mode.mode = SupportMode::boxes;
    box_mode.boxes = {{2, 2}, {3, 2}};
    CHECK(verify_indistinguishable(pair_a(), box_mode).verdict);
}

TEST_CASE("verification pinpoints edits near the difference set") {
    const AsymptoticPair p = pair_a();

    AsymptoticPair off_f = p;
    off_f.y = p.y.with_overrides({{Point{1, 1}, (p.y.eval({1, 1}) + 1) % 3}});
    const VerificationReport r1 = verify_indistinguishable(off_f, VerifyOptions{});
    CHECK_FALSE(r1.verdict);
    REQUIRE_FALSE(r1.records.empty());
    CHECK_FALSE(r1.records.front().pass);
    CHECK(r1.records.front().detail == "unexpected difference at (1,1)");
    CHECK(r1.str().find("verdict: FAILED") != std::string::npos);

    AsymptoticPair on_f = p;
    on_f.y = p.y.with_overrides({{Point{0, 0}, p.x.eval({0, 0})}});
    const VerificationReport r2 = verify_indistinguishable(on_f, VerifyOptions{});
    CHECK_FALSE(r2.verdict);
    CHECK(r2.records.front().detail == "missing difference at (0,0)");

    // an edit beyond the probe window is still caught by the pattern audit
    AsymptoticPair far = p;
    far.y = p.y.with_overrides({{Point{5, 5}, (p.y.eval({5, 5}) + 1) % 3}});
    const VerificationReport r3 = verify_indistinguishable(far, VerifyOptions{});
    CHECK_FALSE(r3.verdict);
    CHECK(r3.records.front().pass);  // the probe window does not reach (5,5)
    bool failed_record = false;
    for (const CheckRecord& rec : r3.records) failed_record |= !rec.pass;
    CHECK(failed_record);
}

TEST_CASE("declared difference sets are watermarked") {
    AsymptoticPair p = pair_a();
    p.status = DifferenceStatus::declared;
    const VerificationReport report = verify_indistinguishable(p, VerifyOptions{});
    CHECK(report.verdict);
    CHECK(std::count(report.watermarks.begin(), report.watermarks.end(),
                     "difference set declared, not certified") == 1);
    CHECK(report.str().find("note: difference set declared, not certified") != std::string::npos);
}

TEST_CASE("pair files round-trip") {
    const AsymptoticPair p = pair_a();
    const std::string text = to_text(p);
    const AsymptoticPair back = pair_from_text(text);
    CHECK(back.status == DifferenceStatus::declared);
    CHECK(back.difference_set == p.difference_set);
    CHECK(views_equal_on(back.x, p.x, 12));
    CHECK(views_equal_on(back.y, p.y, 12));
    CHECK(verify_indistinguishable(back, VerifyOptions{}).verdict);

    // members with a transformed background have no file form
    AsymptoticPair transported = p;
    transported.x = p.x.transported(AffineMap::identity(2), {1, 0, 2});
    CHECK_THROWS_AS(to_text(transported), std::invalid_argument);
}

TEST_CASE("pair files reject malformed input") {
    CHECK_THROWS_AS(pair_from_text("X:\ndim 2\nalphabet 3\n0 0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(pair_from_text("background: sturmian sqrt(2)-1,sqrt(3)-1 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(pair_from_text(to_text(pair_a()) + "unexpected trailer\n"),
                    std::invalid_argument);
}

TEST_CASE("flip conditions hold for characteristic pairs") {
    const AsymptoticPair p = pair_a();  // entries descending
    CHECK(check_flip(p).pass);
    CHECK(check_ordered_flip(p).pass);
    CHECK(check_affine_flip(p).pass);
    // x counts entries >= alpha_i, y counts entries > alpha_i
    CHECK(p.x.eval({0, 0}) == 0);
    CHECK(p.x.eval({-1, 0}) == 1);
    CHECK(p.x.eval({0, -1}) == 2);
    CHECK(p.y.eval({0, 0}) == 2);
    CHECK(p.y.eval({-1, 0}) == 0);
    CHECK(p.y.eval({0, -1}) == 1);

    const SlopeVector ascending =
        make_slope({SurdReal::parse("sqrt(2)-1"), SurdReal::parse("sqrt(3)-1")});
    const AsymptoticPair q = make_sturmian_pair(ascending, SurdReal(0));
    CHECK(q.x.eval({-1, 0}) == 2);
    CHECK(q.x.eval({0, -1}) == 1);
    CHECK(check_flip(q).pass);
    const FlipDiagnosis ordered = check_ordered_flip(q);
    CHECK_FALSE(ordered.pass);
    CHECK(ordered.failed_clause == "x at -e_1 is not 1");
    CHECK(check_affine_flip(q).pass);

    // three dimensions, descending entries: ordered again
    const SlopeVector a3 = make_slope({SurdReal::parse("sqrt(3)-1"), SurdReal::parse("sqrt(2)-1"),
                                       SurdReal::parse("sqrt(5)-2")});
    CHECK(check_ordered_flip(make_sturmian_pair(a3, SurdReal(0))).pass);
}

TEST_CASE("flip diagnostics name the broken clause") {
    const AsymptoticPair p = pair_a();

    AsymptoticPair bad_origin = p;
    bad_origin.x = p.x.with_overrides({{Point{0, 0}, 1}});
    CHECK(check_flip(bad_origin).failed_clause == "x is not bijective on F");

    AsymptoticPair bad_cycle = p;
    bad_cycle.y = p.y.with_overrides({{Point{-1, 0}, 1}});  // y(-e_1) = x(-e_1)
    const FlipDiagnosis diag = check_flip(bad_cycle);
    CHECK_FALSE(diag.pass);
    CHECK(diag.failed_clause == "y is not x - 1 mod 3 on F");

    AsymptoticPair bad_f = p;
    bad_f.difference_set = Support(2, {{0, 0}, {1, 0}, {0, 1}});
    CHECK(check_flip(bad_f).failed_clause == "difference set is not {0, -e_1, ..., -e_d}");
    CHECK(check_affine_flip(bad_f).failed_clause ==
          "x -> y on F is not a single symbol cycle");
    CHECK_THROWS_AS(normalize_affine(bad_f), std::invalid_argument);

    AsymptoticPair tiny_f = p;
    tiny_f.difference_set = Support(2, {{0, 0}, {-1, 0}});
    CHECK(check_affine_flip(tiny_f).failed_clause == "difference set does not have d + 1 cells");
}

TEST_CASE("random transports normalize back to the ordered flip") {
    const AsymptoticPair p = pair_a();
    std::mt19937 rng(13579);
    std::vector<int> symbols{0, 1, 2};
    for (int trial = 0; trial < 8; ++trial) {
        // random unimodular map: a few elementary operations
        AffineMap pre = AffineMap::identity(2);
        for (int step = 0; step < 4; ++step) {
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
        pre.b = {static_cast<Coord>(rng() % 7) - 3, static_cast<Coord>(rng() % 7) - 3};
        std::shuffle(symbols.begin(), symbols.end(), rng);

        const AsymptoticPair moved{p.x.transported(pre, symbols),
                                   p.y.transported(pre, symbols),
                                   apply_affine(pre.inverse(), p.difference_set),
                                   p.status,
                                   p.watermarks};
        REQUIRE(check_affine_flip(moved).pass);

        const Normalization norm = normalize_affine(moved);
        REQUIRE(check_ordered_flip(norm.pair).pass);
        CHECK(std::abs(norm.map.det()) == 1);
        // the normalized members are the transported originals
        for (Coord i = -2; i <= 2; ++i)
            for (Coord j = -2; j <= 2; ++j) {
                const Point n{i, j};
                REQUIRE(norm.pair.x.eval(n) ==
                        norm.symbol_map[static_cast<size_t>(moved.x.eval(norm.map.apply(n)))]);
            }
        VerifyOptions quick;
        quick.max_support_size = 2;
        CHECK(verify_indistinguishable(norm.pair, quick).verdict);
    }
}

TEST_CASE("projection drops to the tail slope") {
    const AsymptoticPair p = pair_a();
    const AsymptoticPair reduced = project_pi(p);
    CHECK(reduced.dim() == 1);
    CHECK(reduced.alphabet() == 2);
    CHECK(reduced.difference_set == canonical_difference_set(1));
    const AsymptoticPair tail = make_sturmian_pair(make_slope({SurdReal::parse("sqrt(2)-1")}),
                                                   SurdReal(0));
    for (Coord n = -100; n <= 100; ++n) {
        REQUIRE(reduced.x.eval({n}) == tail.x.eval({n}));
        REQUIRE(reduced.y.eval({n}) == tail.y.eval({n}));
    }
    CHECK_THROWS_AS(project_pi(reduced), std::invalid_argument);

    const SlopeVector a3 = make_slope({SurdReal::parse("sqrt(3)-1"), SurdReal::parse("sqrt(2)-1"),
                                       SurdReal::parse("sqrt(5)-2")});
    const AsymptoticPair r3 = project_pi(make_sturmian_pair(a3, SurdReal(0)));
    const AsymptoticPair t3 = make_sturmian_pair(
        make_slope({SurdReal::parse("sqrt(2)-1"), SurdReal::parse("sqrt(5)-2")}), SurdReal(0));
    CHECK(r3.difference_set == canonical_difference_set(2));
    CHECK(views_equal_on(r3.x, t3.x, 7));
    CHECK(views_equal_on(r3.y, t3.y, 7));
}

TEST_CASE("shift detection on finite windows") {
    const AsymptoticPair p = pair_a();

    const AsymptoticPair same{p.x, p.x, canonical_difference_set(2),
                              DifferenceStatus::declared, {}};
    CHECK(detect_shift_relation(same, 2, 24) == std::vector<Point>{{0, 0}});

    const ConfigView shifted =
        p.x.transported(AffineMap::translation({3, 1}), {0, 1, 2});
    const AsymptoticPair orbit{p.x, shifted, canonical_difference_set(2),
                               DifferenceStatus::declared, {}};
    CHECK(detect_shift_relation(orbit, 4, 24) == std::vector<Point>{{3, 1}});

    // the characteristic pair itself admits no shift
    CHECK(detect_shift_relation(p, 6, 24).empty());
}

TEST_CASE("pair sequences stabilize on the window") {
    std::vector<AsymptoticPair> pairs;
    for (int n = 1; n <= 8; ++n) {
        const BigRat f(1, n);
        pairs.push_back(make_sturmian_pair(
            make_slope({SurdReal::parse("sqrt(2)-1").scaled(f),
                        SurdReal::parse("sqrt(3)-1").scaled(f)}),
            SurdReal(0)));
    }
    const EtaleReport report = etale_consistency(pairs, {-4, -4}, {9, 9});
    REQUIRE(report.records.size() == 8);
    REQUIRE(report.stabilization_index.has_value());
    CHECK(*report.stabilization_index == 5);
    for (size_t i = 0; i < 8; ++i) CHECK(report.records[i].equals_final == (i >= 5));
    CHECK(report.records[5].cells_changed_from_previous > 0);
    CHECK(report.records[6].cells_changed_from_previous == 0);
    CHECK(report.records[7].cells_changed_from_previous == 0);
    REQUIRE(report.watermarks.size() == 1);
    CHECK(report.watermarks.front() == "finite-window evidence only");
    const std::string text = report.str();
    CHECK(text.find("stable from index 5 on") != std::string::npos);
    CHECK(text.find("note: finite-window evidence only") != std::string::npos);
}

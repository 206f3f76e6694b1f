#include "cli_app.hpp"

#include "combinatorics.hpp"
#include "tiling.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sturm {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, sep)) out.push_back(piece);
    return out;
}

Coord parse_coord(const std::string& text) {
    size_t used = 0;
    const Coord value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad integer '" + text + "'");
    return value;
}

// "lo:hi,lo:hi" with inclusive ends
std::pair<Point, std::vector<Coord>> parse_box(const std::string& text) {
    Point corner;
    std::vector<Coord> size;
    for (const std::string& axis : split(text, ',')) {
        const auto colon = axis.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("box axis needs lo:hi");
        const Coord lo = parse_coord(axis.substr(0, colon));
        const Coord hi = parse_coord(axis.substr(colon + 1));
        if (hi < lo) throw std::invalid_argument("box axis has hi < lo");
        corner.push_back(lo);
        size.push_back(hi - lo + 1);
    }
    if (corner.empty()) throw std::invalid_argument("empty box argument");
    return {corner, size};
}

// "2x3,3x2" (a bare number is a 1-dim shape)
std::vector<std::vector<Coord>> parse_shapes(const std::string& text) {
    std::vector<std::vector<Coord>> out;
    for (const std::string& shape : split(text, ',')) {
        std::vector<Coord> sides;
        for (const std::string& side : split(shape, 'x')) sides.push_back(parse_coord(side));
        out.push_back(std::move(sides));
    }
    if (out.empty()) throw std::invalid_argument("empty shape list");
    return out;
}

// "0,0;1,0;2,1"
std::vector<Point> parse_points(const std::string& text) {
    std::vector<Point> out;
    for (const std::string& piece : split(text, ';')) {
        Point p;
        for (const std::string& c : split(piece, ',')) p.push_back(parse_coord(c));
        out.push_back(std::move(p));
    }
    return out;
}

SlopeVector parse_slope(const std::string& text) {
    return make_slope(parse_slope_entries(text));
}

std::string shape_text(const std::vector<Coord>& shape) {
    std::string out;
    for (size_t i = 0; i < shape.size(); ++i) out += (i ? "x" : "") + std::to_string(shape[i]);
    return out;
}

std::string point_text(const Point& p) {
    std::string out = "(";
    for (size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
    return out + ")";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << content;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void require_dim(const SlopeVector& slope, const std::vector<Coord>& size) {
    if (static_cast<int>(size.size()) != slope.dim()) {
        throw std::invalid_argument("window dimension does not match the slope");
    }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact cut-and-project configurations on Z^d and their asymptotic pairs"};
    app.require_subcommand(1);

    struct {
        std::string alpha, rho = "0", side = "lower", box, out;
    } gen;
    auto* gen_cmd = app.add_subcommand("generate", "evaluate a window as patch text");
    gen_cmd->add_option("--alpha", gen.alpha, "slope entries, surd literals")->required();
    gen_cmd->add_option("--rho", gen.rho, "intercept, surd literal");
    gen_cmd->add_option("--side", gen.side)->check(CLI::IsMember({"lower", "upper"}));
    gen_cmd->add_option("--box", gen.box, "inclusive window lo:hi,lo:hi")->required();
    gen_cmd->add_option("--out", gen.out, "output path (default stdout)");

    struct {
        std::string pair_file, alpha, rho = "0", mode = "connected", boxes, report;
        int max_size = 4;
        Coord margin = 2;
    } ver;
    auto* ver_cmd = app.add_subcommand("verify", "check the indistinguishability clauses");
    ver_cmd->add_option("--pair", ver.pair_file, "pair file path");
    ver_cmd->add_option("--alpha", ver.alpha, "slope for a generated characteristic pair");
    ver_cmd->add_option("--rho", ver.rho);
    ver_cmd->add_option("--mode", ver.mode)->check(CLI::IsMember({"connected", "boxes"}));
    ver_cmd->add_option("--max-size", ver.max_size, "largest connected support size");
    ver_cmd->add_option("--boxes", ver.boxes, "shape list for box mode");
    ver_cmd->add_option("--margin", ver.margin);
    ver_cmd->add_option("--report", ver.report, "report path (default stdout)");

    struct {
        std::string alpha, shapes;
    } cpx;
    auto* cpx_cmd = app.add_subcommand("complexity", "measured vs predicted pattern counts");
    cpx_cmd->add_option("--alpha", cpx.alpha)->required();
    cpx_cmd->add_option("--shapes", cpx.shapes, "box shapes like 1x3,2x2")->required();

    struct {
        std::string alpha, box, points, positions, out;
    } bis;
    auto* bis_cmd = app.add_subcommand("bispecial", "extension-graph records for one support");
    bis_cmd->add_option("--alpha", bis.alpha)->required();
    bis_cmd->add_option("--box", bis.box, "box support shape like 5x3");
    bis_cmd->add_option("--points", bis.points, "explicit support points x,y;x,y");
    bis_cmd->add_option("--positions", bis.positions, "extension positions (default boundary)");
    bis_cmd->add_option("--out", bis.out);

    struct {
        std::string alpha, rho = "0", side = "lower", box, out;
        double scale = 40;
    } til;
    auto* til_cmd = app.add_subcommand("tiling", "rhombus tiling of a window as SVG");
    til_cmd->add_option("--alpha", til.alpha)->required();
    til_cmd->add_option("--rho", til.rho);
    til_cmd->add_option("--side", til.side)->check(CLI::IsMember({"lower", "upper"}));
    til_cmd->add_option("--box", til.box)->required();
    til_cmd->add_option("--scale", til.scale);
    til_cmd->add_option("--out", til.out);

    struct {
        std::string alpha;
        int levels = 1;
    } red;
    auto* red_cmd = app.add_subcommand("reduce", "compare projections against lower-dim slopes");
    red_cmd->add_option("--alpha", red.alpha)->required();
    red_cmd->add_option("--levels", red.levels);

    struct {
        std::string alpha, mode = "scaled", box = "-4:4,-4:4";
        int count = 8;
    } eta;
    auto* eta_cmd = app.add_subcommand("etale", "window stability along a slope sequence");
    eta_cmd->add_option("--alpha", eta.alpha)->required();
    eta_cmd->add_option("--count", eta.count);
    eta_cmd->add_option("--mode", eta.mode)->check(CLI::IsMember({"scaled", "constant"}));
    eta_cmd->add_option("--box", eta.box);

    struct {
        std::string alpha, rho = "0", side = "lower", box = "-100:99,-100:99";
    } fre;
    auto* fre_cmd = app.add_subcommand("frequencies", "empirical vs predicted symbol frequencies");
    fre_cmd->add_option("--alpha", fre.alpha)->required();
    fre_cmd->add_option("--rho", fre.rho);
    fre_cmd->add_option("--side", fre.side)->check(CLI::IsMember({"lower", "upper"}));
    fre_cmd->add_option("--box", fre.box);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*gen_cmd) {
            const SlopeVector slope = parse_slope(gen.alpha);
            const auto [corner, size] = parse_box(gen.box);
            require_dim(slope, size);
            const SturmianConfig config{slope, SurdReal::parse(gen.rho),
                                        side_from_text(gen.side)};
            err << "slope independence: proven\n";
            write_output(gen.out, to_text(eval_window(config, corner, size)), out);
            return kPass;
        }

        if (*ver_cmd) {
            if (ver.pair_file.empty() == ver.alpha.empty()) {
                throw std::invalid_argument("verify needs exactly one of --pair or --alpha");
            }
            const AsymptoticPair pair =
                ver.pair_file.empty()
                    ? make_sturmian_pair(parse_slope(ver.alpha), SurdReal::parse(ver.rho))
                    : pair_from_text(read_file(ver.pair_file));
            VerifyOptions options;
            options.mode = ver.mode == "boxes" ? SupportMode::boxes : SupportMode::connected;
            options.max_support_size = ver.max_size;
            options.margin = ver.margin;
            if (!ver.boxes.empty()) options.boxes = parse_shapes(ver.boxes);
            if (options.mode == SupportMode::boxes && options.boxes.empty()) {
                throw std::invalid_argument("box mode needs --boxes");
            }
            const VerificationReport report = verify_indistinguishable(pair, options);
            write_output(ver.report, report.str(), out);
            return report.verdict ? kPass : kFail;
        }

        if (*cpx_cmd) {
            const SlopeVector slope = parse_slope(cpx.alpha);
            const LanguageSource source = LanguageSource::exact(slope);
            bool all = true;
            out << "shape\tmeasured\tpredicted\tmatch\n";
            for (const auto& shape : parse_shapes(cpx.shapes)) {
                if (static_cast<int>(shape.size()) != slope.dim()) {
                    throw std::invalid_argument("shape dimension does not match the slope");
                }
                const Support s = box(shape);
                const long long measured = complexity(source, s);
                const long long predicted = static_cast<long long>(
                    minkowski_diff(canonical_difference_set(slope.dim()), s).size());
                const bool match = measured == predicted;
                all = all && match;
                out << shape_text(shape) << "\t" << measured << "\t" << predicted << "\t"
                    << (match ? "yes" : "NO") << "\n";
            }
            return all ? kPass : kFail;
        }

        if (*bis_cmd) {
            const SlopeVector slope = parse_slope(bis.alpha);
            if (bis.box.empty() == bis.points.empty()) {
                throw std::invalid_argument("bispecial needs exactly one of --box or --points");
            }
            const Support s = bis.box.empty()
                                  ? Support(slope.dim(), parse_points(bis.points))
                                  : box(parse_shapes(bis.box).at(0));
            if (s.dim() != slope.dim()) {
                throw std::invalid_argument("support dimension does not match the slope");
            }
            const std::vector<Point> positions =
                bis.positions.empty() ? std::vector<Point>{} : parse_points(bis.positions);
            const auto records = bispecial_scan(LanguageSource::exact(slope), s,
                                                canonical_difference_set(slope.dim()), positions);
            write_output(bis.out, records_to_text(records), out);
            return kPass;
        }

        if (*til_cmd) {
            const SlopeVector slope = parse_slope(til.alpha);
            const auto [corner, size] = parse_box(til.box);
            require_dim(slope, size);
            const SturmianConfig config{slope, SurdReal::parse(til.rho),
                                        side_from_text(til.side)};
            write_output(til.out, tiling_svg(rhombus_tiling(config, corner, size), til.scale),
                         out);
            return kPass;
        }

        if (*red_cmd) {
            const SlopeVector slope = parse_slope(red.alpha);
            const int d = slope.dim();
            if (d < 2) throw std::invalid_argument("reduce needs dimension >= 2");
            if (red.levels < 1 || red.levels > d - 1) {
                throw std::invalid_argument("levels must lie in 1.." + std::to_string(d - 1));
            }
            for (int i = 0; i + 1 < d; ++i) {
                if (compare(slope.entries[static_cast<size_t>(i)],
                            slope.entries[static_cast<size_t>(i + 1)]) <= 0) {
                    throw std::invalid_argument(
                        "slope entries must be strictly descending; normalize first");
                }
            }
            AsymptoticPair current = make_sturmian_pair(slope, SurdReal(0));
            std::vector<SurdReal> tail = slope.entries;
            bool all = true;
            for (int level = 1; level <= red.levels; ++level) {
                current = project_pi(current);
                tail.erase(tail.begin());
                const AsymptoticPair reference =
                    make_sturmian_pair(make_slope(tail), SurdReal(0));
                const int rd = current.dim();
                const Point corner = rd == 1 ? Point{-100} : Point{-10, -5};
                const std::vector<Coord> size =
                    rd == 1 ? std::vector<Coord>{200} : std::vector<Coord>{20, 10};
                std::optional<Point> mismatch;
                for (const Point& n : box_at(corner, size)) {
                    if (current.x.eval(n) != reference.x.eval(n) ||
                        current.y.eval(n) != reference.y.eval(n)) {
                        mismatch = n;
                        break;
                    }
                }
                out << "level " << level << ": dim " << rd << ", "
                    << (mismatch ? "differs at " + point_text(*mismatch)
                                 : "equal on the comparison window")
                    << "\n";
                all = all && !mismatch;
            }
            out << (all ? "verdict: reductions agree" : "verdict: MISMATCH") << "\n";
            return all ? kPass : kFail;
        }

        if (*eta_cmd) {
            const SlopeVector slope = parse_slope(eta.alpha);
            if (eta.count < 1) throw std::invalid_argument("count must be positive");
            const auto [corner, size] = parse_box(eta.box);
            require_dim(slope, size);
            std::vector<AsymptoticPair> pairs;
            for (int n = 1; n <= eta.count; ++n) {
                std::vector<SurdReal> entries;
                for (const SurdReal& a : slope.entries) {
                    entries.push_back(eta.mode == "constant" ? a : a.scaled(BigRat(1, n)));
                }
                pairs.push_back(make_sturmian_pair(make_slope(std::move(entries)), SurdReal(0)));
            }
            out << etale_consistency(pairs, corner, size).str();
            return kPass;
        }

        if (*fre_cmd) {
            const SlopeVector slope = parse_slope(fre.alpha);
            const auto [corner, size] = parse_box(fre.box);
            require_dim(slope, size);
            const SturmianConfig config{slope, SurdReal::parse(fre.rho),
                                        side_from_text(fre.side)};
            const std::vector<double> measured = symbol_frequencies(config, corner, size);
            const std::vector<SurdReal> lengths = window_lengths(slope);
            out << "symbol\tmeasured\tpredicted\tdeviation\n";
            double worst = 0;
            for (size_t i = 0; i < measured.size(); ++i) {
                const double predicted = lengths[i].approx();
                const double dev = std::abs(measured[i] - predicted);
                worst = std::max(worst, dev);
                out << i << "\t" << fmt6(measured[i]) << "\t" << fmt6(predicted) << "\t"
                    << fmt6(dev) << "\n";
            }
            out << "max deviation\t" << fmt6(worst) << "\n";
            return kPass;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

}  // namespace sturm

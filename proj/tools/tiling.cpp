#include "tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sturm {

namespace {

// images of the three cube edge directions under projection along (1,1,1);
// they sum to zero
constexpr double kRoot3Half = 0.8660254037844386;
constexpr std::array<std::pair<double, double>, 3> kEdge{
    {{-kRoot3Half, -0.5}, {kRoot3Half, -0.5}, {0.0, 1.0}}};

std::pair<double, double> project(const std::array<long long, 3>& z) {
    double x = 0, y = 0;
    for (int i = 0; i < 3; ++i) {
        x += static_cast<double>(z[static_cast<size_t>(i)]) * kEdge[static_cast<size_t>(i)].first;
        y += static_cast<double>(z[static_cast<size_t>(i)]) * kEdge[static_cast<size_t>(i)].second;
    }
    return {x, y};
}

}  // namespace

std::vector<PlacedTile> rhombus_tiling(const SturmianConfig& config, const Point& corner,
                                       const std::vector<Coord>& size) {
    if (config.dim() != 2) throw std::invalid_argument("the rhombus picture requires dimension 2");
    std::vector<PlacedTile> tiles;
    for (const Point& n : box_at(corner, size)) {
        const SurdReal t = config.phase(n);
        // height of the step the cell sits on: floor on the lower side,
        // ceil - 1 on the upper (so integral phases step down)
        const BigInt level = config.side == Side::lower ? t.floor() : t.ceil() - 1;
        const long long h = static_cast<long long>(level);

        PlacedTile tile;
        tile.cell = n;
        tile.symbol = config.eval(n);
        switch (tile.symbol) {
            case 0: tile.anchor = {-h, n[0] - h, n[0] + n[1] - h}; break;
            case 1: tile.anchor = {-h - 1, n[0] - h, n[0] + n[1] - h}; break;
            case 2: tile.anchor = {-h - 1, n[0] - h - 1, n[0] + n[1] - h}; break;
            default: throw std::logic_error("symbol outside the three-letter alphabet");
        }
        // the face omits edge direction (symbol); span the other two
        const int j = tile.symbol == 0 ? 1 : 0;
        const int k = tile.symbol == 2 ? 1 : 2;
        const auto base = project(tile.anchor);
        const auto& ej = kEdge[static_cast<size_t>(j)];
        const auto& ek = kEdge[static_cast<size_t>(k)];
        tile.corners[0] = base;
        tile.corners[1] = {base.first + ej.first, base.second + ej.second};
        tile.corners[2] = {base.first + ej.first + ek.first, base.second + ej.second + ek.second};
        tile.corners[3] = {base.first + ek.first, base.second + ek.second};
        tiles.push_back(tile);
    }
    return tiles;
}

std::string tiling_svg(const std::vector<PlacedTile>& tiles, double scale) {
    if (scale <= 0) throw std::invalid_argument("scale must be positive");
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const PlacedTile& tile : tiles) {
        for (const auto& [x, y] : tile.corners) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    const double pad = 0.5;
    xmin -= pad;
    ymin -= pad;
    xmax += pad;
    ymax += pad;

    constexpr std::array<const char*, 3> kFill{"#4878cf", "#d65f5f", "#6acc65"};
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };

    std::ostringstream out;
    const double w = (xmax - xmin) * scale;
    const double h = (ymax - ymin) * scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
        << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
    for (const PlacedTile& tile : tiles) {
        out << "  <polygon points=\"";
        for (size_t c = 0; c < tile.corners.size(); ++c) {
            // svg y axis points down
            const double x = (tile.corners[c].first - xmin) * scale;
            const double y = (ymax - tile.corners[c].second) * scale;
            out << (c ? " " : "") << fmt(x) << "," << fmt(y);
        }
        out << "\" fill=\"" << kFill[static_cast<size_t>(tile.symbol)]
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace sturm

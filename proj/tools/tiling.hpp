#pragma once

#include "sturmian.hpp"

#include <array>

namespace sturm {

// One unit rhombus of the stepped-plane picture: the projection along
// (1,1,1) of a unit-square face of the cube anchored at `anchor`.  The
// symbol selects the face type; corners are listed in drawing order.
struct PlacedTile {
    Point cell;
    int symbol = 0;
    std::array<long long, 3> anchor{};
    std::array<std::pair<double, double>, 4> corners{};

    bool operator==(const PlacedTile& o) const {
        return cell == o.cell && symbol == o.symbol && anchor == o.anchor;
    }
};

// Tiles for every cell of the window; requires dim() == 2.
std::vector<PlacedTile> rhombus_tiling(const SturmianConfig& config, const Point& corner,
                                       const std::vector<Coord>& size);

std::string tiling_svg(const std::vector<PlacedTile>& tiles, double scale);

}  // namespace sturm

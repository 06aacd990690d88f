#pragma once

#include "crowdsim/errors.hpp"
#include "crowdsim/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace crowdsim {

/// Per-cell geodesic distance to the nearest exit plus a steepest-descent
/// direction. Computed once per scenario; exits are static.
///
/// Grid conventions: cell (ix, iy) covers [ix*cell, (ix+1)*cell) x
/// [iy*cell, (iy+1)*cell); row-major index iy*nx + ix. A cell is an
/// obstacle cell iff its center lies in some obstacle rectangle (closed);
/// obstacle cells carry dist = +inf. Unreachable passable cells also carry
/// +inf. dist = 0 exactly on exit cells; dir is unit-length wherever dist
/// is finite and positive, zero elsewhere.
struct NavField {
    int nx = 0, ny = 0;
    double cell = 0.25;
    std::vector<double> dist;
    std::vector<Vec2> dir;
    std::vector<std::uint8_t> obstacle;  // 1 = obstacle cell
    std::vector<std::uint8_t> exit_cell; // 1 = exit cell (dist 0)

    int index(int ix, int iy) const { return iy * nx + ix; }
    bool in_grid(int ix, int iy) const { return ix >= 0 && ix < nx && iy >= 0 && iy < ny; }
    Vec2 cell_center(int ix, int iy) const {
        return Vec2((ix + 0.5) * cell, (iy + 0.5) * cell);
    }
    int clamp_cell_x(double x) const {
        return std::clamp(static_cast<int>(std::floor(x / cell)), 0, nx - 1);
    }
    int clamp_cell_y(double y) const {
        return std::clamp(static_cast<int>(std::floor(y / cell)), 0, ny - 1);
    }
};

/// Multi-source 8-neighbor Dijkstra from all exit cells. Edge costs are
/// cell (orthogonal) and cell*sqrt(2) (diagonal); an edge exists iff both
/// endpoint cells are passable. Throws UnreachableError naming each spawn
/// rectangle that contains no finite-distance cell.
NavField compute_nav_field(const ScenarioSpec& spec);

/// Same field computation without the spawn-reachability gate; validation
/// uses this to report reachability problems instead of throwing.
NavField build_nav_field(const ScenarioSpec& spec);

/// Spawn-group indices whose rectangle contains no finite-distance cell.
std::vector<int> unreachable_groups(const NavField& field, const ScenarioSpec& spec);

/// Piecewise-constant lookup of the containing cell's direction. Returns
/// the zero vector on exit cells (the engine treats that as exit contact).
/// Throws BlockedError when the containing cell is an obstacle or
/// unreachable. pos is clamped into the grid.
Vec2 goal_direction(const NavField& field, const Vec2& pos);

/// Debug dump: one text row per grid row (iy ascending), distances
/// space-separated, +inf printed as "inf".
std::string dump_dist_matrix(const NavField& field);

} // namespace crowdsim

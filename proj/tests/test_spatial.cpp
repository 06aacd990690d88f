#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "crowdsim/errors.hpp"
#include "crowdsim/nav_field.hpp"
#include "crowdsim/spatial_grid.hpp"
#include "crowdsim/types.hpp"

#include "test_support.hpp"

using namespace crowdsim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kDiag = 0.25 * std::sqrt(2.0);

/// A 0.75 x 0.75 room at cell 0.25 whose whole east boundary is an exit:
/// a 3x3 field with distance growing column by column to the west.
ScenarioSpec tiny_room() {
    ScenarioSpec spec;
    spec.width = 0.75;
    spec.height = 0.75;
    spec.cell_size = 0.25;
    ExitSegment e;
    e.a = Vec2(0.75, 0.0);
    e.b = Vec2(0.75, 0.75);
    spec.exits.push_back(e);
    return spec;
}

/// A 1 x 1 room at cell 0.25 with the quadrant [0.5, 1] x [0.5, 1]
/// blocked and a short exit at the east end of the bottom row, so paths
/// from the north-west must walk around the block.
ScenarioSpec l_corridor() {
    ScenarioSpec spec;
    spec.width = 1.0;
    spec.height = 1.0;
    spec.cell_size = 0.25;
    spec.obstacles.push_back(Rect{0.5, 0.5, 0.5, 0.5});
    ExitSegment e;
    e.a = Vec2(1.0, 0.0);
    e.b = Vec2(1.0, 0.2);
    spec.exits.push_back(e);
    return spec;
}

} // namespace

TEST_SUITE("spatial") {

TEST_CASE("an empty population builds an empty grid") {
    const auto grid = build_grid({}, 2.0);
    CHECK(grid.buckets.empty());
    CHECK(grid.cell == 2.0);
}

TEST_CASE("a single agent lands in the cell containing its center") {
    std::vector<AgentState> agents(1);
    agents[0].id = 0;
    agents[0].pos = Vec2(0.1, 0.1);
    const auto grid = build_grid(agents, 2.0);
    REQUIRE(grid.buckets.size() == 1);
    const auto it = grid.buckets.find(SpatialGrid::key(0, 0));
    REQUIRE(it != grid.buckets.end());
    REQUIRE(it->second.size() == 1);
    CHECK(it->second[0].id == 0);
}

TEST_CASE("exited agents never enter the grid") {
    std::vector<AgentState> agents(2);
    agents[0].id = 0;
    agents[0].pos = Vec2(1.0, 1.0);
    agents[1].id = 1;
    agents[1].pos = Vec2(1.0, 1.0);
    agents[1].exited = true;
    const auto grid = build_grid(agents, 2.0);
    std::size_t total = 0;
    for (const auto& [key, bucket] : grid.buckets) total += bucket.size();
    CHECK(total == 1);
}

TEST_CASE("every live agent appears in exactly one bucket") {
    auto agents = test_support::random_agents(500, 50.0, 30.0, 99);
    for (int i = 0; i < 500; i += 7) agents[i].exited = true;
    const auto grid = build_grid(agents, 2.5);
    std::multiset<int> seen;
    for (const auto& [key, bucket] : grid.buckets)
        for (const auto& entry : bucket) seen.insert(entry.id);
    std::multiset<int> expected;
    for (const auto& a : agents)
        if (!a.exited) expected.insert(a.id);
    CHECK(seen == expected);
}

TEST_CASE("querying an empty grid returns nothing") {
    const auto grid = build_grid({}, 2.0);
    CHECK(query_neighbors(grid, Vec2(1.0, 1.0), 1.5).empty());
}

TEST_CASE("two agents a metre apart see each other at that distance") {
    std::vector<AgentState> agents(2);
    agents[0].id = 0;
    agents[0].pos = Vec2(3.0, 3.0);
    agents[1].id = 1;
    agents[1].pos = Vec2(4.0, 3.0);
    const auto grid = build_grid(agents, 2.0);

    const auto from_0 = query_neighbors(grid, agents[0].pos, 2.0, 0);
    REQUIRE(from_0.size() == 1);
    CHECK(from_0[0].first == 1);
    CHECK(from_0[0].second == doctest::Approx(1.0).epsilon(1e-12));

    const auto from_1 = query_neighbors(grid, agents[1].pos, 2.0, 1);
    REQUIRE(from_1.size() == 1);
    CHECK(from_1[0].first == 0);

    // Without an exclusion the query also reports the agent itself.
    const auto all = query_neighbors(grid, agents[0].pos, 2.0);
    CHECK(all.size() == 2);
    CHECK(all[0].first == 0);
    CHECK(all[0].second == 0.0);
}

TEST_CASE("grid queries match a brute-force scan exactly") {
    const auto agents = test_support::random_agents(500, 40.0, 25.0, 7);
    const double radius = 2.0;
    const auto grid = build_grid(agents, radius);
    for (int q = 0; q < 100; ++q) {
        const auto& probe = agents[q * 5];
        const auto got = query_neighbors(grid, probe.pos, radius, probe.id);
        const auto want =
            test_support::brute_force_neighbors(agents, probe.pos, radius, probe.id);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].first == want[i].first);
            CHECK(got[i].second == want[i].second);
        }
        // Ascending id order is part of the contract (fixed sum order).
        for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].first < got[i].first);
    }
}

TEST_CASE("reused output buffers are cleared between queries") {
    std::vector<AgentState> agents(1);
    agents[0].id = 0;
    agents[0].pos = Vec2(1.0, 1.0);
    const auto grid = build_grid(agents, 2.0);
    std::vector<std::pair<int, double>> out;
    query_neighbors_into(grid, Vec2(1.0, 1.0), 2.0, -1, out);
    CHECK(out.size() == 1);
    query_neighbors_into(grid, Vec2(30.0, 30.0), 2.0, -1, out);
    CHECK(out.empty());
}

TEST_CASE("distance field on a 3x3 room grows away from the exit wall") {
    const auto field = compute_nav_field(tiny_room());
    REQUIRE(field.nx == 3);
    REQUIRE(field.ny == 3);
    for (int iy = 0; iy < 3; ++iy) {
        CHECK(field.dist[field.index(2, iy)] == 0.0);
        CHECK(field.exit_cell[field.index(2, iy)] == 1);
        CHECK(field.dist[field.index(1, iy)] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(field.dist[field.index(0, iy)] == doctest::Approx(0.5).epsilon(1e-12));
    }
    // Interior cells point straight east; exit cells carry no direction.
    CHECK(field.dir[field.index(1, 1)].x() == doctest::Approx(1.0));
    CHECK(field.dir[field.index(1, 1)].y() == doctest::Approx(0.0));
    CHECK(field.dir[field.index(2, 1)].norm() == 0.0);
}

TEST_CASE("obstacle cells are impassable and carry infinite distance") {
    auto spec = tiny_room();
    spec.obstacles.push_back(Rect{0.25, 0.25, 0.25, 0.25}); // exactly the middle cell
    const auto field = compute_nav_field(spec);
    CHECK(field.obstacle[field.index(1, 1)] == 1);
    CHECK(field.dist[field.index(1, 1)] == kInf);
    CHECK(field.dir[field.index(1, 1)].norm() == 0.0);
    // Neighbors route around it, not through it.
    CHECK(field.dist[field.index(0, 1)] == doctest::Approx(0.25 + kDiag).epsilon(1e-12));
}

TEST_CASE("the corridor around a blocked quadrant costs the frozen path lengths") {
    const auto field = compute_nav_field(l_corridor());
    REQUIRE(field.nx == 4);
    REQUIRE(field.ny == 4);
    const auto d = [&](int ix, int iy) { return field.dist[field.index(ix, iy)]; };

    // Blocked quadrant: cells (2..3, 2..3).
    for (int iy = 2; iy < 4; ++iy)
        for (int ix = 2; ix < 4; ++ix) {
            CHECK(field.obstacle[field.index(ix, iy)] == 1);
            CHECK(d(ix, iy) == kInf);
        }

    CHECK(d(3, 0) == 0.0); // the exit cell
    CHECK(d(2, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(d(3, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d(2, 1) == doctest::Approx(kDiag).epsilon(1e-12));
    CHECK(d(1, 1) == doctest::Approx(0.25 + kDiag).epsilon(1e-12));
    CHECK(d(0, 1) == doctest::Approx(0.5 + kDiag).epsilon(1e-12));
    CHECK(d(1, 2) == doctest::Approx(2.0 * kDiag).epsilon(1e-12));
    CHECK(d(0, 2) == doctest::Approx(0.25 + 2.0 * kDiag).epsilon(1e-12));
    CHECK(d(1, 3) == doctest::Approx(0.25 + 2.0 * kDiag).epsilon(1e-12));
    CHECK(d(0, 3) == doctest::Approx(3.0 * kDiag).epsilon(1e-12));

    // Steepest-descent directions at a few pinned cells.
    const Vec2 diag = Vec2(1.0, -1.0).normalized();
    CHECK(field.dir[field.index(1, 1)].x() == doctest::Approx(diag.x()).epsilon(1e-12));
    CHECK(field.dir[field.index(1, 1)].y() == doctest::Approx(diag.y()).epsilon(1e-12));
    CHECK(field.dir[field.index(3, 1)].x() == doctest::Approx(0.0));
    CHECK(field.dir[field.index(3, 1)].y() == doctest::Approx(-1.0));
    CHECK(field.dir[field.index(0, 3)].x() == doctest::Approx(diag.x()).epsilon(1e-12));
    CHECK(field.dir[field.index(0, 3)].y() == doctest::Approx(diag.y()).epsilon(1e-12));
}

TEST_CASE("distances satisfy the relaxation inequality everywhere") {
    // No passable cell can be more than one edge cost above any neighbor.
    const auto spec = test_support::busy_spec(1);
    const auto field = build_nav_field(spec);
    const int off[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                           {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
    for (int iy = 0; iy < field.ny; ++iy) {
        for (int ix = 0; ix < field.nx; ++ix) {
            const double here = field.dist[field.index(ix, iy)];
            if (!std::isfinite(here)) continue;
            for (const auto& o : off) {
                const int jx = ix + o[0], jy = iy + o[1];
                if (!field.in_grid(jx, jy)) continue;
                const double there = field.dist[field.index(jx, jy)];
                if (!std::isfinite(there)) continue;
                const double cost =
                    (o[0] != 0 && o[1] != 0) ? field.cell * std::sqrt(2.0) : field.cell;
                CHECK(here <= there + cost + 1e-12);
            }
        }
    }
}

TEST_CASE("following the field greedily always reaches an exit") {
    const auto spec = test_support::busy_spec(2);
    const auto field = build_nav_field(spec);
    int passable = 0;
    for (int i = 0; i < field.nx * field.ny; ++i)
        if (!field.obstacle[i] && std::isfinite(field.dist[i])) ++passable;
    for (int iy = 0; iy < field.ny; iy += 3) {
        for (int ix = 0; ix < field.nx; ix += 3) {
            if (field.obstacle[field.index(ix, iy)]) continue;
            if (!std::isfinite(field.dist[field.index(ix, iy)])) continue;
            Vec2 pos = field.cell_center(ix, iy);
            int steps = 0;
            while (steps <= passable) {
                const Vec2 dir = goal_direction(field, pos);
                if (dir.norm() == 0.0) break; // reached an exit cell
                // Hop one cell, then snap to the landing cell's center so
                // the walk is exactly cell-to-cell.
                pos += dir * field.cell;
                pos = field.cell_center(field.clamp_cell_x(pos.x()),
                                        field.clamp_cell_y(pos.y()));
                ++steps;
            }
            CHECK(steps <= passable);
        }
    }
}

TEST_CASE("goal lookups on blocked cells throw") {
    const auto field = compute_nav_field(l_corridor());
    CHECK_THROWS_AS((void)goal_direction(field, Vec2(0.875, 0.875)), BlockedError);
    // Clamping: a lookup just outside the domain uses the nearest cell.
    const Vec2 outside = goal_direction(field, Vec2(-0.1, 0.1));
    CHECK(outside.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fields with cut-off spawn areas raise the unreachable error") {
    auto spec = tiny_room();
    spec.width = 1.25;
    spec.height = 0.75;
    // Wall column sealing the west cell column off from the east exit.
    spec.obstacles.push_back(Rect{0.5, 0.0, 0.25, 0.75});
    spec.exits[0].a = Vec2(1.25, 0.0);
    spec.exits[0].b = Vec2(1.25, 0.75);
    SpawnGroup g;
    g.count = 1;
    g.rect = Rect{0.1, 0.1, 0.1, 0.1};
    spec.groups.push_back(g);
    CHECK_THROWS_AS((void)compute_nav_field(spec), UnreachableError);
    // The gate-free variant reports instead of throwing.
    const auto field = build_nav_field(spec);
    const auto bad = unreachable_groups(field, spec);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == 0);
}

TEST_CASE("the distance dump prints one row per grid row") {
    const auto field = compute_nav_field(tiny_room());
    const auto text = dump_dist_matrix(field);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("inf") == std::string::npos);
    auto spec = tiny_room();
    spec.obstacles.push_back(Rect{0.25, 0.25, 0.25, 0.25});
    CHECK(dump_dist_matrix(compute_nav_field(spec)).find("inf") != std::string::npos);
}

} // TEST_SUITE

#include "crowdsim/nav_field.hpp"

#include "crowdsim/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace crowdsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 8-neighborhood in ascending row-major order of the neighbor index.
constexpr int kOff[8][2] = {
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1},
};

// Exit segments lie along one wall, so one coordinate is fixed. Along the
// other, a cell counts as an exit cell only where the overlap has positive
// length: an endpoint sitting exactly on a grid line must not leak the exit
// into the next cell over, which would aim agents at blank wall beside the
// door (where they then hover in a drive/wall-repulsion equilibrium).
void rasterize_exit(const ExitSegment& e, NavField& f) {
    auto mark = [&f](int ix, int iy) {
        const int c = f.index(ix, iy);
        if (!f.obstacle[c]) f.exit_cell[c] = 1;
    };
    auto span_lo = [&f](double lo) { return static_cast<int>(std::floor(lo / f.cell)); };
    auto span_hi = [&f](double hi) { return static_cast<int>(std::ceil(hi / f.cell)) - 1; };
    if (e.a.x() == e.b.x()) {
        const int ix = f.clamp_cell_x(e.a.x());
        const double lo = std::min(e.a.y(), e.b.y()), hi = std::max(e.a.y(), e.b.y());
        int k0 = span_lo(lo), k1 = span_hi(hi);
        if (k1 < k0) k0 = k1 = f.clamp_cell_y(lo); // zero-length exit: containing cell
        for (int iy = std::clamp(k0, 0, f.ny - 1); iy <= std::clamp(k1, 0, f.ny - 1); ++iy)
            mark(ix, iy);
    } else {
        const int iy = f.clamp_cell_y(e.a.y());
        const double lo = std::min(e.a.x(), e.b.x()), hi = std::max(e.a.x(), e.b.x());
        int k0 = span_lo(lo), k1 = span_hi(hi);
        if (k1 < k0) k0 = k1 = f.clamp_cell_x(lo);
        for (int ix = std::clamp(k0, 0, f.nx - 1); ix <= std::clamp(k1, 0, f.nx - 1); ++ix)
            mark(ix, iy);
    }
}

} // namespace

NavField build_nav_field(const ScenarioSpec& spec) {
    NavField f;
    f.cell = spec.cell_size;
    f.nx = std::max(1, static_cast<int>(std::ceil(spec.width / f.cell - 1e-9)));
    f.ny = std::max(1, static_cast<int>(std::ceil(spec.height / f.cell - 1e-9)));
    const int n = f.nx * f.ny;
    f.dist.assign(n, kInf);
    f.dir.assign(n, Vec2::Zero());
    f.obstacle.assign(n, 0);
    f.exit_cell.assign(n, 0);

    for (int iy = 0; iy < f.ny; ++iy) {
        for (int ix = 0; ix < f.nx; ++ix) {
            const Vec2 c = f.cell_center(ix, iy);
            for (const Rect& r : spec.obstacles) {
                if (rect_contains(r, c)) {
                    f.obstacle[f.index(ix, iy)] = 1;
                    break;
                }
            }
        }
    }
    for (const ExitSegment& e : spec.exits) rasterize_exit(e, f);

    using Item = std::pair<double, int>; // (dist, cell index)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (int c = 0; c < n; ++c) {
        if (f.exit_cell[c]) {
            f.dist[c] = 0.0;
            heap.push({0.0, c});
        }
    }
    const double ortho = f.cell;
    const double diag = f.cell * std::numbers::sqrt2;
    while (!heap.empty()) {
        const auto [d, c] = heap.top();
        heap.pop();
        if (d > f.dist[c]) continue; // stale entry
        const int ix = c % f.nx, iy = c / f.nx;
        for (const auto& o : kOff) {
            const int jx = ix + o[0], jy = iy + o[1];
            if (!f.in_grid(jx, jy)) continue;
            const int j = f.index(jx, jy);
            if (f.obstacle[j]) continue;
            const double nd = d + ((o[0] != 0 && o[1] != 0) ? diag : ortho);
            if (nd < f.dist[j]) {
                f.dist[j] = nd;
                heap.push({nd, j});
            }
        }
    }

    // Steepest-descent direction: lowest-dist 8-neighbor. Ties prefer
    // orthogonal over diagonal (a straight corridor points straight at the
    // exit, not at a diagonal), then first in row-major order.
    for (int iy = 0; iy < f.ny; ++iy) {
        for (int ix = 0; ix < f.nx; ++ix) {
            const int c = f.index(ix, iy);
            if (!std::isfinite(f.dist[c]) || f.dist[c] <= 0.0) continue;
            double best = kInf;
            bool best_diag = true;
            int bx = 0, by = 0;
            for (const auto& o : kOff) {
                const int jx = ix + o[0], jy = iy + o[1];
                if (!f.in_grid(jx, jy)) continue;
                const double dj = f.dist[f.index(jx, jy)];
                const bool diag = o[0] != 0 && o[1] != 0;
                if (dj < best || (dj == best && best_diag && !diag)) {
                    best = dj;
                    best_diag = diag;
                    bx = o[0];
                    by = o[1];
                }
            }
            if (std::isfinite(best)) f.dir[c] = Vec2(bx, by).normalized();
        }
    }
    return f;
}

std::vector<int> unreachable_groups(const NavField& f, const ScenarioSpec& spec) {
    std::vector<int> out;
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const Rect& r = spec.groups[g].rect;
        const int x0 = f.clamp_cell_x(r.x);
        const int x1 = f.clamp_cell_x(r.x + r.w);
        const int y0 = f.clamp_cell_y(r.y);
        const int y1 = f.clamp_cell_y(r.y + r.h);
        bool reachable = false;
        for (int iy = y0; iy <= y1 && !reachable; ++iy)
            for (int ix = x0; ix <= x1 && !reachable; ++ix)
                reachable = std::isfinite(f.dist[f.index(ix, iy)]);
        if (!reachable) out.push_back(static_cast<int>(g));
    }
    return out;
}

NavField compute_nav_field(const ScenarioSpec& spec) {
    NavField f = build_nav_field(spec);
    std::vector<int> bad = unreachable_groups(f, spec);
    if (!bad.empty()) {
        std::string msg = "no exit reachable from spawn rectangle(s):";
        for (int g : bad) msg += " " + std::to_string(g);
        throw UnreachableError(std::move(bad), msg);
    }
    return f;
}

Vec2 goal_direction(const NavField& f, const Vec2& pos) {
    const int ix = f.clamp_cell_x(pos.x());
    const int iy = f.clamp_cell_y(pos.y());
    const int c = f.index(ix, iy);
    if (!std::isfinite(f.dist[c]))
        throw BlockedError("position (" + std::to_string(pos.x()) + ", " +
                           std::to_string(pos.y()) + ") is on a blocked or unreachable cell");
    if (f.dist[c] == 0.0) return Vec2::Zero();
    return f.dir[c];
}

std::string dump_dist_matrix(const NavField& f) {
    std::string out;
    char buf[64];
    for (int iy = 0; iy < f.ny; ++iy) {
        for (int ix = 0; ix < f.nx; ++ix) {
            if (ix) out += ' ';
            const double d = f.dist[f.index(ix, iy)];
            if (std::isfinite(d)) {
                const auto res = std::to_chars(buf, buf + sizeof buf, d);
                out.append(buf, res.ptr);
            } else {
                out += "inf";
            }
        }
        out += '\n';
    }
    return out;
}

} // namespace crowdsim

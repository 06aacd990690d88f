#include "crowdsim/dynamics.hpp"

#include "crowdsim/geometry.hpp"

#include <cmath>
#include <numbers>

namespace crowdsim {

namespace {

// Exit intervals lying on one boundary wall, as [lo, hi] along the wall axis.
std::vector<std::pair<double, double>> exit_spans_on_wall(const ScenarioSpec& spec,
                                                          bool vertical, double wall_coord,
                                                          double len) {
    constexpr double kOnWallTol = 1e-9;
    std::vector<std::pair<double, double>> spans;
    for (const ExitSegment& e : spec.exits) {
        const double ca = vertical ? e.a.x() : e.a.y();
        const double cb = vertical ? e.b.x() : e.b.y();
        if (std::abs(ca - wall_coord) > kOnWallTol || std::abs(cb - wall_coord) > kOnWallTol)
            continue;
        const double sa = vertical ? e.a.y() : e.a.x();
        const double sb = vertical ? e.b.y() : e.b.x();
        const double lo = std::clamp(std::min(sa, sb), 0.0, len);
        const double hi = std::clamp(std::max(sa, sb), 0.0, len);
        if (hi > lo) spans.emplace_back(lo, hi);
    }
    std::sort(spans.begin(), spans.end());
    return spans;
}

// One boundary wall minus its exit spans, emitted as sub-segments.
void append_wall(std::vector<WallSet::Segment>& out, const ScenarioSpec& spec, bool vertical,
                 double wall_coord, double len) {
    auto spans = exit_spans_on_wall(spec, vertical, wall_coord, len);
    auto emit = [&](double lo, double hi) {
        if (hi - lo <= 1e-12) return;
        if (vertical)
            out.push_back({Vec2(wall_coord, lo), Vec2(wall_coord, hi)});
        else
            out.push_back({Vec2(lo, wall_coord), Vec2(hi, wall_coord)});
    };
    double cursor = 0.0;
    for (const auto& [lo, hi] : spans) {
        emit(cursor, lo);
        cursor = std::max(cursor, hi);
    }
    emit(cursor, len);
}

} // namespace

WallSet build_wall_set(const ScenarioSpec& spec) {
    WallSet walls;
    walls.width = spec.width;
    walls.height = spec.height;
    append_wall(walls.boundary, spec, true, 0.0, spec.height);         // W
    append_wall(walls.boundary, spec, true, spec.width, spec.height);  // E
    append_wall(walls.boundary, spec, false, 0.0, spec.width);         // S
    append_wall(walls.boundary, spec, false, spec.height, spec.width); // N
    walls.obstacles = spec.obstacles;
    return walls;
}

Vec2 overlap_fallback_normal(int id) {
    const double angle = (id & 7) * std::numbers::pi / 4.0;
    return Vec2(std::cos(angle), std::sin(angle));
}

namespace {

// Shared repulsion/contact kernel. n points from the other body toward the
// agent; dv_t is the tangential relative velocity (other minus agent).
Vec2 repulsion_kernel(double sum_radii, double d, const Vec2& n, double dv_t,
                      const ModelParams& p) {
    const double overlap = contact_overlap(sum_radii - d);
    const Vec2 t = perpendicular(n);
    return (p.a_rep * std::exp((sum_radii - d) / p.b_rep) + p.k_body * overlap) * n +
           p.kappa_fric * overlap * dv_t * t;
}

} // namespace

Vec2 agent_repulsion(const AgentState& a, const AgentState& b, const ModelParams& p) {
    const double r = a.radius + b.radius;
    const Vec2 diff = a.pos - b.pos;
    double d = diff.norm();
    Vec2 n;
    if (d < 1e-9) {
        n = overlap_fallback_normal(a.id);
        d = 1e-9;
    } else {
        n = diff / d;
    }
    const double dv_t = (b.vel - a.vel).dot(perpendicular(n));
    return repulsion_kernel(r, d, n, dv_t, p);
}

Vec2 wall_repulsion(const AgentState& a, const WallSet& walls, const ModelParams& p) {
    Vec2 force = Vec2::Zero();
    auto add = [&](const Vec2& closest) {
        const Vec2 diff = a.pos - closest;
        double d = diff.norm();
        Vec2 n;
        if (d < 1e-9) {
            n = overlap_fallback_normal(a.id);
            d = 1e-9;
        } else {
            n = diff / d;
        }
        const double dv_t = (-a.vel).dot(perpendicular(n));
        force += repulsion_kernel(a.radius, d, n, dv_t, p);
    };
    for (const WallSet::Segment& s : walls.boundary)
        add(segment_closest_point(s.a, s.b, a.pos));
    for (const Rect& r : walls.obstacles) add(rect_closest_point(r, a.pos));
    return force;
}

namespace {

// Moves a center that ended up inside a rectangle onto the nearest edge
// (W, E, S, N on ties) and a disc-radius out along that edge's normal.
Vec2 push_out_of_rect(const Rect& r, const Vec2& pos, double radius) {
    const double d_w = pos.x() - r.x;
    const double d_e = r.x + r.w - pos.x();
    const double d_s = pos.y() - r.y;
    const double d_n = r.y + r.h - pos.y();
    const double m = std::min({d_w, d_e, d_s, d_n});
    if (m == d_w) return Vec2(r.x - radius, pos.y());
    if (m == d_e) return Vec2(r.x + r.w + radius, pos.y());
    if (m == d_s) return Vec2(pos.x(), r.y - radius);
    return Vec2(pos.x(), r.y + r.h + radius);
}

void clamp_into_domain(Vec2& pos, double radius, double width, double height) {
    pos.x() = std::clamp(pos.x(), radius, std::max(radius, width - radius));
    pos.y() = std::clamp(pos.y(), radius, std::max(radius, height - radius));
}

} // namespace

std::pair<Vec2, Vec2> integrate(const AgentState& a, const Vec2& total_force, double dt,
                                const WallSet& walls, const ModelParams& p) {
    if (!total_force.allFinite()) throw NonFiniteForce(-1, a.id);
    Vec2 vel = a.vel + (total_force / a.mass) * dt;
    const double speed = vel.norm();
    if (speed > p.v_hard) vel *= p.v_hard / speed;
    Vec2 pos = a.pos + vel * dt;

    clamp_into_domain(pos, a.radius, walls.width, walls.height);
    for (const Rect& r : walls.obstacles) {
        if (rect_contains(r, pos)) {
            pos = push_out_of_rect(r, pos, a.radius);
            continue;
        }
        const Vec2 cp = rect_closest_point(r, pos);
        const Vec2 diff = pos - cp;
        const double d = diff.norm();
        if (d < a.radius) {
            const Vec2 n = d < 1e-9 ? overlap_fallback_normal(a.id) : Vec2(diff / d);
            pos = cp + n * a.radius;
        }
    }
    clamp_into_domain(pos, a.radius, walls.width, walls.height);
    return {pos, vel};
}

} // namespace crowdsim

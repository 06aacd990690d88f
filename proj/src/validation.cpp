#include "crowdsim/validation.hpp"

#include "crowdsim/geometry.hpp"
#include "crowdsim/nav_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace crowdsim {

namespace {

std::string group_tag(std::size_t i) { return "group " + std::to_string(i); }

void check_params(const ModelParams& p, std::vector<std::string>& errors) {
    for (const ParamDesc& d : kParamTable) {
        const double v = p.*(d.member);
        const bool zero_ok =
            std::string_view(d.name) == "r_rec" || std::string_view(d.name) == "A_h" ||
            std::string_view(d.name) == "beta" || std::string_view(d.name) == "delta_decay" ||
            std::string_view(d.name) == "gamma_jl";
        if (!std::isfinite(v) || v < 0.0 || (v == 0.0 && !zero_ok))
            errors.push_back(std::string("param ") + d.name + " must be " +
                             (zero_ok ? "non-negative" : "positive"));
    }
    if (!(p.v_crawl < p.v_phys)) errors.push_back("v_crawl must be less than v_phys");
    if (!(p.v_phys <= p.v_hard)) errors.push_back("v_phys must not exceed v_hard");
}

void check_range(const Range& r, const std::string& what, bool positive, bool unit_interval,
                 std::vector<std::string>& errors) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        errors.push_back(what + " range invalid");
        return;
    }
    if (positive && r.lo <= 0.0) errors.push_back(what + " range must be positive");
    if (unit_interval && (r.lo < 0.0 || r.hi > 1.0))
        errors.push_back(what + " range must lie in [0, 1]");
}

// Estimated worst-case contagion weight sum for one agent. Centers are
// pairwise >= 2 r_min apart, so a hexagonal-packing density bound over the
// linear kernel integrates to density * pi R^2 / 3; small populations are
// capped by (N-1) times the largest single weight instead.
double max_neighbor_weight(const ScenarioSpec& spec) {
    long total = 0;
    double r_min = std::numeric_limits<double>::infinity();
    for (const SpawnGroup& g : spec.groups) {
        total += g.count;
        if (g.count > 0) r_min = std::min(r_min, g.radius.lo);
    }
    if (total < 2 || !std::isfinite(r_min) || r_min <= 0.0) return 0.0;
    const double R = spec.params.r_contagion;
    const double density = 1.0 / (2.0 * std::numbers::sqrt3 * r_min * r_min);
    const double integral = density * std::numbers::pi * R * R / 3.0;
    const double count_cap =
        static_cast<double>(total - 1) * std::max(0.0, 1.0 - 2.0 * r_min / R);
    return std::min(integral, count_cap);
}

} // namespace

ValidationReport validate_scenario(const ScenarioSpec& spec) {
    ValidationReport report;
    auto& errors = report.errors;

    if (!(spec.width > 0.0) || !std::isfinite(spec.width))
        errors.push_back("domain width must be positive");
    if (!(spec.height > 0.0) || !std::isfinite(spec.height))
        errors.push_back("domain height must be positive");
    if (!(spec.cell_size > 0.0) || !std::isfinite(spec.cell_size))
        errors.push_back("cell_size must be positive");

    if (!(spec.sim.dt > 0.0) || !std::isfinite(spec.sim.dt))
        errors.push_back("dt must be positive");
    if (!(spec.sim.max_time >= 0.0) || !std::isfinite(spec.sim.max_time))
        errors.push_back("max_time must be non-negative");
    if (spec.sim.output_every < 1) errors.push_back("output_every must be at least 1");

    check_params(spec.params, errors);

    const bool domain_ok = errors.empty();

    for (std::size_t i = 0; i < spec.obstacles.size(); ++i) {
        const Rect& r = spec.obstacles[i];
        if (!(r.w > 0.0) || !(r.h > 0.0))
            errors.push_back("obstacle " + std::to_string(i) + " must have positive extent");
        else if (domain_ok &&
                 (r.x < 0.0 || r.y < 0.0 || r.x + r.w > spec.width || r.y + r.h > spec.height))
            errors.push_back("obstacle " + std::to_string(i) + " extends outside domain");
    }

    if (spec.exits.empty()) errors.push_back("no exits");
    for (std::size_t i = 0; i < spec.exits.size(); ++i) {
        const ExitSegment& e = spec.exits[i];
        auto inside = [&](const Vec2& p) {
            return p.x() >= 0.0 && p.x() <= spec.width && p.y() >= 0.0 && p.y() <= spec.height;
        };
        if (domain_ok && (!inside(e.a) || !inside(e.b)))
            errors.push_back("exit " + std::to_string(i) + " endpoint outside domain");
        for (std::size_t j = 0; j < spec.obstacles.size(); ++j) {
            if (segment_intersects_rect_interior(e.a, e.b, spec.obstacles[j]))
                errors.push_back("exit " + std::to_string(i) + " crosses obstacle " +
                                 std::to_string(j) + " interior");
        }
    }

    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
        const SpawnGroup& g = spec.groups[i];
        if (g.count < 0) errors.push_back(group_tag(i) + " count must be non-negative");
        const Rect& r = g.rect;
        if (r.w < 0.0 || r.h < 0.0)
            errors.push_back(group_tag(i) + " rect must have non-negative extent");
        else if (domain_ok &&
                 (r.x < 0.0 || r.y < 0.0 || r.x + r.w > spec.width || r.y + r.h > spec.height))
            errors.push_back(group_tag(i) + " rect outside domain");
        for (std::size_t j = 0; j < spec.obstacles.size(); ++j) {
            if (rects_overlap_interior(r, spec.obstacles[j]))
                errors.push_back(group_tag(i) + " rect overlaps obstacle " + std::to_string(j));
        }
        check_range(g.v_pref, group_tag(i) + " v_pref", true, false, errors);
        check_range(g.mass, group_tag(i) + " mass", true, false, errors);
        check_range(g.radius, group_tag(i) + " radius", true, false, errors);
        check_range(g.strength_frac, group_tag(i) + " strength_frac", false, true, errors);
        check_range(g.panic, group_tag(i) + " panic", false, true, errors);
    }

    if (errors.empty()) {
        const NavField field = build_nav_field(spec);
        for (std::size_t i = 0; i < spec.groups.size(); ++i) {
            const Rect& r = spec.groups[i].rect;
            const int x0 = field.clamp_cell_x(r.x), x1 = field.clamp_cell_x(r.x + r.w);
            const int y0 = field.clamp_cell_y(r.y), y1 = field.clamp_cell_y(r.y + r.h);
            bool any_finite = false;
            int bad_x = -1, bad_y = -1;
            for (int iy = y0; iy <= y1; ++iy) {
                for (int ix = x0; ix <= x1; ++ix) {
                    if (std::isfinite(field.dist[field.index(ix, iy)]))
                        any_finite = true;
                    else if (bad_x < 0) {
                        bad_x = ix;
                        bad_y = iy;
                    }
                }
            }
            if (!any_finite)
                errors.push_back(group_tag(i) + " spawn area unreachable from any exit");
            else if (bad_x >= 0)
                errors.push_back(group_tag(i) + " spawn cell (" + std::to_string(bad_x) + ", " +
                                 std::to_string(bad_y) + ") unreachable");
        }
    }

    if (spec.sim.dt > 0.0 && spec.sim.dt > spec.params.tau / 2.0)
        report.warnings.push_back("dt exceeds tau/2; the drive relaxation may oscillate");
    const double weight = max_neighbor_weight(spec);
    if (spec.sim.dt > 0.0 && spec.sim.dt * spec.params.beta * weight > 1.0)
        report.warnings.push_back(
            "contagion may overshoot: dt*beta*max_neighbor_weight = " +
            std::to_string(spec.sim.dt * spec.params.beta * weight) + " exceeds 1");

    return report;
}

} // namespace crowdsim

#include "crowdsim/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace crowdsim {

namespace {

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << body;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

void write_trajectory(const SimRun& run, const std::string& path) {
    const double s_max = run.scenario.params.s_max;
    std::string body = "t,id,x,y,vx,vy,speed,panic,strength,exited\n";
    std::size_t rows = 0;
    for (const SimFrame& f : run.frames) rows += f.agents.size();
    body.reserve(body.size() + rows * 96);

    char line[256];
    for (const SimFrame& f : run.frames) {
        for (const AgentState& a : f.agents) {
            if (a.panic < 0.0 || a.panic > 1.0 || a.strength < 0.0 || a.strength > s_max)
                throw std::runtime_error("out-of-range agent state while writing " + path);
            const int len = std::snprintf(
                line, sizeof(line), "%.6f,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n",
                f.time, a.id, a.pos.x(), a.pos.y(), a.vel.x(), a.vel.y(), a.vel.norm(),
                a.panic, a.strength, a.exited ? 1 : 0);
            body.append(line, static_cast<std::size_t>(len));
        }
    }
    write_file(path, body);
}

void write_metrics(const SimRun& run, const std::string& path) {
    std::string body = "t,exited,mean_panic,max_panic,mean_strength_frac,mean_speed\n";
    body.reserve(body.size() + run.metrics.rows.size() * 64);
    char line[192];
    for (const MetricsRow& r : run.metrics.rows) {
        const int len =
            std::snprintf(line, sizeof(line), "%.6f,%d,%.6f,%.6f,%.6f,%.6f\n", r.time,
                          r.exited, r.mean_panic, r.max_panic, r.mean_strength_frac,
                          r.mean_speed);
        body.append(line, static_cast<std::size_t>(len));
    }
    if (std::isfinite(run.metrics.evacuation_time)) {
        const int len = std::snprintf(line, sizeof(line), "evacuation_time,%.6f\n",
                                      run.metrics.evacuation_time);
        body.append(line, static_cast<std::size_t>(len));
    } else {
        body += "evacuation_time,inf\n";
    }
    write_file(path, body);
}

void write_resolved_params(const ScenarioSpec& spec, const std::string& path) {
    std::string body;
    body += "width = " + shortest(spec.width) + "\n";
    body += "height = " + shortest(spec.height) + "\n";
    body += "cell_size = " + shortest(spec.cell_size) + "\n";
    body += "dt = " + shortest(spec.sim.dt) + "\n";
    body += "max_time = " + shortest(spec.sim.max_time) + "\n";
    body += "seed = " + std::to_string(spec.sim.seed) + "\n";
    body += "output_every = " + std::to_string(spec.sim.output_every) + "\n";
    for (const ParamDesc& d : kParamTable)
        body += std::string(d.name) + " = " + shortest(spec.params.*(d.member)) + "\n";
    write_file(path, body);
}

} // namespace crowdsim

#include "crowdsim/scenario_io.hpp"

#include "crowdsim/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace crowdsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double_token(std::string_view tok, int line) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "invalid number '" + std::string(tok) + "'");
    return v;
}

std::vector<double> parse_doubles(std::string_view value, std::size_t n, int line) {
    const auto toks = split_ws(value);
    if (toks.size() != n)
        throw ParseError(line, "expected " + std::to_string(n) + " number" +
                                   (n == 1 ? "" : "s") + ", got " +
                                   std::to_string(toks.size()));
    std::vector<double> out;
    out.reserve(n);
    for (const auto& t : toks) out.push_back(parse_double_token(t, line));
    return out;
}

template <typename Int>
Int parse_integer(std::string_view value, int line) {
    const auto toks = split_ws(value);
    Int v{};
    if (toks.size() == 1) {
        const auto tok = toks[0];
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec == std::errc{} && ptr == tok.data() + tok.size()) return v;
    }
    throw ParseError(line, "invalid integer '" + std::string(value) + "'");
}

Rect parse_rect(std::string_view value, int line) {
    const auto v = parse_doubles(value, 4, line);
    return Rect{v[0], v[1], v[2], v[3]};
}

Range parse_range(std::string_view value, int line) {
    const auto v = parse_doubles(value, 2, line);
    return Range{v[0], v[1]};
}

struct Parser {
    enum class Section { none, domain, sim, params, obstacle, exit, hazard, group };

    ScenarioSpec spec;
    Section section = Section::none;
    std::vector<std::string> seen; // keys already set in the open section/block
    bool domain_open = false, sim_open = false, params_open = false;
    // Per hazard: whether amplitude / decay_length were given explicitly.
    std::vector<std::pair<bool, bool>> hazard_has;

    void open_section(std::string_view name, int line) {
        seen.clear();
        if (name == "domain") {
            if (domain_open) throw ParseError(line, "duplicate section '[domain]'");
            domain_open = true;
            section = Section::domain;
        } else if (name == "sim") {
            if (sim_open) throw ParseError(line, "duplicate section '[sim]'");
            sim_open = true;
            section = Section::sim;
        } else if (name == "params") {
            if (params_open) throw ParseError(line, "duplicate section '[params]'");
            params_open = true;
            section = Section::params;
        } else {
            throw ParseError(line, "unknown section '[" + std::string(name) + "]'");
        }
    }

    void open_block(std::string_view name, int line) {
        seen.clear();
        if (name == "obstacle") {
            spec.obstacles.emplace_back();
            section = Section::obstacle;
        } else if (name == "exit") {
            spec.exits.emplace_back();
            section = Section::exit;
        } else if (name == "hazard") {
            spec.hazards.emplace_back();
            hazard_has.emplace_back(false, false);
            section = Section::hazard;
        } else if (name == "group") {
            spec.groups.emplace_back();
            section = Section::group;
        } else {
            throw ParseError(line, "unknown block '[[" + std::string(name) + "]]'");
        }
    }

    void mark_seen(std::string_view key, int line) {
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ParseError(line, "duplicate key '" + std::string(key) + "'");
        seen.emplace_back(key);
    }

    void key_value(std::string_view key, std::string_view value, int line) {
        mark_seen(key, line);
        switch (section) {
        case Section::none:
            throw ParseError(line, "key outside any section");
        case Section::domain:
            if (key == "width") spec.width = parse_doubles(value, 1, line)[0];
            else if (key == "height") spec.height = parse_doubles(value, 1, line)[0];
            else if (key == "cell_size") spec.cell_size = parse_doubles(value, 1, line)[0];
            else throw ParseError(line, "unknown key '" + std::string(key) + "' in [domain]");
            return;
        case Section::sim:
            if (key == "dt") spec.sim.dt = parse_doubles(value, 1, line)[0];
            else if (key == "max_time") spec.sim.max_time = parse_doubles(value, 1, line)[0];
            else if (key == "seed") spec.sim.seed = parse_integer<std::uint64_t>(value, line);
            else if (key == "output_every") spec.sim.output_every = parse_integer<int>(value, line);
            else throw ParseError(line, "unknown key '" + std::string(key) + "' in [sim]");
            return;
        case Section::params:
            for (const ParamDesc& d : kParamTable) {
                if (key == d.name) {
                    spec.params.*(d.member) = parse_doubles(value, 1, line)[0];
                    return;
                }
            }
            throw ParseError(line, "unknown key '" + std::string(key) + "' in [params]");
        case Section::obstacle:
            if (key == "rect") spec.obstacles.back() = parse_rect(value, line);
            else throw ParseError(line, "unknown key '" + std::string(key) + "' in [[obstacle]]");
            return;
        case Section::exit:
            if (key == "segment") {
                const auto v = parse_doubles(value, 4, line);
                spec.exits.back() = ExitSegment{Vec2(v[0], v[1]), Vec2(v[2], v[3])};
            } else {
                throw ParseError(line, "unknown key '" + std::string(key) + "' in [[exit]]");
            }
            return;
        case Section::hazard:
            if (key == "point") {
                const auto v = parse_doubles(value, 2, line);
                spec.hazards.back().pos = Vec2(v[0], v[1]);
            } else if (key == "amplitude") {
                spec.hazards.back().amplitude = parse_doubles(value, 1, line)[0];
                hazard_has.back().first = true;
            } else if (key == "decay_length") {
                spec.hazards.back().decay_length = parse_doubles(value, 1, line)[0];
                hazard_has.back().second = true;
            } else {
                throw ParseError(line, "unknown key '" + std::string(key) + "' in [[hazard]]");
            }
            return;
        case Section::group: {
            SpawnGroup& g = spec.groups.back();
            if (key == "count") g.count = parse_integer<int>(value, line);
            else if (key == "rect") g.rect = parse_rect(value, line);
            else if (key == "v_pref") g.v_pref = parse_range(value, line);
            else if (key == "mass") g.mass = parse_range(value, line);
            else if (key == "radius") g.radius = parse_range(value, line);
            else if (key == "strength_frac") g.strength_frac = parse_range(value, line);
            else if (key == "panic") g.panic = parse_range(value, line);
            else throw ParseError(line, "unknown key '" + std::string(key) + "' in [[group]]");
            return;
        }
        }
    }
};

} // namespace

ScenarioSpec parse_scenario(const std::string& text) {
    Parser parser;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s{raw};
        if (const auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.size() >= 4 && s[1] == '[') {
                if (s.back() != ']' || s[s.size() - 2] != ']')
                    throw ParseError(line, "malformed block header");
                parser.open_block(trim(s.substr(2, s.size() - 4)), line);
            } else {
                if (s.back() != ']')
                    throw ParseError(line, "malformed section header");
                parser.open_section(trim(s.substr(1, s.size() - 2)), line);
            }
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line, "expected 'key = value'");
        const auto key = trim(s.substr(0, eq));
        const auto value = trim(s.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "expected 'key = value'");
        parser.key_value(key, value, line);
    }

    for (std::size_t i = 0; i < parser.spec.hazards.size(); ++i) {
        if (!parser.hazard_has[i].first)
            parser.spec.hazards[i].amplitude = parser.spec.params.a_hazard;
        if (!parser.hazard_has[i].second)
            parser.spec.hazards[i].decay_length = parser.spec.params.lambda_hazard;
    }
    return parser.spec;
}

ScenarioSpec parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

std::string serialize_scenario(const ScenarioSpec& spec) {
    std::string out;
    out += "[domain]\n";
    out += "width = " + fmt(spec.width) + "\n";
    out += "height = " + fmt(spec.height) + "\n";
    out += "cell_size = " + fmt(spec.cell_size) + "\n";
    out += "\n[sim]\n";
    out += "dt = " + fmt(spec.sim.dt) + "\n";
    out += "max_time = " + fmt(spec.sim.max_time) + "\n";
    out += "seed = " + std::to_string(spec.sim.seed) + "\n";
    out += "output_every = " + std::to_string(spec.sim.output_every) + "\n";
    out += "\n[params]\n";
    for (const ParamDesc& d : kParamTable)
        out += std::string(d.name) + " = " + fmt(spec.params.*(d.member)) + "\n";
    for (const Rect& r : spec.obstacles) {
        out += "\n[[obstacle]]\n";
        out += "rect = " + fmt(r.x) + " " + fmt(r.y) + " " + fmt(r.w) + " " + fmt(r.h) + "\n";
    }
    for (const ExitSegment& e : spec.exits) {
        out += "\n[[exit]]\n";
        out += "segment = " + fmt(e.a.x()) + " " + fmt(e.a.y()) + " " + fmt(e.b.x()) + " " +
               fmt(e.b.y()) + "\n";
    }
    for (const Hazard& h : spec.hazards) {
        out += "\n[[hazard]]\n";
        out += "point = " + fmt(h.pos.x()) + " " + fmt(h.pos.y()) + "\n";
        out += "amplitude = " + fmt(h.amplitude) + "\n";
        out += "decay_length = " + fmt(h.decay_length) + "\n";
    }
    for (const SpawnGroup& g : spec.groups) {
        out += "\n[[group]]\n";
        out += "count = " + std::to_string(g.count) + "\n";
        out += "rect = " + fmt(g.rect.x) + " " + fmt(g.rect.y) + " " + fmt(g.rect.w) + " " +
               fmt(g.rect.h) + "\n";
        out += "v_pref = " + fmt(g.v_pref.lo) + " " + fmt(g.v_pref.hi) + "\n";
        out += "mass = " + fmt(g.mass.lo) + " " + fmt(g.mass.hi) + "\n";
        out += "radius = " + fmt(g.radius.lo) + " " + fmt(g.radius.hi) + "\n";
        out += "strength_frac = " + fmt(g.strength_frac.lo) + " " + fmt(g.strength_frac.hi) + "\n";
        out += "panic = " + fmt(g.panic.lo) + " " + fmt(g.panic.hi) + "\n";
    }
    return out;
}

} // namespace crowdsim

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ccfinder/configuration.hpp"
#include "ccfinder/continuation.hpp"
#include "ccfinder/errors.hpp"

namespace ccfinder {

/// 17 significant digits: enough to round-trip any 64-bit float exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// JSON number token; non-finite values become null.
inline std::string json_number(double v) {
    return std::isfinite(v) ? format_g17(v) : std::string("null");
}

inline void write_trace_csv(std::ostream& os, const CurveTrace& trace) {
    os << "y,x,m,lambda,dFdx,residual\n";
    for (const SolutionPoint& p : trace.points) {
        os << format_g17(p.y) << ',' << format_g17(p.x) << ',' << format_g17(p.m)
           << ',' << format_g17(p.lambda) << ',' << format_g17(p.dFdx) << ','
           << format_g17(p.residual_norm) << '\n';
    }
}

inline void write_trace_json(std::ostream& os, const CurveTrace& trace) {
    os << "{\n  \"points\": [\n";
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        const SolutionPoint& p = trace.points[i];
        os << "    {\"y\": " << json_number(p.y) << ", \"x\": " << json_number(p.x)
           << ", \"m\": " << json_number(p.m) << ", \"lambda\": " << json_number(p.lambda)
           << ", \"dFdx\": " << json_number(p.dFdx)
           << ", \"residual\": " << json_number(p.residual_norm) << "}"
           << (i + 1 < trace.points.size() ? "," : "") << "\n";
    }
    os << "  ],\n  \"termination\": {\"lower\": \"" << to_string(trace.lower_end)
       << "\", \"upper\": \"" << to_string(trace.upper_end) << "\"}\n}\n";
}

/// Parse {"positions": [[x, y], ...], "masses": [m, ...]}. Shape errors are
/// DomainError so the CLI maps them to the input-error exit code.
inline PlanarConfiguration read_configuration_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed configuration JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("positions") || !j.contains("masses") ||
        !j["positions"].is_array() || !j["masses"].is_array()) {
        throw DomainError("configuration JSON needs \"positions\" and \"masses\" arrays");
    }
    PlanarConfiguration c;
    for (const auto& p : j["positions"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw DomainError("each position must be a [x, y] number pair");
        }
        c.positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    for (const auto& m : j["masses"]) {
        if (!m.is_number()) throw DomainError("each mass must be a number");
        c.masses.push_back(m.get<double>());
    }
    validate(c);
    return c;
}

inline void write_configuration_json(std::ostream& os, const PlanarConfiguration& c) {
    os << "{\n  \"positions\": [";
    for (std::size_t i = 0; i < c.positions.size(); ++i) {
        os << (i ? ", " : "") << '[' << format_g17(c.positions[i].x) << ", "
           << format_g17(c.positions[i].y) << ']';
    }
    os << "],\n  \"masses\": [";
    for (std::size_t i = 0; i < c.masses.size(); ++i) {
        os << (i ? ", " : "") << format_g17(c.masses[i]);
    }
    os << "]\n}\n";
}

} // namespace ccfinder

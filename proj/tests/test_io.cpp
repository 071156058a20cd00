#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ccfinder/continuation.hpp"
#include "ccfinder/io.hpp"
#include "ccfinder/potential.hpp"

using namespace ccfinder;

TEST_CASE("format_g17 round-trips doubles exactly") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::ldexp(mant(rng), expo(rng));
        const std::string s = format_g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(std::strtod(format_g17(std::numbers::sqrt3).c_str(), nullptr) ==
          std::numbers::sqrt3);
}

TEST_CASE("trace serialization") {
    const CurveTrace trace = trace_curve(1.6, 1.9, 0.05);

    SECTION("CSV header, row count and determinism") {
        std::ostringstream a, b;
        write_trace_csv(a, trace);
        write_trace_csv(b, trace);
        CHECK(a.str() == b.str());
        std::istringstream is(a.str());
        std::string header;
        std::getline(is, header);
        CHECK(header == "y,x,m,lambda,dFdx,residual");
        std::size_t rows = 0;
        for (std::string line; std::getline(is, line);) ++rows;
        CHECK(rows == trace.points.size());
    }

    SECTION("JSON parses and carries the same values") {
        std::ostringstream os;
        write_trace_json(os, trace);
        const nlohmann::json j = nlohmann::json::parse(os.str());
        REQUIRE(j["points"].size() == trace.points.size());
        for (std::size_t i = 0; i < trace.points.size(); ++i) {
            CHECK(j["points"][i]["y"].get<double>() == trace.points[i].y);
            CHECK(j["points"][i]["x"].get<double>() == trace.points[i].x);
        }
        CHECK(j["termination"]["lower"] == "range-exhausted");
        CHECK(j["termination"]["upper"] == "range-exhausted");
    }
}

TEST_CASE("configuration JSON round trip") {
    const auto cfg = build_configuration({1.3, 2.1, 0.7});
    std::ostringstream os;
    write_configuration_json(os, cfg);
    std::istringstream is(os.str());
    const PlanarConfiguration back = read_configuration_json(is);
    REQUIRE(back.size() == cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        CHECK(back.positions[i].x == cfg.positions[i].x);
        CHECK(back.positions[i].y == cfg.positions[i].y);
        CHECK(back.masses[i] == cfg.masses[i]);
    }
}

TEST_CASE("malformed configuration JSON is an input error") {
    const auto reject = [](const std::string& text) {
        std::istringstream is(text);
        CHECK_THROWS_AS(read_configuration_json(is), DomainError);
    };
    reject("not json at all");
    reject("{\"positions\": [[0,0],[1,0]]}");
    reject("{\"positions\": [[0,0],[1]], \"masses\": [1,1]}");
    reject("{\"positions\": [[0,0],[1,0]], \"masses\": [1]}");
    reject("{\"positions\": [[0,0],[1,0]], \"masses\": [1,\"x\"]}");
    reject("{\"positions\": [[0,0],[1,0]], \"masses\": [1,-1]}");
}

TEST_CASE("a traced configuration round-trips through verify") {
    // Serialize a point of the curve as a configuration file, read it back,
    // and confirm the verify path passes it at the tracer's own tolerance.
    const SolutionPoint p = solve_phi(1.9, 0.6, 1e-12);
    const auto cfg = build_configuration({p.x, p.y, p.m});
    std::ostringstream os;
    write_configuration_json(os, cfg);
    std::istringstream is(os.str());
    const PlanarConfiguration back = read_configuration_json(is);
    const VerifyResult v = verify_central_configuration(back, 1e-10);
    CHECK(v.pass);
    CHECK(v.weighted.max_norm < 1e-10);
}

#include "trunclap/domain.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace trunclap;

TEST_SUITE("domain") {
    TEST_CASE("json round trip for every variant") {
        const char* inputs[] = {
            R"({"type":"ball","r":1.5,"dim":3})",
            R"({"type":"hyperrect","alphas":[1,0.5]})",
            R"({"type":"polygon","vertices":[[0,0],[2,0],[1,1]]})",
            R"({"type":"reuleaux","n":5,"width":2,"arc_samples":16})",
        };
        for (const char* in : inputs) {
            const DomainSpec d = load_domain(in);
            const DomainSpec again = domain_from_json(domain_to_json(d));
            CHECK(describe(again) == describe(d));
            CHECK(domain_to_json(again) == domain_to_json(d));
        }
        CHECK(dimension(load_domain(inputs[0])) == 3);
        CHECK(dimension(load_domain(inputs[1])) == 2);
    }

    TEST_CASE("ball dimension defaults to 2") {
        CHECK(dimension(load_domain(R"({"type":"ball","r":1})")) == 2);
    }

    TEST_CASE("malformed input is rejected with distinct messages") {
        CHECK_THROWS_AS(load_domain("{not json"), DomainParseError);
        CHECK_THROWS_AS(load_domain(R"({"type":"blob"})"), DomainParseError);
        CHECK_THROWS_AS(load_domain(R"({"type":"ball"})"), DomainParseError);
        CHECK_THROWS_AS(load_domain(R"({"type":"polygon","vertices":[[0,0],[1]]})"), DomainParseError);
        CHECK_THROWS_AS(load_domain(R"({"type":"ball","r":-1})"), GeometryError);
        CHECK_THROWS_AS(load_domain(R"({"type":"reuleaux","n":4,"width":1})"), GeometryError);
        CHECK_THROWS_AS(load_domain(R"({"type":"hyperrect","alphas":[]})"), GeometryError);
        CHECK_THROWS_AS(load_domain(R"({"type":"polygon","vertices":[[0,0],[0,1],[1,0]]})"), GeometryError);
    }

    TEST_CASE("missing file names the path") {
        try {
            load_domain("/nonexistent/dir/shape.json");
            FAIL("expected an exception");
        } catch (const DomainParseError& e) {
            CHECK(std::string(e.what()).find("/nonexistent/dir/shape.json") != std::string::npos);
        }
    }

    TEST_CASE("domain from file") {
        const std::string path = "test_domain_hexagon.json";
        {
            std::ofstream f(path);
            f << R"({"type":"polygon","vertices":[[1,0],[0.5,0.8660254037844386],[-0.5,0.8660254037844386],
                  [-1,0],[-0.5,-0.8660254037844386],[0.5,-0.8660254037844386]]})";
        }
        const DomainSpec d = load_domain(path);
        CHECK(std::get<PolygonSpec>(d).polygon.size() == 6);
        std::remove(path.c_str());
    }

    TEST_CASE("scaled multiplies the defining lengths") {
        CHECK(std::get<BallSpec>(scaled(BallSpec{1.0, 2}, 3.0)).radius == 3.0);
        CHECK(std::get<HyperRectSpec>(scaled(HyperRectSpec{{1.0, 0.5}}, 2.0)).halfsides[1] == 1.0);
        CHECK(std::get<ReuleauxSpec>(scaled(ReuleauxSpec{3, 1.0, 8}, 0.5)).width == 0.5);
        CHECK_THROWS_AS(scaled(BallSpec{1.0, 2}, -1.0), GeometryError);
    }

    TEST_CASE("planar forms") {
        CHECK(std::holds_alternative<Disk>(planar_region(BallSpec{1.0, 2})));
        CHECK(as_polygon(HyperRectSpec{{1.0, 0.5}}).size() == 4);
        CHECK(as_polygon(ReuleauxSpec{3, 1.0, 8}).size() == 21);
        CHECK_THROWS_AS(planar_region(BallSpec{1.0, 3}), GeometryError);
        CHECK_THROWS_AS(as_polygon(BallSpec{1.0, 2}), GeometryError);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmh/surface.hpp"

#include <random>

using namespace tmh;

static std::vector<Vec2q> Q(std::initializer_list<std::pair<long, long>> pts)
{
    std::vector<Vec2q> out;
    for (auto [x, y] : pts)
        out.push_back({Rat(x), Rat(y)});
    return out;
}

TEST_CASE("preset polygons")
{
    auto bl2 = preset_surface("bl2");
    CHECK(bl2.display_vertices() == Q({{0, 0}, {4, 0}, {4, 2}, {2, 4}, {0, 4}}));
    REQUIRE(bl2.edges().size() == 5);
    CHECK(bl2.edges()[0].outer == Vec2i{-1, 0});
    CHECK(bl2.edges()[2].outer == Vec2i{1, 0});

    auto bl3 = preset_surface("bl3");
    CHECK(bl3.display_vertices() == Q({{0, 2}, {2, 0}, {6, 0}, {6, 2}, {2, 6}, {0, 6}}));
    CHECK(bl3.vertices() == Q({{0, 0}, {2, 0}, {6, 4}, {6, 6}, {2, 6}, {0, 4}}));

    auto cp2 = preset_surface("cp2");
    CHECK(cp2.display_vertices() == Q({{0, 0}, {2, 0}, {0, 2}}));
    CHECK(preset_surface("p1p1").edges().size() == 4);
    CHECK(preset_surface("f1").edges().size() == 4);
}

TEST_CASE("surface errors")
{
    CHECK_THROWS_WITH(build_surface({}), "empty factor list");
    CHECK_THROWS_WITH(build_surface({{Rat(1), {{0, 0}, {1, 0}}}, {Rat(2), {{0, 0}, {2, 0}}}}), "degenerate surface");
    CHECK_THROWS(preset_surface("nope"));
}

TEST_CASE("json config")
{
    auto s = surface_from_json_text(R"({"factors":[{"coeff":"1/2","polygon":[[0,0],[1,0],[0,1]]}]})");
    CHECK(s.display_vertices() == Q({{0, 0}, {1, 0}, {0, 1}}));
    auto t = surface_from_json_text(R"({"preset":"bl2"})");
    CHECK(t.preset() == "bl2");
    auto u = surface_from_json_text(
        R"({"preset":"bl2","factors":[{"coeff":"2","polygon":[[0,0],[1,0]]},{"coeff":"1","polygon":[[0,0],[0,1]]},{"coeff":"1","polygon":[[0,0],[1,0],[0,1]]}]})");
    CHECK(u.vertices().size() == 5);
}

TEST_CASE("section polytopes")
{
    auto bl2 = preset_surface("bl2");
    CHECK(section_polytope(bl2, BundleClass{{0, 0, 1}}).lattice_points.size() == 3);
    CHECK(section_polytope(bl2, BundleClass{{0, 1, 1}}).lattice_points.size() == 5);
    CHECK(section_polytope(bl2, BundleClass{{0, 0, 0}}).lattice_points == std::vector<Vec2i>{{0, 0}});
    auto bl3 = preset_surface("bl3");
    auto sp = section_polytope(bl3, BundleClass{{0, 0, 0, 2}});
    std::vector<Vec2i> expect;
    for (long i = 0; i <= 2; ++i)
        for (long j = i; j <= 2; ++j)
            expect.push_back({i, j});
    std::sort(expect.begin(), expect.end());
    auto got = sp.lattice_points;
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
}

TEST_CASE("section polytope matches the displayed inequalities")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(0, 3);
    auto bl2 = preset_surface("bl2");
    auto bl3 = preset_surface("bl3");
    for (int k = 0; k < 20; ++k) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        auto p2 = section_polytope(bl2, BundleClass{{a, b, c}});
        auto p3 = section_polytope(bl3, BundleClass{{a, b, c, e}});
        for (long x = -6; x <= 12; ++x)
            for (long y = -6; y <= 12; ++y) {
                bool in2 = 0 <= x && x <= a + c && 0 <= y && y <= b + c && x + y <= a + b + c;
                CHECK(p2.contains({x, y}) == in2);
                bool in3 = 0 <= x && x <= a + c + e && 0 <= y && y <= b + c + e && -a <= y - x && y - x <= b + e;
                CHECK(p3.contains({x, y}) == in3);
            }
    }
}

TEST_CASE("section polytope vs Minkowski membership and additivity")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> d(0, 3);
    for (const char* name : {"bl2", "bl3", "f1", "p1p1"}) {
        auto s = preset_surface(name);
        for (int k = 0; k < 10; ++k) {
            BundleClass c, c2;
            for (std::size_t i = 0; i < s.rank(); ++i) {
                c.coeffs.push_back(d(rng));
                c2.coeffs.push_back(d(rng));
            }
            auto sp = section_polytope(s, c);
            auto mink = signed_minkowski_points(s, c);
            std::sort(mink.begin(), mink.end());
            auto pts = sp.lattice_points;
            std::sort(pts.begin(), pts.end());
            CHECK(pts == mink);
            auto a = section_polytope(s, c2), b = section_polytope(s, c + c2);
            for (std::size_t r = 0; r < b.offsets.size(); ++r)
                CHECK(b.offsets[r] == sp.offsets[r] + a.offsets[r]);
        }
    }
}

TEST_CASE("H/V round trip")
{
    for (const char* name : {"bl2", "bl3", "cp2", "p1p1", "f1"}) {
        auto s = preset_surface(name);
        const auto& v = s.vertices();
        for (const auto& e : s.edges()) {
            CHECK(dot(v[e.from], e.outer) == e.offset);
            CHECK(dot(v[e.to], e.outer) == e.offset);
        }
        for (const auto& p : v)
            CHECK(s.contains(p));
    }
}

TEST_CASE("divisor table")
{
    auto bl2 = preset_surface("bl2");
    CHECK(divisor_to_pic(bl2, {0, 0, 1, 0, 0}) == BundleClass{{0, -1, 1}});
    CHECK(divisor_to_pic(bl2, {1, 0, 0, 0, 0}) == BundleClass{{1, 0, 0}});
    auto bl3 = preset_surface("bl3");
    CHECK(divisor_to_pic(bl3, {0, 0, 0, 0, 0, 1}) == BundleClass{{0, 0, -1, 1}});
    CHECK(divisor_to_pic(bl3, {0, 0, 0, 1, 0, 0}) == BundleClass{{0, -1, 0, 1}});
    CHECK(divisor_to_pic(bl3, {0, 1, 0, 0, 0, 0}) == BundleClass{{-1, 0, 0, 1}});
    auto custom = build_surface({{Rat(1), {{0, 0}, {1, 0}, {0, 1}}}});
    CHECK_THROWS_WITH(divisor_to_pic(custom, {1, 0, 0}), "no divisor table");
    CHECK_THROWS_WITH(preset_exceptional_collection(custom), "no preset collection");
    CHECK(preset_exceptional_collection(bl2).size() == 5);
    CHECK(preset_exceptional_collection(bl3).size() == 6);
}

TEST_CASE("bundle parsing")
{
    CHECK(parse_bundle("0,-1,1") == BundleClass{{0, -1, 1}});
    CHECK(parse_bundle("(1,2)") == BundleClass{{1, 2}});
    CHECK(parse_bundle("0,-1,1").str() == "(0,-1,1)");
    CHECK_THROWS(parse_bundle("1,,2"));
    CHECK_THROWS(parse_bundle("a"));
}

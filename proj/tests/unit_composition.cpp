#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmh/mirror.hpp"

#include <cmath>
#include <random>

using namespace tmh;

static BundleClass B(std::initializer_list<long> c) { return BundleClass{std::vector<long>(c)}; }

static const CompositionEntry* find(const std::vector<TripleTable>& tables, int i, int j, int k, Vec2i I, Vec2i J)
{
    for (const auto& tt : tables)
        if (tt.i == i && tt.j == j && tt.k == k)
            for (const auto& e : tt.entries)
                if (e.I == I && e.J == J)
                    return &e;
    return nullptr;
}

struct Fixture {
    PolySurface s;
    ToricGeometry g;
    HomTable t;
    CompositionEngine eng;
    std::vector<TripleTable> tables;
    explicit Fixture(const char* name)
        : s(preset_surface(name)), g(s), t(hom_table(g, preset_exceptional_collection(s))), eng(g),
          tables(eng.compose_table(t))
    {
    }
};

TEST_CASE("Bl2 Z(1,0) x W(0,1) has weight 1/2")
{
    Fixture f("bl2");
    // collection order (0,0,0), (0,-1,1), (-1,0,1), (0,0,1), (0,0,2)
    auto* e = find(f.tables, 0, 3, 4, {1, 0}, {0, 1});
    REQUIRE(e);
    REQUIRE(e->kappa);
    CHECK(*e->kappa == LogValue::log_of(Rat(2)));
    CHECK(e->weight_exact == "1/2");
    CHECK(e->weight == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e->target == Vec2i{1, 1});
    CHECK(e->grid_min > -1e-9);
    REQUIRE(e->tree.found);
    CHECK_FALSE(e->tree.trivial);
    REQUIRE(e->tree.edges.size() == 2);
    for (const auto& edge : e->tree.edges)
        CHECK(f.s.edges()[edge.face].name == 4);
    CHECK((f.s.display(e->tree.meeting) - Vec2d{3, 3}).norm() < 1e-4);
    CHECK(tree_str(e->tree, f.s) == "Z on E4 (4,2)->(3,3), W on E4 (2,4)->(3,3)");
}

TEST_CASE("kappa is zero exactly for trivial trees")
{
    for (const char* name : {"bl2", "bl3"}) {
        Fixture f(name);
        int trivial = 0, other = 0;
        for (const auto& tt : f.tables)
            for (const auto& e : tt.entries) {
                REQUIRE(e.kappa);
                CHECK(e.kappa_approx >= 0);
                CHECK(e.target == e.I + e.J);
                if (e.kappa->is_zero()) {
                    ++trivial;
                    CHECK(e.tree.trivial);
                    CHECK(e.weight_exact == "1");
                } else {
                    ++other;
                    CHECK_FALSE(e.tree.trivial);
                    CHECK(e.tree.found);
                    CHECK(e.tree.multiplicity == 1);
                    // tree edges lie on the boundary and end at the target carrier
                    for (const auto& edge : e.tree.edges)
                        CHECK(edge.face >= 0);
                    CHECK((e.tree.meeting - e.tree.root).norm() < 1e-4);
                }
            }
        CHECK(trivial > 0);
        CHECK(other > 0);
    }
}

TEST_CASE("f_I + f_J - f_{I+J} is constant")
{
    Fixture f("bl2");
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> pos(-2, 2);
    for (const auto& tt : f.tables)
        for (const auto& e : tt.entries) {
            BundleClass c1 = f.t.bundles[e.j] - f.t.bundles[e.i], c2 = f.t.bundles[e.k] - f.t.bundles[e.j];
            auto a = f.g.vector_field(c1, e.I), b = f.g.vector_field(c2, e.J), ab = f.g.vector_field(c1 + c2, e.I + e.J);
            CHECK(a.x1 + b.x1 - ab.x1 == RatFunc2::constant(Rat(0)));
            CHECK(a.x2 + b.x2 - ab.x2 == RatFunc2::constant(Rat(0)));
            const Potential &pa = f.eng.potential_of(c1, e.I), &pb = f.eng.potential_of(c2, e.J),
                            &pab = f.eng.potential_of(c1 + c2, e.I + e.J);
            for (int q = 0; q < 50; ++q) {
                Vec2d x{pos(rng), pos(rng)};
                double d = f.g.potential_raw(c1, e.I, x) + pa.constant_approx + f.g.potential_raw(c2, e.J, x) +
                           pb.constant_approx - f.g.potential_raw(c1 + c2, e.I + e.J, x) - pab.constant_approx;
                CHECK(d == doctest::Approx(e.kappa_approx).epsilon(1e-9));
            }
        }
}

TEST_CASE("associativity and unit law")
{
    for (const char* name : {"bl2", "bl3"}) {
        Fixture f(name);
        auto a = verify_associativity(f.t, f.tables);
        INFO(a.failure);
        CHECK(a.ok);
        CHECK(a.checked > 0);
        auto u = verify_unit_law(f.eng, f.t);
        INFO(u.failure);
        CHECK(u.ok);
        CHECK(u.checked > 0);
    }
}

TEST_CASE("triple json schema")
{
    Fixture f("bl2");
    REQUIRE(f.tables.size() == 7);
    auto j = to_json(f.tables.back(), f.t, f.s);
    CHECK(j["triple"].size() == 3);
    for (const auto& e : j["entries"]) {
        CHECK(e.contains("I"));
        CHECK(e.contains("J"));
        CHECK(e.contains("target"));
        CHECK(e["kappa"].contains("terms"));
        CHECK(e.contains("weight_float"));
        CHECK((e["tree"] == "trivial" || e["tree"].is_array()));
    }
    auto svg = triple_svg(f.tables.back(), f.t, f.s);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find(">E5<") != std::string::npos);
}

TEST_CASE("sheaf side")
{
    auto bl2 = preset_surface("bl2");
    ToricGeometry g(bl2);
    CHECK(h0_basis(g, B({0, 0, 1})).dim() == 3);
    auto b = h0_basis(g, B({0, -1, 1}));
    REQUIRE(b.dim() == 1);
    REQUIRE(b.elements[0].kappa);
    CHECK(b.elements[0].kappa->is_zero());
    auto m = minimum_ratio(g, B({0, -1, 1}), {0, 0});
    CHECK(m.continuous);
    REQUIRE(m.exact);
    CHECK(*m.exact == Rat(1));

    auto bl3 = preset_surface("bl3");
    ToricGeometry g3(bl3);
    auto neg = h0_basis(g3, B({-1, 1, 0, 0}));
    CHECK(neg.dim() == 0);
}

TEST_CASE("verification of the small presets")
{
    for (const char* name : {"cp2", "p1p1"}) {
        auto s = preset_surface(name);
        ToricGeometry g(s);
        auto r = run_verification(g, preset_exceptional_collection(s));
        INFO(name << ": " << r.first_failure);
        CHECK(r.ok);
    }
    auto cp2 = preset_surface("cp2");
    ToricGeometry g(cp2);
    auto r = run_verification(g, preset_exceptional_collection(cp2));
    CHECK(r.table.at(0, 1).dim() == 3);
    CHECK(r.table.at(0, 2).dim() == 6);
    CHECK(r.table.at(1, 2).dim() == 3);
}

TEST_CASE("singleton collection is exceptional")
{
    auto bl2 = preset_surface("bl2");
    ToricGeometry g(bl2);
    auto r = run_verification(g, {B({0, 0, 0})});
    CHECK(r.ok);
    CHECK(r.exceptional.rows.size() == 1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmh/logvalue.hpp"
#include "tmh/poly.hpp"
#include "tmh/tropical.hpp"

using namespace tmh;

static Poly2 P(std::initializer_list<std::tuple<int, int, long>> terms)
{
    Poly2 p;
    for (auto [a, b, c] : terms)
        p.add_term(a, b, Rat(c));
    return p;
}

TEST_CASE("log derivatives")
{
    RatFunc2 q = P({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
    CHECK(log_deriv_s(q) == RatFunc2(P({{1, 0, 1}}), P({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}})));
    RatFunc2 q3 = P({{0, 0, 1}, {1, 1, 1}, {0, 1, 1}});
    CHECK(log_deriv_t(q3) == RatFunc2(P({{1, 1, 1}, {0, 1, 1}}), P({{0, 0, 1}, {1, 1, 1}, {0, 1, 1}})));
    RatFunc2 sum = log_deriv_s(RatFunc2(P({{0, 0, 1}, {1, 0, 1}}))) + log_deriv_s(q);
    CHECK(sum.eval(Rat(1), Rat(1)) == Rat(5, 6));
}

TEST_CASE("tropical limits")
{
    RatFunc2 f(P({{1, 0, 1}}), P({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
    auto a = tropical_limit(f, {1, 0});
    CHECK(!a.divergent);
    CHECK(a.value == RatFunc2::constant(1));
    auto b = tropical_limit(f, {1, 1});
    CHECK(b.value == RatFunc2(P({{1, 0, 1}}), P({{1, 0, 1}, {0, 1, 1}})));
    RatFunc2 g(P({{0, 1, 1}}), P({{0, 0, 1}, {0, 1, 1}}));
    CHECK(tropical_limit(g, {1, 0}).value == g);
    RatFunc2 h(P({{2, 0, 1}}), P({{0, 0, 1}, {1, 0, 1}}));
    CHECK(tropical_limit(h, {1, 0}).divergent);
}

TEST_CASE("tropical limit matches numeric evaluation")
{
    std::srand(7);
    for (int trial = 0; trial < 20; ++trial) {
        Poly2 n, d;
        for (int k = 0; k < 3; ++k) {
            n.add_term(std::rand() % 3, std::rand() % 3, Rat(1 + std::rand() % 3));
            d.add_term(std::rand() % 3, std::rand() % 3, Rat(1 + std::rand() % 3));
        }
        RatFunc2 f(n, d);
        Vec2i w{std::rand() % 3 - 1, std::rand() % 3 - 1};
        if (w == Vec2i{0, 0})
            continue;
        auto lim = tropical_limit(f, w);
        if (lim.divergent)
            continue;
        const double R = 20;
        for (int k = 0; k < 5; ++k) {
            double sg = 0.5 + 1.5 * (std::rand() / double(RAND_MAX));
            double tg = 0.5 + 1.5 * (std::rand() / double(RAND_MAX));
            double fv = f.eval(std::exp(2 * R * w.x) * sg, std::exp(2 * R * w.y) * tg);
            CHECK(std::abs(fv - lim.value.eval(sg, tg)) <= 1e-6);
        }
    }
}

TEST_CASE("edge restriction and vertex limits")
{
    RatFunc2 f(P({{1, 0, 1}}), P({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
    auto e = edge_restriction(f, {1, 1});
    CHECK(!e.divergent);
    auto v = vertex_limit(f, {1, 0}, {1, 1});
    CHECK(v.status == VertexStatus::Finite);
    CHECK(v.value == 1);
    auto w = vertex_limit(f, {0, 0 - 1}, {-1, 0});
    CHECK(w.status == VertexStatus::Finite);
    CHECK(w.value == 0);
}

TEST_CASE("univariate roots")
{
    // (x-1/2)(x-3)(x+2)(x^2-2)
    Poly1 p = Poly1({Rat(-1, 2), Rat(1)}) * Poly1({Rat(-3), Rat(1)}) * Poly1({Rat(2), Rat(1)}) *
              Poly1({Rat(-2), Rat(0), Rat(1)});
    auto r = positive_roots(p);
    REQUIRE(r.size() == 3);
    CHECK(r[0].exact);
    CHECK(*r[0].exact == Rat(1, 2));
    CHECK(!r[1].exact);
    CHECK(r[1].approx == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(*r[2].exact == Rat(3));
    CHECK(count_positive_roots(p) == 3);
}

TEST_CASE("resultant")
{
    // a = t - s, b = t - 2 + s  -> common zero at s=1
    Poly2 a = P({{0, 1, 1}, {1, 0, -1}});
    Poly2 b = P({{0, 1, 1}, {0, 0, -2}, {1, 0, 1}});
    Poly1 r = resultant_t(a, b);
    CHECK(r.degree() == 1);
    CHECK(r.eval(Rat(1)) == 0);
}

TEST_CASE("log values")
{
    LogValue a = LogValue::log_of(Rat(4));
    LogValue b = LogValue::log_of(Rat(2), Rat(2));
    CHECK(a == b);
    CHECK(LogValue::log_of(Rat(2)).str() == "log 2");
    CHECK((LogValue::log_of(Rat(3), Rat(1, 2)) - LogValue::log_of(Rat(2))).str() == "-log 2 + 1/2*log 3");
    CHECK(*LogValue::log_of(Rat(2)).exp_neg_rational() == Rat(1, 2));
    CHECK(LogValue::log_of(Rat(2), Rat(1, 2)).exp_neg_str() == "2^(-1/2)");
    CHECK(LogValue::log_of(Rat(6), Rat(1, 2)).value() == doctest::Approx(0.5 * std::log(6.0)));
    std::srand(3);
    for (int k = 0; k < 50; ++k) {
        Rat r1(1 + std::rand() % 50, 1 + std::rand() % 50), r2(1 + std::rand() % 50, 1 + std::rand() % 50);
        Rat q(std::rand() % 7 - 3, 1 + std::rand() % 4);
        LogValue x = LogValue::log_of(r1, q), y = LogValue::log_of(r2);
        CHECK(x + y == y + x);
        CHECK((x + y) - y == x);
        CHECK(LogValue::log_of(r1 * r2, q) == LogValue::log_of(r1, q) + LogValue::log_of(r2, q));
    }
}

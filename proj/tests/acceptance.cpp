#include "properties.hpp"
#include "tmh/mirror.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace tmh;

namespace {

struct Result {
    bool ok = true;
    std::string summary;
    std::vector<std::string> problems;
    void fail(const std::string& why)
    {
        ok = false;
        problems.push_back(why);
    }
};

// "I:carrier" with carrier names sorted and joined by '+'
using GenSet = std::set<std::string>;
using HomFixture = std::map<std::pair<int, int>, GenSet>;

std::string gen_key(const Component& comp, const PolySurface& s)
{
    auto names = carrier_names(comp, s);
    std::sort(names.begin(), names.end());
    std::string out = label(comp.I) + ":";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "+" : "") + names[i];
    return out;
}

struct Setup {
    PolySurface s;
    ToricGeometry g;
    std::vector<BundleClass> col;
    HomTable t;
    explicit Setup(const char* name)
        : s(preset_surface(name)), g(s), col(preset_exceptional_collection(s)), t(hom_table(g, col))
    {
    }
};

Result hom_tables(const Setup& su, const HomFixture& fixture)
{
    Result r;
    int n = int(su.col.size());
    std::ostringstream counts;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const HomSpace& h = su.t.at(i, j);
            GenSet got;
            for (const auto& comp : h.generators) {
                got.insert(gen_key(comp, su.s));
                if (comp.degree != 0)
                    r.fail("generator " + gen_key(comp, su.s) + " has nonzero degree");
            }
            auto it = fixture.find({i, j});
            GenSet want = it == fixture.end() ? GenSet{} : it->second;
            if (got != want) {
                std::string g, w;
                for (const auto& x : got)
                    g += " " + x;
                for (const auto& x : want)
                    w += " " + x;
                r.fail("Hom(L" + su.col[i].str() + ", L" + su.col[j].str() + "): got" + g + ", expected" + w);
            }
            if (j > i)
                counts << h.dim() << (j == n - 1 ? (i == n - 2 ? "" : " / ") : ",");
        }
    }
    r.summary = std::to_string(n * (n - 1)) + " ordered pairs, counts " + counts.str() + ", reverse directions 0";
    return r;
}

HomFixture bl2_homs()
{
    // collection (0,0,0), (0,-1,1), (-1,0,1), (0,0,1), (0,0,2)
    GenSet to_next = {"(0,0):(0,0)", "(1,0):E3", "(0,1):E5"};
    return {
        {{0, 1}, {"(0,0):E1+E5"}},
        {{0, 2}, {"(0,0):E2+E3"}},
        {{0, 3}, to_next},
        {{0, 4}, {"(0,2):E5", "(0,1):(0,2)", "(1,1):(3,3)", "(0,0):(0,0)", "(1,0):(2,0)", "(2,0):E3"}},
        {{1, 3}, {"(0,0):E2", "(0,1):E4+E5"}},
        {{1, 4}, {"(0,2):E5", "(0,1):(0,2)", "(1,1):(4,2)", "(0,0):(0,0)", "(1,0):(4,0)"}},
        {{2, 3}, {"(0,0):E1", "(1,0):E3+E4"}},
        {{2, 4}, {"(0,1):(0,4)", "(1,1):(2,4)", "(0,0):(0,0)", "(1,0):(2,0)", "(2,0):E3"}},
        {{3, 4}, to_next},
    };
}

HomFixture bl3_homs()
{
    // collection (0,0,0,0), (-1,0,0,1), (0,-1,0,1), (0,0,-1,1), (0,0,0,1), (0,0,0,2)
    GenSet to_next = {"(0,0):E2", "(0,1):E6", "(1,1):E4"};
    return {
        {{0, 1}, {"(0,1):E4+E5+E6"}},
        {{0, 2}, {"(0,0):E1+E2+E6"}},
        {{0, 3}, {"(0,0):E2+E3+E4"}},
        {{0, 4}, to_next},
        {{0, 5}, {"(0,2):E6", "(0,1):(0,4)", "(1,2):(4,4)", "(0,0):E2", "(1,1):(4,0)", "(2,2):E4"}},
        {{1, 4}, {"(0,0):E1+E6", "(1,0):E3+E4"}},
        {{1, 5}, {"(0,1):E6", "(1,1):(4,4)", "(0,0):(0,2)", "(1,0):(2,0)", "(2,1):E4"}},
        {{2, 4}, {"(0,0):E2+E3", "(0,1):E5+E6"}},
        {{2, 5}, {"(0,2):E6", "(0,1):(0,4)", "(1,2):(6,2)", "(0,0):E2", "(1,1):(6,0)"}},
        {{3, 4}, {"(0,0):E1+E2", "(1,1):E4+E5"}},
        {{3, 5}, {"(0,1):(0,6)", "(1,2):(2,6)", "(0,0):E2", "(1,1):(4,0)", "(2,2):E4"}},
        {{4, 5}, to_next},
    };
}

std::string reason_class(const Component& comp)
{
    if (!comp.m1_ok)
        return "M1";
    if (!comp.m2_ok && comp.degree && *comp.degree >= 1)
        return "M2";
    return comp.generator() ? "generator" : "other";
}

struct Rejection {
    const char* surface;
    BundleClass c;
    Vec2i I;
    std::string carrier;
    std::string reason;
};

Result rejections(const Setup& bl2, const Setup& bl3)
{
    auto B = [](std::initializer_list<long> v) { return BundleClass{std::vector<long>(v)}; };
    std::vector<Rejection> fixtures = {
        {"bl2", B({0, -1, 1}), {1, 0}, "(4,0)", "M2"},
        {"bl2", B({0, -1, 1}), {1, -1}, "(4,2)", "M2"},
        {"bl2", B({-1, 1, 0}), {0, 1}, "(0,4)", "M2"},
        {"bl2", B({-1, 1, 0}), {0, 0}, "(0,0)", "M2"},
        {"bl2", B({-1, 1, 0}), {-1, 0}, "(4,0)", "M2"},
        {"bl2", B({-1, 1, 0}), {-1, 1}, "E4", "M1"},
        {"bl3", B({-1, 0, 0, 1}), {0, 0}, "(0,2)", "M2"},
        {"bl3", B({-1, 0, 0, 1}), {-1, 0}, "(2,0)", "M2"},
        {"bl3", B({0, -1, 0, 1}), {1, 0}, "(6,2)", "M2"},
        {"bl3", B({0, -1, 0, 1}), {1, 1}, "(6,0)", "M2"},
        {"bl3", B({0, 0, -1, 1}), {0, 1}, "(0,6)", "M2"},
        {"bl3", B({0, 0, -1, 1}), {-1, 0}, "(2,6)", "M2"},
        {"bl3", B({1, -1, 0, 0}), {0, -1}, "E6", "M1"},
        {"bl3", B({1, -1, 0, 0}), {1, -1}, "(6,2)", "M2"},
        {"bl3", B({1, -1, 0, 0}), {0, 0}, "(0,2)", "M2"},
        {"bl3", B({1, -1, 0, 0}), {1, 0}, "E3", "M1"},
        {"bl3", B({1, 0, -1, 0}), {0, 0}, "E1", "M1"},
        {"bl3", B({1, 0, -1, 0}), {-1, -1}, "(2,6)", "M2"},
        {"bl3", B({1, 0, -1, 0}), {1, 0}, "(2,0)", "M2"},
        {"bl3", B({1, 0, -1, 0}), {0, -1}, "E4", "M1"},
        {"bl3", B({0, 1, -1, 0}), {0, 1}, "(0,6)", "M2"},
        {"bl3", B({0, 1, -1, 0}), {-1, 0}, "E5", "M1"},
        {"bl3", B({0, 1, -1, 0}), {0, 0}, "E2", "M1"},
        {"bl3", B({0, 1, -1, 0}), {-1, -1}, "(6,0)", "M2"},
    };
    Result r;
    for (const auto& f : fixtures) {
        const Setup& su = std::string(f.surface) == "bl2" ? bl2 : bl3;
        auto comps = intersection_components(su.g, f.c, f.I);
        std::string where = std::string(f.surface) + " V" + f.c.str() + ";" + label(f.I);
        if (comps.size() != 1) {
            r.fail(where + ": " + std::to_string(comps.size()) + " components");
            continue;
        }
        classify(su.g, comps[0]);
        std::string carrier = carrier_str(comps[0], su.s), cls = reason_class(comps[0]);
        if (carrier != f.carrier || cls != f.reason)
            r.fail(where + ": " + carrier + " " + cls + ", expected " + f.carrier + " " + f.reason);
    }
    // every candidate killed in a reverse direction is killed by (M1) or by (M2) in degree >= 1
    std::size_t reverse = 0;
    for (const Setup* su : {&bl2, &bl3})
        for (const auto& [key, h] : su->t.homs) {
            if (key.first <= key.second)
                continue;
            for (const auto& comp : h.rejected) {
                ++reverse;
                std::string cls = reason_class(comp);
                if (cls != "M1" && cls != "M2")
                    r.fail("reverse candidate " + label(comp.I) + " of " + h.diff.str() + " rejected as " + cls);
            }
            if (h.dim() != 0)
                r.fail("reverse Hom" + h.diff.str() + " is nonzero");
        }
    r.summary = std::to_string(fixtures.size()) + " named rejections, " + std::to_string(reverse) +
                " reverse-direction candidates";
    return r;
}

struct Tree {
    Vec2i I, J, target;
    int face;
    Vec2d meeting;  // display coordinates
};
using TreeFixture = std::map<std::tuple<int, int, int>, std::vector<Tree>>;

TreeFixture bl2_trees()
{
    Tree e2a{{0, 0}, {1, 0}, {1, 0}, 2, {2, 0}}, e2b{{1, 0}, {0, 0}, {1, 0}, 2, {2, 0}};
    Tree e1a{{0, 0}, {0, 1}, {0, 1}, 1, {0, 2}}, e1b{{0, 1}, {0, 0}, {0, 1}, 1, {0, 2}};
    return {
        {{0, 1, 3}, {}},
        {{0, 2, 3}, {}},
        {{0, 1, 4}, {e2a, {{0, 0}, {1, 1}, {1, 1}, 4, {3, 3}}}},
        {{0, 2, 4}, {e1a, {{0, 0}, {1, 1}, {1, 1}, 4, {3, 3}}}},
        {{0, 3, 4}, {e1a, e2a, e1b, {{0, 1}, {1, 0}, {1, 1}, 4, {3, 3}}, e2b, {{1, 0}, {0, 1}, {1, 1}, 4, {3, 3}}}},
        {{1, 3, 4}, {e1a, e1b}},
        {{2, 3, 4}, {e2a, e2b}},
    };
}

TreeFixture bl3_trees()
{
    Tree e1a{{0, 0}, {0, 1}, {0, 1}, 1, {0, 4}}, e1b{{0, 1}, {0, 0}, {0, 1}, 1, {0, 4}};
    Tree e3a{{0, 0}, {1, 1}, {1, 1}, 3, {4, 0}}, e3b{{1, 1}, {0, 0}, {1, 1}, 3, {4, 0}};
    return {
        {{0, 1, 4}, {}},
        {{0, 2, 4}, {}},
        {{0, 3, 4}, {}},
        {{0, 1, 5}, {{{0, 1}, {0, 0}, {0, 1}, 1, {0, 4}}, {{0, 1}, {1, 0}, {1, 1}, 3, {4, 0}}}},
        {{0, 2, 5}, {e3a, {{0, 0}, {1, 2}, {1, 2}, 5, {4, 4}}}},
        {{0, 3, 5}, {e1a, {{0, 0}, {1, 2}, {1, 2}, 5, {4, 4}}}},
        {{0, 4, 5}, {e1a, e3a, e1b, {{0, 1}, {1, 1}, {1, 2}, 5, {4, 4}}, e3b, {{1, 1}, {0, 1}, {1, 2}, 5, {4, 4}}}},
        {{1, 4, 5}, {{{0, 0}, {1, 1}, {1, 1}, 5, {4, 4}}, {{1, 0}, {0, 1}, {1, 1}, 5, {4, 4}}}},
        {{2, 4, 5}, {e1a, e1b}},
        {{3, 4, 5}, {e3a, e3b}},
    };
}

Result compositions(const Setup& su, const std::vector<TripleTable>& tables, const TreeFixture& fixture)
{
    Result r;
    std::size_t trivial = 0, traced = 0;
    double worst = 0;
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& tt : tables) {
        auto key = std::make_tuple(tt.i, tt.j, tt.k);
        seen.insert(key);
        auto it = fixture.find(key);
        std::string where = "L" + su.col[tt.i].str() + " -> L" + su.col[tt.j].str() + " -> L" + su.col[tt.k].str();
        if (it == fixture.end()) {
            r.fail("unexpected triple " + where);
            continue;
        }
        std::size_t expected_entries = su.t.at(tt.i, tt.j).dim() * su.t.at(tt.j, tt.k).dim();
        if (tt.entries.size() != expected_entries)
            r.fail(where + ": " + std::to_string(tt.entries.size()) + " entries");
        std::size_t matched = 0;
        for (const auto& e : tt.entries) {
            std::string pair = where + " " + label(e.I) + " x " + label(e.J);
            const Tree* want = nullptr;
            for (const auto& f : it->second)
                if (f.I == e.I && f.J == e.J)
                    want = &f;
            if (e.zero) {
                r.fail(pair + ": no target");
                continue;
            }
            if (!want) {
                ++trivial;
                if (!e.tree.trivial || e.target != e.I + e.J)
                    r.fail(pair + ": expected a trivial tree to " + label(e.I + e.J));
                continue;
            }
            ++matched;
            if (e.target != want->target)
                r.fail(pair + ": target " + label(e.target));
            if (e.tree.trivial || !e.tree.found) {
                r.fail(pair + ": " + (e.tree.trivial ? std::string("trivial tree") : e.tree.failure));
                continue;
            }
            bool faces = e.tree.edges.size() == 2;
            for (const auto& edge : e.tree.edges)
                faces = faces && su.s.edges()[edge.face].name == want->face;
            if (!faces)
                r.fail(pair + ": tree " + tree_str(e.tree, su.s) + ", expected E" + std::to_string(want->face));
            double d = (su.s.display(e.tree.meeting) - want->meeting).norm();
            worst = std::max(worst, d);
            if (d > 1e-4)
                r.fail(pair + ": meeting point off by " + std::to_string(d));
            ++traced;
        }
        if (matched != it->second.size())
            r.fail(where + ": " + std::to_string(it->second.size() - matched) + " depicted trees missing");
    }
    if (seen.size() != fixture.size())
        r.fail(std::to_string(fixture.size() - seen.size()) + " triples missing");
    std::ostringstream os;
    os << tables.size() << " triples, " << trivial << " trivial, " << traced << " traced trees, meeting error "
       << worst;
    r.summary = os.str();
    return r;
}

Result structure_constant(const Setup& su, const std::vector<TripleTable>& tables, const CompositionEngine& eng)
{
    Result r;
    const CompositionEntry* e = nullptr;
    std::size_t ones = 0;
    for (const auto& tt : tables)
        for (const auto& x : tt.entries) {
            if (tt.i == 0 && tt.j == 3 && tt.k == 4 && x.I == Vec2i{1, 0} && x.J == Vec2i{0, 1})
                e = &x;
            if (x.kappa && x.kappa->is_zero()) {
                ++ones;
                if (x.weight_exact != "1" || x.weight != 1.0)
                    r.fail("kappa 0 with weight " + x.weight_exact);
            }
        }
    if (!e || !e->kappa) {
        r.fail("entry Z(1,0) x W(0,1) over L(0,0,0) -> L(0,0,1) -> L(0,0,2) missing");
        return r;
    }
    if (!(*e->kappa == LogValue::log_of(Rat(2))))
        r.fail("kappa is " + e->kappa->str());
    if (e->weight_exact != "1/2")
        r.fail("weight is " + e->weight_exact);

    // grid oracle: f_I + f_J - f_{I+J} is constant on P and min f_I + f_J is reached on V_{I+J}
    BundleClass c1 = su.col[3] - su.col[0], c2 = su.col[4] - su.col[3];
    const Potential &a = eng.potential_of(c1, e->I), &b = eng.potential_of(c2, e->J),
                    &ab = eng.potential_of(c1 + c2, e->I + e->J);
    double lo = 1e300, spread = 0;
    for (const auto& p : polytope_grid(su.g, 200)) {
        double fi = su.g.potential_raw(c1, e->I, p.flat) + a.constant_approx;
        double fj = su.g.potential_raw(c2, e->J, p.flat) + b.constant_approx;
        double fij = su.g.potential_raw(c1 + c2, e->I + e->J, p.flat) + ab.constant_approx;
        lo = std::min(lo, fi + fj);
        spread = std::max(spread, std::abs(fi + fj - fij - std::log(2.0)));
    }
    if (spread > 1e-9)
        r.fail("f_I + f_J - f_{I+J} departs from log 2 by " + std::to_string(spread));
    if (lo < std::log(2.0) - 1e-9)
        r.fail("grid minimum of f_I + f_J below log 2");
    std::ostringstream os;
    os << "kappa = " << e->kappa->str() << ", weight " << e->weight_exact << ", grid spread " << spread << ", "
       << ones << " entries with kappa 0 have weight 1";
    r.summary = os.str();
    return r;
}

Result functoriality(const std::vector<std::pair<const Setup*, FunctorReport>>& reports)
{
    Result r;
    std::size_t rows = 0, norms = 0;
    for (const auto& [su, rep] : reports) {
        if (!rep.ok)
            r.fail(su->s.preset() + ": " + rep.failure);
        for (const auto& row : rep.rows) {
            ++rows;
            if (!row.exact || !row.equal)
                r.fail(su->s.preset() + ": " + label(row.I) + " x " + label(row.J) + " Morse " + row.weight_morse +
                       ", sheaf " + row.weight_sheaf + (row.exact ? "" : " (not exact)"));
        }
        norms += rep.normalisations;
    }
    r.summary = std::to_string(rows) + " products equal as exact log values, " + std::to_string(norms) +
                " normalisations";
    return r;
}

Result properties(const Setup& bl2, const Setup& bl3,
                  const std::vector<std::pair<const Setup*, const std::vector<TripleTable>*>>& tables)
{
    Result r;
    std::ostringstream os;
    auto take = [&](const std::string& what, const props::Check& c) {
        if (!c.ok)
            r.fail(what + ": " + c.detail);
    };
    std::size_t grad = 0, trip = 0, zeros = 0, scan = 0, assoc = 0;
    double gw = 0, tw = 0;
    for (const Setup* su : {&bl2, &bl3}) {
        std::string n = su->s.preset();
        auto g = props::gradient_check(su->g, 10, 11, 101);
        auto t = props::round_trip(su->g, 100, 202);
        auto z = props::zero_set(su->g, su->t, 200);
        auto c = props::completeness(su->g, su->col, 400);
        take(n + " gradient", g);
        take(n + " round trip", t);
        take(n + " zero set", z);
        take(n + " completeness", c);
        grad += g.cases;
        trip += t.cases;
        zeros += z.cases;
        scan += c.cases;
        gw = std::max(gw, g.worst);
        tw = std::max(tw, t.worst);
    }
    for (const auto& [su, tt] : tables) {
        auto a = verify_associativity(su->t, *tt);
        if (!a.ok)
            r.fail(su->s.preset() + " associativity: " + a.failure);
        assoc += a.checked;
    }
    os << grad << " gradient cases (worst " << gw << "), " << trip << " round trips (worst " << tw << "), " << zeros
       << " zero-set samples, " << scan << " field evaluations, " << assoc << " associativity checks";
    r.summary = os.str();
    return r;
}

Result runtime()
{
    Result r;
    setenv("TMH_THREADS", "1", 1);
    std::ostringstream os;
    for (const char* name : {"bl2", "bl3"}) {
        auto s = preset_surface(name);
        ToricGeometry g(s);
        auto t0 = std::chrono::steady_clock::now();
        auto rep = run_verification(g, preset_exceptional_collection(s));
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!rep.ok)
            r.fail(std::string(name) + " verify failed: " + rep.first_failure);
        if (sec >= 60)
            r.fail(std::string(name) + " took " + std::to_string(sec) + " s");
        os << name << " " << sec << " s  ";
    }
    os << "(one thread, limit 60 s)";
    r.summary = os.str();
    return r;
}

}  // namespace

int main()
{
    bool all = true;
    auto report = [&](int n, const std::function<Result()>& run) {
        Result r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << n << ": " << (r.ok ? "PASS" : "FAIL") << "  " << r.summary << "\n";
        for (const auto& p : r.problems)
            std::cout << "    " << p << "\n";
        std::cout.flush();
        all = all && r.ok;
    };

    Setup bl2("bl2"), bl3("bl3");
    CompositionEngine eng2(bl2.g), eng3(bl3.g);
    auto tables2 = eng2.compose_table(bl2.t), tables3 = eng3.compose_table(bl3.t);

    report(1, [&] { return hom_tables(bl2, bl2_homs()); });
    report(2, [&] { return hom_tables(bl3, bl3_homs()); });
    report(3, [&] { return rejections(bl2, bl3); });
    report(4, [&] {
        Result a = compositions(bl2, tables2, bl2_trees()), b = compositions(bl3, tables3, bl3_trees());
        Result r;
        r.ok = a.ok && b.ok;
        r.summary = "bl2: " + a.summary + "; bl3: " + b.summary;
        r.problems = a.problems;
        r.problems.insert(r.problems.end(), b.problems.begin(), b.problems.end());
        return r;
    });
    report(5, [&] { return structure_constant(bl2, tables2, eng2); });
    report(6, [&] {
        return functoriality({{&bl2, verify_functoriality(eng2, bl2.t, tables2)},
                              {&bl3, verify_functoriality(eng3, bl3.t, tables3)}});
    });
    report(7, [&] { return properties(bl2, bl3, {{&bl2, &tables2}, {&bl3, &tables3}}); });
    report(8, runtime);
    return all ? 0 : 1;
}

#include "tmh/morse.hpp"

#include "tmh/errors.hpp"
#include "tmh/solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tmh {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            p[std::max(a, b)] = std::min(a, b);
    }
};

std::string fmt_double(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool zero_rat(const VertexValue& v) { return v.status == VertexStatus::Finite && v.value == 0; }

}  // namespace

bool Component::has_vertex(int v) const { return whole || std::find(vertices.begin(), vertices.end(), v) != vertices.end(); }
bool Component::has_edge(int e) const { return whole || std::find(edges.begin(), edges.end(), e) != edges.end(); }

std::string label(Vec2i I) { return "(" + std::to_string(I.x) + "," + std::to_string(I.y) + ")"; }

std::string format_display(const PolySurface& s, const FacePoint& p)
{
    if (p.exact) {
        Vec2q d = s.display(*p.exact);
        return "(" + to_string(d.x) + "," + to_string(d.y) + ")";
    }
    Vec2d d = s.display(p.approx);
    return "(" + fmt_double(d.x) + "," + fmt_double(d.y) + ")";
}

std::vector<std::string> carrier_names(const Component& comp, const PolySurface& s)
{
    if (comp.whole)
        return {"P"};
    std::vector<std::string> out;
    for (int e : comp.edges)
        out.push_back("E" + std::to_string(s.edges()[e].name));
    for (int v : comp.vertices) {
        bool on_edge = false;
        for (int e : comp.edges)
            if (s.edges()[e].from == v || s.edges()[e].to == v)
                on_edge = true;
        if (!on_edge) {
            Vec2q d = s.display(s.vertices()[v]);
            out.push_back("(" + to_string(d.x) + "," + to_string(d.y) + ")");
        }
    }
    for (const auto& p : comp.points)
        out.push_back(format_display(s, p));
    return out;
}

std::string carrier_str(const Component& comp, const PolySurface& s)
{
    auto names = carrier_names(comp, s);
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i)
            out += " u ";
        out += names[i];
    }
    return out;
}

std::vector<Component> intersection_components(const ToricGeometry& g, const BundleClass& c, Vec2i I)
{
    const PolySurface& s = g.surface();
    const int n = static_cast<int>(s.edges().size());
    auto field = g.vector_field(c, I);

    // interior: numerators over the product of the factors that occur in c
    Poly2 D = Poly2::constant(1);
    std::vector<std::size_t> used;
    for (std::size_t k = 0; k < s.rank(); ++k)
        if (c[k] != 0) {
            used.push_back(k);
            D = D * s.factors()[k].posynomial;
        }
    Poly2 N1 = D * Rat(-I.x), N2 = D * Rat(-I.y);
    for (std::size_t k : used) {
        Poly2 rest = Poly2::constant(1);
        for (std::size_t l : used)
            if (l != k)
                rest = rest * s.factors()[l].posynomial;
        const Poly2& q = s.factors()[k].posynomial;
        N1 += q.euler_s() * rest * Rat(c[k]);
        N2 += q.euler_t() * rest * Rat(c[k]);
    }
    CommonZeros inner = positive_common_zeros(N1, N2);
    if (inner.everywhere) {
        Component comp;
        comp.c = c;
        comp.I = I;
        comp.whole = true;
        for (int v = 0; v < n; ++v)
            comp.vertices.push_back(v);
        for (int e = 0; e < n; ++e)
            comp.edges.push_back(e);
        return {comp};
    }

    std::vector<FacePoint> points;
    for (const auto& r : inner.roots) {
        if (r.s && r.t)
            points.push_back(g.interior_point_st(*r.s, *r.t));
        else
            points.push_back(g.interior_point({0.5 * std::log(r.s_approx), 0.5 * std::log(r.t_approx)}));
    }

    std::vector<bool> vzero(n, false), ezero(n, false);
    for (int v = 0; v < n; ++v) {
        auto [a, b] = s.vertex_edges(v);
        const Vec2i wa = s.edges()[a].outer, wb = s.edges()[b].outer;
        vzero[v] = zero_rat(vertex_limit(field.x1, wa, wb)) && zero_rat(vertex_limit(field.x2, wa, wb));
    }
    for (int e = 0; e < n; ++e) {
        const Vec2i w = s.edges()[e].outer;
        auto r1 = edge_restriction(field.x1, w), r2 = edge_restriction(field.x2, w);
        if (r1.divergent || r2.divergent)
            continue;
        if (r1.value.is_zero() && r2.value.is_zero()) {
            ezero[e] = true;
            continue;
        }
        Poly1 gnum;
        if (r1.value.is_zero())
            gnum = r2.value.num();
        else if (r2.value.is_zero())
            gnum = r1.value.num();
        else
            gnum = gcd(r1.value.num(), r2.value.num());
        if (gnum.degree() <= 0)
            continue;
        for (const auto& root : positive_roots(gnum)) {
            if (root.exact) {
                if (r1.value.den().eval(*root.exact) == 0 || r2.value.den().eval(*root.exact) == 0)
                    continue;
                points.push_back(g.edge_point(e, *root.exact));
            } else {
                points.push_back(g.edge_point(e, root.approx));
            }
        }
    }

    const int np = static_cast<int>(points.size());
    UnionFind uf(2 * n + np);
    for (int e = 0; e < n; ++e)
        if (ezero[e]) {
            uf.join(n + e, s.edges()[e].from);
            uf.join(n + e, s.edges()[e].to);
            vzero[s.edges()[e].from] = vzero[s.edges()[e].to] = true;
        }
    std::vector<int> roots;
    auto active = [&](int node) {
        if (node < n)
            return bool(vzero[node]);
        if (node < 2 * n)
            return bool(ezero[node - n]);
        return true;
    };
    std::vector<Component> out;
    std::vector<int> slot(2 * n + np, -1);
    for (int node = 0; node < 2 * n + np; ++node) {
        if (!active(node))
            continue;
        int r = uf.find(node);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            Component comp;
            comp.c = c;
            comp.I = I;
            out.push_back(comp);
        }
        Component& comp = out[slot[r]];
        if (node < n)
            comp.vertices.push_back(node);
        else if (node < 2 * n)
            comp.edges.push_back(node - n);
        else
            comp.points.push_back(points[node - 2 * n]);
    }
    return out;
}

void classify(const ToricGeometry& g, Component& comp)
{
    const PolySurface& s = g.surface();
    comp.samples.clear();
    if (comp.whole) {
        comp.degree = 0;
        comp.m1_ok = comp.m2_ok = true;
        return;
    }
    auto sample = [&](const FacePoint& p) {
        int d = negative_eigenvalues(g.jacobian_at(comp.c, p));
        comp.samples.push_back({p, d});
    };
    if (!comp.edges.empty()) {
        for (int e : comp.edges)
            for (double u : {1.0 / 3, 0.5, 2.0 / 3})
                sample(g.edge_point_fraction(e, u));
        bool agree = std::all_of(comp.samples.begin(), comp.samples.end(),
                                 [&](const auto& x) { return x.second == comp.samples.front().second; });
        if (!agree)
            for (int e : comp.edges)
                for (double u : {1.0 / 6, 0.25, 5.0 / 12, 0.75, 5.0 / 6})
                    sample(g.edge_point_fraction(e, u));
    } else if (!comp.points.empty()) {
        sample(comp.points.front());
    } else {
        sample(g.vertex_point(comp.vertices.front()));
    }

    // one outlier is taken as a non-generic sample
    std::map<int, int> tally;
    for (const auto& x : comp.samples)
        ++tally[x.second];
    auto best = std::max_element(tally.begin(), tally.end(), [](auto& a, auto& b) { return a.second < b.second; });
    if (best->second + 1 >= static_cast<int>(comp.samples.size())) {
        comp.degree = best->first;
        comp.m1_ok = true;
    } else {
        comp.degree.reset();
        comp.m1_ok = false;
        comp.m2_ok = false;
        comp.reason = "non-constant stable dimension (M1)";
        return;
    }
    if (*comp.degree == 0) {
        comp.m2_ok = true;
        return;
    }
    comp.m2_ok = false;
    for (const auto& [p, d] : comp.samples) {
        if (d != *comp.degree)
            continue;
        auto dirs = stable_directions(g.jacobian_at(comp.c, p));
        if (static_cast<int>(dirs.size()) != d)
            continue;
        bool inside = true;
        for (const auto& v : dirs)
            for (double eps : {1e-2, 1e-3, 1e-4})
                for (double sg : {1.0, -1.0})
                    if (!s.contains(p.approx + v * (sg * eps), 1e-12))
                        inside = false;
        if (inside) {
            comp.m2_ok = true;
            break;
        }
    }
    if (!comp.m2_ok)
        comp.reason = "degree " + std::to_string(*comp.degree) + ", stable manifold leaves P (M2)";
}

RawValue raw_value(const ToricGeometry& g, const BundleClass& c, Vec2i I, const FacePoint& p)
{
    const PolySurface& s = g.surface();
    RatFunc2 R = g.potential_ratio(c, I);
    RawValue out;
    auto finish = [&](const Rat& r) {
        if (r.sign() <= 0) {
            out.kind = RawValue::MinusInfinity;
            return out;
        }
        out.exact = LogValue::log_of(r, Rat(1, 2));
        out.approx = out.exact->value();
        return out;
    };
    switch (p.kind) {
    case FaceKind::Vertex: {
        auto [a, b] = s.vertex_edges(p.index);
        auto v = vertex_limit(R, s.edges()[a].outer, s.edges()[b].outer);
        if (v.status == VertexStatus::Divergent) {
            out.kind = RawValue::PlusInfinity;
            return out;
        }
        if (v.status == VertexStatus::PathDependent) {
            out.kind = RawValue::Undefined;
            return out;
        }
        return finish(v.value);
    }
    case FaceKind::Edge: {
        auto e = edge_restriction(R, s.edges()[p.index].outer);
        if (e.divergent) {
            out.kind = RawValue::PlusInfinity;
            return out;
        }
        if (p.rho)
            return finish(e.value.eval(*p.rho));
        double r = e.value.eval(p.rho_approx);
        if (r <= 0) {
            out.kind = RawValue::MinusInfinity;
            return out;
        }
        out.approx = 0.5 * std::log(r);
        return out;
    }
    case FaceKind::Interior:
        if (p.s && p.t)
            return finish(R.eval(*p.s, *p.t));
        out.approx = g.potential_raw(c, I, p.flat);
        return out;
    }
    return out;
}

FacePoint representative(const ToricGeometry& g, const Component& comp)
{
    if (comp.whole)
        return g.vertex_point(0);
    if (!comp.points.empty())
        return comp.points.front();
    for (int v : comp.vertices) {
        auto p = g.vertex_point(v);
        auto rv = raw_value(g, comp.c, comp.I, p);
        if (rv.kind == RawValue::Finite && rv.exact)
            return p;
    }
    if (!comp.edges.empty())
        return g.edge_point(comp.edges.front(), Rat(1));
    return g.vertex_point(comp.vertices.front());
}

Potential potential(const ToricGeometry& g, const BundleClass& c, Vec2i I, const std::vector<Component>& comps)
{
    auto sp = section_polytope(g.surface(), c);
    if (!sp.contains(I))
        throw std::invalid_argument("not continuous on P");
    Potential pot;
    pot.c = c;
    pot.I = I;
    pot.ratio = g.potential_ratio(c, I);
    bool found = false;
    RawValue best;
    for (const auto& comp : comps) {
        RawValue rv;
        if (comp.whole) {
            rv.exact = LogValue();
        } else {
            rv = raw_value(g, c, I, representative(g, comp));
        }
        if (rv.kind != RawValue::Finite)
            continue;
        if (!found || rv.approx < best.approx - 1e-12 ||
            (rv.approx < best.approx + 1e-12 && rv.exact && !best.exact)) {
            best = rv;
            found = true;
        }
    }
    if (!found)
        throw NumericFailure("potential minimum not located");
    if (best.exact)
        pot.constant = -*best.exact;
    pot.constant_approx = -best.approx;
    return pot;
}

Potential potential(const ToricGeometry& g, const BundleClass& c, Vec2i I)
{
    return potential(g, c, I, intersection_components(g, c, I));
}

const Component* HomSpace::find(Vec2i I) const
{
    for (const auto& comp : generators)
        if (comp.I == I)
            return &comp;
    return nullptr;
}

std::vector<Vec2i> hom_candidates(const PolySurface& s, const BundleClass& c)
{
    auto pts = section_polytope(s, c, 1).lattice_points;
    auto more = signed_minkowski_points(s, c);
    pts.insert(pts.end(), more.begin(), more.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

HomSpace hom_space(const ToricGeometry& g, const BundleClass& from, const BundleClass& to)
{
    const PolySurface& s = g.surface();
    if (from.size() != s.rank() || to.size() != s.rank())
        throw std::invalid_argument("bundle has wrong length for this surface");
    HomSpace h;
    h.from = from;
    h.to = to;
    h.diff = to - from;
    for (const auto& I : hom_candidates(s, h.diff))
        for (auto& comp : intersection_components(g, h.diff, I)) {
            classify(g, comp);
            if (comp.generator())
                h.generators.push_back(std::move(comp));
            else
                h.rejected.push_back(std::move(comp));
        }
    return h;
}

nlohmann::json to_json(const HomSpace& h, const PolySurface& s)
{
    using nlohmann::json;
    json j;
    j["from"] = h.from.str();
    j["to"] = h.to.str();
    j["diff"] = h.diff.str();
    j["generators"] = json::array();
    for (const auto& comp : h.generators)
        j["generators"].push_back({{"I", label(comp.I)}, {"carrier", carrier_names(comp, s)}, {"degree", *comp.degree}});
    j["rejected"] = json::array();
    for (const auto& comp : h.rejected) {
        json r = {{"I", label(comp.I)}, {"carrier", carrier_names(comp, s)}, {"reason", comp.reason}};
        if (comp.degree)
            r["degree"] = *comp.degree;
        else
            r["degree"] = "non-constant";
        j["rejected"].push_back(r);
    }
    return j;
}

std::string to_text(const HomSpace& h, const PolySurface& s)
{
    std::ostringstream os;
    os << "Hom(L" << h.from.str() << ", L" << h.to.str() << ")  difference " << h.diff.str() << "  dim "
       << h.dim() << "\n";
    for (const auto& comp : h.generators)
        os << "  generator I=" << label(comp.I) << "  carrier " << carrier_str(comp, s) << "  degree "
           << *comp.degree << "\n";
    for (const auto& comp : h.rejected)
        os << "  rejected  I=" << label(comp.I) << "  carrier " << carrier_str(comp, s) << "  " << comp.reason
           << "\n";
    return os.str();
}

}  // namespace tmh

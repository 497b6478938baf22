#include "tmh/mirror.hpp"

#include "tmh/errors.hpp"
#include "tmh/parallel.hpp"
#include "tmh/solve.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace tmh {

namespace {

std::string vertex_name(const PolySurface& s, int v) { return to_string(s.display(s.vertices()[v])); }

std::string pair_str(const HomTable& t, int i, int j)
{
    return "L" + t.bundles[i].str() + " -> L" + t.bundles[j].str();
}

}  // namespace

FaceMinimum minimum_ratio(const ToricGeometry& g, const BundleClass& c, Vec2i I)
{
    const PolySurface& s = g.surface();
    RatFunc2 R = g.potential_ratio(c, I);
    FaceMinimum out;
    bool have = false;
    auto offer = [&](std::optional<Rat> ex, double ap, const std::string& where) {
        if (!have || ap < out.approx - 1e-12 || (ap < out.approx + 1e-12 && ex && !out.exact)) {
            out.exact = ex;
            out.approx = ap;
            out.where = where;
            have = true;
        }
    };
    auto fail = [&](const std::string& why) {
        out.continuous = false;
        out.reason = why;
        return out;
    };

    for (std::size_t v = 0; v < s.vertices().size(); ++v) {
        auto [a, b] = s.vertex_edges(int(v));
        auto vl = vertex_limit(R, s.edges()[a].outer, s.edges()[b].outer);
        if (vl.status == VertexStatus::PathDependent)
            return fail("no limit at vertex " + vertex_name(s, int(v)));
        if (vl.status == VertexStatus::Divergent)
            continue;
        if (vl.value.sign() <= 0)
            return fail("unbounded at vertex " + vertex_name(s, int(v)));
        offer(vl.value, to_double(vl.value), vertex_name(s, int(v)));
    }

    for (const auto& edge : s.edges()) {
        std::string name = "E" + std::to_string(edge.name);
        auto er = edge_restriction(R, edge.outer);
        if (er.divergent)
            continue;
        if (er.value.is_zero())
            return fail("unbounded along " + name);
        const Poly1 &n = er.value.num(), &d = er.value.den();
        Poly1 crit = n.derivative() * d - n * d.derivative();
        if (crit.is_zero()) {
            Rat v = er.value.eval(Rat(1));
            offer(v, to_double(v), name);
            continue;
        }
        for (const auto& r : positive_roots(crit)) {
            if (r.exact) {
                Rat v = er.value.eval(*r.exact);
                offer(v, to_double(v), name);
            } else {
                offer(std::nullopt, er.value.eval(r.approx), name);
            }
        }
    }

    // interior critical points: zeros of s d/ds log R and t d/dt log R, each
    // written over the product of the factors that occur
    Poly2 prod = Poly2::constant(1), fs, ft;
    for (std::size_t k = 0; k < s.rank(); ++k)
        if (c[k] != 0)
            prod = prod * s.factors()[k].posynomial;
    for (std::size_t k = 0; k < s.rank(); ++k) {
        if (c[k] == 0)
            continue;
        Poly2 rest = Poly2::constant(c[k]);
        for (std::size_t l = 0; l < s.rank(); ++l)
            if (l != k && c[l] != 0)
                rest = rest * s.factors()[l].posynomial;
        const Poly2& q = s.factors()[k].posynomial;
        fs += q.euler_s() * rest;
        ft += q.euler_t() * rest;
    }
    fs = fs - prod * Rat(I.x);
    ft = ft - prod * Rat(I.y);
    if (fs.is_zero() && ft.is_zero()) {
        Rat v = R.eval(Rat(1), Rat(1));
        offer(v, to_double(v), "P");
    } else {
        auto cz = positive_common_zeros(fs, ft);
        for (const auto& r : cz.roots) {
            if (r.s && r.t) {
                Rat v = R.eval(*r.s, *r.t);
                offer(v, to_double(v), "interior");
            } else {
                offer(std::nullopt, R.eval(r.s_approx, r.t_approx), "interior");
            }
        }
    }
    if (!have)
        return fail("no minimum on the closed polytope");
    return out;
}

const SectionElement* SectionBasis::find(Vec2i I) const
{
    for (const auto& e : elements)
        if (e.I == I)
            return &e;
    return nullptr;
}

SectionBasis h0_basis(const ToricGeometry& g, const BundleClass& c)
{
    SectionBasis b;
    b.c = c;
    for (const auto& I : section_polytope(g.surface(), c).lattice_points) {
        SectionElement el;
        el.I = I;
        auto m = minimum_ratio(g, c, I);
        if (!m.continuous) {
            el.reason = m.reason;
            b.excluded.push_back(el);
            continue;
        }
        if (m.exact)
            el.kappa = -LogValue::log_of(*m.exact, Rat(1, 2));
        el.kappa_approx = -0.5 * std::log(m.approx);
        b.elements.push_back(el);
    }
    return b;
}

DimReport verify_dim_match(const ToricGeometry& g, const HomTable& t)
{
    DimReport rep;
    int n = int(t.bundles.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.rows.push_back({i, j, t.at(i, j).dim(), 0, false});
    parallel_for(rep.rows.size(), [&](std::size_t q) {
        auto& row = rep.rows[q];
        row.sheaf = h0_basis(g, t.bundles[row.j] - t.bundles[row.i]).dim();
        row.match = row.morse == row.sheaf;
    });
    for (const auto& row : rep.rows)
        rep.ok = rep.ok && row.match;
    return rep;
}

FunctorReport verify_functoriality(const CompositionEngine& eng, const HomTable& t,
                                   const std::vector<TripleTable>& tables)
{
    const ToricGeometry& g = eng.geometry();
    FunctorReport rep;
    std::map<BundleClass, SectionBasis> bases;
    auto basis = [&](const BundleClass& c) -> const SectionBasis& {
        auto it = bases.find(c);
        if (it == bases.end())
            it = bases.emplace(c, h0_basis(g, c)).first;
        return it->second;
    };
    auto fail = [&](const std::string& why) {
        if (rep.ok)
            rep.failure = why;
        rep.ok = false;
    };
    // normalisation duality: min f_I = 0 and max |e_I| = 1 give the same constant
    for (const auto& [key, h] : t.homs) {
        if (key.first == key.second)
            continue;
        for (const auto& comp : h.generators) {
            const SectionElement* el = basis(h.diff).find(comp.I);
            if (!el) {
                fail("no section e" + label(comp.I) + " for " + pair_str(t, key.first, key.second));
                continue;
            }
            const Potential& p = eng.potential_of(h.diff, comp.I);
            bool same = el->kappa && p.constant ? *el->kappa == *p.constant
                                                : std::abs(el->kappa_approx - p.constant_approx) < 1e-12;
            if (same)
                ++rep.normalisations;
            else
                fail("normalisation of " + label(comp.I) + " differs for " + pair_str(t, key.first, key.second));
        }
    }
    for (const auto& tt : tables)
        for (const auto& e : tt.entries) {
            BundleClass c1 = t.bundles[e.j] - t.bundles[e.i], c2 = t.bundles[e.k] - t.bundles[e.j];
            const SectionElement *a = basis(c1).find(e.I), *b = basis(c2).find(e.J), *ab = basis(c1 + c2).find(e.I + e.J);
            FunctorRow row{e.i, e.j, e.k, e.I, e.J, "0", "0", false, false};
            if (!a || !b) {
                fail("missing section for " + label(e.I) + " x " + label(e.J));
                rep.rows.push_back(row);
                continue;
            }
            if (!e.zero)
                row.weight_morse = e.weight_exact;
            if (ab) {
                // e_I e_J = exp(-(k_I + k_J - k_{I+J})) e_{I+J}
                if (a->kappa && b->kappa && ab->kappa) {
                    LogValue k = *a->kappa + *b->kappa - *ab->kappa;
                    row.weight_sheaf = k.exp_neg_str();
                    row.exact = !e.zero && e.kappa.has_value();
                    row.equal = row.exact && *e.kappa == k && e.target == e.I + e.J;
                } else {
                    double k = a->kappa_approx + b->kappa_approx - ab->kappa_approx;
                    std::ostringstream os;
                    os << std::setprecision(12) << std::exp(-k);
                    row.weight_sheaf = os.str();
                    row.equal = !e.zero && std::abs(k - e.kappa_approx) < 1e-12;
                }
            } else {
                row.equal = e.zero;
            }
            if (!row.equal)
                fail("weights differ for " + label(e.I) + " x " + label(e.J) + " over L" + t.bundles[e.i].str() +
                     " -> L" + t.bundles[e.j].str() + " -> L" + t.bundles[e.k].str());
            rep.rows.push_back(row);
        }
    return rep;
}

ExceptionalReport verify_exceptionality(const HomTable& t)
{
    ExceptionalReport rep;
    int n = int(t.bundles.size());
    auto fail = [&](ExceptionalRow& row, const std::string& why) {
        row.ok = false;
        if (rep.ok)
            rep.failure = why;
        rep.ok = false;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const HomSpace& h = t.at(i, j);
            ExceptionalRow row{i, j, h.dim(), true, {}};
            for (const auto& comp : h.rejected)
                row.killed.push_back(label(comp.I) + ": " + comp.reason);
            if (i == j) {
                if (h.dim() != 1 || !h.generators[0].whole)
                    fail(row, "End(L" + t.bundles[i].str() + ") is not spanned by the identity");
            } else if (j < i) {
                if (h.dim() != 0)
                    fail(row, "Hom(" + pair_str(t, i, j) + ") is nonzero");
            } else {
                for (const auto& comp : h.generators)
                    if (comp.degree && *comp.degree != 0)
                        fail(row, "generator of nonzero degree in Hom(" + pair_str(t, i, j) + ")");
            }
            rep.rows.push_back(row);
        }
    return rep;
}

VerifyReport run_verification(const ToricGeometry& g, const std::vector<BundleClass>& collection, double grid_tol)
{
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport r;
    r.table = hom_table(g, collection);
    CompositionEngine eng(g, grid_tol);
    r.tables = eng.compose_table(r.table);
    r.dims = verify_dim_match(g, r.table);
    r.functor = verify_functoriality(eng, r.table, r.tables);
    r.exceptional = verify_exceptionality(r.table);
    r.assoc = verify_associativity(r.table, r.tables);
    r.unit = verify_unit_law(eng, r.table);
    auto note = [&](bool ok, const std::string& what) {
        if (!ok && r.ok) {
            r.ok = false;
            r.first_failure = what;
        }
    };
    for (const auto& row : r.dims.rows)
        note(row.match, "dimension mismatch for " + pair_str(r.table, row.i, row.j) + ": Morse " +
                            std::to_string(row.morse) + ", sheaf " + std::to_string(row.sheaf));
    note(r.functor.ok, r.functor.failure);
    note(r.exceptional.ok, r.exceptional.failure);
    note(r.assoc.ok, r.assoc.failure);
    note(r.unit.ok, r.unit.failure);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

nlohmann::json to_json(const VerifyReport& r, const PolySurface& s)
{
    using nlohmann::json;
    const HomTable& t = r.table;
    json j;
    j["surface"] = s.preset().empty() ? "custom" : s.preset();
    j["collection"] = json::array();
    for (const auto& b : t.bundles)
        j["collection"].push_back(b.str());
    auto pair = [&](int a, int b) { return json::array({t.bundles[a].str(), t.bundles[b].str()}); };

    json dims = json::array();
    for (const auto& row : r.dims.rows)
        dims.push_back({{"pair", pair(row.i, row.j)}, {"morse_dim", row.morse}, {"sheaf_dim", row.sheaf}, {"match", row.match}});
    json fun = json::array();
    for (const auto& row : r.functor.rows)
        fun.push_back({{"pair_of_gens", {label(row.I), label(row.J)}},
                       {"triple", {t.bundles[row.i].str(), t.bundles[row.j].str(), t.bundles[row.k].str()}},
                       {"weight_morse", row.weight_morse},
                       {"weight_sheaf", row.weight_sheaf},
                       {"equal", row.equal},
                       {"exact", row.exact}});
    json exc = json::array();
    for (const auto& row : r.exceptional.rows)
        exc.push_back({{"pair", pair(row.i, row.j)}, {"dim", row.dim}, {"ok", row.ok}, {"killed", row.killed}});

    j["checks"] = {
        {"dim_match", {{"status", r.dims.ok ? "pass" : "fail"}, {"rows", dims}}},
        {"functoriality",
         {{"status", r.functor.ok ? "pass" : "fail"}, {"normalisations", r.functor.normalisations}, {"rows", fun}}},
        {"exceptionality", {{"status", r.exceptional.ok ? "pass" : "fail"}, {"rows", exc}}},
        {"associativity", {{"status", r.assoc.ok ? "pass" : "fail"}, {"checked", r.assoc.checked}}},
        {"unit_law", {{"status", r.unit.ok ? "pass" : "fail"}, {"checked", r.unit.checked}}},
    };
    j["status"] = r.ok ? "pass" : "fail";
    if (!r.ok)
        j["first_failure"] = r.first_failure;
    return j;
}

std::string to_text(const VerifyReport& r)
{
    const HomTable& t = r.table;
    std::ostringstream os;
    int n = int(t.bundles.size());
    os << "dimensions (Morse/sheaf), row = source, column = target\n";
    for (int i = 0; i < n; ++i) {
        os << "  L" << std::left << std::setw(14) << t.bundles[i].str() << std::right;
        for (int j = 0; j < n; ++j) {
            const auto& row = r.dims.rows[i * n + j];
            os << std::setw(6) << (std::to_string(row.morse) + "/" + std::to_string(row.sheaf));
        }
        os << "\n";
    }
    auto status = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    os << "dim match       " << status(r.dims.ok) << "\n";
    os << "functoriality   " << status(r.functor.ok) << "  (" << r.functor.rows.size() << " products, "
       << r.functor.normalisations << " normalisations)\n";
    os << "exceptionality  " << status(r.exceptional.ok) << "\n";
    os << "associativity   " << status(r.assoc.ok) << "  (" << r.assoc.checked << " triples)\n";
    os << "unit law        " << status(r.unit.ok) << "  (" << r.unit.checked << " products)\n";
    os << (r.ok ? "PASS" : "FAIL: " + r.first_failure) << "\n";
    return os.str();
}

}  // namespace tmh

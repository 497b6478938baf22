#include "tmh/composition.hpp"

#include "tmh/errors.hpp"
#include "tmh/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace tmh {

namespace {

constexpr double kMeetTol = 1e-4;
constexpr double kStep = 1e-3;
constexpr double kMaxPath = 100;
constexpr double kEndFrac = 1e-6;

double seg_distance(Vec2d p, Vec2d a, Vec2d b)
{
    Vec2d d = b - a;
    double l2 = dot(d, d);
    double u = l2 > 0 ? std::clamp(dot(p - a, d) / l2, 0.0, 1.0) : 0.0;
    return (a + d * u - p).norm();
}

double carrier_distance(const ToricGeometry& g, const Component& comp, Vec2d x)
{
    const auto& s = g.surface();
    if (comp.whole)
        return 0;
    double best = std::numeric_limits<double>::infinity();
    for (int e : comp.edges) {
        const auto& edge = s.edges()[e];
        best = std::min(best, seg_distance(x, to_d(s.vertices()[edge.from]), to_d(s.vertices()[edge.to])));
    }
    for (int v : comp.vertices)
        best = std::min(best, (to_d(s.vertices()[v]) - x).norm());
    for (const auto& p : comp.points)
        best = std::min(best, (p.approx - x).norm());
    return best;
}

bool contains_point(const Component& comp, const FacePoint& p)
{
    if (comp.whole)
        return true;
    if (p.kind == FaceKind::Vertex)
        return comp.has_vertex(p.index);
    if (p.kind == FaceKind::Edge && comp.has_edge(p.index))
        return true;
    for (const auto& q : comp.points)
        if ((q.approx - p.approx).norm() < 1e-9)
            return true;
    return false;
}

std::string fmt(double v, int prec = 6)
{
    if (std::abs(v) < 5e-13)
        v = 0;
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

std::string point_str(const PolySurface& s, Vec2d x)
{
    Vec2d d = s.display(x);
    return "(" + fmt(d.x) + "," + fmt(d.y) + ")";
}

// the first-variable value of a one-variable rational function, in log scale
struct EdgeLog {
    RatFunc1 r, dr;
    double slope(double lam) const
    {
        double rho = std::exp(lam);
        return 0.5 * rho * dr.eval(rho) / r.eval(rho);
    }
};

}  // namespace

HomTable hom_table(const ToricGeometry& g, const std::vector<BundleClass>& bundles)
{
    HomTable t;
    t.bundles = bundles;
    int n = int(bundles.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pairs.push_back({i, j});
    std::vector<HomSpace> out(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t q) { out[q] = hom_space(g, bundles[pairs[q].first], bundles[pairs[q].second]); });
    for (std::size_t q = 0; q < pairs.size(); ++q)
        t.homs.emplace(pairs[q], std::move(out[q]));
    return t;
}

std::vector<Vec2d> common_points(const ToricGeometry& g, const std::vector<const Component*>& comps)
{
    const auto& s = g.surface();
    std::vector<FacePoint> cand;
    for (std::size_t v = 0; v < s.vertices().size(); ++v)
        cand.push_back(g.vertex_point(int(v)));
    for (std::size_t e = 0; e < s.edges().size(); ++e)
        cand.push_back(g.edge_point(int(e), Rat(1)));
    for (const auto* c : comps)
        for (const auto& p : c->points)
            cand.push_back(p);
    std::vector<Vec2d> out;
    for (const auto& p : cand) {
        bool all = true;
        for (const auto* c : comps)
            all = all && contains_point(*c, p);
        if (all)
            out.push_back(p.approx);
    }
    return out;
}

CompositionEngine::CompositionEngine(const ToricGeometry& g, double grid_tol, int grid_n)
    : g_(g), grid_tol_(grid_tol), grid_n_(grid_n)
{
    if (!(grid_tol > 0) || grid_n < 2)
        throw std::invalid_argument("tolerances must be positive");
}

const std::vector<GridPoint>& CompositionEngine::grid() const
{
    std::call_once(grid_once_, [&] { grid_ = polytope_grid(g_, grid_n_); });
    return grid_;
}

const Potential& CompositionEngine::potential_of(const BundleClass& c, Vec2i I) const
{
    auto key = std::make_pair(c, I);
    {
        std::lock_guard lock(mu_);
        auto it = pots_.find(key);
        if (it != pots_.end())
            return *it->second;
    }
    auto p = std::make_shared<const Potential>(potential(g_, c, I));
    std::lock_guard lock(mu_);
    return *pots_.emplace(key, p).first->second;
}

CompositionEntry CompositionEngine::structure_constant(const HomTable& t, int i, int j, int k, const Component& z,
                                                       const Component& w) const
{
    CompositionEntry e;
    e.i = i;
    e.j = j;
    e.k = k;
    e.I = z.I;
    e.J = w.I;
    e.target = z.I + w.I;
    const Component* tgt = t.at(i, k).find(e.target);
    if (!tgt) {
        e.zero = true;
        return e;
    }
    const Potential& pz = potential_of(z.c, z.I);
    const Potential& pw = potential_of(w.c, w.I);
    const Potential& pt = potential_of(tgt->c, tgt->I);
    if (!(pz.ratio * pw.ratio == pt.ratio))
        throw NumericFailure("potentials of " + label(e.I) + " and " + label(e.J) + " are not additive");

    // kappa = (f_I + f_J)(v*) on the target carrier
    FacePoint v = representative(g_, *tgt);
    RawValue rz = raw_value(g_, z.c, z.I, v), rw = raw_value(g_, w.c, w.I, v);
    if (rz.kind != RawValue::Finite || rw.kind != RawValue::Finite)
        throw NumericFailure("f_I + f_J is not finite on the target carrier");
    e.kappa_approx = rz.approx + rw.approx + pz.constant_approx + pw.constant_approx;
    std::optional<LogValue> by_constants;
    if (pz.constant && pw.constant && pt.constant)
        by_constants = *pz.constant + *pw.constant - *pt.constant;
    if (rz.exact && rw.exact && pz.constant && pw.constant) {
        e.kappa = *rz.exact + *rw.exact + *pz.constant + *pw.constant;
        if (by_constants && !(*by_constants == *e.kappa))
            throw NumericFailure("kappa at the target disagrees with the normalising constants");
    } else {
        e.kappa = by_constants;
    }
    if (e.kappa)
        e.kappa_approx = e.kappa->value();
    if (e.kappa_approx < -1e-12)
        throw NumericFailure("negative structure constant");

    // certificate: f_I + f_J >= kappa on the grid
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& gp : grid()) {
        double val = g_.potential_raw(z.c, z.I, gp.flat) + g_.potential_raw(w.c, w.I, gp.flat) +
                     pz.constant_approx + pw.constant_approx - e.kappa_approx;
        lo = std::min(lo, val);
    }
    e.grid_min = lo;
    if (lo < -grid_tol_ * std::max(1.0, e.kappa_approx))
        throw NumericFailure("grid certificate violated for " + label(e.I) + " x " + label(e.J));

    e.weight = std::exp(-e.kappa_approx);
    e.weight_exact = e.kappa ? e.kappa->exp_neg_str() : fmt(e.weight, 12);
    e.tree = trace_tree(z, w, *tgt, v.approx);
    return e;
}

TreeTrace CompositionEngine::trace_tree(const Component& z, const Component& w, const Component& target,
                                        Vec2d root) const
{
    const auto& s = g_.surface();
    TreeTrace tr;
    tr.root = root;
    auto meet = common_points(g_, {&z, &w, &target});
    if (!meet.empty()) {
        tr.trivial = tr.found = true;
        tr.multiplicity = 1;
        tr.meeting = meet.front();
        for (const auto& m : meet)
            if ((m - root).norm() < (tr.meeting - root).norm())
                tr.meeting = m;
        return tr;
    }

    const Potential& pz = potential_of(z.c, z.I);
    const Potential& pw = potential_of(w.c, w.I);
    std::vector<TreeTrace> found;
    for (std::size_t ei = 0; ei < s.edges().size(); ++ei) {
        int e = int(ei);
        if (z.has_edge(e) || w.has_edge(e))
            continue;
        const auto& edge = s.edges()[e];
        auto fz = edge_restriction(pz.ratio, edge.outer);
        auto fw = edge_restriction(pw.ratio, edge.outer);
        if (fz.divergent || fw.divergent)
            continue;
        EdgeLog lz{fz.value, fz.value.derivative()}, lw{fw.value, fw.value.derivative()};

        // log-parameter of the edge ends, clipped a fraction kEndFrac inside
        FacePoint pa = g_.edge_point_fraction(e, kEndFrac), pb = g_.edge_point_fraction(e, 1 - kEndFrac);
        double lam_from = std::log(pa.rho_approx), lam_to = std::log(pb.rho_approx);
        struct End {
            double lam;   // start of the integration
            Vec2d pos;    // carrier point
        };
        auto ends_of = [&](const Component& comp) {
            std::vector<End> out;
            if (comp.has_vertex(edge.from))
                out.push_back({lam_from, to_d(s.vertices()[edge.from])});
            if (comp.has_vertex(edge.to))
                out.push_back({lam_to, to_d(s.vertices()[edge.to])});
            for (const auto& p : comp.points)
                if (p.kind == FaceKind::Edge && p.index == e)
                    out.push_back({std::log(p.rho_approx), p.approx});
            return out;
        };

        for (const auto& a : ends_of(z))
            for (const auto& b : ends_of(w)) {
                if (std::abs(a.lam - b.lam) < 1e-12)
                    continue;
                double d = a.lam < b.lam ? 1 : -1;
                // the minimum of f_I + f_J between the ends: slope changes - to + along d
                auto h = [&](double lam) { return d * (lz.slope(lam) + lw.slope(lam)); };
                const int n = 4000;
                std::vector<double> stars;
                double prev_l = a.lam, prev_h = h(a.lam);
                for (int q = 1; q <= n; ++q) {
                    double lam = a.lam + (b.lam - a.lam) * q / n;
                    double hv = h(lam);
                    if (prev_h < 0 && hv >= 0) {
                        double lo = prev_l, hi = lam;
                        for (int it = 0; it < 100; ++it) {
                            double mid = 0.5 * (lo + hi);
                            (h(mid) < 0 ? lo : hi) = mid;
                        }
                        stars.push_back(0.5 * (lo + hi));
                    }
                    prev_l = lam;
                    prev_h = hv;
                }
                for (double star : stars) {
                    Vec2d x = g_.edge_moment(e, star);
                    if (carrier_distance(g_, target, x) > kMeetTol)
                        continue;
                    TreeTrace cand = tr;
                    cand.meeting = x;
                    bool ok = true;
                    for (int src = 0; src < 2 && ok; ++src) {
                        const End& st = src == 0 ? a : b;
                        const EdgeLog& fl = src == 0 ? lz : lw;
                        double dir = star > st.lam ? 1 : -1;
                        // arc length u from the carrier point against the log parameter
                        int m = std::max(2000, int(std::abs(star - st.lam) / 1e-3));
                        std::vector<double> lam(m + 1), arc(m + 1);
                        Vec2d prev = st.pos;
                        double acc = 0;
                        for (int q = 0; q <= m; ++q) {
                            lam[q] = st.lam + (star - st.lam) * q / m;
                            Vec2d x = g_.edge_moment(e, lam[q]);
                            acc += (x - prev).norm();
                            arc[q] = acc;
                            prev = x;
                        }
                        auto lam_at = [&](double u) {
                            if (u <= arc[0])
                                return lam[0];
                            if (u >= arc[m])
                                return lam[m];
                            auto it = std::upper_bound(arc.begin(), arc.end(), u);
                            std::size_t q = it - arc.begin();
                            double w = (u - arc[q - 1]) / std::max(arc[q] - arc[q - 1], 1e-300);
                            return lam[q - 1] + w * (lam[q] - lam[q - 1]);
                        };
                        // unit-speed ascent field of f along the edge, towards the meeting point = +u
                        auto rhs = [&](double u) {
                            double sl = dir * fl.slope(lam_at(u));
                            return sl > 0 ? 1.0 : (sl < 0 ? -1.0 : 0.0);
                        };
                        double u = 0, len = 0;
                        while (u < arc[m]) {
                            double k1 = rhs(u), k2 = rhs(u + 0.5 * kStep * k1), k3 = rhs(u + 0.5 * kStep * k2),
                                   k4 = rhs(u + kStep * k3);
                            double du = kStep / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
                            if (du == 0) {
                                ok = false;
                                cand.failure = "flow stalls on E" + std::to_string(edge.name);
                                break;
                            }
                            u += du;
                            len += std::abs(du);
                            if (len > kMaxPath) {
                                ok = false;
                                cand.failure = "tree not found";
                                break;
                            }
                        }
                        len -= std::max(0.0, u - arc[m]);
                        if (ok)
                            cand.edges.push_back({e, src, st.pos, x, len});
                    }
                    if (ok)
                        found.push_back(cand);
                }
            }
    }
    if (found.empty()) {
        tr.failure = "tree not found";
        return tr;
    }
    TreeTrace out = found.front();
    out.found = true;
    out.multiplicity = int(found.size());
    if (out.multiplicity != 1)
        out.failure = "found " + std::to_string(out.multiplicity) + " trees, expected 1";
    return out;
}

std::vector<TripleTable> CompositionEngine::compose_table(const HomTable& t) const
{
    int n = int(t.bundles.size());
    struct Job {
        std::size_t table;
        const Component *z, *w;
    };
    std::vector<TripleTable> tables;
    std::vector<Job> jobs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto &a = t.at(i, j), &b = t.at(j, k);
                if (a.dim() == 0 || b.dim() == 0)
                    continue;
                tables.push_back({i, j, k, {}});
                for (const auto& z : a.generators)
                    for (const auto& w : b.generators)
                        jobs.push_back({tables.size() - 1, &z, &w});
            }
    std::vector<CompositionEntry> out(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t q) {
        const auto& tt = tables[jobs[q].table];
        out[q] = structure_constant(t, tt.i, tt.j, tt.k, *jobs[q].z, *jobs[q].w);
    });
    for (std::size_t q = 0; q < jobs.size(); ++q)
        tables[jobs[q].table].entries.push_back(std::move(out[q]));
    for (auto& tt : tables)
        std::stable_sort(tt.entries.begin(), tt.entries.end(), [](const auto& x, const auto& y) {
            return std::tie(x.I, x.J) < std::tie(y.I, y.J);
        });
    return tables;
}

AssociativityReport verify_associativity(const HomTable& t, const std::vector<TripleTable>& tables)
{
    using Key = std::tuple<int, int, int, Vec2i, Vec2i>;
    std::map<Key, const CompositionEntry*> idx;
    for (const auto& tt : tables)
        for (const auto& e : tt.entries)
            idx[{e.i, e.j, e.k, e.I, e.J}] = &e;
    auto get = [&](int i, int j, int k, Vec2i I, Vec2i J) -> const CompositionEntry* {
        auto it = idx.find({i, j, k, I, J});
        if (it == idx.end())
            throw std::logic_error("composition table is missing an entry");
        return it->second;
    };
    struct Sum {
        bool zero = true;
        Vec2i target;
        std::optional<LogValue> kappa;
        double approx = 0;
    };
    auto chain = [](const CompositionEntry* x, auto&& next) {
        Sum r;
        if (x->zero)
            return r;
        const CompositionEntry* y = next(x->target);
        if (y->zero)
            return r;
        r.zero = false;
        r.target = y->target;
        if (x->kappa && y->kappa)
            r.kappa = *x->kappa + *y->kappa;
        r.approx = x->kappa_approx + y->kappa_approx;
        return r;
    };
    AssociativityReport rep;
    int n = int(t.bundles.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    for (const auto& a : t.at(i, j).generators)
                        for (const auto& b : t.at(j, k).generators)
                            for (const auto& c : t.at(k, l).generators) {
                                Sum left = chain(get(i, j, k, a.I, b.I), [&](Vec2i m) { return get(i, k, l, m, c.I); });
                                const CompositionEntry* bc = get(j, k, l, b.I, c.I);
                                Sum right;
                                if (!bc->zero) {
                                    const CompositionEntry* abc = get(i, j, l, a.I, bc->target);
                                    if (!abc->zero) {
                                        right.zero = false;
                                        right.target = abc->target;
                                        if (bc->kappa && abc->kappa)
                                            right.kappa = *bc->kappa + *abc->kappa;
                                        right.approx = bc->kappa_approx + abc->kappa_approx;
                                    }
                                }
                                ++rep.checked;
                                bool same = left.zero == right.zero;
                                if (same && !left.zero) {
                                    same = left.target == right.target;
                                    if (left.kappa && right.kappa)
                                        same = same && *left.kappa == *right.kappa;
                                    else
                                        same = same && std::abs(left.approx - right.approx) < 1e-12;
                                }
                                if (!same && rep.ok) {
                                    rep.ok = false;
                                    rep.failure = "triple " + label(a.I) + " x " + label(b.I) + " x " + label(c.I) +
                                                  " over L" + t.bundles[i].str() + " -> L" + t.bundles[j].str() +
                                                  " -> L" + t.bundles[k].str() + " -> L" + t.bundles[l].str();
                                }
                            }
    return rep;
}

UnitReport verify_unit_law(const CompositionEngine& eng, const HomTable& t)
{
    UnitReport rep;
    int n = int(t.bundles.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const auto& idl = t.at(i, i).generators;
            const auto& idr = t.at(j, j).generators;
            if (idl.size() != 1 || idr.size() != 1 || !idl[0].whole || !idr[0].whole) {
                rep.ok = false;
                rep.failure = "endomorphisms of L" + t.bundles[i].str() + " are not the identity";
                return rep;
            }
            for (const auto& g : t.at(i, j).generators) {
                for (int side = 0; side < 2; ++side) {
                    auto e = side == 0 ? eng.structure_constant(t, i, i, j, idl[0], g)
                                       : eng.structure_constant(t, i, j, j, g, idr[0]);
                    ++rep.checked;
                    bool ok = !e.zero && e.target == g.I && e.kappa && e.kappa->is_zero() && e.tree.trivial;
                    if (!ok && rep.ok) {
                        rep.ok = false;
                        rep.failure = "unit law fails for " + label(g.I) + " in Hom(L" + t.bundles[i].str() + ", L" +
                                      t.bundles[j].str() + ")";
                    }
                }
            }
        }
    return rep;
}

std::string kappa_str(const CompositionEntry& e)
{
    if (e.zero)
        return "-";
    if (e.kappa)
        return e.kappa->str();
    return fmt(e.kappa_approx, 12);
}

std::string tree_str(const TreeTrace& tr, const PolySurface& s)
{
    if (tr.trivial)
        return "trivial at " + point_str(s, tr.meeting);
    if (!tr.found)
        return tr.failure;
    std::string out;
    for (const auto& te : tr.edges) {
        if (!out.empty())
            out += ", ";
        out += std::string(te.source == 0 ? "Z" : "W") + " on E" + std::to_string(s.edges()[te.face].name) + " " +
               point_str(s, te.start) + "->" + point_str(s, te.end);
    }
    if (!tr.failure.empty())
        out += " [" + tr.failure + "]";
    return out;
}

nlohmann::json to_json(const TripleTable& tt, const HomTable& t, const PolySurface& s)
{
    using nlohmann::json;
    auto coord = [&](Vec2d x) {
        Vec2d d = s.display(x);
        auto r = [](double v) { return std::round(v * 1e9) / 1e9 + 0.0; };
        return json::array({r(d.x), r(d.y)});
    };
    json j;
    j["triple"] = {t.bundles[tt.i].str(), t.bundles[tt.j].str(), t.bundles[tt.k].str()};
    j["entries"] = json::array();
    for (const auto& e : tt.entries) {
        json x;
        x["I"] = label(e.I);
        x["J"] = label(e.J);
        if (e.zero) {
            x["target"] = nullptr;
            x["weight_float"] = 0.0;
            x["tree"] = nullptr;
            j["entries"].push_back(x);
            continue;
        }
        x["target"] = label(e.target);
        json terms = json::array();
        if (e.kappa)
            for (const auto& [p, q] : e.kappa->terms())
                terms.push_back({to_string(q), p.str()});
        x["kappa"] = {{"terms", terms}};
        if (e.kappa && e.kappa->linear() != 0)
            x["kappa"]["linear"] = to_string(e.kappa->linear());
        x["weight"] = e.weight_exact;
        x["weight_float"] = std::round(e.weight * 1e12) / 1e12;
        if (e.tree.trivial) {
            x["tree"] = "trivial";
        } else {
            json path = json::array();
            for (const auto& te : e.tree.edges)
                path.push_back({{"face", "E" + std::to_string(s.edges()[te.face].name)},
                                {"from", te.source == 0 ? "Z" : "W"},
                                {"start", coord(te.start)},
                                {"end", coord(te.end)}});
            x["tree"] = path;
            if (!e.tree.failure.empty())
                x["tree_note"] = e.tree.failure;
        }
        x["meeting"] = coord(e.tree.meeting);
        j["entries"].push_back(x);
    }
    return j;
}

std::string to_text(const TripleTable& tt, const HomTable& t, const PolySurface& s)
{
    std::ostringstream os;
    os << "L" << t.bundles[tt.i].str() << " -> L" << t.bundles[tt.j].str() << " -> L" << t.bundles[tt.k].str()
       << "\n";
    for (const auto& e : tt.entries) {
        os << "  Z" << label(e.I) << " x W" << label(e.J) << " -> ";
        if (e.zero) {
            os << "0\n";
            continue;
        }
        os << "V" << label(e.target) << "  weight " << e.weight_exact << " (kappa = " << kappa_str(e) << ") = "
           << std::fixed << std::setprecision(12) << e.weight << std::defaultfloat << "  tree "
           << tree_str(e.tree, s) << "\n";
    }
    return os.str();
}

namespace {

struct Canvas {
    const PolySurface& s;
    Vec2d lo, hi;
    double scale = 1;
    std::ostringstream body;

    explicit Canvas(const PolySurface& surf) : s(surf)
    {
        lo = {1e300, 1e300};
        hi = {-1e300, -1e300};
        for (const auto& v : s.display_vertices()) {
            Vec2d d = to_d(v);
            lo = {std::min(lo.x, d.x), std::min(lo.y, d.y)};
            hi = {std::max(hi.x, d.x), std::max(hi.y, d.y)};
        }
        scale = 640 / std::max(hi.x - lo.x, hi.y - lo.y);
    }
    // moment coordinates to pixels
    Vec2d px(Vec2d x) const
    {
        Vec2d d = s.display(x);
        return {80 + (d.x - lo.x) * scale, 720 - (d.y - lo.y) * scale};
    }
    void line(Vec2d a, Vec2d b, const std::string& style)
    {
        Vec2d p = px(a), q = px(b);
        body << "<line x1=\"" << fmt(p.x) << "\" y1=\"" << fmt(p.y) << "\" x2=\"" << fmt(q.x) << "\" y2=\"" << fmt(q.y)
             << "\" " << style << "/>\n";
    }
    void dot(Vec2d a, double r)
    {
        Vec2d p = px(a);
        body << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\"" << r << "\" fill=\"black\"/>\n";
    }
    void text(Vec2d pixel, const std::string& t, const std::string& extra = "")
    {
        body << "<text x=\"" << fmt(pixel.x) << "\" y=\"" << fmt(pixel.y) << "\" font-size=\"18\" " << extra << ">" << t
             << "</text>\n";
    }
    void outline()
    {
        const auto& vs = s.vertices();
        Vec2d c{0, 0};
        for (const auto& v : vs)
            c = c + px(to_d(v)) * (1.0 / vs.size());
        for (const auto& e : s.edges()) {
            Vec2d a = to_d(vs[e.from]), b = to_d(vs[e.to]);
            line(a, b, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"8,6\"");
            Vec2d m = (px(a) + px(b)) * 0.5;
            Vec2d out = m - c;
            out = out * (28 / out.norm());
            text(m + out, "E" + std::to_string(e.name), "text-anchor=\"middle\" font-style=\"italic\"");
        }
    }
    void carrier(const Component& comp, const std::string& name)
    {
        const auto& vs = s.vertices();
        Vec2d anchor{0, 0};
        bool have = false;
        if (comp.whole) {
            body << "<polygon points=\"";
            for (const auto& v : vs) {
                Vec2d p = px(to_d(v));
                body << fmt(p.x) << "," << fmt(p.y) << " ";
            }
            body << "\" fill=\"#dddddd\"/>\n";
        }
        for (int e : comp.edges) {
            Vec2d a = to_d(vs[s.edges()[e].from]), b = to_d(vs[s.edges()[e].to]);
            line(a, b, "stroke=\"black\" stroke-width=\"6\"");
            if (!have)
                anchor = (a + b) * 0.5, have = true;
        }
        if (comp.edges.empty())
            for (int v : comp.vertices) {
                dot(to_d(vs[v]), 6);
                if (!have)
                    anchor = to_d(vs[v]), have = true;
            }
        for (const auto& p : comp.points) {
            dot(p.approx, 6);
            if (!have)
                anchor = p.approx, have = true;
        }
        if (!have)
            anchor = to_d(s.centroid());
        text(px(anchor) + Vec2d{8, -8}, name);
    }
    void arrow(Vec2d a, Vec2d b)
    {
        line(a, b, "stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#head)\"");
    }
    std::string done(const std::string& title) const
    {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
           << "<defs><marker id=\"head\" markerWidth=\"12\" markerHeight=\"12\" refX=\"10\" refY=\"6\" "
              "orient=\"auto\"><path d=\"M0,0 L12,6 L0,12 z\" fill=\"black\"/></marker></defs>\n"
           << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n"
           << "<text x=\"400\" y=\"40\" font-size=\"20\" text-anchor=\"middle\">" << title << "</text>\n"
           << body.str() << "</svg>\n";
        return os.str();
    }
};

std::string sub(const std::string& letter, Vec2i I)
{
    return letter + "<tspan baseline-shift=\"sub\" font-size=\"13\">" + label(I) + "</tspan>";
}

}  // namespace

std::string triple_svg(const TripleTable& tt, const HomTable& t, const PolySurface& s)
{
    Canvas cv(s);
    cv.outline();
    for (const auto& comp : t.at(tt.i, tt.k).generators)
        cv.carrier(comp, sub("V", comp.I));
    for (const auto& e : tt.entries) {
        if (e.zero || e.tree.trivial || !e.tree.found)
            continue;
        for (const auto& te : e.tree.edges) {
            cv.line(te.start, te.end, "stroke=\"black\" stroke-width=\"1.5\"");
            // arrow over the first 60% of the path, in the flow direction
            cv.arrow(te.start, te.start + (te.end - te.start) * 0.6);
        }
    }
    std::string title = "L" + t.bundles[tt.i].str() + " → L" + t.bundles[tt.j].str() + " → L" +
                        t.bundles[tt.k].str();
    return cv.done(title);
}

std::string hom_svg(const HomSpace& h, const PolySurface& s)
{
    Canvas cv(s);
    cv.outline();
    for (const auto& comp : h.generators)
        cv.carrier(comp, sub("V", comp.I));
    return cv.done("Hom(L" + h.from.str() + ", L" + h.to.str() + ")");
}

}  // namespace tmh

#include "tmh/geometry.hpp"

#include "tmh/errors.hpp"
#include "tmh/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tmh {

namespace {

constexpr double kZeroEig = 1e-9;

Mat2d inverse(const Mat2d& m)
{
    double d = m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
    Mat2d r;
    r.a[0][0] = m.a[1][1] / d;
    r.a[1][1] = m.a[0][0] / d;
    r.a[0][1] = -m.a[0][1] / d;
    r.a[1][0] = -m.a[1][0] / d;
    return r;
}

Mat2d mul(const Mat2d& a, const Mat2d& b)
{
    Mat2d r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = a.a[i][0] * b.a[0][j] + a.a[i][1] * b.a[1][j];
    return r;
}

Mat2d to_d(const Mat2q& q)
{
    Mat2d r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = to_double(q.a[i][j]);
    return r;
}

}  // namespace

int negative_eigenvalues(const Jacobian& j)
{
    if (j.exact) {
        int dt = sign(j.q.det()), tr = sign(j.q.trace());
        if (dt < 0)
            return 1;
        if (dt > 0)
            return tr < 0 ? 2 : 0;
        return tr < 0 ? 1 : 0;
    }
    Eigen::Matrix2d m;
    m << j.d.a[0][0], j.d.a[0][1], j.d.a[1][0], j.d.a[1][1];
    Eigen::EigenSolver<Eigen::Matrix2d> es(m, false);
    int n = 0;
    for (int i = 0; i < 2; ++i)
        if (es.eigenvalues()[i].real() < -kZeroEig)
            ++n;
    return n;
}

std::vector<Vec2d> stable_directions(const Jacobian& j)
{
    Eigen::Matrix2d m;
    m << j.d.a[0][0], j.d.a[0][1], j.d.a[1][0], j.d.a[1][1];
    Eigen::EigenSolver<Eigen::Matrix2d> es(m, true);
    std::vector<Vec2d> out;
    for (int i = 0; i < 2; ++i) {
        if (es.eigenvalues()[i].real() >= -kZeroEig)
            continue;
        Eigen::Vector2d v = es.eigenvectors().col(i).real();
        if (v.norm() == 0)
            continue;
        v.normalize();
        out.push_back({v[0], v[1]});
    }
    return out;
}

ToricGeometry::ToricGeometry(const PolySurface& s) : surface_(s)
{
    for (const auto& f : s.factors()) {
        q_.push_back(RatFunc2(f.posynomial));
        pts_.push_back(f.polygon.lattice_points());
        coeff_.push_back(to_double(f.coeff));
    }
    for (std::size_t k = 0; k < q_.size(); ++k) {
        RatFunc2 two = RatFunc2::constant(2 * s.factors()[k].coeff);
        moment_.x1 = moment_.x1 + two * log_deriv_s(q_[k]);
        moment_.x2 = moment_.x2 + two * log_deriv_t(q_[k]);
    }
    for (const auto& e : s.edges()) {
        auto a = edge_restriction(moment_.x1, e.outer);
        auto b = edge_restriction(moment_.x2, e.outer);
        if (a.divergent || b.divergent)
            throw std::logic_error("moment map diverges on an edge");
        edge_moment_.push_back({a.value, b.value});
    }
}

ToricGeometry::Stats ToricGeometry::stats(std::size_t k, Vec2d x) const
{
    const auto& pts = pts_[k];
    std::vector<double> l(pts.size());
    double mx = -1e300;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        l[i] = 2 * (pts[i].x * x.x + pts[i].y * x.y);
        mx = std::max(mx, l[i]);
    }
    double z = 0, m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        l[i] = std::exp(l[i] - mx);
        z += l[i];
        m0 += l[i] * pts[i].x;
        m1 += l[i] * pts[i].y;
    }
    Stats st;
    st.logq = mx + std::log(z);
    st.mean[0] = m0 / z;
    st.mean[1] = m1 / z;
    double c00 = 0, c01 = 0, c11 = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double dx = pts[i].x - st.mean[0], dy = pts[i].y - st.mean[1];
        c00 += l[i] * dx * dx;
        c01 += l[i] * dx * dy;
        c11 += l[i] * dy * dy;
    }
    st.cov[0][0] = c00 / z;
    st.cov[0][1] = st.cov[1][0] = c01 / z;
    st.cov[1][1] = c11 / z;
    return st;
}

Vec2d ToricGeometry::moment_map(Vec2d flat) const
{
    Vec2d r;
    for (std::size_t k = 0; k < q_.size(); ++k) {
        auto st = stats(k, flat);
        r.x += 2 * coeff_[k] * st.mean[0];
        r.y += 2 * coeff_[k] * st.mean[1];
    }
    return r;
}

Vec2q ToricGeometry::moment_map_st(const Rat& s, const Rat& t) const
{
    if (s.sign() <= 0 || t.sign() <= 0)
        throw std::invalid_argument("moment map needs s, t > 0");
    return {moment_.x1.eval(s, t), moment_.x2.eval(s, t)};
}

double ToricGeometry::psi(Vec2d flat) const
{
    double r = 0;
    for (std::size_t k = 0; k < q_.size(); ++k)
        r += coeff_[k] * stats(k, flat).logq;
    return r;
}

Mat2d ToricGeometry::hess_psi(Vec2d flat) const
{
    Mat2d h;
    for (std::size_t k = 0; k < q_.size(); ++k) {
        auto st = stats(k, flat);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                h.a[i][j] += 4 * coeff_[k] * st.cov[i][j];
    }
    return h;
}

Vec2d ToricGeometry::inverse_moment_map(Vec2d p, double tol) const
{
    if (!(surface_.boundary_distance(p) > tol))
        throw std::invalid_argument("not interior");
    Vec2d x{0, 0};
    auto objective = [&](Vec2d y) { return psi(y) - dot(p, y); };
    double fx = objective(x);
    for (int it = 0; it < 200; ++it) {
        Vec2d g = moment_map(x) - p;
        if (g.norm() <= tol)
            return x;
        Mat2d h = hess_psi(x);
        double det = h.a[0][0] * h.a[1][1] - h.a[0][1] * h.a[1][0];
        Vec2d step;
        if (det > 0 && std::isfinite(det)) {
            Mat2d hi = inverse(h);
            step = {-(hi.a[0][0] * g.x + hi.a[0][1] * g.y), -(hi.a[1][0] * g.x + hi.a[1][1] * g.y)};
        } else {
            step = g * -1.0;
        }
        double lam = 1;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            Vec2d y = x + step * lam;
            double fy = objective(y);
            // near the solution psi is flat in double precision; the residual still decides
            if (fy <= fx + 1e-4 * lam * dot(g, step) || (fy <= fx && ls > 40) ||
                (moment_map(y) - p).norm() < (1 - 1e-4 * lam) * g.norm()) {
                x = y;
                fx = fy;
                moved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!moved) {
            // objective flat at double precision; accept if the residual is small
            if ((moment_map(x) - p).norm() <= std::max(tol, 1e-9))
                return x;
            x = x + step * lam;
            fx = objective(x);
        }
    }
    Vec2d g = moment_map(x) - p;
    if (g.norm() <= tol)
        return x;
    throw NumericFailure("inverse moment map did not converge");
}

FieldPair ToricGeometry::lagrangian_section(const BundleClass& c) const
{
    if (c.size() != q_.size())
        throw std::invalid_argument("bundle length mismatch");
    FieldPair r;
    for (std::size_t k = 0; k < q_.size(); ++k) {
        if (c[k] == 0)
            continue;
        RatFunc2 ck = RatFunc2::constant(Rat(c[k]));
        r.x1 = r.x1 + ck * log_deriv_s(q_[k]);
        r.x2 = r.x2 + ck * log_deriv_t(q_[k]);
    }
    return r;
}

FieldPair ToricGeometry::vector_field(const BundleClass& c, Vec2i I) const
{
    auto r = lagrangian_section(c);
    r.x1 = r.x1 - RatFunc2::constant(Rat(I.x));
    r.x2 = r.x2 - RatFunc2::constant(Rat(I.y));
    return r;
}

Vec2d ToricGeometry::field_at(const BundleClass& c, Vec2i I, Vec2d flat) const
{
    Vec2d r{-double(I.x), -double(I.y)};
    for (std::size_t k = 0; k < q_.size(); ++k) {
        if (c[k] == 0)
            continue;
        auto st = stats(k, flat);
        r.x += c[k] * st.mean[0];
        r.y += c[k] * st.mean[1];
    }
    return r;
}

std::optional<std::pair<Rat, Rat>> ToricGeometry::field_at(const BundleClass& c, Vec2i I, const FacePoint& p) const
{
    auto f = vector_field(c, I);
    auto one = [&](const RatFunc2& g) -> std::optional<Rat> {
        switch (p.kind) {
        case FaceKind::Interior:
            if (!p.s || !p.t)
                return std::nullopt;
            return g.eval(*p.s, *p.t);
        case FaceKind::Edge: {
            if (!p.rho)
                return std::nullopt;
            auto e = edge_restriction(g, surface_.edges()[p.index].outer);
            if (e.divergent)
                return std::nullopt;
            return e.value.eval(*p.rho);
        }
        case FaceKind::Vertex: {
            auto [a, b] = surface_.vertex_edges(p.index);
            auto v = vertex_limit(g, surface_.edges()[a].outer, surface_.edges()[b].outer);
            if (v.status != VertexStatus::Finite)
                return std::nullopt;
            return v.value;
        }
        }
        return std::nullopt;
    };
    auto a = one(f.x1), b = one(f.x2);
    if (!a || !b)
        return std::nullopt;
    return std::make_pair(*a, *b);
}

RatFunc2 ToricGeometry::potential_ratio(const BundleClass& c, Vec2i I) const
{
    Poly2 num = Poly2::constant(1), den = Poly2::constant(1);
    for (std::size_t k = 0; k < q_.size(); ++k) {
        const Poly2& q = surface_.factors()[k].posynomial;
        for (long n = 0; n < std::abs(c[k]); ++n) {
            if (c[k] > 0)
                num = num * q;
            else
                den = den * q;
        }
    }
    den = den * Poly2::monomial(static_cast<int>(I.x), static_cast<int>(I.y));
    return RatFunc2(num, den);
}

double ToricGeometry::potential_raw(const BundleClass& c, Vec2i I, Vec2d flat) const
{
    double r = -(I.x * flat.x + I.y * flat.y);
    for (std::size_t k = 0; k < q_.size(); ++k)
        if (c[k] != 0)
            r += 0.5 * c[k] * stats(k, flat).logq;
    return r;
}

Mat2d ToricGeometry::hess_f(const BundleClass& c, Vec2d flat) const
{
    Mat2d h;
    for (std::size_t k = 0; k < q_.size(); ++k) {
        if (c[k] == 0)
            continue;
        auto st = stats(k, flat);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                h.a[i][j] += 2 * c[k] * st.cov[i][j];
    }
    return h;
}

Mat2d ToricGeometry::jacobian_interior(const BundleClass& c, Vec2d flat) const
{
    return mul(hess_f(c, flat), inverse(hess_psi(flat)));
}

std::shared_ptr<const ToricGeometry::JacData> ToricGeometry::jac_data(const BundleClass& c) const
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = jac_cache_.find(c);
        if (it != jac_cache_.end())
            return it->second;
    }
    // X^j = N_j / D and x^j = M_j / D with D = prod Q_k.  The flat Hessians are
    // 2(theta_i N_j D - N_j theta_i D)/D^2 and likewise for M; J = H_f Hpsi^{-1}.
    const std::size_t K = q_.size();
    Poly2 D = Poly2::constant(1);
    for (const auto& f : surface_.factors())
        D = D * f.posynomial;
    Poly2 N[2], M[2];
    for (std::size_t k = 0; k < K; ++k) {
        Poly2 rest = Poly2::constant(1);
        for (std::size_t l = 0; l < K; ++l)
            if (l != k)
                rest = rest * surface_.factors()[l].posynomial;
        const Poly2& q = surface_.factors()[k].posynomial;
        Poly2 ds = q.euler_s() * rest, dt = q.euler_t() * rest;
        if (c[k] != 0) {
            N[0] += ds * Rat(c[k]);
            N[1] += dt * Rat(c[k]);
        }
        M[0] += ds * surface_.factors()[k].coeff;
        M[1] += dt * surface_.factors()[k].coeff;
    }
    auto theta = [](const Poly2& p, int i) { return i == 0 ? p.euler_s() : p.euler_t(); };
    Poly2 A[2][2], B[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            A[i][j] = theta(N[j], i) * D - N[j] * theta(D, i);
            B[i][j] = theta(M[j], i) * D - M[j] * theta(D, i);
        }
    Poly2 det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
    Poly2 adj[2][2] = {{B[1][1], -B[0][1]}, {-B[1][0], B[0][0]}};
    auto data = std::make_shared<JacData>();
    const auto& edges = surface_.edges();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Poly2 n = A[i][0] * adj[0][j] + A[i][1] * adj[1][j];
            data->entry[i][j] = RatFunc2(n, det);
            for (const auto& e : edges)
                data->edge[i][j].push_back(edge_restriction(data->entry[i][j], e.outer));
            for (std::size_t v = 0; v < edges.size(); ++v) {
                auto [a, b] = surface_.vertex_edges(static_cast<int>(v));
                data->vertex[i][j].push_back(vertex_limit(data->entry[i][j], edges[a].outer, edges[b].outer));
            }
        }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = jac_cache_.emplace(c, data);
    return it->second;
}

Jacobian ToricGeometry::jacobian_fd(const BundleClass& c, const FacePoint& p) const
{
    Vec2d cen = to_d(surface_.centroid());
    Vec2d dir = cen - p.approx;
    dir = dir * (1.0 / dir.norm());
    Mat2d js[3];
    const double hs[3] = {1e-3, 1e-4, 1e-5};
    int neg[3];
    for (int k = 0; k < 3; ++k) {
        Vec2d q = p.approx + dir * hs[k];
        js[k] = jacobian_interior(c, inverse_moment_map(q, 1e-13));
        Jacobian tmp;
        tmp.d = js[k];
        neg[k] = negative_eigenvalues(tmp);
    }
    Jacobian out;
    out.finite_difference = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.d.a[i][j] = (10 * js[2].a[i][j] - js[1].a[i][j]) / 9;
    if (neg[0] != neg[1] || neg[1] != neg[2] || negative_eigenvalues(out) != neg[2])
        throw NumericFailure("jacobian inconclusive");
    return out;
}

Jacobian ToricGeometry::jacobian_at(const BundleClass& c, const FacePoint& p) const
{
    Jacobian out;
    if (p.kind == FaceKind::Interior) {
        if (p.s && p.t) {
            auto data = jac_data(c);
            out.exact = true;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out.q.a[i][j] = data->entry[i][j].eval(*p.s, *p.t);
            out.d = to_d(out.q);
            return out;
        }
        out.d = jacobian_interior(c, p.flat);
        return out;
    }
    auto data = jac_data(c);
    if (p.kind == FaceKind::Vertex) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const auto& v = data->vertex[i][j][p.index];
                if (v.status != VertexStatus::Finite)
                    return jacobian_fd(c, p);
                out.q.a[i][j] = v.value;
            }
        out.exact = true;
        out.d = to_d(out.q);
        return out;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (data->edge[i][j][p.index].divergent)
                return jacobian_fd(c, p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto& f = data->edge[i][j][p.index].value;
            if (p.rho)
                out.q.a[i][j] = f.eval(*p.rho);
            else
                out.d.a[i][j] = f.eval(p.rho_approx);
        }
    if (p.rho) {
        out.exact = true;
        out.d = to_d(out.q);
    }
    return out;
}

Vec2i ToricGeometry::edge_tangent(int e) const { return face_parameter_exponent(surface_.edges()[e].outer); }

Vec2d ToricGeometry::edge_moment(int e, double log_rho) const
{
    const auto& edge = surface_.edges()[e];
    Vec2i w = edge.outer, v = edge_tangent(e);
    double vv = double(dot(v, v));
    Vec2d r;
    for (std::size_t k = 0; k < pts_.size(); ++k) {
        long h = surface_.factors()[k].polygon.support(w);
        double mx = -1e300;
        std::vector<std::pair<Vec2i, double>> face;
        for (const auto& m : pts_[k])
            if (dot(m, w) == h) {
                double l = dot(m, v) / vv * log_rho;
                face.push_back({m, l});
                mx = std::max(mx, l);
            }
        double z = 0, m0 = 0, m1 = 0;
        for (auto& [m, l] : face) {
            double wgt = std::exp(l - mx);
            z += wgt;
            m0 += wgt * m.x;
            m1 += wgt * m.y;
        }
        r.x += 2 * coeff_[k] * m0 / z;
        r.y += 2 * coeff_[k] * m1 / z;
    }
    return r;
}

FacePoint ToricGeometry::vertex_point(int v) const
{
    FacePoint p;
    p.kind = FaceKind::Vertex;
    p.index = v;
    p.exact = surface_.vertices()[v];
    p.approx = to_d(*p.exact);
    return p;
}

FacePoint ToricGeometry::edge_point(int e, const Rat& rho) const
{
    FacePoint p;
    p.kind = FaceKind::Edge;
    p.index = e;
    p.rho = rho;
    p.rho_approx = to_double(rho);
    p.exact = Vec2q{edge_moment_[e].first.eval(rho), edge_moment_[e].second.eval(rho)};
    p.approx = to_d(*p.exact);
    return p;
}

FacePoint ToricGeometry::edge_point(int e, double rho) const
{
    FacePoint p;
    p.kind = FaceKind::Edge;
    p.index = e;
    p.rho_approx = rho;
    p.approx = edge_moment(e, std::log(rho));
    return p;
}

FacePoint ToricGeometry::edge_point_fraction(int e, double u) const
{
    const auto& edge = surface_.edges()[e];
    Vec2d a = to_d(surface_.vertices()[edge.from]), b = to_d(surface_.vertices()[edge.to]);
    Vec2d d = b - a;
    double target = u * dot(d, d);
    auto coord = [&](double lr) { return dot(edge_moment(e, lr) - a, d); };
    // the tangential coordinate is monotone in log rho
    double lo = -1, hi = 1;
    bool increasing = coord(1) > coord(-1);
    auto below = [&](double lr) { return increasing ? coord(lr) < target : coord(lr) > target; };
    while (below(hi) && hi < 700)
        hi *= 2;
    while (!below(lo) && lo > -700)
        lo *= 2;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (below(mid))
            lo = mid;
        else
            hi = mid;
    }
    FacePoint p = edge_point(e, std::exp(0.5 * (lo + hi)));
    Rat r = rationalize(p.rho_approx, 1000);
    if (std::abs(to_double(r) - p.rho_approx) < 1e-13 * std::max(1.0, p.rho_approx))
        return edge_point(e, r);
    return p;
}

FacePoint ToricGeometry::interior_point(Vec2d flat) const
{
    FacePoint p;
    p.kind = FaceKind::Interior;
    p.flat = flat;
    p.approx = moment_map(flat);
    return p;
}

FacePoint ToricGeometry::interior_point_st(const Rat& s, const Rat& t) const
{
    FacePoint p;
    p.kind = FaceKind::Interior;
    p.s = s;
    p.t = t;
    p.flat = {0.5 * std::log(to_double(s)), 0.5 * std::log(to_double(t))};
    p.exact = moment_map_st(s, t);
    p.approx = to_d(*p.exact);
    return p;
}

std::vector<GridPoint> polytope_grid(const ToricGeometry& g, int n, double margin)
{
    const auto& s = g.surface();
    Vec2d lo{1e300, 1e300}, hi{-1e300, -1e300};
    for (const auto& v : s.vertices()) {
        Vec2d d = to_d(v);
        lo = {std::min(lo.x, d.x), std::min(lo.y, d.y)};
        hi = {std::max(hi.x, d.x), std::max(hi.y, d.y)};
    }
    std::vector<GridPoint> out;
    double hx = (hi.x - lo.x) / n, hy = (hi.y - lo.y) / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2d x{lo.x + (i + 0.5) * hx, lo.y + (j + 0.5) * hy};
            if (s.boundary_distance(x) >= margin)
                out.push_back({x, {}});
        }
    parallel_for(out.size(), [&](std::size_t q) { out[q].flat = g.inverse_moment_map(out[q].x, 1e-11); });
    return out;
}

}  // namespace tmh

#include "tmh/surface.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tmh {

namespace {

int half(Vec2i v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

bool angle_less(Vec2i a, Vec2i b)
{
    int ha = half(a), hb = half(b);
    if (ha != hb)
        return ha < hb;
    return cross(a, b) > 0;
}

template <class P, class S>
std::vector<P> hull_impl(std::vector<P> pts, S crossf)
{
    std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2)
        return pts;
    std::vector<P> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && crossf(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && crossf(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

std::vector<Vec2q> hull_q(std::vector<Vec2q> pts)
{
    return hull_impl(std::move(pts), [](const Vec2q& o, const Vec2q& a, const Vec2q& b) {
        return ((a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)).sign();
    });
}

std::optional<Vec2q> intersect(Vec2i n1, const Rat& h1, Vec2i n2, const Rat& h2)
{
    long d = cross(n1, n2);
    if (d == 0)
        return std::nullopt;
    // n1.x x + n1.y y = h1, n2.x x + n2.y y = h2
    Rat x = (h1 * n2.y - h2 * n1.y) / d;
    Rat y = (n1.x * h2 - n2.x * h1) / d;
    return Vec2q{x, y};
}

Rat floor_q(const Rat& r)
{
    Int q = num(r) / den(r);
    if (r.sign() < 0 && Rat(q) != r)
        q -= 1;
    return Rat(q);
}

}  // namespace

std::vector<Vec2i> convex_hull(std::vector<Vec2i> pts)
{
    return hull_impl(std::move(pts), [](const Vec2i& o, const Vec2i& a, const Vec2i& b) {
        long c = cross(a - o, b - o);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    });
}

// ---------------------------------------------------------------- LatticePolygon

LatticePolygon::LatticePolygon(std::vector<Vec2i> points)
{
    if (points.empty())
        throw std::invalid_argument("empty polygon");
    vertices_ = convex_hull(std::move(points));
}

int LatticePolygon::dimension() const
{
    if (vertices_.size() >= 3)
        return 2;
    return static_cast<int>(vertices_.size()) - 1;
}

long LatticePolygon::support(Vec2i w) const
{
    long best = dot(vertices_.front(), w);
    for (const auto& v : vertices_)
        best = std::max(best, dot(v, w));
    return best;
}

bool LatticePolygon::contains(Vec2i p) const
{
    const std::size_t n = vertices_.size();
    if (n == 1)
        return p == vertices_[0];
    if (n == 2) {
        Vec2i d = vertices_[1] - vertices_[0], q = p - vertices_[0];
        return cross(d, q) == 0 && dot(d, q) >= 0 && dot(d, q) <= dot(d, d);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) < 0)
            return false;
    return true;
}

std::vector<Vec2i> LatticePolygon::lattice_points() const
{
    long x0 = vertices_[0].x, x1 = x0, y0 = vertices_[0].y, y1 = y0;
    for (const auto& v : vertices_) {
        x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
    }
    std::vector<Vec2i> out;
    for (long x = x0; x <= x1; ++x)
        for (long y = y0; y <= y1; ++y)
            if (contains({x, y}))
                out.push_back({x, y});
    return out;
}

std::vector<Vec2i> LatticePolygon::edge_normals() const
{
    std::vector<Vec2i> out;
    const std::size_t n = vertices_.size();
    if (n == 2) {
        Vec2i d = vertices_[1] - vertices_[0];
        Vec2i w = primitive({d.y, -d.x});
        out.push_back(w);
        out.push_back(-w);
    } else if (n >= 3) {
        for (std::size_t i = 0; i < n; ++i) {
            Vec2i d = vertices_[(i + 1) % n] - vertices_[i];
            out.push_back(primitive({d.y, -d.x}));
        }
    }
    return out;
}

// ---------------------------------------------------------------- BundleClass

BundleClass BundleClass::operator+(const BundleClass& o) const
{
    if (o.size() != size())
        throw std::invalid_argument("bundle length mismatch");
    BundleClass r = *this;
    for (std::size_t i = 0; i < size(); ++i)
        r.coeffs[i] += o.coeffs[i];
    return r;
}

BundleClass BundleClass::operator-(const BundleClass& o) const
{
    if (o.size() != size())
        throw std::invalid_argument("bundle length mismatch");
    BundleClass r = *this;
    for (std::size_t i = 0; i < size(); ++i)
        r.coeffs[i] -= o.coeffs[i];
    return r;
}

bool BundleClass::is_zero() const
{
    return std::all_of(coeffs.begin(), coeffs.end(), [](long v) { return v == 0; });
}

std::string BundleClass::str() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(coeffs[i]);
    }
    return out + ")";
}

BundleClass parse_bundle(const std::string& text)
{
    BundleClass b;
    std::string s;
    for (char ch : text)
        if (ch != '(' && ch != ')' && ch != ' ')
            s += ch;
    if (s.empty())
        throw std::invalid_argument("empty bundle vector");
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw std::invalid_argument("bad bundle vector: " + text);
        std::size_t pos = 0;
        long v = std::stol(item, &pos);
        if (pos != item.size())
            throw std::invalid_argument("bad bundle vector: " + text);
        b.coeffs.push_back(v);
    }
    return b;
}

// ---------------------------------------------------------------- DisplayFrame

Vec2q DisplayFrame::apply(const Vec2q& x) const
{
    return {x.x * m[0][0] + x.y * m[0][1] + b[0], x.x * m[1][0] + x.y * m[1][1] + b[1]};
}

Vec2d DisplayFrame::apply(const Vec2d& x) const
{
    return {x.x * m[0][0] + x.y * m[0][1] + to_double(b[0]), x.x * m[1][0] + x.y * m[1][1] + to_double(b[1])};
}

Vec2q DisplayFrame::unapply(const Vec2q& X) const
{
    long d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Rat u = X.x - b[0], v = X.y - b[1];
    return {(u * m[1][1] - v * m[0][1]) / d, (v * m[0][0] - u * m[1][0]) / d};
}

Vec2d DisplayFrame::unapply(const Vec2d& X) const
{
    double d = double(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    double u = X.x - to_double(b[0]), v = X.y - to_double(b[1]);
    return {(u * m[1][1] - v * m[0][1]) / d, (v * m[0][0] - u * m[1][0]) / d};
}

Vec2i DisplayFrame::normal(Vec2i w) const
{
    // L^{-T} = adj(L)^T / det
    long d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return {(m[1][1] * w.x - m[1][0] * w.y) / d, (-m[0][1] * w.x + m[0][0] * w.y) / d};
}

Vec2d DisplayFrame::direction(const Vec2d& v) const
{
    return {v.x * m[0][0] + v.y * m[0][1], v.x * m[1][0] + v.y * m[1][1]};
}

// ---------------------------------------------------------------- PolySurface

PolySurface::PolySurface(std::vector<Factor> factors, std::string preset, DisplayFrame frame)
    : preset_(std::move(preset)), factors_(std::move(factors)), frame_(frame)
{
    if (factors_.empty())
        throw std::invalid_argument("empty factor list");
    std::vector<Vec2i> normals;
    for (const auto& f : factors_) {
        if (f.coeff.sign() <= 0)
            throw std::invalid_argument("Kahler coefficients must be positive");
        for (auto w : f.polygon.edge_normals())
            if (std::find(normals.begin(), normals.end(), w) == normals.end())
                normals.push_back(w);
    }
    if (normals.size() < 3)
        throw std::invalid_argument("degenerate surface");
    std::sort(normals.begin(), normals.end(), angle_less);
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (cross(normals[i], normals[(i + 1) % normals.size()]) <= 0)
            throw std::invalid_argument("degenerate surface");

    auto height = [&](Vec2i w) {
        Rat h = 0;
        for (const auto& f : factors_)
            h += 2 * f.coeff * f.polygon.support(w);
        return h;
    };
    // first edge: smallest display-normal angle measured from (-1,0)
    std::size_t start = 0;
    for (std::size_t i = 1; i < normals.size(); ++i)
        if (angle_less(-frame_.normal(normals[i]), -frame_.normal(normals[start])))
            start = i;
    std::rotate(normals.begin(), normals.begin() + start, normals.end());

    const std::size_t n = normals.size();
    std::vector<Rat> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = height(normals[i]);
    // vertex i is where E_{i+1} ends and E_{i+2} starts
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t next = (i + 1) % n;
        vertices_.push_back(*intersect(normals[i], h[i], normals[next], h[next]));
    }
    for (std::size_t i = 0; i < n; ++i)
        edges_.push_back({static_cast<int>(i) + 1, normals[i], h[i], static_cast<int>((i + n - 1) % n), static_cast<int>(i)});
}

std::vector<Vec2q> PolySurface::display_vertices() const
{
    std::vector<Vec2q> out;
    for (const auto& v : vertices_)
        out.push_back(frame_.apply(v));
    return out;
}

std::pair<int, int> PolySurface::vertex_edges(int v) const
{
    int n = static_cast<int>(edges_.size());
    return {v, (v + 1) % n};
}

Vec2q PolySurface::centroid() const
{
    Vec2q c{Rat(0), Rat(0)};
    for (const auto& v : vertices_)
        c = c + v;
    return c * (Rat(1) / static_cast<long>(vertices_.size()));
}

bool PolySurface::contains(const Vec2q& x) const
{
    for (const auto& e : edges_)
        if (dot(x, e.outer) > e.offset)
            return false;
    return true;
}

bool PolySurface::contains(const Vec2d& x, double tol) const
{
    for (const auto& e : edges_)
        if (dot(x, to_d(e.outer)) > to_double(e.offset) + tol)
            return false;
    return true;
}

double PolySurface::boundary_distance(const Vec2d& x) const
{
    double best = 1e300;
    for (const auto& e : edges_) {
        Vec2d w = to_d(e.outer);
        best = std::min(best, (to_double(e.offset) - dot(x, w)) / w.norm());
    }
    return best;
}

PolySurface build_surface(const std::vector<FactorSpec>& specs, const std::string& preset, DisplayFrame frame)
{
    if (specs.empty())
        throw std::invalid_argument("empty factor list");
    std::vector<Factor> factors;
    for (const auto& sp : specs) {
        Factor f;
        f.coeff = sp.coeff;
        f.polygon = LatticePolygon(sp.polygon);
        for (const auto& m : f.polygon.lattice_points())
            f.posynomial.add_term(m.x, m.y, Rat(1));
        factors.push_back(std::move(f));
    }
    return PolySurface(std::move(factors), preset, frame);
}

namespace {

std::vector<FactorSpec> preset_factors(const std::string& name, DisplayFrame& frame)
{
    using V = std::vector<Vec2i>;
    const V sx{{0, 0}, {1, 0}}, sy{{0, 0}, {0, 1}}, sd{{0, 0}, {1, 1}};
    const V tri{{0, 0}, {1, 0}, {0, 1}}, tri3{{0, 0}, {1, 1}, {0, 1}};
    frame = DisplayFrame{};
    if (name == "bl2")
        return {{1, sx}, {1, sy}, {1, tri}};
    if (name == "bl3") {
        frame.m[1][0] = -1;
        frame.b[1] = 2;
        return {{1, sx}, {1, sy}, {1, sd}, {1, tri3}};
    }
    if (name == "cp2")
        return {{1, tri}};
    if (name == "p1p1")
        return {{1, sx}, {1, sy}};
    if (name == "f1")
        return {{1, sx}, {1, tri}};
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace

PolySurface preset_surface(const std::string& name)
{
    DisplayFrame frame;
    auto f = preset_factors(name, frame);
    return build_surface(f, name, frame);
}

PolySurface surface_from_json_text(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    std::string preset = j.value("preset", std::string());
    if (!j.contains("factors")) {
        if (preset.empty())
            throw std::invalid_argument("surface config needs 'preset' or 'factors'");
        return preset_surface(preset);
    }
    std::vector<FactorSpec> specs;
    for (const auto& f : j.at("factors")) {
        FactorSpec sp;
        const auto& c = f.at("coeff");
        sp.coeff = c.is_string() ? parse_rat(c.get<std::string>()) : Rat(c.get<long>());
        for (const auto& p : f.at("polygon"))
            sp.polygon.push_back({p.at(0).get<long>(), p.at(1).get<long>()});
        specs.push_back(std::move(sp));
    }
    DisplayFrame frame;
    if (!preset.empty()) {
        // a preset label with explicit factors only changes the coefficients
        auto base = preset_factors(preset, frame);
        if (base.size() != specs.size())
            throw std::invalid_argument("factor list does not match preset " + preset);
        for (std::size_t i = 0; i < base.size(); ++i)
            if (LatticePolygon(base[i].polygon).vertices() != LatticePolygon(specs[i].polygon).vertices())
                throw std::invalid_argument("factor list does not match preset " + preset);
    }
    return build_surface(specs, preset, frame);
}

PolySurface load_surface_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open surface file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return surface_from_json_text(ss.str());
}

// ---------------------------------------------------------------- section polytope

bool SectionPolytope::contains(Vec2i m) const
{
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (dot(m, normals[i]) > offsets[i])
            return false;
    return true;
}

SectionPolytope section_polytope(const PolySurface& s, const BundleClass& c, long margin)
{
    if (c.size() != s.rank())
        throw std::invalid_argument("bundle has " + std::to_string(c.size()) + " entries, surface has " +
                                    std::to_string(s.rank()) + " factors");
    SectionPolytope sp;
    for (const auto& e : s.edges()) {
        long a = margin;
        for (std::size_t k = 0; k < s.rank(); ++k)
            a += c[k] * s.factors()[k].polygon.support(e.outer);
        sp.normals.push_back(e.outer);
        sp.offsets.push_back(a);
    }
    std::vector<Vec2q> cand;
    const std::size_t n = sp.normals.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto p = intersect(sp.normals[i], Rat(sp.offsets[i]), sp.normals[j], Rat(sp.offsets[j]));
            if (!p)
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k)
                ok = dot(*p, sp.normals[k]) <= sp.offsets[k];
            if (ok)
                cand.push_back(*p);
        }
    sp.vertices = hull_q(cand);
    if (sp.vertices.empty())
        return sp;
    Rat x0 = sp.vertices[0].x, x1 = x0, y0 = sp.vertices[0].y, y1 = y0;
    for (const auto& v : sp.vertices) {
        x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
    }
    long xa = floor_q(x0).convert_to<long>(), xb = floor_q(x1).convert_to<long>();
    long ya = floor_q(y0).convert_to<long>(), yb = floor_q(y1).convert_to<long>();
    for (long x = xa; x <= xb; ++x)
        for (long y = ya; y <= yb; ++y)
            if (sp.contains({x, y}))
                sp.lattice_points.push_back({x, y});
    return sp;
}

std::vector<Vec2i> signed_minkowski_points(const PolySurface& s, const BundleClass& c)
{
    std::vector<Vec2i> acc{{0, 0}};
    for (std::size_t k = 0; k < s.rank(); ++k) {
        if (c[k] == 0)
            continue;
        std::vector<Vec2i> next;
        for (const auto& a : acc)
            for (const auto& v : s.factors()[k].polygon.vertices())
                next.push_back(a + v * c[k]);
        acc = convex_hull(next);
    }
    return LatticePolygon(acc).lattice_points();
}

BundleClass divisor_to_pic(const PolySurface& s, const std::vector<long>& m)
{
    const std::size_t K = s.rank(), R = s.edges().size();
    if (s.preset().empty() || R != K + 2)
        throw std::invalid_argument("no divisor table");
    if (m.size() != R)
        throw std::invalid_argument("expected " + std::to_string(R) + " ray coefficients");
    // a_rho(c) - <u, -w_rho> = m_rho  ->  sum_k c_k h_k(w) + <u, w> = m_rho
    std::vector<std::vector<Rat>> A(R, std::vector<Rat>(R + 1));
    for (std::size_t r = 0; r < R; ++r) {
        const auto& e = s.edges()[r];
        for (std::size_t k = 0; k < K; ++k)
            A[r][k] = s.factors()[k].polygon.support(e.outer);
        A[r][K] = e.outer.x;
        A[r][K + 1] = e.outer.y;
        A[r][R] = m[r];
    }
    for (std::size_t col = 0; col < R; ++col) {
        std::size_t piv = col;
        while (piv < R && A[piv][col] == 0)
            ++piv;
        if (piv == R)
            throw std::invalid_argument("no divisor table");
        std::swap(A[piv], A[col]);
        for (std::size_t r = 0; r < R; ++r) {
            if (r == col || A[r][col] == 0)
                continue;
            Rat f = A[r][col] / A[col][col];
            for (std::size_t c = col; c <= R; ++c)
                A[r][c] -= f * A[col][c];
        }
    }
    BundleClass out;
    for (std::size_t k = 0; k < K; ++k) {
        Rat v = A[k][R] / A[k][k];
        if (!is_integer(v))
            throw std::logic_error("non-integral Picard class");
        out.coeffs.push_back(num(v).convert_to<long>());
    }
    return out;
}

std::vector<BundleClass> preset_exceptional_collection(const PolySurface& s)
{
    const auto& p = s.preset();
    using B = BundleClass;
    if (p == "bl2")
        return {B{{0, 0, 0}}, B{{0, -1, 1}}, B{{-1, 0, 1}}, B{{0, 0, 1}}, B{{0, 0, 2}}};
    if (p == "bl3")
        return {B{{0, 0, 0, 0}}, B{{-1, 0, 0, 1}}, B{{0, -1, 0, 1}}, B{{0, 0, -1, 1}}, B{{0, 0, 0, 1}}, B{{0, 0, 0, 2}}};
    if (p == "cp2")
        return {B{{0}}, B{{1}}, B{{2}}};
    if (p == "p1p1")
        return {B{{0, 0}}, B{{1, 0}}, B{{0, 1}}, B{{1, 1}}};
    throw std::invalid_argument("no preset collection");
}

}  // namespace tmh

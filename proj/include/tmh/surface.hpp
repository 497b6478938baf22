#pragma once

#include "tmh/poly.hpp"
#include "tmh/rational.hpp"

#include <string>
#include <vector>

namespace tmh {

// Convex lattice polygon, possibly a segment or a point.
class LatticePolygon {
public:
    LatticePolygon() = default;
    // convex hull of the given points
    explicit LatticePolygon(std::vector<Vec2i> points);

    const std::vector<Vec2i>& vertices() const { return vertices_; }  // counterclockwise
    int dimension() const;
    long support(Vec2i w) const;  // max <m,w> over the polygon
    bool contains(Vec2i p) const;
    std::vector<Vec2i> lattice_points() const;
    // primitive outer normals of the edges (both sides for a segment)
    std::vector<Vec2i> edge_normals() const;

private:
    std::vector<Vec2i> vertices_;
};

std::vector<Vec2i> convex_hull(std::vector<Vec2i> pts);

struct BundleClass {
    std::vector<long> coeffs;

    std::size_t size() const { return coeffs.size(); }
    long operator[](std::size_t i) const { return coeffs[i]; }
    BundleClass operator+(const BundleClass& o) const;
    BundleClass operator-(const BundleClass& o) const;
    bool is_zero() const;
    friend bool operator==(const BundleClass&, const BundleClass&) = default;
    friend auto operator<=>(const BundleClass&, const BundleClass&) = default;
    std::string str() const;  // "(a,b,c)"
};
BundleClass parse_bundle(const std::string& text);  // "a,b,c" or "(a,b,c)"

struct Factor {
    Rat coeff;
    LatticePolygon polygon;
    Poly2 posynomial;  // sum of s^m1 t^m2 over lattice points
};

// X_display = L x + b with L unimodular
struct DisplayFrame {
    long m[2][2] = {{1, 0}, {0, 1}};
    Rat b[2] = {Rat(0), Rat(0)};

    Vec2q apply(const Vec2q& x) const;
    Vec2d apply(const Vec2d& x) const;
    Vec2q unapply(const Vec2q& X) const;
    Vec2d unapply(const Vec2d& X) const;
    Vec2i normal(Vec2i w) const;  // L^{-T} w
    Vec2d direction(const Vec2d& v) const;
};

struct PolyEdge {
    int name = 0;       // E_name, 1-based
    Vec2i outer;        // primitive outer normal in moment coordinates
    Rat offset;         // <x, outer> <= offset on P
    int from = 0, to = 0;
};

// Toric surface given by weighted Newton polygons; P = 2 sum C_k Delta_k.
class PolySurface {
public:
    PolySurface(std::vector<Factor> factors, std::string preset, DisplayFrame frame);

    const std::string& preset() const { return preset_; }
    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    const std::vector<Vec2q>& vertices() const { return vertices_; }  // moment frame
    const std::vector<PolyEdge>& edges() const { return edges_; }
    const DisplayFrame& frame() const { return frame_; }

    std::vector<Vec2q> display_vertices() const;
    Vec2q display(const Vec2q& x) const { return frame_.apply(x); }
    Vec2d display(const Vec2d& x) const { return frame_.apply(x); }
    // the two edges meeting at vertex i: (previous, next)
    std::pair<int, int> vertex_edges(int v) const;
    Vec2q centroid() const;

    bool contains(const Vec2q& x) const;
    bool contains(const Vec2d& x, double tol = 1e-12) const;
    // min over edges of offset - <x, outer>/|outer|
    double boundary_distance(const Vec2d& x) const;

private:
    std::string preset_;
    std::vector<Factor> factors_;
    DisplayFrame frame_;
    std::vector<Vec2q> vertices_;
    std::vector<PolyEdge> edges_;
};

struct FactorSpec {
    Rat coeff;
    std::vector<Vec2i> polygon;
};

PolySurface build_surface(const std::vector<FactorSpec>& factors, const std::string& preset = "",
                          DisplayFrame frame = {});
PolySurface preset_surface(const std::string& name);  // bl2 | bl3 | cp2 | p1p1 | f1
PolySurface load_surface_file(const std::string& path);
PolySurface surface_from_json_text(const std::string& text);

struct SectionPolytope {
    std::vector<Vec2i> normals;  // outer normals of P, edge order
    std::vector<long> offsets;   // <m, normal> <= offset
    std::vector<Vec2q> vertices;
    std::vector<Vec2i> lattice_points;
    bool contains(Vec2i m) const;
};

SectionPolytope section_polytope(const PolySurface& s, const BundleClass& c, long margin = 0);
// lattice points of the signed Minkowski sum sum c_k Delta_k
std::vector<Vec2i> signed_minkowski_points(const PolySurface& s, const BundleClass& c);

BundleClass divisor_to_pic(const PolySurface& s, const std::vector<long>& ray_coeffs);
std::vector<BundleClass> preset_exceptional_collection(const PolySurface& s);

}  // namespace tmh

#pragma once

#include "tmh/logvalue.hpp"
#include "tmh/surface.hpp"
#include "tmh/tropical.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

namespace tmh {

enum class FaceKind { Vertex, Edge, Interior };

// A point of the closed polytope, remembered by the face it lies on.
struct FacePoint {
    FaceKind kind = FaceKind::Interior;
    int index = -1;               // vertex or edge index (0-based)
    std::optional<Rat> rho;       // edge parameter when rational
    double rho_approx = 0;
    std::optional<Rat> s, t;      // interior point when (s,t) is rational
    Vec2d flat;                   // interior flat coordinates
    std::optional<Vec2q> exact;   // moment coordinates when rational
    Vec2d approx;                 // moment coordinates
};

struct Jacobian {
    bool exact = false;
    bool finite_difference = false;
    Mat2q q;  // set when exact
    Mat2d d;
};

// number of eigenvalues below zero (|lambda| < 1e-9 counts as zero)
int negative_eigenvalues(const Jacobian& j);
// unit eigenvectors of the negative eigenvalues
std::vector<Vec2d> stable_directions(const Jacobian& j);

struct FieldPair {
    RatFunc2 x1, x2;
};

class ToricGeometry {
public:
    explicit ToricGeometry(const PolySurface& s);

    const PolySurface& surface() const { return surface_; }

    // flat -> moment coordinates
    Vec2d moment_map(Vec2d flat) const;
    Vec2q moment_map_st(const Rat& s, const Rat& t) const;
    const FieldPair& moment_functions() const { return moment_; }
    Vec2d inverse_moment_map(Vec2d p, double tol = 1e-12) const;

    double psi(Vec2d flat) const;
    Mat2d hess_psi(Vec2d flat) const;

    // y/2pi as rational functions of (s,t)
    FieldPair lagrangian_section(const BundleClass& c) const;
    // y/2pi - I, the gradient of f_I in flat coordinates
    FieldPair vector_field(const BundleClass& c, Vec2i I) const;
    Vec2d field_at(const BundleClass& c, Vec2i I, Vec2d flat) const;
    // exact value on any face point with rational data
    std::optional<std::pair<Rat, Rat>> field_at(const BundleClass& c, Vec2i I, const FacePoint& p) const;

    // f_I without the normalising constant: (1/2) log R, R = prod Q_k^c_k / (s^i1 t^i2)
    RatFunc2 potential_ratio(const BundleClass& c, Vec2i I) const;
    double potential_raw(const BundleClass& c, Vec2i I, Vec2d flat) const;
    Mat2d hess_f(const BundleClass& c, Vec2d flat) const;

    // dX/dx in moment coordinates; independent of I
    Jacobian jacobian_at(const BundleClass& c, const FacePoint& p) const;
    Mat2d jacobian_interior(const BundleClass& c, Vec2d flat) const;

    // face points
    FacePoint vertex_point(int v) const;
    FacePoint edge_point(int e, const Rat& rho) const;
    FacePoint edge_point(int e, double rho) const;
    // point at polytope fraction u in (0,1) from edges()[e].from to .to
    FacePoint edge_point_fraction(int e, double u) const;
    FacePoint interior_point(Vec2d flat) const;
    FacePoint interior_point_st(const Rat& s, const Rat& t) const;
    // moment position of an edge point for log of the edge parameter
    Vec2d edge_moment(int e, double log_rho) const;
    // edge-restricted moment functions (exact)
    const std::pair<RatFunc1, RatFunc1>& edge_moment_exact(int e) const { return edge_moment_[e]; }

    // exact edge parameter exponent helpers
    Vec2i edge_tangent(int e) const;

private:
    struct JacData {
        RatFunc2 entry[2][2];
        std::vector<EdgeFunction> edge[2][2];
        std::vector<VertexValue> vertex[2][2];
    };
    std::shared_ptr<const JacData> jac_data(const BundleClass& c) const;
    Jacobian jacobian_fd(const BundleClass& c, const FacePoint& p) const;

    struct Stats {
        double logq;
        double mean[2];
        double cov[2][2];
    };
    Stats stats(std::size_t k, Vec2d flat) const;

    const PolySurface& surface_;
    std::vector<RatFunc2> q_;
    std::vector<std::vector<Vec2i>> pts_;
    std::vector<double> coeff_;
    FieldPair moment_;
    std::vector<std::pair<RatFunc1, RatFunc1>> edge_moment_;
    mutable std::mutex mu_;
    mutable std::map<BundleClass, std::shared_ptr<const JacData>> jac_cache_;
};

// cell centres of an n x n grid over the bounding box of P, kept when at
// least margin inside P
struct GridPoint {
    Vec2d x;     // moment coordinates
    Vec2d flat;  // inverse image
};
std::vector<GridPoint> polytope_grid(const ToricGeometry& g, int n, double margin = 1e-6);

}  // namespace tmh

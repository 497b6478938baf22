#pragma once

#include "tmh/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tmh {

// Connected component V_{c;I} of the zero set of the field y/2pi - I on P.
struct Component {
    BundleClass c;
    Vec2i I;
    bool whole = false;             // all of P (c = 0, I = 0)
    std::vector<int> edges;         // closed edges in the carrier
    std::vector<int> vertices;      // every vertex in the carrier
    std::vector<FacePoint> points;  // isolated points that are not vertices

    std::optional<int> degree;      // empty: stable dimension not constant
    bool m1_ok = false, m2_ok = false;
    std::string reason;
    std::vector<std::pair<FacePoint, int>> samples;

    bool generator() const { return m1_ok && m2_ok; }
    bool has_vertex(int v) const;
    bool has_edge(int e) const;
    // isolated vertex components
    bool is_vertex() const { return !whole && edges.empty() && points.empty() && vertices.size() == 1; }
};

std::vector<std::string> carrier_names(const Component& comp, const PolySurface& s);
std::string carrier_str(const Component& comp, const PolySurface& s);
std::string format_display(const PolySurface& s, const FacePoint& p);

std::vector<Component> intersection_components(const ToricGeometry& g, const BundleClass& c, Vec2i I);
// fills degree, m1_ok, m2_ok, reason and samples
void classify(const ToricGeometry& g, Component& comp);

// value of f_I without its constant, (1/2) log R, at a face point
struct RawValue {
    enum Kind { Finite, PlusInfinity, MinusInfinity, Undefined } kind = Finite;
    std::optional<LogValue> exact;
    double approx = 0;
};
RawValue raw_value(const ToricGeometry& g, const BundleClass& c, Vec2i I, const FacePoint& p);
// carrier point with rational coordinates where possible
FacePoint representative(const ToricGeometry& g, const Component& comp);

// Normalised potential f_I = (1/2) log R + constant with min over P equal to 0.
struct Potential {
    BundleClass c;
    Vec2i I;
    RatFunc2 ratio;
    std::optional<LogValue> constant;
    double constant_approx = 0;
};
Potential potential(const ToricGeometry& g, const BundleClass& c, Vec2i I);
Potential potential(const ToricGeometry& g, const BundleClass& c, Vec2i I, const std::vector<Component>& comps);

struct HomSpace {
    BundleClass from, to, diff;
    std::vector<Component> generators;
    std::vector<Component> rejected;
    std::size_t dim() const { return generators.size(); }
    const Component* find(Vec2i I) const;
};

std::vector<Vec2i> hom_candidates(const PolySurface& s, const BundleClass& c);
HomSpace hom_space(const ToricGeometry& g, const BundleClass& from, const BundleClass& to);

nlohmann::json to_json(const HomSpace& h, const PolySurface& s);
std::string to_text(const HomSpace& h, const PolySurface& s);
std::string label(Vec2i I);

}  // namespace tmh

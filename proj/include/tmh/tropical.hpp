#pragma once

#include "tmh/poly.hpp"

namespace tmh {

// Leading behaviour of f under (s,t) = (S e^{-w1}, T e^{-w2}), eps -> 0.
struct TropicalResult {
    bool divergent = false;
    RatFunc2 value;  // in the residual variables (S,T)
};
TropicalResult tropical_limit(const RatFunc2& f, Vec2i w);

// Restriction to the edge with outer normal w (primitive), as a function of
// the face parameter r = S^{-w2} T^{w1}.
struct EdgeFunction {
    bool divergent = false;
    RatFunc1 value;
};
EdgeFunction edge_restriction(const RatFunc2& f, Vec2i w);
// the exponent vector of s,t that the face parameter stands for
inline Vec2i face_parameter_exponent(Vec2i w) { return {-w.y, w.x}; }

enum class VertexStatus { Finite, Divergent, PathDependent };
struct VertexValue {
    VertexStatus status = VertexStatus::Finite;
    Rat value;
};
// Limit at the vertex between the edges with outer normals wa, wb, probed
// along three directions inside the open normal cone.
VertexValue vertex_limit(const RatFunc2& f, Vec2i wa, Vec2i wb);

}  // namespace tmh

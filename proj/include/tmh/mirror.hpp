#pragma once

#include "tmh/composition.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tmh {

// Minimum over the closed polytope of R = prod Q_k^c_k / (s^i1 t^i2), found
// face by face: vertex limits, critical points on edges, interior critical points.
struct FaceMinimum {
    bool continuous = true;  // R bounded away from 0 with a limit at every vertex
    std::string reason;
    std::optional<Rat> exact;
    double approx = 0;
    std::string where;  // face name of a minimiser
};
FaceMinimum minimum_ratio(const ToricGeometry& g, const BundleClass& c, Vec2i I);

// e_{c;I} = exp(-f_I) with max |e| = 1; kappa is the normalising constant -(1/2) log min R
struct SectionElement {
    Vec2i I;
    std::optional<LogValue> kappa;
    double kappa_approx = 0;
    std::string reason;  // set for excluded elements
};

struct SectionBasis {
    BundleClass c;
    std::vector<SectionElement> elements;
    std::vector<SectionElement> excluded;
    std::size_t dim() const { return elements.size(); }
    const SectionElement* find(Vec2i I) const;
};
SectionBasis h0_basis(const ToricGeometry& g, const BundleClass& c);

struct DimRow {
    int i = 0, j = 0;
    std::size_t morse = 0, sheaf = 0;
    bool match = false;
};
struct DimReport {
    bool ok = true;
    std::vector<DimRow> rows;
};
DimReport verify_dim_match(const ToricGeometry& g, const HomTable& t);

struct FunctorRow {
    int i = 0, j = 0, k = 0;
    Vec2i I, J;
    std::string weight_morse, weight_sheaf;
    bool equal = false;
    bool exact = false;  // both sides compared as exact LogValues
};
struct FunctorReport {
    bool ok = true;
    std::vector<FunctorRow> rows;
    std::size_t normalisations = 0;  // elements whose kappa matched the Morse constant
    std::string failure;
};
FunctorReport verify_functoriality(const CompositionEngine& eng, const HomTable& t,
                                   const std::vector<TripleTable>& tables);

struct ExceptionalRow {
    int i = 0, j = 0;
    std::size_t dim = 0;
    bool ok = true;
    std::vector<std::string> killed;  // "I carrier: reason" for each rejected candidate
};
struct ExceptionalReport {
    bool ok = true;
    std::vector<ExceptionalRow> rows;
    std::string failure;
};
ExceptionalReport verify_exceptionality(const HomTable& t);

// every check of the verify command
struct VerifyReport {
    bool ok = true;
    DimReport dims;
    FunctorReport functor;
    ExceptionalReport exceptional;
    AssociativityReport assoc;
    UnitReport unit;
    HomTable table;
    std::vector<TripleTable> tables;
    double seconds = 0;
    std::string first_failure;
};
VerifyReport run_verification(const ToricGeometry& g, const std::vector<BundleClass>& collection,
                              double grid_tol = 1e-9);

nlohmann::json to_json(const VerifyReport& r, const PolySurface& s);
std::string to_text(const VerifyReport& r);

}  // namespace tmh

#pragma once

#include "tmh/morse.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tmh {

// Hom spaces between all ordered pairs of a collection (identity pairs included).
struct HomTable {
    std::vector<BundleClass> bundles;
    std::map<std::pair<int, int>, HomSpace> homs;
    const HomSpace& at(int i, int j) const { return homs.at({i, j}); }
};
HomTable hom_table(const ToricGeometry& g, const std::vector<BundleClass>& bundles);

struct TreeEdge {
    int face = -1;  // edge index
    int source = 0;  // 0: first factor, 1: second factor
    Vec2d start, end;  // moment coordinates
    double length = 0;
};

struct TreeTrace {
    bool trivial = false;
    bool found = false;
    std::string failure;
    std::vector<TreeEdge> edges;
    Vec2d meeting;  // moment coordinates
    Vec2d root;     // point of the target carrier used for kappa
    int multiplicity = 0;
};

struct CompositionEntry {
    int i = 0, j = 0, k = 0;  // collection indices of L1, L2, L3
    Vec2i I, J;
    bool zero = false;  // no target generator
    Vec2i target;
    std::optional<LogValue> kappa;
    double kappa_approx = 0;
    double weight = 0;
    std::string weight_exact;  // product of rational powers
    double grid_min = 0;       // min of f_I + f_J - kappa over the grid
    TreeTrace tree;
};

struct TripleTable {
    int i = 0, j = 0, k = 0;
    std::vector<CompositionEntry> entries;
};

// Structure constants of m2 on one geometry; potentials and the grid are cached.
class CompositionEngine {
public:
    explicit CompositionEngine(const ToricGeometry& g, double grid_tol = 1e-9, int grid_n = 100);

    const ToricGeometry& geometry() const { return g_; }
    const Potential& potential_of(const BundleClass& c, Vec2i I) const;

    // Z in Hom(L_i, L_j), W in Hom(L_j, L_k), target searched in Hom(L_i, L_k)
    CompositionEntry structure_constant(const HomTable& t, int i, int j, int k, const Component& z,
                                        const Component& w) const;
    TreeTrace trace_tree(const Component& z, const Component& w, const Component& target, Vec2d root) const;
    std::vector<TripleTable> compose_table(const HomTable& t) const;

private:
    const std::vector<GridPoint>& grid() const;

    const ToricGeometry& g_;
    double grid_tol_;
    int grid_n_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<BundleClass, Vec2i>, std::shared_ptr<const Potential>> pots_;
    mutable std::once_flag grid_once_;
    mutable std::vector<GridPoint> grid_;
};

// (a b) c against a (b c) over all quadruples i<j<k<l
struct AssociativityReport {
    bool ok = true;
    std::size_t checked = 0;
    std::string failure;
};
AssociativityReport verify_associativity(const HomTable& t, const std::vector<TripleTable>& tables);

// id o g = g and g o id = g with weight 1
struct UnitReport {
    bool ok = true;
    std::size_t checked = 0;
    std::string failure;
};
UnitReport verify_unit_law(const CompositionEngine& eng, const HomTable& t);

// points where the three carriers meet, empty if none
std::vector<Vec2d> common_points(const ToricGeometry& g, const std::vector<const Component*>& comps);

nlohmann::json to_json(const TripleTable& tt, const HomTable& t, const PolySurface& s);
std::string to_text(const TripleTable& tt, const HomTable& t, const PolySurface& s);
std::string tree_str(const TreeTrace& tr, const PolySurface& s);
std::string kappa_str(const CompositionEntry& e);

// 800x800 figure: outline, target carriers, tree arrows
std::string triple_svg(const TripleTable& tt, const HomTable& t, const PolySurface& s);
std::string hom_svg(const HomSpace& h, const PolySurface& s);

}  // namespace tmh

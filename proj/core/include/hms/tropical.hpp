#pragma once

#include "hms/errors.hpp"
#include "hms/scalar.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace hms {

struct LatticePoint {
    long long x = 0, y = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// The input data: a finite point set A in Z^2 with integral weights rho.
struct WeightedPoints {
    std::vector<LatticePoint> points;
    std::vector<long long> weights;

    /// Checks distinctness, |A| >= 3 and affine 2-dimensional span.
    void validate() const;
};

/// Regular subdivision of Conv(A) induced by the lifted points (a, rho(a)).
struct Subdivision {
    struct Edge {
        int a = -1, b = -1;          // point indices, a < b
        std::vector<int> cells;      // adjacent cell indices
        bool interior() const { return cells.size() == 2; }
    };
    std::vector<std::array<int, 3>> cells;  // point-index triples, sorted
    std::vector<Edge> edges;                // deterministic order

    long long cell_det(const WeightedPoints& wp, int cell) const;
};

/// Dual tropical curve Pi with all numerical invariants populated.
struct TropicalCurve {
    struct Vertex {
        Rat x, y;                 // agreement point of the three affine functions
        Rat zeta;                 // Legendre value there
        std::array<int, 3> cell;  // the dual cell's point indices
    };
    struct BoundedEdge {
        int alpha = -1, beta = -1;  // component point indices, lex(points[alpha]) < lex(points[beta])
        int va = -1, vb = -1;       // endpoint vertices (dual cell indices)
        long long n = 0;            // lattice length
        long long d_ab = 0, d_ba = 0;
        long long delta_ab = 0, delta_ba = 0;
        int vx = -1, vy = -1;       // canonical frame ends: vx = min(va,vb)
    };
    struct Ray {
        int alpha = -1, beta = -1;  // component pair, lex-sorted
        int v = -1;                 // endpoint vertex
        long long dx = 0, dy = 0;   // primitive outgoing direction
    };
    struct BoundaryItem {
        bool is_ray = false;
        int index = -1;
        friend bool operator==(const BoundaryItem&, const BoundaryItem&) = default;
    };
    struct Component {
        int point = -1;
        bool bounded = false;
        std::vector<BoundaryItem> boundary;  // ccw; path (ray..ray) or cycle
    };

    std::vector<Vertex> vertices;
    std::vector<BoundedEdge> bounded_edges;
    std::vector<Ray> rays;
    std::vector<Component> components;  // indexed by point index

    int bounded_edge_between(int a, int b) const;
    int ray_between(int a, int b) const;
    bool adjacent(int a, int b) const;
    /// The three boundary items around a vertex, in cell-edge order.
    std::array<BoundaryItem, 3> items_at_vertex(int v) const;
    /// Vertex shared by two consecutive boundary items of a component.
    int joint_vertex(const BoundaryItem& a, const BoundaryItem& b) const;
    /// Component pair {alpha,beta} of a boundary item.
    std::pair<int, int> item_pair(const BoundaryItem& it) const;
};

/// Moment polytope of the mirror toric 3-fold (combinatorial data only).
struct MomentPolytope {
    struct Facet {
        int point = -1;
        long long nx = 0, ny = 0, nz = 1;  // inward normal (-a1, -a2, 1)
    };
    struct Vertex {
        long long x = 0, y = 0, z = 0;
        int trop_vertex = -1;
    };
    struct Edge {
        int fa = -1, fb = -1;  // facet (= point) indices
        bool bounded = false;
        int va = -1, vb = -1;             // vertex ids; vb = -1 for rays
        long long dx = 0, dy = 0, dz = 0;  // primitive direction for rays
    };
    std::vector<Facet> facets;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

// ---- operations ----

Rat legendre_value(const WeightedPoints& wp, const Rat& xi1, const Rat& xi2);

Subdivision regular_subdivision(const WeightedPoints& wp);

TropicalCurve dual_tropical_curve(const WeightedPoints& wp, const Subdivision& sub);

/// Lattice length of the lifted Delta_Y edge dual to a bounded edge.
long long lattice_length(const TropicalCurve& curve, int edge);

/// Solves the wall relation among the four facet normals around a bounded
/// edge; returns (d_ab, d_ba) with d_ab + d_ba = -2.
std::pair<long long, long long> wall_degrees(const WeightedPoints& wp,
                                             const TropicalCurve& curve, int edge);

/// Fixed delta choice: the lex-lower side gets 0, the other 1 + d.
std::pair<long long, long long> delta_convention(long long d_ab);

MomentPolytope moment_polytope(const WeightedPoints& wp, const Subdivision& sub);

/// Everything the category builders consume, immutable after construction.
struct TropicalModel {
    WeightedPoints wp;
    Subdivision sub;
    TropicalCurve curve;
    MomentPolytope polytope;
};

struct DeltaOverride {
    int alpha = -1, beta = -1;  // point indices
    long long delta_ab = 0, delta_ba = 0;
};

TropicalModel build_model(WeightedPoints wp,
                          const std::vector<DeltaOverride>& overrides = {});

}  // namespace hms

#pragma once

#include "hms/labels.hpp"
#include "hms/linalg.hpp"
#include "hms/tropical.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace hms {

/// Affine chart of the mirror at a vertex of the tropical curve: three
/// coordinates, one per incident edge or ray, with the superpotential their
/// product.
struct Chart {
    int vertex = -1;
    std::array<TropicalCurve::BoundaryItem, 3> coords;
    int order = 0;  // 1-based position in the ordered cover
};

/// Z2-graded Ext space with labels shared with the A-side vocabulary.
struct GradedExt {
    MFObject src, tgt;
    std::vector<GeneratorLabel> even, odd;
    long long truncation = 0;

    std::pair<std::size_t, std::size_t> dims() const { return {even.size(), odd.size()}; }
};

/// Chain or cycle of rational curves with a line bundle; the input to the
/// node-evaluation cohomology.
struct NodalCurveConfig {
    struct Component {
        bool projective = true;
        long long degree = 0;       // only for projective components
        GeneratorLabel label;       // template: kind/edge/component set, exponents free
    };
    struct Node {
        int left = -1, right = -1;  // glue y-end of left to x-end of right
        GeneratorLabel label;       // template for cokernel classes at this node
    };
    std::vector<Component> components;
    std::vector<Node> nodes;
    bool cycle = false;

    void validate() const;
};

/// One chart per tropical vertex, ordered by a generic height on the moment
/// polytope (no two vertices share a value).
std::vector<Chart> ordered_cover(const TropicalModel& m);

/// Hom of two matrix factorizations over one chart, by direct enumeration of
/// the quotient-module monomial basis. Chart homs do not depend on the
/// twists. Labels are local to the chart (tagged with its vertex).
GradedExt chart_hom(const TropicalModel& m, const Chart& chart, const MFObject& src,
                    const MFObject& tgt, long long J);

/// Same hom computed independently: kernels and cokernels of the explicit
/// two-periodic differential maps on truncated polynomial spaces.
GradedExt chart_hom_via_matrices(const TropicalModel& m, const Chart& chart,
                                 const MFObject& src, const MFObject& tgt, long long J);

/// Image of a single chart-hom basis label on the overlap with a bounded
/// edge; nullopt when the label restricts to zero. Overlap labels carry
/// Laurent index xe (ye = twist - xe) and no vertex tag.
std::optional<GeneratorLabel> mf_restrict_label(const TropicalModel& m, const Chart& chart,
                                                int edge, const MFObject& src,
                                                const MFObject& tgt,
                                                const GeneratorLabel& label);

/// Restriction of a whole chart hom to the overlap with a bounded edge.
GradedExt mf_restriction(const TropicalModel& m, const Chart& chart, int edge,
                         const MFObject& src, const MFObject& tgt, const GradedExt& ext);

/// Cech product on the restriction-then-multiply piece: chart element times
/// overlap element, by Laurent index addition on the shared edge.
std::optional<GeneratorLabel> cech_product(const TropicalModel& m, const Chart& chart,
                                           int edge, const MFObject& src, const MFObject& mid,
                                           const MFObject& tgt, const GeneratorLabel& chart_elem,
                                           const GeneratorLabel& overlap_elem);

/// H^0 and H^1 of a line bundle on a nodal chain or cycle by kernel/cokernel
/// of the node-evaluation matrix over Q, with affine tails truncated at J.
std::pair<std::vector<GeneratorLabel>, std::vector<GeneratorLabel>> nodal_cohomology(
    const NodalCurveConfig& config, long long J);

/// Global Ext of the singularity category computed through the nodal-curve
/// route; independent of the Cech pipeline.
GradedExt global_ext(const TropicalModel& m, const MFObject& src, const MFObject& tgt,
                     long long J);

/// Two-term Cech total complex over the ordered cover and its cohomology.
struct CechResult {
    std::vector<GeneratorLabel> c0, c1;  // c1 labels carry the Cech shift
    SparseMatrix<F2> delta;              // rows = c1, cols = c0
    std::vector<GeneratorLabel> even_classes, odd_classes;  // truncated at J

    std::pair<std::size_t, std::size_t> dims() const {
        return {even_classes.size(), odd_classes.size()};
    }
};

CechResult cech_total_complex(const TropicalModel& m, const MFObject& src,
                              const MFObject& tgt, long long J);

}  // namespace hms

#pragma once

#include "hms/labels.hpp"
#include "hms/tropical.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace hms {

/// A symbolic infinite generator family down an unbounded edge.
struct RayFamily {
    int ray = -1;
    int component = -1;  // owning component; source component for chords
    LabelKind kind = LabelKind::RayTail;
    long long start = 0;  // smallest index of the family
    int degree = 0;

    auto operator<=>(const RayFamily&) const = default;
};

/// Cohomology-level hom space: finite canonical labels plus symbolic ray
/// families, with joint identifications recorded in `alias`.
struct GradedHom {
    LagrangianObject src, tgt;
    std::vector<GeneratorLabel> finite;
    std::vector<RayFamily> tails;
    std::map<GeneratorLabel, GeneratorLabel> alias;              // member -> canonical
    std::map<GeneratorLabel, std::vector<GeneratorLabel>> members;  // canonical -> members
    std::optional<long long> truncation;

    /// Finite part plus every tail enumerated up to index J.
    std::vector<GeneratorLabel> materialize(long long J) const;
    /// (even, odd) dimensions at truncation J.
    std::pair<std::size_t, std::size_t> dims(long long J) const;
    /// Maps a label through the joint identification, if any.
    GeneratorLabel canonical(const GeneratorLabel& l) const;
};

/// Chain-level generator bookkeeping for one pair of pants (a vertex of the
/// tropical curve) at Hamiltonian weight n.
struct ChainGeneratorSet {
    int pants = -1;
    LagrangianObject src, tgt;
    long long weight = 0;
    std::vector<GeneratorLabel> joint_part;     // generators away from the overlaps
    std::vector<GeneratorLabel> cylinder_part;  // generators on the bounded legs
};

/// Smallest admissible Hamiltonian weight for a pair of twists.
long long min_weight(const LagrangianObject& src, const LagrangianObject& tgt);

/// Ordered labels of the cylinder-part generators on a bounded edge, viewed
/// from one of its two pants (an endpoint vertex). Throws EdgeUnbounded when
/// the item is a ray.
std::vector<GeneratorLabel> chain_generators(const TropicalModel& m,
                                             TropicalCurve::BoundaryItem edge,
                                             const LagrangianObject& src,
                                             const LagrangianObject& tgt, long long n,
                                             int pants);

/// The identification of a cylinder-part label with its label on the opposite
/// pants side; an involution.
GeneratorLabel glue_identify(const TropicalModel& m, int edge,
                             const LagrangianObject& src, const LagrangianObject& tgt,
                             const GeneratorLabel& label);

/// Full pants-level generator set split into joint and cylinder parts.
ChainGeneratorSet build_chain_set(const TropicalModel& m, int pants,
                                  const LagrangianObject& src,
                                  const LagrangianObject& tgt, long long n);

/// Quotient to the cylinder parts: drops every joint-part label.
std::vector<GeneratorLabel> restrict_to_cylinder(const ChainGeneratorSet& set);

/// Cohomology-level hom basis between two Lagrangian objects.
GradedHom cohomology_hom_basis(const TropicalModel& m, const LagrangianObject& src,
                               const LagrangianObject& tgt, long long J);

/// Context for a composable product f.g with g: X0 -> X1 and f: X1 -> X2.
struct ProductContext {
    const TropicalModel* model = nullptr;
    LagrangianObject X0, X1, X2;
    const GradedHom* hom_g = nullptr;
    const GradedHom* hom_f = nullptr;
    const GradedHom* hom_out = nullptr;
};

/// Product of two cohomology generators by the monomial formulas; an empty
/// result is zero. Throws NotComposable / UnspecifiedProduct.
std::vector<GeneratorLabel> cohomology_product(const GeneratorLabel& f,
                                               const GeneratorLabel& g,
                                               const ProductContext& ctx);

/// True when a triple of cross generators around one pants can have a nonzero
/// product: every input is the first intersection point on its edge.
bool triple_vanishing_check(const TropicalModel& m, int pants,
                            const std::vector<GeneratorLabel>& labels);

}  // namespace hms

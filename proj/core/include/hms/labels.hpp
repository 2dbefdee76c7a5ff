#pragma once

#include <compare>
#include <string>

namespace hms {

/// Kinds of hom-space basis elements shared by the two category builders.
///  SameEdge   - monomial generator on a bounded edge, same component
///  CrossEdge  - monomial generator on a bounded edge, two components
///  RayTail    - same-component generator down an unbounded edge
///  RayChord   - cross-component generator on an unbounded edge
///  JointPoint - canonical generator at a joint of two boundary items
///  Unit       - the identity generator of an endomorphism space
///  PointClass - the degree-1 point class of a bounded component
enum class LabelKind { SameEdge, CrossEdge, RayTail, RayChord, JointPoint, Unit, PointClass };

/// A basis element name. Monomial exponents (xe, ye) are written in the
/// canonical frame of the edge: xe counts from the edge's vx end. Ray labels
/// and chain-level labels use xe as their single index. Chain-level labels
/// carry the pair-of-pants (vertex) tag in `pants`; cohomology labels use -1.
struct GeneratorLabel {
    LabelKind kind = LabelKind::Unit;
    int edge = -1;       // bounded-edge or ray index
    int vertex = -1;     // JointPoint anchor
    int component = -1;  // owning component; source component for CrossEdge
    long long xe = 0;
    long long ye = 0;
    bool dual = false;
    int pants = -1;

    auto operator<=>(const GeneratorLabel&) const = default;

    std::string str() const;
};

/// Z2 degree dictated by the label kind by itself (JointPoint inherits from
/// its dual flag like the edge labels it identifies).
int label_degree(const GeneratorLabel& l);

struct LagrangianObject {
    int component = -1;
    long long twist = 0;
    auto operator<=>(const LagrangianObject&) const = default;
};

struct MFObject {
    int component = -1;
    long long twist = 0;
    auto operator<=>(const MFObject&) const = default;
};

}  // namespace hms

#include "hms/fukaya.hpp"

#include <algorithm>
#include <set>

namespace hms {

namespace {

long long d_from(const TropicalCurve::BoundedEdge& be, int source_component) {
    if (be.alpha == source_component) return be.d_ab;
    if (be.beta == source_component) return be.d_ba;
    throw NotOnSharedCylinder("component does not border the edge");
}

bool edge_has(const TropicalCurve::BoundedEdge& be, int comp) {
    return be.alpha == comp || be.beta == comp;
}

/// Cylinder twist of the object pair on a bounded edge: n(l-k) for a
/// same-component pair, n(l-k) + d for a cross pair.
long long cylinder_twist(const TropicalCurve::BoundedEdge& be, const LagrangianObject& src,
                         const LagrangianObject& tgt) {
    long long t = be.n * (tgt.twist - src.twist);
    if (src.component != tgt.component) t += d_from(be, src.component);
    return t;
}

GeneratorLabel same_edge_label(int edge, int comp, long long xe, long long ye, bool dual) {
    GeneratorLabel l;
    l.kind = LabelKind::SameEdge;
    l.edge = edge;
    l.component = comp;
    l.xe = xe;
    l.ye = ye;
    l.dual = dual;
    return l;
}

GeneratorLabel cross_edge_label(int edge, int src_comp, long long xe, long long ye, bool dual) {
    GeneratorLabel l;
    l.kind = LabelKind::CrossEdge;
    l.edge = edge;
    l.component = src_comp;
    l.xe = xe;
    l.ye = ye;
    l.dual = dual;
    return l;
}

GeneratorLabel ray_label(LabelKind kind, int ray, int comp, long long i) {
    GeneratorLabel l;
    l.kind = kind;
    l.edge = ray;
    l.component = comp;
    l.xe = i;
    return l;
}

GeneratorLabel joint_label(int vertex, int comp, bool dual) {
    GeneratorLabel l;
    l.kind = LabelKind::JointPoint;
    l.vertex = vertex;
    l.component = comp;
    l.dual = dual;
    return l;
}

/// The generator of a boundary item sitting at one of its end vertices: the
/// monomial with its full exponent at that end, or the ray's index-0 label.
GeneratorLabel end_label(const TropicalModel& m, const TropicalCurve::BoundaryItem& item,
                         int comp, long long dk, int vertex) {
    if (item.is_ray) return ray_label(LabelKind::RayTail, item.index, comp, 0);
    const auto& be = m.curve.bounded_edges[item.index];
    long long tw = be.n * dk;
    if (vertex == be.vx) return same_edge_label(item.index, comp, tw, 0, false);
    return same_edge_label(item.index, comp, 0, tw, false);
}

}  // namespace

std::vector<GeneratorLabel> GradedHom::materialize(long long J) const {
    std::vector<GeneratorLabel> out = finite;
    for (const auto& fam : tails)
        for (long long i = fam.start; i <= J; ++i)
            out.push_back(ray_label(fam.kind, fam.ray, fam.component, i));
    return out;
}

std::pair<std::size_t, std::size_t> GradedHom::dims(long long J) const {
    std::size_t even = 0, odd = 0;
    for (const auto& l : materialize(J))
        (label_degree(l) == 0 ? even : odd)++;
    return {even, odd};
}

GeneratorLabel GradedHom::canonical(const GeneratorLabel& l) const {
    auto it = alias.find(l);
    return it == alias.end() ? l : it->second;
}

long long min_weight(const LagrangianObject& src, const LagrangianObject& tgt) {
    long long k = src.twist < 0 ? -src.twist : src.twist;
    long long l = tgt.twist < 0 ? -tgt.twist : tgt.twist;
    return k + l + 1;
}

std::vector<GeneratorLabel> chain_generators(const TropicalModel& m,
                                             TropicalCurve::BoundaryItem edge,
                                             const LagrangianObject& src,
                                             const LagrangianObject& tgt, long long n,
                                             int pants) {
    if (edge.is_ray) throw EdgeUnbounded("chain generators live on bounded edges");
    const auto& be = m.curve.bounded_edges[edge.index];
    if (!edge_has(be, src.component) || !edge_has(be, tgt.component))
        throw NotOnSharedCylinder("both objects must border the edge");
    if (pants != be.va && pants != be.vb)
        throw NotOnSharedCylinder("pants is not an endpoint of the edge");
    if (n < min_weight(src, tgt))
        throw WeightTooSmall("need n >= |k| + |l| + 1");
    long long tw = cylinder_twist(be, src, tgt);

    // 2n + tw + 1 <= 0 means no intersections in the wrapped region yet
    std::vector<GeneratorLabel> out;
    bool same = src.component == tgt.component;
    for (long long i = -n; i <= n + tw; ++i) {
        GeneratorLabel l = same ? same_edge_label(edge.index, src.component, i, 0, false)
                                : cross_edge_label(edge.index, src.component, i, 0, false);
        l.pants = pants;
        out.push_back(l);
    }
    return out;
}

GeneratorLabel glue_identify(const TropicalModel& m, int edge, const LagrangianObject& src,
                             const LagrangianObject& tgt, const GeneratorLabel& label) {
    const auto& be = m.curve.bounded_edges[edge];
    if (label.pants != be.va && label.pants != be.vb)
        throw NotOnSharedCylinder("label does not live on this cylinder");
    GeneratorLabel out = label;
    out.pants = (label.pants == be.va) ? be.vb : be.va;
    out.xe = cylinder_twist(be, src, tgt) - label.xe;
    return out;
}

ChainGeneratorSet build_chain_set(const TropicalModel& m, int pants,
                                  const LagrangianObject& src, const LagrangianObject& tgt,
                                  long long n) {
    if (n < min_weight(src, tgt)) throw WeightTooSmall("need n >= |k| + |l| + 1");
    ChainGeneratorSet set;
    set.pants = pants;
    set.src = src;
    set.tgt = tgt;
    set.weight = n;

    bool same = src.component == tgt.component;
    auto items = m.curve.items_at_vertex(pants);

    if (same) {
        // transverse point in the pants interior
        GeneratorLabel unit;
        unit.kind = LabelKind::Unit;
        unit.component = src.component;
        unit.pants = pants;
        set.joint_part.push_back(unit);
    }

    for (const auto& item : items) {
        auto [a, b] = m.curve.item_pair(item);
        bool matches = same ? (a == src.component || b == src.component)
                            : ((a == src.component && b == tgt.component) ||
                               (a == tgt.component && b == src.component));
        if (!matches) continue;
        if (!item.is_ray) {
            auto cyl = chain_generators(m, item, src, tgt, n, pants);
            set.cylinder_part.insert(set.cylinder_part.end(), cyl.begin(), cyl.end());
            // negatively wrapped region of this pants' side of the leg
            for (long long i = 1; i <= n; ++i) {
                GeneratorLabel l = same
                                       ? same_edge_label(item.index, src.component, i, 0, true)
                                       : cross_edge_label(item.index, src.component, i, 0, true);
                l.pants = pants;
                set.joint_part.push_back(l);
            }
        } else {
            if (same) {
                for (long long i = 1; i <= n; ++i) {
                    auto l = ray_label(LabelKind::RayTail, item.index, src.component, i);
                    l.pants = pants;
                    set.joint_part.push_back(l);
                }
            } else {
                for (long long i = 0; i < n; ++i) {
                    auto l = ray_label(LabelKind::RayChord, item.index, src.component, i);
                    l.pants = pants;
                    set.joint_part.push_back(l);
                }
            }
        }
    }
    return set;
}

std::vector<GeneratorLabel> restrict_to_cylinder(const ChainGeneratorSet& set) {
    return set.cylinder_part;
}

namespace {

void add_joint(GradedHom& h, const GeneratorLabel& member1, const GeneratorLabel& member2,
               const GeneratorLabel& joint) {
    h.alias[member1] = joint;
    h.alias[member2] = joint;
    h.members[joint] = {member1, member2};
}

GradedHom same_component_hom(const TropicalModel& m, const LagrangianObject& src,
                             const LagrangianObject& tgt) {
    GradedHom h;
    h.src = src;
    h.tgt = tgt;
    const int a = src.component;
    const auto& comp = m.curve.components[a];
    const long long dk = tgt.twist - src.twist;

    if (dk == 0) {
        GeneratorLabel unit;
        unit.kind = LabelKind::Unit;
        unit.component = a;
        h.finite.push_back(unit);
        if (comp.bounded) {
            GeneratorLabel pt;
            pt.kind = LabelKind::PointClass;
            pt.component = a;
            h.finite.push_back(pt);
        } else {
            for (const auto& item : comp.boundary)
                if (item.is_ray) h.tails.push_back({item.index, a, LabelKind::RayTail, 1, 0});
        }
        return h;
    }

    const std::size_t nb = comp.boundary.size();
    const std::size_t njoints = comp.bounded ? nb : nb - 1;

    bool has_bounded_item = false;
    for (const auto& item : comp.boundary) has_bounded_item |= !item.is_ray;

    // Without bounded edges the twists never act on this component and the
    // hom is twist-independent: the joint point persists for every k, l.
    if (dk > 0 || !has_bounded_item) {
        std::vector<GeneratorLabel> raw;
        for (const auto& item : comp.boundary) {
            if (item.is_ray) {
                raw.push_back(ray_label(LabelKind::RayTail, item.index, a, 0));
                h.tails.push_back({item.index, a, LabelKind::RayTail, 1, 0});
            } else {
                long long tw = m.curve.bounded_edges[item.index].n * dk;
                for (long long j = 0; j <= tw; ++j)
                    raw.push_back(same_edge_label(item.index, a, tw - j, j, false));
            }
        }
        for (std::size_t i = 0; i < njoints; ++i) {
            const auto& b1 = comp.boundary[i];
            const auto& b2 = comp.boundary[(i + 1) % nb];
            int v = m.curve.joint_vertex(b1, b2);
            add_joint(h, end_label(m, b1, a, dk, v), end_label(m, b2, a, dk, v),
                      joint_label(v, a, false));
        }
        std::set<GeneratorLabel> seen;
        for (const auto& l : raw) {
            auto c = h.canonical(l);
            if (seen.insert(c).second) h.finite.push_back(c);
        }
    } else {
        const long long K = -dk;
        for (const auto& item : comp.boundary) {
            if (item.is_ray) {
                h.tails.push_back({item.index, a, LabelKind::RayTail, 1, 0});
            } else {
                long long de = m.curve.bounded_edges[item.index].n * K - 2;
                for (long long j = 0; j <= de; ++j)
                    h.finite.push_back(same_edge_label(item.index, a, de - j, j, true));
            }
        }
        for (std::size_t i = 0; i < njoints; ++i) {
            const auto& b1 = comp.boundary[i];
            const auto& b2 = comp.boundary[(i + 1) % nb];
            if (b1.is_ray || b2.is_ray) continue;  // extra generators only at edge-edge joints
            int v = m.curve.joint_vertex(b1, b2);
            h.finite.push_back(joint_label(v, a, true));
        }
    }
    return h;
}

GradedHom cross_component_hom(const TropicalModel& m, const LagrangianObject& src,
                              const LagrangianObject& tgt) {
    GradedHom h;
    h.src = src;
    h.tgt = tgt;
    int ray = m.curve.ray_between(src.component, tgt.component);
    if (ray >= 0) {
        h.tails.push_back({ray, src.component, LabelKind::RayChord, 0, 1});
        return h;
    }
    int e = m.curve.bounded_edge_between(src.component, tgt.component);
    if (e < 0) return h;  // components do not interact
    const auto& be = m.curve.bounded_edges[e];
    long long D = be.n * (tgt.twist - src.twist) + d_from(be, src.component);
    if (D >= 0) {
        for (long long j = 0; j <= D; ++j)
            h.finite.push_back(cross_edge_label(e, src.component, D - j, j, false));
    } else if (D <= -2) {
        for (long long j = 0; j <= -D - 2; ++j)
            h.finite.push_back(cross_edge_label(e, src.component, -D - 2 - j, j, true));
    }
    return h;
}

}  // namespace

GradedHom cohomology_hom_basis(const TropicalModel& m, const LagrangianObject& src,
                               const LagrangianObject& tgt, long long J) {
    GradedHom h = (src.component == tgt.component) ? same_component_hom(m, src, tgt)
                                                   : cross_component_hom(m, src, tgt);
    h.truncation = J;
    return h;
}

// ---- products ----

namespace {

bool hom_contains(const GradedHom& h, const GeneratorLabel& l) {
    if (std::find(h.finite.begin(), h.finite.end(), l) != h.finite.end()) return true;
    for (const auto& fam : h.tails)
        if (l.kind == fam.kind && l.edge == fam.ray && l.component == fam.component &&
            !l.dual && l.xe >= fam.start && l.ye == 0)
            return true;
    return false;
}

bool is_monomial_kind(const GeneratorLabel& l) {
    return l.kind == LabelKind::SameEdge || l.kind == LabelKind::CrossEdge ||
           l.kind == LabelKind::RayTail || l.kind == LabelKind::RayChord;
}

/// Candidate monomial representatives: the label itself, or the joint members
/// recorded in its hom.
std::vector<GeneratorLabel> monomial_reps(const GeneratorLabel& l, const GradedHom& hom) {
    if (is_monomial_kind(l)) return {l};
    if (l.kind == LabelKind::JointPoint && !l.dual) {
        auto it = hom.members.find(l);
        if (it != hom.members.end()) return it->second;
    }
    return {};
}

bool same_support(const GeneratorLabel& a, const GeneratorLabel& b) {
    bool a_ray = a.kind == LabelKind::RayTail || a.kind == LabelKind::RayChord;
    bool b_ray = b.kind == LabelKind::RayTail || b.kind == LabelKind::RayChord;
    return a_ray == b_ray && a.edge == b.edge;
}

std::vector<GeneratorLabel> finish(const ProductContext& ctx, GeneratorLabel result) {
    result = ctx.hom_out->canonical(result);
    if (!hom_contains(*ctx.hom_out, result)) return {};
    return {result};
}

/// Checks that a label can name a generator of Hom(from, to).
void validate_label(const TropicalModel& m, const GeneratorLabel& l,
                    const LagrangianObject& from, const LagrangianObject& to) {
    switch (l.kind) {
        case LabelKind::SameEdge:
        case LabelKind::RayTail:
        case LabelKind::Unit:
        case LabelKind::PointClass:
        case LabelKind::JointPoint:
            if (from.component != to.component || l.component != from.component)
                throw NotComposable("same-component label in a cross hom slot");
            break;
        case LabelKind::CrossEdge: {
            if (l.component != from.component) throw NotComposable("cross label source mismatch");
            const auto& be = m.curve.bounded_edges[l.edge];
            int other = be.alpha == l.component ? be.beta : be.alpha;
            if (other != to.component) throw NotComposable("cross label target mismatch");
            break;
        }
        case LabelKind::RayChord: {
            if (l.component != from.component) throw NotComposable("chord source mismatch");
            const auto& r = m.curve.rays[l.edge];
            int other = r.alpha == l.component ? r.beta : r.alpha;
            if (other != to.component) throw NotComposable("chord target mismatch");
            break;
        }
    }
}

}  // namespace

std::vector<GeneratorLabel> cohomology_product(const GeneratorLabel& f,
                                               const GeneratorLabel& g,
                                               const ProductContext& ctx) {
    if (!ctx.hom_f || !ctx.hom_g || !ctx.hom_out) throw NotComposable("missing hom context");
    validate_label(*ctx.model, g, ctx.X0, ctx.X1);
    validate_label(*ctx.model, f, ctx.X1, ctx.X2);

    // identity generators
    if (f.kind == LabelKind::Unit) {
        if (ctx.X1 != ctx.X2) throw NotComposable("unit must be an endomorphism");
        return {ctx.hom_out->canonical(g)};
    }
    if (g.kind == LabelKind::Unit) {
        if (ctx.X0 != ctx.X1) throw NotComposable("unit must be an endomorphism");
        return {ctx.hom_out->canonical(f)};
    }

    if (f.kind == LabelKind::PointClass || g.kind == LabelKind::PointClass ||
        (f.kind == LabelKind::JointPoint && f.dual) ||
        (g.kind == LabelKind::JointPoint && g.dual))
        throw UnspecifiedProduct("no formula for point-class or dual joint generators");

    auto reps_f = monomial_reps(f, *ctx.hom_f);
    auto reps_g = monomial_reps(g, *ctx.hom_g);
    if (reps_f.empty() || reps_g.empty())
        throw UnspecifiedProduct("label has no monomial representative");

    for (const auto& mf : reps_f)
        for (const auto& mg : reps_g) {
            if (!same_support(mf, mg)) continue;

            if (mf.kind == LabelKind::RayChord || mg.kind == LabelKind::RayChord)
                throw UnspecifiedProduct("chord compositions on unbounded edges");

            if (mf.kind == LabelKind::RayTail && mg.kind == LabelKind::RayTail) {
                if (mf.component != mg.component) throw NotComposable("tail components differ");
                return finish(ctx, ray_label(LabelKind::RayTail, mf.edge, mf.component,
                                             mf.xe + mg.xe));
            }

            bool same_f = mf.kind == LabelKind::SameEdge;
            bool same_g = mg.kind == LabelKind::SameEdge;

            if (same_f && same_g && mf.component == mg.component) {
                if (!mf.dual && !mg.dual) {
                    // only possible when the twists are ordered j <= k <= l
                    if (!(ctx.X0.twist <= ctx.X1.twist && ctx.X1.twist <= ctx.X2.twist))
                        return {};
                    return finish(ctx, same_edge_label(mf.edge, mf.component, mf.xe + mg.xe,
                                                       mf.ye + mg.ye, false));
                }
                if (!mf.dual && mg.dual) {
                    long long xe = mg.xe - mf.xe, ye = mg.ye - mf.ye;
                    if (xe < 0 || ye < 0) return {};
                    return finish(ctx, same_edge_label(mf.edge, mf.component, xe, ye, true));
                }
                if (mf.dual && !mg.dual) {
                    long long xe = mf.xe - mg.xe, ye = mf.ye - mg.ye;
                    if (xe < 0 || ye < 0) return {};
                    return finish(ctx, same_edge_label(mf.edge, mf.component, xe, ye, true));
                }
                return {};  // dual.dual: no even bounded-edge target
            }

            if (mf.kind == LabelKind::CrossEdge && same_g) {
                if (mf.dual || mg.dual) throw UnspecifiedProduct("dual cross composition");
                return finish(ctx, cross_edge_label(mf.edge, mf.component, mf.xe + mg.xe,
                                                    mf.ye + mg.ye, false));
            }
            if (same_f && mg.kind == LabelKind::CrossEdge) {
                if (mf.dual || mg.dual) throw UnspecifiedProduct("dual cross composition");
                return finish(ctx, cross_edge_label(mf.edge, mg.component, mf.xe + mg.xe,
                                                    mf.ye + mg.ye, false));
            }
            if (mf.kind == LabelKind::CrossEdge && mg.kind == LabelKind::CrossEdge) {
                if (mf.dual || mg.dual) throw UnspecifiedProduct("dual cross composition");
                // odd . odd lands in the even part of the source component
                return finish(ctx, same_edge_label(mf.edge, mg.component, mf.xe + mg.xe + 1,
                                                   mf.ye + mg.ye + 1, false));
            }
        }

    return {};  // disjoint supports: no triangle spans two edges
}

bool triple_vanishing_check(const TropicalModel& m, int pants,
                            const std::vector<GeneratorLabel>& labels) {
    for (const auto& l : labels) {
        long long dist = 0;
        switch (l.kind) {
            case LabelKind::RayChord:
            case LabelKind::RayTail:
                if (m.curve.rays[l.edge].v != pants) return false;
                dist = l.xe;
                break;
            case LabelKind::CrossEdge:
            case LabelKind::SameEdge: {
                const auto& be = m.curve.bounded_edges[l.edge];
                if (pants == be.vx) dist = l.ye;
                else if (pants == be.vy) dist = l.xe;
                else return false;
                break;
            }
            case LabelKind::JointPoint:
                if (l.vertex != pants) return false;
                dist = 0;
                break;
            default:
                return false;
        }
        if (dist != 0) return false;
    }
    return true;
}

}  // namespace hms

#include "hms/mirror.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hms {

namespace {

long long d_from(const TropicalCurve::BoundedEdge& be, int source_component) {
    if (be.alpha == source_component) return be.d_ab;
    if (be.beta == source_component) return be.d_ba;
    throw ComponentNotOnChart("component does not border the edge");
}

bool cell_has(const TropicalCurve::Vertex& v, int comp) {
    return v.cell[0] == comp || v.cell[1] == comp || v.cell[2] == comp;
}

/// Twist of the Ext sheaf of an object pair on a bounded edge.
long long edge_twist(const TropicalCurve::BoundedEdge& be, const MFObject& src,
                     const MFObject& tgt) {
    long long t = be.n * (tgt.twist - src.twist);
    if (src.component != tgt.component) t += d_from(be, src.component);
    return t;
}

GeneratorLabel chart_label(LabelKind kind, int edge, int comp, long long i, int vertex) {
    GeneratorLabel l;
    l.kind = kind;
    l.edge = edge;
    l.component = comp;
    l.xe = i;
    l.pants = vertex;
    return l;
}

GeneratorLabel overlap_label(bool same, int edge, int comp, long long laurent, long long twist) {
    GeneratorLabel l;
    l.kind = same ? LabelKind::SameEdge : LabelKind::CrossEdge;
    l.edge = edge;
    l.component = comp;
    l.xe = laurent;
    l.ye = twist - laurent;
    return l;
}

}  // namespace

void NodalCurveConfig::validate() const {
    if (components.empty()) throw InvalidConfig("empty configuration");
    std::size_t affine = 0;
    for (const auto& c : components) affine += !c.projective;
    if (cycle) {
        if (affine) throw InvalidConfig("cycle with affine components");
        if (nodes.size() != components.size())
            throw InvalidConfig("cycle needs one node per component");
    } else {
        if (affine != 0 && affine != 2)
            throw InvalidConfig("chain needs exactly 0 or 2 affine ends");
        for (std::size_t i = 0; i < components.size(); ++i)
            if (!components[i].projective && i != 0 && i + 1 != components.size())
                throw InvalidConfig("affine components must sit at the ends");
        if (nodes.size() + 1 != components.size())
            throw InvalidConfig("chain needs one node between consecutive components");
    }
    for (const auto& n : nodes)
        if (n.left < 0 || n.right < 0 || n.left >= static_cast<int>(components.size()) ||
            n.right >= static_cast<int>(components.size()))
            throw InvalidConfig("node references a missing component");
}

std::vector<Chart> ordered_cover(const TropicalModel& m) {
    const auto& verts = m.curve.vertices;
    std::vector<Rat> height(verts.size());
    for (long long s = 0;; ++s) {
        Rat e1 = Rat(1) / Rat(s + 2);
        Rat e2 = e1 * e1;
        std::set<Rat> seen;
        bool distinct = true;
        for (std::size_t v = 0; v < verts.size(); ++v) {
            height[v] = verts[v].zeta + e1 * verts[v].x + e2 * verts[v].y;
            distinct &= seen.insert(height[v]).second;
        }
        if (distinct) break;
    }
    std::vector<int> idx(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) idx[v] = static_cast<int>(v);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return height[a] < height[b]; });

    std::vector<Chart> cover;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        Chart c;
        c.vertex = idx[pos];
        c.coords = m.curve.items_at_vertex(idx[pos]);
        c.order = static_cast<int>(pos) + 1;
        cover.push_back(c);
    }
    return cover;
}

GradedExt chart_hom(const TropicalModel& m, const Chart& chart, const MFObject& src,
                    const MFObject& tgt, long long J) {
    const auto& vert = m.curve.vertices[chart.vertex];
    if (!cell_has(vert, src.component) || !cell_has(vert, tgt.component))
        throw ComponentNotOnChart("object component is not on this chart");

    GradedExt ext;
    ext.src = src;
    ext.tgt = tgt;
    ext.truncation = J;

    if (src.component == tgt.component) {
        GeneratorLabel shared;
        shared.kind = LabelKind::JointPoint;
        shared.vertex = chart.vertex;
        shared.component = src.component;
        shared.pants = chart.vertex;
        ext.even.push_back(shared);
        for (const auto& item : chart.coords) {
            auto [a, b] = m.curve.item_pair(item);
            if (a != src.component && b != src.component) continue;
            LabelKind kind = item.is_ray ? LabelKind::RayTail : LabelKind::SameEdge;
            for (long long i = 1; i <= J; ++i)
                ext.even.push_back(chart_label(kind, item.index, src.component, i, chart.vertex));
        }
    } else {
        for (const auto& item : chart.coords) {
            auto [a, b] = m.curve.item_pair(item);
            bool match = (a == src.component && b == tgt.component) ||
                         (a == tgt.component && b == src.component);
            if (!match) continue;
            LabelKind kind = item.is_ray ? LabelKind::RayChord : LabelKind::CrossEdge;
            for (long long i = 0; i <= J; ++i)
                ext.odd.push_back(chart_label(kind, item.index, src.component, i, chart.vertex));
        }
    }
    return ext;
}

// ---- chart hom via the printed two-periodic differentials ----

namespace {

struct Mono {
    long long a = 0, b = 0, c = 0;  // exponents of the three chart coordinates
    auto operator<=>(const Mono&) const = default;
    long long deg() const { return a + b + c; }
};

std::vector<Mono> monomials_upto(long long D) {
    std::vector<Mono> out;
    for (long long d = 0; d <= D; ++d)
        for (long long a = d; a >= 0; --a)
            for (long long b = d - a; b >= 0; --b)
                out.push_back({a, b, d - a - b});
    return out;
}

/// Two-slot truncated polynomial space with monomial lookup.
struct PolySpace {
    std::vector<Mono> monos;
    std::map<Mono, std::size_t> index;

    explicit PolySpace(long long D) : monos(monomials_upto(D)) {
        for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    }
    std::size_t dim() const { return 2 * monos.size(); }
    std::size_t slot(int s, std::size_t mono_idx) const {
        return static_cast<std::size_t>(s) * monos.size() + mono_idx;
    }
};

/// One term of a differential: multiply a slot by a monomial into a slot.
struct Term {
    int to_slot;
    Mono mult;
    int from_slot;
    int sign;
};

SparseMatrix<Rat> build_map(const PolySpace& dom, const PolySpace& cod,
                            const std::vector<Term>& terms) {
    SparseMatrix<Rat> mat(cod.dim(), dom.dim());
    for (std::size_t i = 0; i < dom.monos.size(); ++i)
        for (const auto& t : terms) {
            Mono out{dom.monos[i].a + t.mult.a, dom.monos[i].b + t.mult.b,
                     dom.monos[i].c + t.mult.c};
            auto it = cod.index.find(out);
            if (it == cod.index.end()) continue;  // beyond the codomain truncation
            mat.add(cod.slot(t.to_slot, it->second), dom.slot(t.from_slot, i), Rat(t.sign));
        }
    return mat;
}

/// ker(next)/im(prev) with deterministic free-column class labels.
std::vector<std::pair<int, Mono>> two_periodic_classes(const PolySpace& small,
                                                       const PolySpace& mid,
                                                       const PolySpace& big,
                                                       const std::vector<Term>& prev_terms,
                                                       const std::vector<Term>& next_terms) {
    auto prev = build_map(small, mid, prev_terms);
    auto next = build_map(mid, big, next_terms);
    detail::Span<Rat> span(mid.dim());
    for (std::size_t c = 0; c < prev.cols; ++c) {
        std::vector<Rat> col(prev.rows, Rat(0));
        for (std::size_t r = 0; r < prev.rows; ++r) col[r] = prev.at(r, c);
        span.insert(std::move(col));
    }
    std::vector<std::pair<int, Mono>> classes;
    for (const auto& [free_col, vec] : kernel_basis_indexed(next)) {
        if (span.insert(vec)) {
            int slot = free_col < mid.monos.size() ? 0 : 1;
            classes.emplace_back(slot, mid.monos[free_col % mid.monos.size()]);
        }
    }
    return classes;
}

}  // namespace

GradedExt chart_hom_via_matrices(const TropicalModel& m, const Chart& chart,
                                 const MFObject& src, const MFObject& tgt, long long J) {
    const auto& vert = m.curve.vertices[chart.vertex];
    if (!cell_has(vert, src.component) || !cell_has(vert, tgt.component))
        throw ComponentNotOnChart("object component is not on this chart");

    const long long D = J + 2;
    PolySpace small(D - 2), mid(D), big(D + 2);

    GradedExt ext;
    ext.src = src;
    ext.tgt = tgt;
    ext.truncation = J;

    const Mono Y{0, 1, 0}, Z{0, 0, 1}, XY{1, 1, 0}, XZ{1, 0, 1};

    if (src.component == tgt.component) {
        // coordinates: x, y = the two edges of the component at this vertex,
        // z = the opposite edge
        TropicalCurve::BoundaryItem items[2];
        int found = 0;
        for (const auto& item : chart.coords) {
            auto [a, b] = m.curve.item_pair(item);
            if (a == src.component || b == src.component) items[found++] = item;
        }
        if (found != 2) throw ComponentNotOnChart("component must meet two chart coordinates");

        // (f0, f1) -> (xy (f0 - f1), z (f1 - f0)); (h0, h1) -> diag(xy h1 + z h0)
        std::vector<Term> d_even = {{0, XY, 0, 1}, {0, XY, 1, -1}, {1, Z, 1, 1}, {1, Z, 0, -1}};
        std::vector<Term> d_odd = {{0, XY, 1, 1}, {0, Z, 0, 1}, {1, XY, 1, 1}, {1, Z, 0, 1}};

        for (auto [slot, mono] : two_periodic_classes(small, mid, big, d_odd, d_even)) {
            if (mono.deg() > J) continue;  // truncation artifacts live at top degree
            (void)slot;
            GeneratorLabel l;
            if (mono == Mono{0, 0, 0}) {
                l.kind = LabelKind::JointPoint;
                l.vertex = chart.vertex;
                l.component = src.component;
                l.pants = chart.vertex;
            } else if (mono.b == 0 && mono.c == 0) {
                l = chart_label(items[0].is_ray ? LabelKind::RayTail : LabelKind::SameEdge,
                                items[0].index, src.component, mono.a, chart.vertex);
            } else if (mono.a == 0 && mono.c == 0) {
                l = chart_label(items[1].is_ray ? LabelKind::RayTail : LabelKind::SameEdge,
                                items[1].index, src.component, mono.b, chart.vertex);
            } else {
                throw Error("two-periodic even class is not a pure coordinate power");
            }
            ext.even.push_back(l);
        }
        for (auto [slot, mono] : two_periodic_classes(small, mid, big, d_even, d_odd)) {
            if (mono.deg() > J) continue;
            throw Error("unexpected odd cohomology in a same-component chart hom");
        }
    } else {
        // coordinates: x = the shared edge, y = the source component's other
        // edge, z = the target component's other edge
        TropicalCurve::BoundaryItem shared{};
        bool have = false;
        for (const auto& item : chart.coords) {
            auto [a, b] = m.curve.item_pair(item);
            if ((a == src.component && b == tgt.component) ||
                (a == tgt.component && b == src.component)) {
                shared = item;
                have = true;
            }
        }
        if (!have) throw ComponentNotOnChart("objects share no coordinate on this chart");

        // (f0, f1) -> (xz f0 - xy f1, y f1 - z f0); (h0, h1) -> (y h0 + xy h1, xz h1 + z h0)
        std::vector<Term> d_even = {{0, XZ, 0, 1}, {0, XY, 1, -1}, {1, Y, 1, 1}, {1, Z, 0, -1}};
        std::vector<Term> d_odd = {{0, Y, 0, 1}, {0, XY, 1, 1}, {1, XZ, 1, 1}, {1, Z, 0, 1}};

        for (auto [slot, mono] : two_periodic_classes(small, mid, big, d_even, d_odd)) {
            if (mono.deg() > J) continue;
            if (mono.b != 0 || mono.c != 0)
                throw Error("two-periodic odd class is not a power of the shared coordinate");
            (void)slot;
            ext.odd.push_back(chart_label(
                shared.is_ray ? LabelKind::RayChord : LabelKind::CrossEdge, shared.index,
                src.component, mono.a, chart.vertex));
        }
        for (auto [slot, mono] : two_periodic_classes(small, mid, big, d_odd, d_even)) {
            if (mono.deg() > J) continue;
            throw Error("unexpected even cohomology in a cross-component chart hom");
        }
    }
    return ext;
}

std::optional<GeneratorLabel> mf_restrict_label(const TropicalModel& m, const Chart& chart,
                                                int edge, const MFObject& src,
                                                const MFObject& tgt,
                                                const GeneratorLabel& label) {
    const auto& be = m.curve.bounded_edges[edge];
    if (be.va != chart.vertex && be.vb != chart.vertex)
        throw EdgeNotOnChart("edge is not incident to the chart vertex");
    bool same = src.component == tgt.component;
    // homs of a pair whose divisors miss this overlap restrict to zero
    if (same) {
        if (be.alpha != src.component && be.beta != src.component) return std::nullopt;
    } else {
        bool fwd = be.alpha == src.component && be.beta == tgt.component;
        bool bwd = be.beta == src.component && be.alpha == tgt.component;
        if (!fwd && !bwd) return std::nullopt;
    }
    long long tw = edge_twist(be, src, tgt);
    bool at_x_end = chart.vertex == be.vx;

    auto laurent = [&](long long local) { return at_x_end ? local : tw - local; };

    if (same) {
        if (label.kind == LabelKind::JointPoint && label.vertex == chart.vertex)
            return overlap_label(true, edge, src.component, laurent(0), tw);
        if (label.kind == LabelKind::SameEdge && label.edge == edge &&
            label.pants == chart.vertex)
            return overlap_label(true, edge, src.component, laurent(label.xe), tw);
        return std::nullopt;  // other coordinates die on the overlap
    }
    if (label.kind == LabelKind::CrossEdge && label.edge == edge && label.pants == chart.vertex)
        return overlap_label(false, edge, src.component, laurent(label.xe), tw);
    return std::nullopt;
}

GradedExt mf_restriction(const TropicalModel& m, const Chart& chart, int edge,
                         const MFObject& src, const MFObject& tgt, const GradedExt& ext) {
    GradedExt out;
    out.src = src;
    out.tgt = tgt;
    out.truncation = ext.truncation;
    for (const auto& l : ext.even)
        if (auto r = mf_restrict_label(m, chart, edge, src, tgt, l)) out.even.push_back(*r);
    for (const auto& l : ext.odd)
        if (auto r = mf_restrict_label(m, chart, edge, src, tgt, l)) out.odd.push_back(*r);
    return out;
}

std::optional<GeneratorLabel> cech_product(const TropicalModel& m, const Chart& chart,
                                           int edge, const MFObject& src, const MFObject& mid,
                                           const MFObject& tgt, const GeneratorLabel& chart_elem,
                                           const GeneratorLabel& overlap_elem) {
    // restrict the chart element of Hom(mid, tgt), then multiply on the overlap
    auto restricted = mf_restrict_label(m, chart, edge, mid, tgt, chart_elem);
    if (!restricted) return std::nullopt;
    const auto& be = m.curve.bounded_edges[edge];
    bool same_out = src.component == tgt.component;
    long long tw_out = edge_twist(be, src, tgt);
    long long laurent = restricted->xe + overlap_elem.xe;
    return overlap_label(same_out, edge, src.component, laurent, tw_out);
}

std::pair<std::vector<GeneratorLabel>, std::vector<GeneratorLabel>> nodal_cohomology(
    const NodalCurveConfig& config, long long J) {
    config.validate();

    struct Column {
        GeneratorLabel label;
        int comp;
        long long p, q;  // traversal-frame exponents; affine sections use p only
    };
    std::vector<Column> cols;
    for (std::size_t c = 0; c < config.components.size(); ++c) {
        const auto& comp = config.components[c];
        if (comp.projective) {
            for (long long j = 0; comp.degree >= 0 && j <= comp.degree; ++j) {
                GeneratorLabel l = comp.label;
                l.xe = comp.degree - j;
                l.ye = j;
                cols.push_back({l, static_cast<int>(c), comp.degree - j, j});
            }
        } else {
            for (long long j = 0; j <= J; ++j) {
                GeneratorLabel l = comp.label;
                l.xe = j;
                l.ye = 0;
                cols.push_back({l, static_cast<int>(c), j, 0});
            }
        }
    }

    SparseMatrix<Rat> eval(config.nodes.size(), cols.size());
    for (std::size_t r = 0; r < config.nodes.size(); ++r) {
        const auto& node = config.nodes[r];
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& col = cols[c];
            // left side meets the node with its y-end, right side with its
            // x-end; a section's value there is its pure-power coefficient.
            // Affine sections evaluate by their constant term (p == 0).
            if (col.comp == node.left && col.p == 0) eval.add(r, c, Rat(1));
            if (col.comp == node.right) {
                bool nonzero = config.components[col.comp].projective ? (col.q == 0)
                                                                      : (col.p == 0);
                if (nonzero) eval.add(r, c, Rat(-1));
            }
        }
    }

    std::vector<GeneratorLabel> h0, h1;
    for (const auto& [free_col, vec] : kernel_basis_indexed(eval))
        h0.push_back(cols[free_col].label);
    for (auto row : cokernel_basis(eval)) {
        GeneratorLabel l = config.nodes[row].label;
        l.dual = true;
        h1.push_back(l);
    }
    for (const auto& comp : config.components) {
        if (!comp.projective || comp.degree >= -1) continue;
        long long s = -comp.degree - 2;
        for (long long j = 0; j <= s; ++j) {
            GeneratorLabel l = comp.label;
            l.xe = s - j;
            l.ye = j;
            l.dual = true;
            h1.push_back(l);
        }
    }
    return {h0, h1};
}

namespace {

/// Swaps monomial exponents of labels written in a traversal frame opposite
/// to the canonical edge frame.
GeneratorLabel to_canonical_frame(GeneratorLabel l, bool swap) {
    if (swap && (l.kind == LabelKind::SameEdge || l.kind == LabelKind::CrossEdge))
        std::swap(l.xe, l.ye);
    return l;
}

}  // namespace

GradedExt global_ext(const TropicalModel& m, const MFObject& src, const MFObject& tgt,
                     long long J) {
    GradedExt ext;
    ext.src = src;
    ext.tgt = tgt;
    ext.truncation = J;

    const long long dk = tgt.twist - src.twist;

    if (src.component != tgt.component) {
        int ray = m.curve.ray_between(src.component, tgt.component);
        if (ray >= 0) {
            for (long long j = 0; j <= J; ++j) {
                GeneratorLabel l;
                l.kind = LabelKind::RayChord;
                l.edge = ray;
                l.component = src.component;
                l.xe = j;
                ext.odd.push_back(l);
            }
            return ext;
        }
        int e = m.curve.bounded_edge_between(src.component, tgt.component);
        if (e < 0) return ext;  // divisors do not meet
        const auto& be = m.curve.bounded_edges[e];
        NodalCurveConfig cfg;
        NodalCurveConfig::Component comp;
        comp.projective = true;
        comp.degree = edge_twist(be, src, tgt);
        comp.label.kind = LabelKind::CrossEdge;
        comp.label.edge = e;
        comp.label.component = src.component;
        cfg.components.push_back(comp);
        auto [h0, h1] = nodal_cohomology(cfg, J);
        ext.odd = h0;  // the degree shift swaps the parities
        ext.even = h1;
        return ext;
    }

    // same component: the boundary curve of the component with O(l-k)
    const int a = src.component;
    const auto& comp = m.curve.components[a];
    NodalCurveConfig cfg;
    cfg.cycle = comp.bounded;
    std::vector<bool> swap_frame;
    const std::size_t nb = comp.boundary.size();
    for (std::size_t i = 0; i < nb; ++i) {
        const auto& item = comp.boundary[i];
        NodalCurveConfig::Component c;
        if (item.is_ray) {
            c.projective = false;
            c.label.kind = LabelKind::RayTail;
            c.label.edge = item.index;
            c.label.component = a;
            swap_frame.push_back(false);
        } else {
            const auto& be = m.curve.bounded_edges[item.index];
            c.projective = true;
            c.degree = be.n * dk;
            c.label.kind = LabelKind::SameEdge;
            c.label.edge = item.index;
            c.label.component = a;
            // the traversal enters the edge at the joint with the previous item
            const auto& prev = comp.boundary[(i + nb - 1) % nb];
            int entry = m.curve.joint_vertex(prev, item);
            swap_frame.push_back(entry != be.vx);
        }
        cfg.components.push_back(c);
    }
    const std::size_t nnodes = cfg.cycle ? nb : nb - 1;
    for (std::size_t i = 0; i < nnodes; ++i) {
        NodalCurveConfig::Node node;
        node.left = static_cast<int>(i);
        node.right = static_cast<int>((i + 1) % nb);
        node.label.kind = LabelKind::JointPoint;
        node.label.vertex = m.curve.joint_vertex(comp.boundary[i], comp.boundary[(i + 1) % nb]);
        node.label.component = a;
        cfg.nodes.push_back(node);
    }

    auto [h0, h1] = nodal_cohomology(cfg, J);
    auto fix = [&](std::vector<GeneratorLabel>& labels) {
        for (auto& l : labels) {
            if (l.kind != LabelKind::SameEdge) continue;
            for (std::size_t i = 0; i < nb; ++i)
                if (!comp.boundary[i].is_ray && comp.boundary[i].index == l.edge) {
                    l = to_canonical_frame(l, swap_frame[i]);
                    break;
                }
        }
    };
    fix(h0);
    fix(h1);
    ext.even = h0;
    ext.odd = h1;
    return ext;
}

CechResult cech_total_complex(const TropicalModel& m, const MFObject& src, const MFObject& tgt,
                              long long J) {
    CechResult res;

    // relevant charts and bounded overlap edges for this object pair
    std::vector<int> edges;
    std::set<int> chart_verts;
    bool same = src.component == tgt.component;
    if (same) {
        for (const auto& item : m.curve.components[src.component].boundary)
            if (!item.is_ray) edges.push_back(item.index);
        for (std::size_t v = 0; v < m.curve.vertices.size(); ++v)
            if (cell_has(m.curve.vertices[v], src.component))
                chart_verts.insert(static_cast<int>(v));
    } else {
        int e = m.curve.bounded_edge_between(src.component, tgt.component);
        int r = m.curve.ray_between(src.component, tgt.component);
        if (e >= 0) {
            edges.push_back(e);
            chart_verts.insert(m.curve.bounded_edges[e].va);
            chart_verts.insert(m.curve.bounded_edges[e].vb);
        } else if (r >= 0) {
            chart_verts.insert(m.curve.rays[r].v);
        } else {
            return res;  // empty complex
        }
    }

    long long max_twist = 0;
    for (int e : edges) {
        long long tw = edge_twist(m.curve.bounded_edges[e], src, tgt);
        max_twist = std::max(max_twist, tw < 0 ? -tw : tw);
    }
    const long long Jint = J + 2 + max_twist;

    auto cover = ordered_cover(m);
    std::vector<Chart> charts;
    for (const auto& c : cover)
        if (chart_verts.count(c.vertex)) charts.push_back(c);

    for (const auto& c : charts) {
        auto h = chart_hom(m, c, src, tgt, Jint);
        res.c0.insert(res.c0.end(), h.even.begin(), h.even.end());
        res.c0.insert(res.c0.end(), h.odd.begin(), h.odd.end());
    }
    struct Window {
        int edge;
        long long lo, hi, tw;
    };
    std::vector<Window> windows;
    for (int e : edges) {
        long long tw = edge_twist(m.curve.bounded_edges[e], src, tgt);
        Window w{e, std::min(0LL, tw - Jint), std::max(Jint, tw), tw};
        windows.push_back(w);
        for (long long i = w.lo; i <= w.hi; ++i)
            res.c1.push_back(overlap_label(same, e, src.component, i, tw));
    }

    std::map<GeneratorLabel, std::size_t> row_of;
    for (std::size_t r = 0; r < res.c1.size(); ++r) row_of[res.c1[r]] = r;

    res.delta = SparseMatrix<F2>(res.c1.size(), res.c0.size());
    for (std::size_t col = 0; col < res.c0.size(); ++col) {
        const auto& label = res.c0[col];
        const Chart* chart = nullptr;
        for (const auto& c : charts)
            if (c.vertex == label.pants) chart = &c;
        if (!chart) throw Error("chart label without a chart");
        for (const auto& w : windows) {
            const auto& be = m.curve.bounded_edges[w.edge];
            if (be.va != chart->vertex && be.vb != chart->vertex) continue;
            if (auto img = mf_restrict_label(m, *chart, w.edge, src, tgt, label)) {
                auto it = row_of.find(*img);
                if (it == row_of.end()) throw Error("overlap window too small");
                res.delta.add(it->second, col, F2(1));
            }
        }
    }

    // cohomology of the two-term complex, with tail classes truncated at J
    auto is_tail = [](const GeneratorLabel& l) {
        return l.kind == LabelKind::RayTail || l.kind == LabelKind::RayChord;
    };
    for (const auto& [free_col, vec] : kernel_basis_indexed(res.delta)) {
        const auto& l = res.c0[free_col];
        if (is_tail(l) && l.xe > J) continue;
        (label_degree(l) == 0 ? res.even_classes : res.odd_classes).push_back(l);
    }
    for (auto row : cokernel_basis(res.delta)) {
        const auto& l = res.c1[row];
        int parity = (label_degree(l) + 1) % 2;
        (parity == 0 ? res.even_classes : res.odd_classes).push_back(l);
    }
    return res;
}

}  // namespace hms

#include "hms/tropical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hms {

namespace {

long long cross(long long ax, long long ay, long long bx, long long by) {
    return ax * by - ay * bx;
}

long long dot(long long ax, long long ay, long long bx, long long by) {
    return ax * bx + ay * by;
}

/// Twice the area of the convex hull of a point set (shoelace on the hull).
long long hull_area_twice(const std::vector<LatticePoint>& pts) {
    std::vector<LatticePoint> p = pts;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    const int n = static_cast<int>(p.size());
    std::vector<LatticePoint> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1].x - h[k - 2].x, h[k - 1].y - h[k - 2].y,
                               p[i].x - h[k - 2].x, p[i].y - h[k - 2].y) <= 0)
            --k;
        h[k++] = p[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross(h[k - 1].x - h[k - 2].x, h[k - 1].y - h[k - 2].y,
                                   p[i].x - h[k - 2].x, p[i].y - h[k - 2].y) <= 0)
            --k;
        h[k++] = p[i];
    }
    h.resize(k > 0 ? k - 1 : 0);
    long long a2 = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& u = h[i];
        const auto& v = h[(i + 1) % h.size()];
        a2 += cross(u.x, u.y, v.x, v.y);
    }
    return a2 < 0 ? -a2 : a2;
}

/// Angle-order comparator for nonzero integer vectors, counterclockwise from
/// the positive x-axis.
struct AngleLess {
    static int half(long long x, long long y) {
        return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
    }
    bool operator()(const std::pair<long long, long long>& a,
                    const std::pair<long long, long long>& b) const {
        int ha = half(a.first, a.second), hb = half(b.first, b.second);
        if (ha != hb) return ha < hb;
        return cross(a.first, a.second, b.first, b.second) > 0;
    }
};

std::string pt_str(const LatticePoint& p) {
    std::ostringstream os;
    os << "(" << p.x << "," << p.y << ")";
    return os.str();
}

}  // namespace

void WeightedPoints::validate() const {
    if (points.size() != weights.size())
        throw SchemaError("weighted points: point/weight count mismatch");
    if (points.size() < 3)
        throw SchemaError("weighted points: need at least 3 points");
    std::set<LatticePoint> seen(points.begin(), points.end());
    if (seen.size() != points.size())
        throw SchemaError("weighted points: duplicate point");
    bool spans = false;
    for (std::size_t i = 1; i < points.size() && !spans; ++i)
        for (std::size_t j = i + 1; j < points.size() && !spans; ++j)
            spans = cross(points[i].x - points[0].x, points[i].y - points[0].y,
                          points[j].x - points[0].x, points[j].y - points[0].y) != 0;
    if (!spans)
        throw SchemaError("weighted points: points do not affinely span Z^2");
}

long long Subdivision::cell_det(const WeightedPoints& wp, int cell) const {
    const auto& c = cells[cell];
    const auto& p0 = wp.points[c[0]];
    const auto& p1 = wp.points[c[1]];
    const auto& p2 = wp.points[c[2]];
    long long d = cross(p1.x - p0.x, p1.y - p0.y, p2.x - p0.x, p2.y - p0.y);
    return d < 0 ? -d : d;
}

Rat legendre_value(const WeightedPoints& wp, const Rat& xi1, const Rat& xi2) {
    Rat best;
    bool first = true;
    for (std::size_t i = 0; i < wp.points.size(); ++i) {
        Rat v = Rat(wp.points[i].x) * xi1 + Rat(wp.points[i].y) * xi2 - Rat(wp.weights[i]);
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

Subdivision regular_subdivision(const WeightedPoints& wp) {
    wp.validate();
    const int n = static_cast<int>(wp.points.size());
    Subdivision sub;

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto &pi = wp.points[i], &pj = wp.points[j], &pk = wp.points[k];
                long long det2 = cross(pj.x - pi.x, pj.y - pi.y, pk.x - pi.x, pk.y - pi.y);
                if (det2 == 0) continue;
                // Normal of the lifted plane, oriented with positive
                // weight-coordinate; s measures signed height above it.
                long long ux = pj.x - pi.x, uy = pj.y - pi.y,
                          uw = wp.weights[j] - wp.weights[i];
                long long vx = pk.x - pi.x, vy = pk.y - pi.y,
                          vw = wp.weights[k] - wp.weights[i];
                long long nx = uy * vw - uw * vy;
                long long ny = uw * vx - ux * vw;
                long long nz = ux * vy - uy * vx;
                if (nz < 0) { nx = -nx; ny = -ny; nz = -nz; }
                bool support = true, tie = false;
                for (int m = 0; m < n && support; ++m) {
                    if (m == i || m == j || m == k) continue;
                    long long s = nx * (wp.points[m].x - pi.x) +
                                  ny * (wp.points[m].y - pi.y) +
                                  nz * (wp.weights[m] - wp.weights[i]);
                    if (s < 0) support = false;
                    else if (s == 0) tie = true;
                }
                if (!support) continue;
                if (tie)
                    throw MaximalDegenerationViolated(
                        "lower face through " + pt_str(pi) + "," + pt_str(pj) + "," +
                        pt_str(pk) + " contains a fourth point (non-simplicial cell)");
                sub.cells.push_back({i, j, k});
            }

    std::sort(sub.cells.begin(), sub.cells.end());

    for (std::size_t c = 0; c < sub.cells.size(); ++c) {
        long long d = sub.cell_det(wp, static_cast<int>(c));
        if (d != 1) {
            const auto& t = sub.cells[c];
            throw MaximalDegenerationViolated(
                "cell " + pt_str(wp.points[t[0]]) + "," + pt_str(wp.points[t[1]]) + "," +
                pt_str(wp.points[t[2]]) + " is not unimodular (lattice area " +
                std::to_string(d) + ")");
        }
    }

    std::vector<bool> used(n, false);
    for (const auto& c : sub.cells)
        for (int idx : c) used[idx] = true;
    for (int i = 0; i < n; ++i)
        if (!used[i])
            throw MaximalDegenerationViolated(
                "point " + pt_str(wp.points[i]) + " is not a vertex of the subdivision");

    long long total = 0;
    for (std::size_t c = 0; c < sub.cells.size(); ++c)
        total += sub.cell_det(wp, static_cast<int>(c));
    if (total != hull_area_twice(wp.points))
        throw MaximalDegenerationViolated("cells do not tile Conv(A)");

    std::map<std::pair<int, int>, std::vector<int>> edge_cells;
    for (std::size_t c = 0; c < sub.cells.size(); ++c) {
        const auto& t = sub.cells[c];
        for (auto [a, b] : {std::pair{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}})
            edge_cells[{a, b}].push_back(static_cast<int>(c));
    }
    for (const auto& [ab, cs] : edge_cells) {
        if (cs.size() > 2)
            throw MaximalDegenerationViolated("subdivision edge shared by >2 cells");
        Subdivision::Edge e;
        e.a = ab.first;
        e.b = ab.second;
        e.cells = cs;
        sub.edges.push_back(std::move(e));
    }
    return sub;
}

namespace {

/// Position where the three affine functions of a cell agree.
TropicalCurve::Vertex solve_vertex(const WeightedPoints& wp, const std::array<int, 3>& cell) {
    const auto &p0 = wp.points[cell[0]], &p1 = wp.points[cell[1]], &p2 = wp.points[cell[2]];
    long long a11 = p1.x - p0.x, a12 = p1.y - p0.y, b1 = wp.weights[cell[1]] - wp.weights[cell[0]];
    long long a21 = p2.x - p0.x, a22 = p2.y - p0.y, b2 = wp.weights[cell[2]] - wp.weights[cell[0]];
    long long det = a11 * a22 - a12 * a21;
    TropicalCurve::Vertex v;
    v.x = Rat(b1 * a22 - b2 * a12) / Rat(det);
    v.y = Rat(a11 * b2 - a21 * b1) / Rat(det);
    v.zeta = Rat(p0.x) * v.x + Rat(p0.y) * v.y - Rat(wp.weights[cell[0]]);
    v.cell = cell;
    return v;
}

bool lex_less(const LatticePoint& a, const LatticePoint& b) {
    return a < b;
}

}  // namespace

int TropicalCurve::bounded_edge_between(int a, int b) const {
    for (std::size_t e = 0; e < bounded_edges.size(); ++e) {
        const auto& be = bounded_edges[e];
        if ((be.alpha == a && be.beta == b) || (be.alpha == b && be.beta == a))
            return static_cast<int>(e);
    }
    return -1;
}

int TropicalCurve::ray_between(int a, int b) const {
    for (std::size_t r = 0; r < rays.size(); ++r) {
        const auto& ry = rays[r];
        if ((ry.alpha == a && ry.beta == b) || (ry.alpha == b && ry.beta == a))
            return static_cast<int>(r);
    }
    return -1;
}

bool TropicalCurve::adjacent(int a, int b) const {
    return bounded_edge_between(a, b) >= 0 || ray_between(a, b) >= 0;
}

std::array<TropicalCurve::BoundaryItem, 3> TropicalCurve::items_at_vertex(int v) const {
    const auto& c = vertices[v].cell;
    std::array<std::pair<int, int>, 3> pairs = {
        std::pair{c[0], c[1]}, {c[0], c[2]}, {c[1], c[2]}};
    std::array<BoundaryItem, 3> out;
    for (int i = 0; i < 3; ++i) {
        int be = bounded_edge_between(pairs[i].first, pairs[i].second);
        if (be >= 0) {
            out[i] = {false, be};
        } else {
            int r = ray_between(pairs[i].first, pairs[i].second);
            if (r < 0) throw Error("internal: cell edge with no dual item");
            out[i] = {true, r};
        }
    }
    return out;
}

int TropicalCurve::joint_vertex(const BoundaryItem& a, const BoundaryItem& b) const {
    auto ends = [&](const BoundaryItem& it) -> std::pair<int, int> {
        if (it.is_ray) return {rays[it.index].v, -1};
        return {bounded_edges[it.index].va, bounded_edges[it.index].vb};
    };
    auto [a1, a2] = ends(a);
    auto [b1, b2] = ends(b);
    for (int u : {a1, a2})
        for (int w : {b1, b2})
            if (u >= 0 && u == w) return u;
    throw Error("internal: boundary items share no vertex");
}

std::pair<int, int> TropicalCurve::item_pair(const BoundaryItem& it) const {
    if (it.is_ray) return {rays[it.index].alpha, rays[it.index].beta};
    return {bounded_edges[it.index].alpha, bounded_edges[it.index].beta};
}

long long lattice_length(const TropicalCurve& curve, int edge) {
    const auto& be = curve.bounded_edges[edge];
    const auto &va = curve.vertices[be.va], &vb = curve.vertices[be.vb];
    for (const auto* v : {&va, &vb})
        if (den(v->x) != 1 || den(v->y) != 1 || den(v->zeta) != 1)
            throw NonIntegralVertex("tropical vertex is not integral");
    Int dx = num(vb.x) - num(va.x);
    Int dy = num(vb.y) - num(va.y);
    Int dz = num(vb.zeta) - num(va.zeta);
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(dx), abs(dy)), abs(dz));
    if (g == 0) throw DegenerateWall("bounded edge with coincident endpoints");
    return g.convert_to<long long>();
}

std::pair<long long, long long> wall_degrees(const WeightedPoints& wp,
                                             const TropicalCurve& curve, int edge) {
    const auto& be = curve.bounded_edges[edge];
    auto third = [&](int v) {
        for (int p : curve.vertices[v].cell)
            if (p != be.alpha && p != be.beta) return p;
        throw Error("internal: degenerate cell");
    };
    const auto& pa = wp.points[be.alpha];
    const auto& pb = wp.points[be.beta];
    const auto& pg = wp.points[third(be.va)];
    const auto& ph = wp.points[third(be.vb)];
    // Solve a*alpha + b*beta = -(gamma + eta) together with a + b = -2,
    // using two independent rows of the 3x2 system; verify the third.
    long long rhs1 = -(pg.x + ph.x), rhs2 = -(pg.y + ph.y), rhs3 = -2;
    struct Row { long long ca, cb, r; };
    std::array<Row, 3> rows = {Row{pa.x, pb.x, rhs1}, Row{pa.y, pb.y, rhs2}, Row{1, 1, rhs3}};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            long long det = rows[i].ca * rows[j].cb - rows[i].cb * rows[j].ca;
            if (det == 0) continue;
            long long na = rows[i].r * rows[j].cb - rows[j].r * rows[i].cb;
            long long nb = rows[i].ca * rows[j].r - rows[j].ca * rows[i].r;
            if (na % det != 0 || nb % det != 0)
                throw DegenerateWall("wall relation has no integral solution");
            long long a = na / det, b = nb / det;
            for (const auto& row : rows)
                if (row.ca * a + row.cb * b != row.r)
                    throw DegenerateWall("wall relation is inconsistent");
            return {a, b};
        }
    throw DegenerateWall("wall relation is singular");
}

std::pair<long long, long long> delta_convention(long long d_ab) {
    return {0, 1 + d_ab};
}

TropicalCurve dual_tropical_curve(const WeightedPoints& wp, const Subdivision& sub) {
    TropicalCurve curve;
    for (const auto& c : sub.cells) curve.vertices.push_back(solve_vertex(wp, c));

    for (const auto& e : sub.edges) {
        int a = e.a, b = e.b;
        if (!lex_less(wp.points[a], wp.points[b])) std::swap(a, b);
        if (e.interior()) {
            TropicalCurve::BoundedEdge be;
            be.alpha = a;
            be.beta = b;
            be.va = e.cells[0];
            be.vb = e.cells[1];
            be.vx = std::min(be.va, be.vb);
            be.vy = std::max(be.va, be.vb);
            curve.bounded_edges.push_back(be);
        } else {
            TropicalCurve::Ray ray;
            ray.alpha = a;
            ray.beta = b;
            ray.v = e.cells[0];
            const auto &pa = wp.points[e.a], &pb = wp.points[e.b];
            long long dx = -(pb.y - pa.y), dy = pb.x - pa.x;
            int g = -1;
            for (int p : sub.cells[e.cells[0]])
                if (p != e.a && p != e.b) g = p;
            const auto& pg = wp.points[g];
            if (dot(pg.x - pa.x, pg.y - pa.y, dx, dy) > 0) { dx = -dx; dy = -dy; }
            long long gg = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
            ray.dx = dx / gg;
            ray.dy = dy / gg;
            curve.rays.push_back(ray);
        }
    }

    for (std::size_t e = 0; e < curve.bounded_edges.size(); ++e) {
        auto& be = curve.bounded_edges[e];
        be.n = lattice_length(curve, static_cast<int>(e));
        auto [da, db] = wall_degrees(wp, curve, static_cast<int>(e));
        be.d_ab = da;
        be.d_ba = db;
        auto [d0, d1] = delta_convention(da);
        be.delta_ab = d0;
        be.delta_ba = d1;
    }

    // Component boundaries: items sorted by outward-normal angle; the cut for
    // unbounded components is the unique gap of angle >= pi.
    curve.components.resize(wp.points.size());
    for (std::size_t a = 0; a < wp.points.size(); ++a) {
        auto& comp = curve.components[a];
        comp.point = static_cast<int>(a);
        struct Item {
            TropicalCurve::BoundaryItem it;
            std::pair<long long, long long> normal;
        };
        std::vector<Item> items;
        for (std::size_t e = 0; e < curve.bounded_edges.size(); ++e) {
            const auto& be = curve.bounded_edges[e];
            if (be.alpha != static_cast<int>(a) && be.beta != static_cast<int>(a)) continue;
            int other = be.alpha == static_cast<int>(a) ? be.beta : be.alpha;
            items.push_back({{false, static_cast<int>(e)},
                             {wp.points[other].x - wp.points[a].x,
                              wp.points[other].y - wp.points[a].y}});
        }
        for (std::size_t r = 0; r < curve.rays.size(); ++r) {
            const auto& ry = curve.rays[r];
            if (ry.alpha != static_cast<int>(a) && ry.beta != static_cast<int>(a)) continue;
            int other = ry.alpha == static_cast<int>(a) ? ry.beta : ry.alpha;
            items.push_back({{true, static_cast<int>(r)},
                             {wp.points[other].x - wp.points[a].x,
                              wp.points[other].y - wp.points[a].y}});
        }
        std::sort(items.begin(), items.end(),
                  [](const Item& u, const Item& v) { return AngleLess{}(u.normal, v.normal); });

        int cut = -1;
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto& u = items[i].normal;
            const auto& v = items[(i + 1) % items.size()].normal;
            long long cr = cross(u.first, u.second, v.first, v.second);
            long long dt = dot(u.first, u.second, v.first, v.second);
            if (cr < 0 || (cr == 0 && dt < 0)) {
                if (cut >= 0) throw Error("internal: two boundary gaps >= pi");
                cut = static_cast<int>(i);
            }
        }
        comp.bounded = (cut < 0);
        std::size_t start = comp.bounded ? 0 : (cut + 1) % items.size();
        for (std::size_t i = 0; i < items.size(); ++i)
            comp.boundary.push_back(items[(start + i) % items.size()].it);

        if (!comp.bounded) {
            if (!(comp.boundary.front().is_ray && comp.boundary.back().is_ray))
                throw Error("internal: unbounded boundary path must start/end in rays");
        } else {
            for (const auto& it : comp.boundary)
                if (it.is_ray) throw Error("internal: bounded component with a ray");
        }
    }
    return curve;
}

MomentPolytope moment_polytope(const WeightedPoints& wp, const Subdivision& sub) {
    MomentPolytope mp;
    for (std::size_t i = 0; i < wp.points.size(); ++i)
        mp.facets.push_back({static_cast<int>(i), -wp.points[i].x, -wp.points[i].y, 1});

    std::vector<MomentPolytope::Vertex> verts;
    for (std::size_t c = 0; c < sub.cells.size(); ++c) {
        auto v = solve_vertex(wp, sub.cells[c]);
        if (den(v.x) != 1 || den(v.y) != 1 || den(v.zeta) != 1)
            throw NonIntegralVertex("moment polytope vertex is not integral");
        MomentPolytope::Vertex mv;
        mv.x = num(v.x).convert_to<long long>();
        mv.y = num(v.y).convert_to<long long>();
        mv.z = num(v.zeta).convert_to<long long>();
        mv.trop_vertex = static_cast<int>(c);
        mp.vertices.push_back(mv);

        // smoothness: the three facet normals at a vertex form a Z^3 basis
        const auto& cell = sub.cells[c];
        const auto &p0 = wp.points[cell[0]], &p1 = wp.points[cell[1]], &p2 = wp.points[cell[2]];
        long long det = cross(p1.x - p0.x, p1.y - p0.y, p2.x - p0.x, p2.y - p0.y);
        if (det != 1 && det != -1)
            throw MaximalDegenerationViolated("non-smooth vertex in moment polytope");
    }

    for (const auto& e : sub.edges) {
        MomentPolytope::Edge me;
        me.fa = e.a;
        me.fb = e.b;
        if (e.interior()) {
            me.bounded = true;
            me.va = e.cells[0];
            me.vb = e.cells[1];
        } else {
            me.bounded = false;
            me.va = e.cells[0];
            const auto &pa = wp.points[e.a], &pb = wp.points[e.b];
            long long dx = -(pb.y - pa.y), dy = pb.x - pa.x;
            int g = -1;
            for (int p : sub.cells[e.cells[0]])
                if (p != e.a && p != e.b) g = p;
            const auto& pg = wp.points[g];
            if (dot(pg.x - pa.x, pg.y - pa.y, dx, dy) > 0) { dx = -dx; dy = -dy; }
            long long gg = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
            me.dx = dx / gg;
            me.dy = dy / gg;
            me.dz = pa.x * me.dx + pa.y * me.dy;  // height change along the ray
        }
        mp.edges.push_back(me);
    }
    return mp;
}

TropicalModel build_model(WeightedPoints wp, const std::vector<DeltaOverride>& overrides) {
    TropicalModel m;
    m.wp = std::move(wp);
    m.sub = regular_subdivision(m.wp);
    m.curve = dual_tropical_curve(m.wp, m.sub);
    m.polytope = moment_polytope(m.wp, m.sub);
    for (const auto& ov : overrides) {
        int e = m.curve.bounded_edge_between(ov.alpha, ov.beta);
        if (e < 0)
            throw ConstraintError("delta override names a pair with no bounded edge");
        auto& be = m.curve.bounded_edges[e];
        long long da = (be.alpha == ov.alpha) ? ov.delta_ab : ov.delta_ba;
        long long db = (be.alpha == ov.alpha) ? ov.delta_ba : ov.delta_ab;
        if (db - da != 1 + be.d_ab)
            throw ConstraintError("delta override violates delta_ba - delta_ab = 1 + d_ab");
        be.delta_ab = da;
        be.delta_ba = db;
    }
    return m;
}

}  // namespace hms

#include "hms/svg.hpp"

#include "hms/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hms {

namespace {

/// Fixed-point decimal with three digits, exact rounding half away from zero.
std::string dec(const Rat& v) {
    Int scaled = num(v) * 1000;
    Int d = den(v);
    Int q = scaled / d, r = scaled % d;
    if (r < 0) r = -r;
    if (2 * r >= d) q += (v < 0 ? -1 : 1);
    bool neg = q < 0;
    if (neg) q = -q;
    Int whole = q / 1000, frac = q % 1000;
    std::ostringstream os;
    if (neg) os << "-";
    os << whole;
    if (frac != 0) {
        std::string f = frac.str();
        while (f.size() < 3) f = "0" + f;
        while (!f.empty() && f.back() == '0') f.pop_back();
        os << "." << f;
    }
    return os.str();
}

struct Box {
    Rat x0, y0, x1, y1;
    bool empty = true;

    void add(const Rat& x, const Rat& y) {
        if (empty) {
            x0 = x1 = x;
            y0 = y1 = y;
            empty = false;
            return;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }

    void pad() {
        Rat w = x1 - x0, h = y1 - y0;
        if (w == 0) w = Rat(2);
        if (h == 0) h = Rat(2);
        Rat px = w / 10, py = h / 10;
        x0 -= px;
        x1 += px;
        y0 -= py;
        y1 += py;
    }
};

/// Maps model coordinates into a panel, flipping y for screen space.
struct PanelMap {
    Box box;
    Rat ox, oy, scale;

    PanelMap(const Box& b, const Rat& panel_x, const Rat& panel_size) : box(b) {
        Rat w = box.x1 - box.x0, h = box.y1 - box.y0;
        Rat m = std::max(w, h);
        scale = panel_size / m;
        ox = panel_x;
        oy = Rat(0);
    }
    std::string x(const Rat& v) const { return dec(ox + (v - box.x0) * scale); }
    std::string y(const Rat& v) const { return dec(oy + (box.y1 - v) * scale); }
};

/// Clip parameter for a ray leaving the box from an interior point.
Rat ray_exit(const Box& b, const Rat& px, const Rat& py, long long dx, long long dy) {
    Rat best(-1);
    auto consider = [&](const Rat& t) {
        if (t <= 0) return;
        if (best < 0 || t < best) best = t;
    };
    if (dx > 0) consider((b.x1 - px) / dx);
    if (dx < 0) consider((b.x0 - px) / dx);
    if (dy > 0) consider((b.y1 - py) / dy);
    if (dy < 0) consider((b.y0 - py) / dy);
    return best < 0 ? Rat(1) : best;
}

}  // namespace

std::string render_svg(const TropicalModel& m) {
    std::ostringstream os;
    const Rat panel(400), margin(20);

    // left panel: the point configuration and its subdivision
    Box lbox;
    for (const auto& p : m.wp.points) lbox.add(Rat(p.x), Rat(p.y));
    lbox.pad();
    PanelMap left(lbox, margin, panel - 2 * margin);

    // right panel: the tropical curve
    Box rbox;
    for (const auto& v : m.curve.vertices) rbox.add(v.x, v.y);
    rbox.pad();
    PanelMap right(rbox, panel + 2 * margin, panel - 2 * margin);

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"840\" height=\"440\" "
          "viewBox=\"0 0 840 440\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"840\" height=\"440\" fill=\"white\"/>\n";

    os << "<g stroke=\"#555\" stroke-width=\"1\" fill=\"none\">\n";
    for (const auto& e : m.sub.edges) {
        const auto &a = m.wp.points[e.a], &b = m.wp.points[e.b];
        os << "<line x1=\"" << left.x(Rat(a.x)) << "\" y1=\"" << left.y(Rat(a.y)) << "\" x2=\""
           << left.x(Rat(b.x)) << "\" y2=\"" << left.y(Rat(b.y)) << "\"/>\n";
    }
    os << "</g>\n<g fill=\"#222\">\n";
    for (const auto& p : m.wp.points)
        os << "<circle cx=\"" << left.x(Rat(p.x)) << "\" cy=\"" << left.y(Rat(p.y))
           << "\" r=\"4\"/>\n";
    os << "</g>\n";

    os << "<g stroke=\"#0044aa\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (const auto& e : m.curve.bounded_edges) {
        const auto &va = m.curve.vertices[e.va], &vb = m.curve.vertices[e.vb];
        os << "<line x1=\"" << right.x(va.x) << "\" y1=\"" << right.y(va.y) << "\" x2=\""
           << right.x(vb.x) << "\" y2=\"" << right.y(vb.y) << "\"/>\n";
    }
    for (const auto& r : m.curve.rays) {
        const auto& v = m.curve.vertices[r.v];
        Rat t = ray_exit(right.box, v.x, v.y, r.dx, r.dy);
        Rat ex = v.x + t * r.dx, ey = v.y + t * r.dy;
        os << "<line x1=\"" << right.x(v.x) << "\" y1=\"" << right.y(v.y) << "\" x2=\""
           << right.x(ex) << "\" y2=\"" << right.y(ey) << "\"/>\n";
    }
    os << "</g>\n<g fill=\"#0044aa\">\n";
    for (const auto& v : m.curve.vertices)
        os << "<circle cx=\"" << right.x(v.x) << "\" cy=\"" << right.y(v.y)
           << "\" r=\"3\"/>\n";
    os << "</g>\n<g font-family=\"monospace\" font-size=\"12\" fill=\"#aa2200\">\n";
    for (const auto& e : m.curve.bounded_edges) {
        const auto &va = m.curve.vertices[e.va], &vb = m.curve.vertices[e.vb];
        Rat mx = (va.x + vb.x) / 2, my = (va.y + vb.y) / 2;
        os << "<text x=\"" << right.x(mx) << "\" y=\"" << right.y(my) << "\">n=" << e.n
           << ", d=" << e.d_ab << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void emit_svg(const TropicalModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << render_svg(m);
    if (!out) throw IoError("cannot write " + path);
}

}  // namespace hms

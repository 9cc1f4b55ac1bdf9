#include "meander/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace meander {

RenderFormat render_format_from_name(std::string_view name) {
    if (name == "ascii") return RenderFormat::Ascii;
    if (name == "svg") return RenderFormat::Svg;
    if (name == "tikz") return RenderFormat::Tikz;
    throw std::invalid_argument("unknown render format \"" + std::string(name) +
                                "\" (want ascii, svg or tikz)");
}

namespace {

std::vector<int> arc_heights(const std::vector<Arc>& arcs, Side side) {
    // nesting depth: an arc sits one row above everything it spans
    std::vector<int> heights(arcs.size(), 0);
    std::vector<size_t> order;
    for (size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].side == side) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return arcs[a].right - arcs[a].left < arcs[b].right - arcs[b].left;
    });
    for (size_t oi : order) {
        int h = 1;
        for (size_t oj : order) {
            if (oj == oi || heights[oj] == 0) continue;
            const Arc &a = arcs[oi], &b = arcs[oj];
            if (a.left <= b.left && b.right <= a.right && !(a.left == b.left && a.right == b.right))
                h = std::max(h, heights[oj] + 1);
        }
        heights[oi] = h;
    }
    return heights;
}

std::string render_ascii(const MeanderCode& code, const std::vector<Arc>& arcs) {
    const int n = code.size();
    const auto xcol = [](int p) { return 2 * p; };
    const int width = xcol(n + 1) + 1;
    const auto up_h = arc_heights(arcs, Side::Up);
    const auto down_h = arc_heights(arcs, Side::Down);
    int max_up = 0, max_down = 0;
    for (size_t i = 0; i < arcs.size(); ++i) {
        max_up = std::max(max_up, up_h[i]);
        max_down = std::max(max_down, down_h[i]);
    }
    const int rows = max_up + 1 + max_down;
    std::vector<std::string> canvas(static_cast<size_t>(rows), std::string(static_cast<size_t>(width), ' '));
    const int base = max_up;

    std::string& baseline = canvas[static_cast<size_t>(base)];
    for (int x = 0; x < width; ++x) baseline[static_cast<size_t>(x)] = '-';
    baseline[static_cast<size_t>(xcol(0))] = '*';
    baseline[static_cast<size_t>(xcol(n + 1))] = '*';
    for (int p = 1; p <= n; ++p)
        baseline[static_cast<size_t>(xcol(p))] = code.type_at(p) == PointType::Cross ? 'X' : 'o';

    // taller arcs first so shared feet keep the inner corner visible
    std::vector<size_t> order(arcs.size());
    for (size_t i = 0; i < arcs.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const int ha = arcs[a].side == Side::Up ? up_h[a] : down_h[a];
        const int hb = arcs[b].side == Side::Up ? up_h[b] : down_h[b];
        return ha > hb;
    });
    for (size_t i : order) {
        const Arc& arc = arcs[i];
        const bool up = arc.side == Side::Up;
        const int h = up ? up_h[i] : down_h[i];
        const auto row_at = [&](int level) { return base + (up ? -level : level); };
        std::string& top = canvas[static_cast<size_t>(row_at(h))];
        for (int x = xcol(arc.left) + 1; x < xcol(arc.right); ++x) top[static_cast<size_t>(x)] = '-';
        top[static_cast<size_t>(xcol(arc.left))] = '+';
        top[static_cast<size_t>(xcol(arc.right))] = '+';
        for (int level = 1; level < h; ++level) {
            canvas[static_cast<size_t>(row_at(level))][static_cast<size_t>(xcol(arc.left))] = '|';
            canvas[static_cast<size_t>(row_at(level))][static_cast<size_t>(xcol(arc.right))] = '|';
        }
    }
    std::ostringstream os;
    for (std::string& row : canvas) {
        while (!row.empty() && row.back() == ' ') row.pop_back();
        os << row << '\n';
    }
    return os.str();
}

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string render_svg(const MeanderCode& code, const std::vector<Arc>& arcs) {
    const int n = code.size();
    const double unit = 40.0, margin = 24.0;
    const auto px = [&](double p) { return margin + unit * p; };
    double max_r = 0.5;
    for (const Arc& a : arcs) max_r = std::max(max_r, (a.right - a.left) / 2.0);
    const double y0 = margin + max_r * unit;
    const double width = px(n + 1) + margin, height = 2 * y0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt1(width) << "\" height=\""
       << fmt1(height) << "\" viewBox=\"0 0 " << fmt1(width) << " " << fmt1(height) << "\">\n";
    os << "  <line x1=\"" << fmt1(px(0)) << "\" y1=\"" << fmt1(y0) << "\" x2=\"" << fmt1(px(n + 1))
       << "\" y2=\"" << fmt1(y0) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const Arc& a : arcs) {
        const double r = (a.right - a.left) / 2.0 * unit;
        const int sweep = a.side == Side::Up ? 1 : 0;
        os << "  <path d=\"M " << fmt1(px(a.left)) << " " << fmt1(y0) << " A " << fmt1(r) << " "
           << fmt1(r) << " 0 0 " << sweep << " " << fmt1(px(a.right)) << " " << fmt1(y0)
           << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    for (int p = 1; p <= n; ++p) {
        const bool cross = code.type_at(p) == PointType::Cross;
        os << "  <circle cx=\"" << fmt1(px(p)) << "\" cy=\"" << fmt1(y0) << "\" r=\"3\" fill=\""
           << (cross ? "black" : "white") << "\" stroke=\"black\"/>\n";
    }
    // boundary marks: l-ends, and m-ends beside its first and last arcs
    os << "  <rect x=\"" << fmt1(px(0) - 2.5) << "\" y=\"" << fmt1(y0 - 2.5)
       << "\" width=\"5\" height=\"5\" fill=\"black\"/>\n";
    os << "  <rect x=\"" << fmt1(px(n + 1) - 2.5) << "\" y=\"" << fmt1(y0 - 2.5)
       << "\" width=\"5\" height=\"5\" fill=\"black\"/>\n";
    const double exit_y = arcs.back().side == Side::Up ? y0 - 8 : y0 + 8;
    os << "  <circle cx=\"" << fmt1(px(0)) << "\" cy=\"" << fmt1(y0 - 8)
       << "\" r=\"2.5\" fill=\"black\"/>\n";
    os << "  <circle cx=\"" << fmt1(px(n + 1)) << "\" cy=\"" << fmt1(exit_y)
       << "\" r=\"2.5\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_tikz(const MeanderCode& code, const std::vector<Arc>& arcs) {
    const int n = code.size();
    std::ostringstream os;
    os << "\\documentclass[tikz]{standalone}\n\\begin{document}\n"
       << "\\begin{tikzpicture}[scale=0.8]\n";
    os << "\\draw[thick] (0,0) -- (" << n + 1 << ",0);\n";
    for (const Arc& a : arcs) {
        const double r = (a.right - a.left) / 2.0;
        if (a.side == Side::Up)
            os << "\\draw[ultra thick] (" << a.left << ",0) arc (180:0:" << fmt1(r) << ");\n";
        else
            os << "\\draw[ultra thick] (" << a.left << ",0) arc (180:360:" << fmt1(r) << ");\n";
    }
    for (int p = 1; p <= n; ++p) {
        if (code.type_at(p) == PointType::Cross)
            os << "\\fill (" << p << ",0) circle (0.07);\n";
        else
            os << "\\draw[fill=white] (" << p << ",0) circle (0.07);\n";
    }
    os << "\\fill (0,0) circle (0.05);\n\\fill (" << n + 1 << ",0) circle (0.05);\n";
    os << "\\fill (0,0.3) circle (0.05);\n";  // m enters above the left l-end
    const bool exit_up = arcs.back().side == Side::Up;
    os << "\\fill (" << n + 1 << "," << (exit_up ? "0.3" : "-0.3") << ") circle (0.05);\n";
    os << "\\end{tikzpicture}\n\\end{document}\n";
    return os.str();
}

}  // namespace

std::string render(const MeanderCode& code, RenderFormat format) {
    require_valid(code, "render");
    const auto arcs = arc_diagram(code);
    switch (format) {
        case RenderFormat::Ascii: return render_ascii(code, arcs);
        case RenderFormat::Svg: return render_svg(code, arcs);
        case RenderFormat::Tikz: return render_tikz(code, arcs);
    }
    throw std::logic_error("unreachable");
}

}  // namespace meander

#include "akton/metric.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace akton {
namespace {

int wrap4(int x) { return ((x % 4) + 4) % 4; }

struct port {
    int r = 0, c = 0;
    int side = 0;
};

// intermediate placement in unbounded coordinates; ports keep the order of
// the interface they stand for
struct placed {
    std::map<std::pair<int, int>, grid_cell> cells;
    std::vector<port> ins, outs;
};

std::pair<int, int> unit(int side) {
    switch (wrap4(side)) {
    case 0: return {0, -1};
    case 1: return {-1, 0};
    case 2: return {0, 1};
    default: return {1, 0};
    }
}

slot side_of(const grid_cell& cell, int side, const registry& reg) {
    const atom_info& info = reg.at(cell.atom);
    return info.sides[wrap4(side - cell.rot)];
}

placed rotate_cw(const placed& p) {
    placed r;
    for (auto& [rc, cell] : p.cells) {
        grid_cell c2 = cell;
        c2.rot = wrap4(c2.rot + 1);
        r.cells[{rc.second, -rc.first}] = c2;
    }
    auto spin = [](std::vector<port> v) {
        for (auto& q : v) {
            int nr = q.c, nc = -q.r;
            q.r = nr;
            q.c = nc;
            q.side = wrap4(q.side + 1);
        }
        return v;
    };
    r.ins = spin(p.ins);
    r.outs = spin(p.outs);
    return r;
}

void shift(placed& p, int dr, int dc) {
    if (dr == 0 && dc == 0) return;
    std::map<std::pair<int, int>, grid_cell> moved;
    for (auto& [rc, cell] : p.cells) moved[{rc.first + dr, rc.second + dc}] = cell;
    p.cells = std::move(moved);
    for (auto& q : p.ins) { q.r += dr; q.c += dc; }
    for (auto& q : p.outs) { q.r += dr; q.c += dc; }
}

struct bounds {
    int r0 = INT_MAX, r1 = INT_MIN, c0 = INT_MAX, c1 = INT_MIN;
};

bounds bounds_of(const std::map<std::pair<int, int>, grid_cell>& cells) {
    bounds b;
    for (auto& [rc, cell] : cells) {
        b.r0 = std::min(b.r0, rc.first);
        b.r1 = std::max(b.r1, rc.first);
        b.c0 = std::min(b.c0, rc.second);
        b.c1 = std::max(b.c1, rc.second);
    }
    return b;
}

// touching cell pairs across two placements, as (cell of a, side toward b)
std::vector<std::pair<std::pair<int, int>, int>>
contacts(const placed& a, const placed& b, int dr, int dc) {
    std::vector<std::pair<std::pair<int, int>, int>> out;
    for (auto& [rc, cell] : a.cells)
        for (int side = 0; side < 4; ++side) {
            auto [ur, uc] = unit(side);
            auto it = b.cells.find({rc.first + ur - dr, rc.second + uc - dc});
            if (it != b.cells.end()) out.push_back({rc, side});
        }
    return out;
}

bool overlaps(const placed& a, const placed& b, int dr, int dc) {
    for (auto& [rc, cell] : b.cells)
        if (a.cells.count({rc.first + dr, rc.second + dc})) return true;
    return false;
}

// x above y: lower y until every shared column keeps x strictly on top and
// every touching face pair is gap against gap; among the column offsets the
// smallest bounding box wins, then the shallowest drop, then the smallest
// sideways shift
placed stack(placed x, placed y, const registry& reg) {
    bounds bx = bounds_of(x.cells), by = bounds_of(y.cells);
    std::map<int, int> x_low, y_high; // per column: lowest x row, highest y row
    for (auto& [rc, cell] : x.cells) {
        auto it = x_low.find(rc.second);
        x_low[rc.second] = it == x_low.end() ? rc.first : std::max(it->second, rc.first);
    }
    for (auto& [rc, cell] : y.cells) {
        auto it = y_high.find(rc.second);
        y_high[rc.second] = it == y_high.end() ? rc.first : std::min(it->second, rc.first);
    }

    bool found = false;
    long best_area = 0;
    int best_dy = 0, best_dx = 0;
    int guard = (bx.r1 - bx.r0) + (by.r1 - by.r0) + 2;
    for (int dx = bx.c0 - by.c1; dx <= bx.c1 - by.c0; ++dx) {
        int dy0 = INT_MIN;
        bool shared = false;
        for (auto& [col, low] : x_low) {
            auto it = y_high.find(col - dx);
            if (it == y_high.end()) continue;
            shared = true;
            dy0 = std::max(dy0, low + 1 - it->second);
        }
        if (!shared) continue;
        for (int dy = dy0; dy <= dy0 + guard; ++dy) {
            if (overlaps(x, y, dy, dx)) continue;
            bool ok = true;
            for (auto& [rc, side] : contacts(x, y, dy, dx)) {
                auto [ur, uc] = unit(side);
                grid_cell other = y.cells.at({rc.first + ur - dy, rc.second + uc - dx});
                if (side_of(x.cells.at(rc), side, reg) != slot::gap ||
                    side_of(other, wrap4(side + 2), reg) != slot::gap) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            long rows = std::max(bx.r1, by.r1 + dy) - std::min(bx.r0, by.r0 + dy) + 1;
            long cols = std::max(bx.c1, by.c1 + dx) - std::min(bx.c0, by.c0 + dx) + 1;
            long area = rows * cols;
            if (!found || area < best_area ||
                (area == best_area && (dy < best_dy ||
                 (dy == best_dy && std::abs(dx) < std::abs(best_dx))))) {
                found = true;
                best_area = area;
                best_dy = dy;
                best_dx = dx;
            }
            break; // deeper drops at this dx only grow the box
        }
    }
    if (!found) throw metric_error("cannot stack: no gap-safe position");
    shift(y, best_dy, best_dx);
    for (auto& [rc, cell] : y.cells) x.cells[rc] = cell;
    x.ins.insert(x.ins.end(), y.ins.begin(), y.ins.end());
    x.outs.insert(x.outs.end(), y.outs.begin(), y.outs.end());
    return x;
}

std::string profile_str(const placed& p, bool out_side, const registry& reg);

// x > y: every output lane of x must meet input lane k of y one cell ahead,
// all under one common shift; remaining contacts must be gap against gap
placed plug(placed x, placed y, const registry& reg) {
    if (x.outs.empty() && y.ins.empty()) {
        // nothing to connect: put y beside x, pushed right until clear
        bounds bx = bounds_of(x.cells), by = bounds_of(y.cells);
        int dr = bx.r0 - by.r0;
        int dc = bx.c1 + 1 - by.c0;
        for (;; ++dc) {
            if (overlaps(x, y, dr, dc)) continue;
            bool ok = true;
            for (auto& [rc, side] : contacts(x, y, dr, dc)) {
                auto [ur, uc] = unit(side);
                grid_cell other = y.cells.at({rc.first + ur - dr, rc.second + uc - dc});
                if (side_of(x.cells.at(rc), side, reg) != slot::gap ||
                    side_of(other, wrap4(side + 2), reg) != slot::gap) {
                    ok = false;
                    break;
                }
            }
            if (ok) break;
        }
        shift(y, dr, dc);
    } else {
        int d = x.outs.empty() ? wrap4(y.ins[0].side + 2) : x.outs[0].side;
        for (auto& q : x.outs)
            if (q.side != d)
                throw metric_error("cannot plug: the outputs face different sides");
        for (auto& q : y.ins)
            if (q.side != wrap4(d + 2))
                throw metric_error("cannot plug: the inputs do not face the outputs");
        if (x.outs.size() != y.ins.size())
            throw metric_error("plug mismatch: " + profile_str(x, true, reg) +
                               " vs " + profile_str(y, false, reg));
        auto [ur, uc] = unit(d);
        int dr = x.outs[0].r + ur - y.ins[0].r;
        int dc = x.outs[0].c + uc - y.ins[0].c;
        std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> mated;
        for (size_t k = 0; k < x.outs.size(); ++k) {
            if (x.outs[k].r + ur != y.ins[k].r + dr || x.outs[k].c + uc != y.ins[k].c + dc)
                throw metric_error("plug mismatch: the lanes are not congruent");
            mated.insert({{x.outs[k].r, x.outs[k].c}, {y.ins[k].r + dr, y.ins[k].c + dc}});
        }
        if (overlaps(x, y, dr, dc))
            throw metric_error("cannot plug: the parts overlap");
        for (auto& [rc, side] : contacts(x, y, dr, dc)) {
            auto [vr, vc] = unit(side);
            std::pair<int, int> at{rc.first + vr, rc.second + vc};
            if (mated.count({rc, at})) continue;
            grid_cell other = y.cells.at({at.first - dr, at.second - dc});
            if (side_of(x.cells.at(rc), side, reg) != slot::gap ||
                side_of(other, wrap4(side + 2), reg) != slot::gap)
                throw metric_error("cannot plug: unintended contact beside the seam");
        }
        shift(y, dr, dc);
    }
    placed r;
    r.cells = x.cells;
    for (auto& [rc, cell] : y.cells) r.cells[rc] = cell;
    r.ins = x.ins;
    r.outs = y.outs;
    return r;
}

placed place(const term_ptr& t, const registry& reg) {
    switch (t->kind) {
    case term_kind::atom: {
        const atom_info& info = reg.at(t->atom);
        if (!info.metric)
            throw metric_error("not a metric atom: " + t->atom);
        placed p;
        p.cells[{0, 0}] = grid_cell{t->atom, 0};
        for (int side : info.in_sides) p.ins.push_back({0, 0, side});
        for (int side : info.out_sides) p.outs.push_back({0, 0, side});
        return p;
    }
    case term_kind::next:
        return plug(place(t->a, reg), place(t->b, reg), reg);
    case term_kind::juxta:
        return stack(place(t->a, reg), place(t->b, reg), reg);
    case term_kind::tilt: {
        placed p = place(t->a, reg);
        for (int k = 0; k < wrap4(t->turns); ++k) p = rotate_cw(p);
        return p;
    }
    }
    throw metric_error("unplaceable term");
}

layout_grid to_grid(const placed& p) {
    layout_grid g;
    if (p.cells.empty()) return g;
    bounds b = bounds_of(p.cells);
    g.rows = b.r1 - b.r0 + 1;
    g.cols = b.c1 - b.c0 + 1;
    for (auto& [rc, cell] : p.cells) g.cells[{rc.first - b.r0, rc.second - b.c0}] = cell;
    return g;
}

std::string profile_str(const placed& p, bool out_side, const registry& reg) {
    int d = 2;
    if (out_side && !p.outs.empty()) d = p.outs[0].side;
    if (!out_side) d = p.ins.empty() ? 0 : p.ins[0].side;
    return to_string(trim(grid_side(to_grid(p), d, reg)));
}

int first_pin(const interface& i) {
    for (size_t k = 0; k < i.size(); ++k)
        if (i[k] == slot::pin) return static_cast<int>(k);
    return -1;
}

term_ptr ls_chain(int n) {
    term_ptr t;
    for (int k = 0; k < n; ++k)
        t = t ? make_next(t, make_atom("L_s")) : make_atom("L_s");
    return t;
}

term_ptr atom_stack(const char* name, int n) {
    term_ptr t;
    for (int k = 0; k < n; ++k)
        t = t ? make_juxta(t, make_atom(name)) : make_atom(name);
    return t;
}

term_ptr seq(term_ptr x, term_ptr y) {
    if (!x) return y;
    if (!y) return x;
    return make_next(std::move(x), std::move(y));
}

} // namespace

interface atrim(interface i) {
    auto it = std::find(i.begin(), i.end(), slot::pin);
    i.erase(i.begin(), it);
    return i;
}

interface btrim(interface i) {
    while (!i.empty() && i.back() == slot::gap) i.pop_back();
    return i;
}

interface trim(interface i) { return atrim(btrim(std::move(i))); }

int plug_offset(const interface& out, const interface& in) {
    if (trim(out) != trim(in))
        throw metric_error("plug mismatch: " + to_string(trim(out)) + " vs " +
                           to_string(trim(in)));
    int a = first_pin(out), b = first_pin(in);
    if (a < 0) return 0; // gap-only sides align anywhere
    return a - b;
}

std::array<slot, 4> atom_sides(const std::string& name, const registry& reg) {
    const atom_info& info = reg.at(name);
    if (!info.metric)
        throw metric_error("not a metric atom: " + name);
    return info.sides;
}

slot cell_side(const grid_cell& c, int side, const registry& reg) {
    return side_of(c, side, reg);
}

interface grid_side(const layout_grid& g, int side, const registry& reg) {
    interface out;
    auto probe = [&](int r, int c) {
        auto it = g.cells.find({r, c});
        out.push_back(it == g.cells.end() ? slot::gap : side_of(it->second, side, reg));
    };
    switch (wrap4(side)) {
    case 0:
        for (int r = 0; r < g.rows; ++r) probe(r, 0);
        break;
    case 1:
        for (int c = 0; c < g.cols; ++c) probe(0, c);
        break;
    case 2:
        for (int r = 0; r < g.rows; ++r) probe(r, g.cols - 1);
        break;
    default:
        for (int c = 0; c < g.cols; ++c) probe(g.rows - 1, c);
        break;
    }
    return out;
}

layout_grid layout(const term_ptr& t, const registry& reg) {
    return to_grid(place(t, reg));
}

int metric_check(const term_ptr& x, const term_ptr& y, const registry& reg) {
    placed px = place(x, reg), py = place(y, reg);
    int d = 2;
    if (!px.outs.empty()) {
        d = px.outs[0].side;
        for (auto& q : px.outs)
            if (q.side != d)
                throw metric_error("cannot plug: the outputs face different sides");
    } else if (!py.ins.empty()) {
        d = wrap4(py.ins[0].side + 2);
    }
    interface out = grid_side(to_grid(px), d, reg);
    interface in = grid_side(to_grid(py), wrap4(d + 2), reg);
    return plug_offset(out, in);
}

std::vector<std::string> grid_faults(const layout_grid& g, const registry& reg) {
    std::vector<std::string> faults;
    auto name = [](slot s) { return s == slot::pin ? "Pin" : "Gap"; };
    for (auto& [rc, cell] : g.cells)
        for (int side : {2, 3}) { // right and down cover every pair once
            auto [ur, uc] = unit(side);
            auto it = g.cells.find({rc.first + ur, rc.second + uc});
            if (it == g.cells.end()) continue;
            slot a = side_of(cell, side, reg);
            slot b = side_of(it->second, wrap4(side + 2), reg);
            if (a == b) continue;
            std::ostringstream msg;
            msg << "cells (" << rc.first << "," << rc.second << ")|("
                << it->first.first << "," << it->first.second << "): "
                << name(a) << " against " << name(b);
            faults.push_back(msg.str());
        }
    return faults;
}

term_ptr metric_multiple_link(int i, char kind) {
    if (i < 0) throw metric_error("strip depth must not be negative");
    switch (kind) {
    case 's':
        return atom_stack("L_s", i + 1);
    case 'l': {
        term_ptr x = make_atom("L_l");
        for (int k = 1; k <= i; ++k)
            x = make_juxta(x, seq(ls_chain(k), seq(make_atom("L_l"),
                                                   tilt_left(ls_chain(k)))));
        return x;
    }
    case 'r': {
        term_ptr x = make_atom("L_r");
        for (int k = 1; k <= i; ++k)
            x = make_juxta(seq(ls_chain(k), seq(make_atom("L_r"),
                                                tilt_right(ls_chain(k)))), x);
        return x;
    }
    default:
        throw metric_error(std::string("unknown link strip kind: ") + kind);
    }
}

term_ptr metric_multiple_fork(int i, std::string_view kind) {
    if (i < 0) throw metric_error("strip depth must not be negative");
    if (kind == "lr")
        throw metric_error("no lr strip: its two bundles would come out in "
                           "opposite orders");
    if (kind == "ls") {
        term_ptr pre = make_atom("F_ld");
        for (int k = 1; k <= i; ++k)
            pre = make_juxta(pre, seq(ls_chain(k), seq(make_atom("F_ld"),
                                                       tilt_left(ls_chain(k)))));
        term_ptr suc = make_juxta(
            tilt_left(make_juxta(atom_stack("L_s", i + 1), make_atom("CS"))),
            atom_stack("Up", i + 1));
        return make_next(std::move(pre), std::move(suc));
    }
    if (kind == "sr") {
        term_ptr pre = make_atom("F_rd");
        for (int k = 1; k <= i; ++k)
            pre = make_juxta(seq(ls_chain(k), seq(make_atom("F_rd"),
                                                  tilt_right(ls_chain(k)))), pre);
        term_ptr suc = make_juxta(
            atom_stack("Up", i + 1),
            tilt_right(make_juxta(make_atom("CS"), atom_stack("L_s", i + 1))));
        return make_next(std::move(pre), std::move(suc));
    }
    throw metric_error("unknown fork strip kind: " + std::string(kind));
}

term_ptr metric_multiple_join(int i, std::string_view kind) {
    if (i < 0) throw metric_error("strip depth must not be negative");
    if (kind == "lr")
        throw metric_error("no lr strip: its two bundles would come in in "
                           "opposite orders");
    if (kind == "ls") {
        term_ptr pre = make_juxta(
            tilt_right(make_juxta(atom_stack("L_s", i + 1), make_atom("CS"))),
            atom_stack("Down", i + 1));
        term_ptr suc = make_atom("J_lu");
        for (int k = 1; k <= i; ++k)
            suc = make_juxta(suc, seq(tilt_right(ls_chain(k)),
                                      seq(make_atom("J_lu"), ls_chain(k))));
        return make_next(std::move(pre), std::move(suc));
    }
    if (kind == "sr") {
        term_ptr pre = make_juxta(
            atom_stack("Down", i + 1),
            tilt_left(make_juxta(make_atom("CS"), atom_stack("L_s", i + 1))));
        term_ptr suc = make_atom("J_ru");
        for (int k = 1; k <= i; ++k)
            suc = make_juxta(seq(tilt_left(ls_chain(k)),
                                 seq(make_atom("J_ru"), ls_chain(k))), suc);
        return make_next(std::move(pre), std::move(suc));
    }
    throw metric_error("unknown join strip kind: " + std::string(kind));
}

namespace {

char glyph(const std::string& atom) {
    static const std::map<std::string, char> table = {
        {"Entry", 'E'}, {"Exit", 'X'},  {"Up", 'U'},   {"Down", 'D'},
        {"Set", 'S'},   {"Off", 'O'},   {"CS", '#'},   {"L_s", 's'},
        {"L_l", 'l'},   {"L_r", 'r'},   {"F_lr", 'f'}, {"F_ls", 'f'},
        {"F_sr", 'f'},  {"J_lr", 'j'},  {"J_ls", 'j'}, {"J_sr", 'j'},
        {"F_ld", 'F'},  {"F_rd", 'F'},  {"J_lu", 'J'}, {"J_ru", 'J'}};
    auto it = table.find(atom);
    return it == table.end() ? '?' : it->second;
}

} // namespace

std::string render_ascii(const layout_grid& g, const registry& reg) {
    std::vector<std::string> canvas(3 * g.rows, std::string(3 * g.cols, ' '));
    auto mark = [](slot s) { return s == slot::pin ? 'o' : '.'; };
    for (auto& [rc, cell] : g.cells) {
        int r = 3 * rc.first, c = 3 * rc.second;
        canvas[r + 1][c + 1] = glyph(cell.atom);
        canvas[r + 1][c] = mark(side_of(cell, 0, reg));
        canvas[r][c + 1] = mark(side_of(cell, 1, reg));
        canvas[r + 1][c + 2] = mark(side_of(cell, 2, reg));
        canvas[r + 2][c + 1] = mark(side_of(cell, 3, reg));
    }
    std::string out;
    for (auto& line : canvas) {
        size_t end = line.find_last_not_of(' ');
        out += end == std::string::npos ? "" : line.substr(0, end + 1);
        out += '\n';
    }
    return out;
}

std::string render_svg(const layout_grid& g, const registry& reg) {
    const int u = 32;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.cols * u
        << "\" height=\"" << g.rows * u << "\" viewBox=\"0 0 " << g.cols * u
        << " " << g.rows * u << "\">\n";
    for (auto& [rc, cell] : g.cells) {
        int x = rc.second * u, y = rc.first * u;
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << u
            << "\" height=\"" << u
            << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
        const int mid = u / 2, tick = 4;
        auto pin = [&](int side) {
            if (side_of(cell, side, reg) != slot::pin) return;
            int cx = x + mid, cy = y + mid;
            switch (side) {
            case 0: cx = x; break;
            case 1: cy = y; break;
            case 2: cx = x + u; break;
            default: cy = y + u; break;
            }
            svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\""
                << tick << "\" fill=\"black\"/>\n";
        };
        for (int side = 0; side < 4; ++side) pin(side);
        std::string label = cell.atom;
        if (cell.rot) label += ":" + std::to_string(cell.rot);
        svg << "<text x=\"" << x + mid << "\" y=\"" << y + mid + 3
            << "\" text-anchor=\"middle\" font-size=\"8\" "
               "font-family=\"monospace\">"
            << label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace akton

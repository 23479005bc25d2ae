#include "akton/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace akton {

namespace {

struct lane_edge { // a wire travelling between consecutive columns
    endpoint from, to;
};

struct row {
    enum kind_t { real, pad, off_tap, set_src, cross_down, cross_up } kind = real;
    int node = -1;        // real: graph node id
    std::string label;    // cut rows: pair label
    int ins = 0, outs = 0;
};

} // namespace

term_ptr linearize(const network& input, const registry& reg) {
    network net = input;
    heal(net);
    if (net.nodes.empty()) throw not_orientable("empty network");

    std::vector<int> entries;
    for (auto& n : net.nodes)
        if (n.atom == "Entry") entries.push_back(n.id);
    if (entries.empty())
        throw not_orientable("no entry nodes to orient the flow");

    const int N = static_cast<int>(net.nodes.size());
    std::map<std::pair<int, int>, int> edge_at_out; // (node,pin) -> edge index
    std::vector<std::vector<int>> out_edges(N), in_edges(N);
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        auto& e = net.edges[i];
        if (e.kind != edge_kind::normal)
            throw not_orientable("unresolved cut edge survived healing");
        out_edges[e.from.node].push_back(static_cast<int>(i));
        in_edges[e.to.node].push_back(static_cast<int>(i));
        edge_at_out[{e.from.node, e.from.pin}] = static_cast<int>(i);
    }
    for (auto& v : out_edges)
        std::sort(v.begin(), v.end(), [&](int a, int b) {
            return net.edges[a].from.pin < net.edges[b].from.pin;
        });

    // every in pin must be fed: a wire cannot begin in mid flow
    for (auto& n : net.nodes) {
        std::set<int> fed;
        for (int ei : in_edges[n.id]) fed.insert(net.edges[ei].to.pin);
        if (static_cast<int>(fed.size()) != n.in_pins)
            throw not_orientable("open input pin away from the entry face");
    }

    { // reachability from the entry face
        std::set<int> seen(entries.begin(), entries.end());
        std::vector<int> stack = entries;
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            for (int ei : out_edges[id]) {
                int nxt = net.edges[ei].to.node;
                if (seen.insert(nxt).second) stack.push_back(nxt);
            }
        }
        if (static_cast<int>(seen.size()) != N)
            throw not_orientable("nodes unreachable from the entry face");
    }

    // depth first orientation: edges closing onto the active path run backwards
    std::set<int> back;
    {
        std::vector<int> state(N, 0); // 0 new, 1 on stack, 2 done
        struct item { int node; std::size_t next; };
        for (int root : entries) {
            if (state[root]) continue;
            std::vector<item> stack{{root, 0}};
            state[root] = 1;
            while (!stack.empty()) {
                auto& [id, next] = stack.back();
                if (next >= out_edges[id].size()) {
                    state[id] = 2;
                    stack.pop_back();
                    continue;
                }
                int ei = out_edges[id][next++];
                int to = net.edges[ei].to.node;
                if (state[to] == 1) back.insert(ei);
                else if (state[to] == 0) {
                    state[to] = 1;
                    stack.push_back({to, 0});
                }
            }
        }
    }

    // longest path layering over the remaining acyclic flow
    std::vector<int> layer(N, -1), indeg(N, 0);
    for (std::size_t i = 0; i < net.edges.size(); ++i)
        if (!back.count(static_cast<int>(i))) ++indeg[net.edges[i].to.node];
    {
        std::vector<int> queue;
        for (auto& n : net.nodes)
            if (indeg[n.id] == 0) {
                layer[n.id] = n.atom == "Entry" ? 0 : 1;
                queue.push_back(n.id);
            }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int id = queue[qi];
            for (int ei : out_edges[id]) {
                if (back.count(ei)) continue;
                int to = net.edges[ei].to.node;
                layer[to] = std::max({layer[to], layer[id] + 1, 1});
                if (--indeg[to] == 0) queue.push_back(to);
            }
        }
        for (int l : layer)
            if (l < 0) throw not_orientable("flow does not settle into layers");
    }

    int last = 0;
    for (auto& n : net.nodes) last = std::max(last, layer[n.id]);
    for (int ei : back) last = std::max(last, layer[net.edges[ei].from.node] + 1);

    // feedback bookkeeping: one label per backward edge
    int next_label = 1;
    struct loop { int edge; std::string label; };
    std::vector<loop> loops;
    for (int ei : back) loops.push_back({ei, std::to_string(next_label++)});
    std::sort(loops.begin(), loops.end(),
              [](const loop& a, const loop& b) { return a.edge < b.edge; });

    const atom_info* wire = reg.find("Wire");
    bool all_digital = true;
    for (auto& n : net.nodes)
        if (const atom_info* info = reg.find(n.atom); !info || !info->digital)
            all_digital = false;
    const std::string pad_atom = (all_digital && wire) ? "Wire" : "Link";

    // rows per column; lanes thread pads between real occupants
    std::vector<std::vector<row>> cols(last + 1);

    for (auto& n : net.nodes) {
        row r;
        r.kind = row::real;
        r.node = n.id;
        r.ins = n.in_pins;
        r.outs = n.out_pins;
        cols[layer[n.id]].push_back(r);
    }
    for (auto& lp : loops) {
        auto& e = net.edges[lp.edge];
        row off;
        off.kind = row::off_tap;
        off.label = lp.label;
        off.ins = 1;
        cols[layer[e.from.node] + 1].push_back(off);
        row set;
        set.kind = row::set_src;
        set.label = lp.label;
        set.outs = 1;
        cols[layer[e.to.node] - 1].push_back(set);
    }
    // pads for wires that span more than one seam
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        if (back.count(static_cast<int>(i))) continue;
        auto& e = net.edges[i];
        for (int c = layer[e.from.node] + 1; c < layer[e.to.node]; ++c) {
            row p;
            p.kind = row::pad;
            p.node = static_cast<int>(i); // rides this edge
            p.ins = p.outs = 1;
            cols[c].push_back(p);
        }
    }
    // open outputs ride pads to the final column and stay part of the interface
    struct open_out { int key; endpoint at; };
    std::vector<open_out> opens;
    for (auto& n : net.nodes)
        for (int p = 0; p < n.out_pins; ++p)
            if (!edge_at_out.count({n.id, p})) {
                int key = static_cast<int>(net.edges.size() + opens.size());
                opens.push_back({key, {n.id, p}});
                for (int c = layer[n.id] + 1; c <= last; ++c) {
                    row pr;
                    pr.kind = row::pad;
                    pr.node = key;
                    pr.ins = pr.outs = 1;
                    cols[c].push_back(pr);
                }
            }

    // wires between consecutive columns as (source row ref, target row ref):
    // resolve a lane for every edge piecewise through its pads
    struct piece { // one seam crossing of a wire
        int col;            // from column col to col+1
        int src_row, src_pin;
        int dst_row, dst_pin;
    };
    auto find_real = [&](int col, int node) {
        for (std::size_t r = 0; r < cols[col].size(); ++r)
            if (cols[col][r].kind == row::real && cols[col][r].node == node)
                return static_cast<int>(r);
        throw std::logic_error("row lookup failed");
    };
    auto find_pad = [&](int col, int edge) {
        for (std::size_t r = 0; r < cols[col].size(); ++r)
            if (cols[col][r].kind == row::pad && cols[col][r].node == edge)
                return static_cast<int>(r);
        throw std::logic_error("pad lookup failed");
    };
    auto find_cut = [&](int col, row::kind_t k, const std::string& label) {
        for (std::size_t r = 0; r < cols[col].size(); ++r)
            if (cols[col][r].kind == k && cols[col][r].label == label)
                return static_cast<int>(r);
        throw std::logic_error("cut row lookup failed");
    };

    std::vector<piece> pieces;
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        auto& e = net.edges[i];
        bool is_back = back.count(static_cast<int>(i)) > 0;
        int src_col = layer[e.from.node];
        int src_row = find_real(src_col, e.from.node);
        int src_pin = e.from.pin;
        int dst_col = is_back ? src_col + 1 : layer[e.to.node];
        for (int c = src_col + 1; c < dst_col; ++c) {
            int pr = find_pad(c, static_cast<int>(i));
            pieces.push_back({c - 1, src_row, src_pin, pr, 0});
            src_row = pr;
            src_pin = 0;
        }
        if (is_back) {
            const std::string& label =
                std::find_if(loops.begin(), loops.end(), [&](const loop& l) {
                    return l.edge == static_cast<int>(i);
                })->label;
            int off_row = find_cut(src_col + 1 > last ? last : src_col + 1,
                                   row::off_tap, label);
            pieces.push_back({src_col, src_row, src_pin, off_row, 0});
            int set_col = layer[e.to.node] - 1;
            int set_row = find_cut(set_col, row::set_src, label);
            int tgt_row = find_real(layer[e.to.node], e.to.node);
            pieces.push_back({set_col, set_row, 0, tgt_row, e.to.pin});
        } else {
            int tgt_row = find_real(dst_col, e.to.node);
            pieces.push_back({dst_col - 1, src_row, src_pin, tgt_row, e.to.pin});
        }
    }
    for (auto& o : opens) {
        int src_row = find_real(layer[o.at.node], o.at.node);
        int src_pin = o.at.pin;
        for (int c = layer[o.at.node] + 1; c <= last; ++c) {
            int pr = find_pad(c, o.key);
            pieces.push_back({c - 1, src_row, src_pin, pr, 0});
            src_row = pr;
            src_pin = 0;
        }
    }

    // crossing reduction: order rows by the mean position of their neighbours
    auto sweep = [&](bool forward) {
        for (int c = forward ? 1 : last - 1; forward ? c <= last : c >= 0;
             forward ? ++c : --c) {
            std::vector<double> key(cols[c].size());
            std::vector<int> hits(cols[c].size(), 0);
            for (std::size_t r = 0; r < cols[c].size(); ++r)
                key[r] = static_cast<double>(r);
            for (auto& p : pieces) {
                if (forward && p.col == c - 1) {
                    key[p.dst_row] += p.src_row;
                    ++hits[p.dst_row];
                } else if (!forward && p.col == c) {
                    key[p.src_row] += p.dst_row;
                    ++hits[p.src_row];
                }
            }
            for (std::size_t r = 0; r < cols[c].size(); ++r)
                if (hits[r]) key[r] = (key[r] - r) / hits[r];
            std::vector<int> perm(cols[c].size());
            for (std::size_t r = 0; r < perm.size(); ++r) perm[r] = static_cast<int>(r);
            std::stable_sort(perm.begin(), perm.end(),
                             [&](int a, int b) { return key[a] < key[b]; });
            std::vector<int> inv(perm.size());
            for (std::size_t r = 0; r < perm.size(); ++r) inv[perm[r]] = static_cast<int>(r);
            std::vector<row> rows;
            for (int r : perm) rows.push_back(cols[c][r]);
            cols[c] = std::move(rows);
            for (auto& p : pieces) {
                if (p.col == c) p.src_row = inv[p.src_row];
                if (p.col == c - 1) p.dst_row = inv[p.dst_row];
            }
        }
    };
    sweep(true);
    sweep(false);
    sweep(true);

    // assemble: per column a stack of atoms, between columns a crossing stage
    // pair whenever the lane order twists
    auto atom_of = [&](const row& r) -> term_ptr {
        switch (r.kind) {
        case row::real: {
            auto& n = net.at(r.node);
            return make_atom(n.atom, n.label);
        }
        case row::pad: return make_atom(pad_atom);
        case row::off_tap: return make_atom("Off", r.label);
        case row::set_src: return make_atom("Set", r.label);
        case row::cross_down: return make_atom("Down", r.label);
        case row::cross_up: return make_atom("Up", r.label);
        }
        throw std::logic_error("bad row kind");
    };
    auto column_term = [&](const std::vector<row>& rows) -> term_ptr {
        term_ptr t;
        for (auto& r : rows) {
            term_ptr a = atom_of(r);
            t = t ? make_juxta(t, a) : a;
        }
        return t;
    };

    term_ptr out = column_term(cols[0]);
    for (int c = 0; c < last; ++c) {
        // lane order on each side of the seam
        std::vector<int> out_base(cols[c].size() + 1, 0);
        for (std::size_t r = 0; r + 1 < cols[c].size() + 1; ++r)
            out_base[r + 1] = out_base[r] + cols[c][r].outs;
        std::vector<int> in_base(cols[c + 1].size() + 1, 0);
        for (std::size_t r = 0; r + 1 < cols[c + 1].size() + 1; ++r)
            in_base[r + 1] = in_base[r] + cols[c + 1][r].ins;
        int lanes = out_base.back();
        if (lanes != in_base.back())
            throw std::logic_error("seam lane mismatch during linearization");
        std::vector<int> sigma(lanes, -1);
        for (auto& p : pieces)
            if (p.col == c) sigma[out_base[p.src_row] + p.src_pin] =
                in_base[p.dst_row] + p.dst_pin;
        for (int v : sigma)
            if (v < 0) throw std::logic_error("dangling lane during linearization");
        bool twisted = false;
        for (int i = 0; i < lanes; ++i)
            if (sigma[i] != i) twisted = true;
        if (twisted) {
            std::vector<row> a, b(lanes);
            std::vector<std::string> lane_label(lanes);
            for (int i = 0; i < lanes; ++i) {
                row r;
                if (sigma[i] == i) {
                    r.kind = row::pad;
                    r.ins = r.outs = 1;
                } else {
                    r.kind = row::cross_down;
                    r.label = std::to_string(next_label++);
                    r.ins = 1;
                }
                a.push_back(r);
                lane_label[i] = r.label;
            }
            for (int i = 0; i < lanes; ++i) {
                row r;
                if (sigma[i] == i) {
                    r.kind = row::pad;
                    r.ins = r.outs = 1;
                } else {
                    r.kind = row::cross_up;
                    r.label = lane_label[i];
                    r.outs = 1;
                }
                b[sigma[i]] = r;
            }
            out = make_next(out, column_term(a));
            out = make_next(out, column_term(b));
        }
        out = make_next(out, column_term(cols[c + 1]));
    }
    return out;
}

} // namespace akton

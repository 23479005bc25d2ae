#include "akton/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <array>

namespace akton {

namespace {

struct frame {
    std::vector<endpoint> in, out;
};

struct builder {
    const registry& reg;
    network net;
    std::map<const term*, int> by_node; // atom term node -> graph node id

    frame build(const term_ptr& t) {
        switch (t->kind) {
        case term_kind::atom: {
            const atom_info& info = reg.at(t->atom);
            if (info.s == sort::CS && info.in.empty() && info.out.empty() &&
                !info.body)
                return {};
            net_node n;
            n.id = static_cast<int>(net.nodes.size());
            n.atom = t->atom;
            n.label = t->label;
            n.s = info.s;
            n.in_pins = static_cast<int>(pin_count(info.in));
            n.out_pins = static_cast<int>(pin_count(info.out));
            by_node[t.get()] = n.id;
            frame f;
            for (int p = 0; p < n.in_pins; ++p) f.in.push_back({n.id, p});
            for (int p = 0; p < n.out_pins; ++p) f.out.push_back({n.id, p});
            net.nodes.push_back(std::move(n));
            return f;
        }
        case term_kind::tilt: return build(t->a);
        case term_kind::next: {
            frame a = build(t->a), b = build(t->b);
            if (a.out.size() != b.in.size())
                throw std::runtime_error(
                    "serial seam mismatch while reconstructing the graph");
            for (std::size_t i = 0; i < a.out.size(); ++i)
                net.edges.push_back({a.out[i], b.in[i], edge_kind::normal});
            return {std::move(a.in), std::move(b.out)};
        }
        case term_kind::juxta: {
            frame a = build(t->a), b = build(t->b);
            frame f;
            f.in = std::move(a.in);
            f.in.insert(f.in.end(), b.in.begin(), b.in.end());
            f.out = std::move(a.out);
            f.out.insert(f.out.end(), b.out.begin(), b.out.end());
            return f;
        }
        }
        throw std::logic_error("bad term kind");
    }
};

bool bare_cut(const network& net, int id, const registry& reg) {
    const atom_info& info = reg.at(net.at(id).atom);
    return info.cut != cut_role::none && !info.body &&
           net.at(id).in_pins + net.at(id).out_pins <= 1;
}

void drop_nodes(network& net, const std::set<int>& dead) {
    std::map<int, int> renum;
    std::vector<net_node> keep;
    for (auto& n : net.nodes) {
        if (dead.count(n.id)) continue;
        renum[n.id] = static_cast<int>(keep.size());
        keep.push_back(n);
        keep.back().id = renum[n.id];
    }
    net.nodes = std::move(keep);
    auto fix = [&](endpoint& e) { e.node = renum.at(e.node); };
    std::vector<net_edge> edges;
    for (auto& e : net.edges) {
        if (dead.count(e.from.node) || dead.count(e.to.node)) continue;
        fix(e.from);
        fix(e.to);
        edges.push_back(e);
    }
    net.edges = std::move(edges);
    for (auto& io : {&net.inputs, &net.outputs})
        for (auto& e : *io) fix(e);
}

} // namespace

network reconstruct(const term_ptr& t, const registry& reg, cut_policy policy) {
    cut_bindings binds = bind_cuts(t, reg); // throws while openings stay open
    builder b{reg};
    frame f = b.build(t);
    b.net.inputs = std::move(f.in);
    b.net.outputs = std::move(f.out);
    for (const cut_pair& p : binds.pairs) {
        int tail = b.by_node.at(p.tail.node);
        int head = b.by_node.at(p.head.node);
        endpoint from{tail, b.net.at(tail).out_pins + p.tail.ordinal};
        endpoint to{head, b.net.at(head).in_pins + p.head.ordinal};
        b.net.edges.push_back(
            {from, to, p.spatial ? edge_kind::cut_spatial : edge_kind::cut_planar});
    }
    if (policy == cut_policy::heal) heal(b.net);
    return b.net;
}

void heal(network& net) {
    static const registry reg;
    std::set<int> dead;
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i < net.edges.size(); ++i) {
            const net_edge e = net.edges[i];
            if (e.kind == edge_kind::normal) continue;
            if (dead.count(e.from.node) || dead.count(e.to.node)) continue;
            if (!reg.find(net.at(e.from.node).atom) ||
                !reg.find(net.at(e.to.node).atom))
                continue;
            if (!bare_cut(net, e.from.node, reg) || !bare_cut(net, e.to.node, reg))
                continue;
            // the tail consumes exactly one wire, the head re-emits it
            int into = -1, outof = -1;
            for (std::size_t j = 0; j < net.edges.size(); ++j) {
                if (j == i) continue;
                if (net.edges[j].to.node == e.from.node) into = static_cast<int>(j);
                if (net.edges[j].from.node == e.to.node) outof = static_cast<int>(j);
            }
            if (into < 0 || outof < 0) continue; // open at the boundary, leave it
            net.edges[into].to = net.edges[outof].to;
            dead.insert(e.from.node);
            dead.insert(e.to.node);
            net.edges.erase(net.edges.begin() + outof);
            changed = true;
            break;
        }
        if (!changed) break;
    }
    if (!dead.empty()) drop_nodes(net, dead); // also removes the resolved cut edges
}

void contract_links(network& net) {
    static const std::set<std::string> pass = {"Link", "Wire", "L_s", "L_l", "L_r"};
    for (;;) {
        int victim = -1, into = -1, outof = -1;
        for (auto& n : net.nodes) {
            if (!pass.count(n.atom)) continue;
            int ein = -1, eout = -1, nin = 0, nout = 0;
            for (std::size_t j = 0; j < net.edges.size(); ++j) {
                if (net.edges[j].to.node == n.id) { ein = static_cast<int>(j); ++nin; }
                if (net.edges[j].from.node == n.id) { eout = static_cast<int>(j); ++nout; }
            }
            if (nin != 1 || nout != 1) continue;
            if (net.edges[ein].from.node == n.id) continue; // self loop stays
            victim = n.id;
            into = ein;
            outof = eout;
            break;
        }
        if (victim < 0) break;
        net.edges[into].to = net.edges[outof].to;
        if (net.edges[outof].kind != edge_kind::normal)
            net.edges[into].kind = net.edges[outof].kind;
        net.edges.erase(net.edges.begin() + outof);
        drop_nodes(net, {victim});
    }
}

namespace {

// lanes through these atoms carry no individual meaning, so an isomorphism
// may permute the pins on that side
bool exchangeable_in(const std::string& atom) {
    return atom == "Join" || atom == "And" || atom == "Or";
}
bool exchangeable_out(const std::string& atom) { return atom == "Fork"; }

using edge_sig = std::multiset<std::array<int, 3>>;

struct iso_search {
    const network& a;
    const network& b;
    std::vector<std::vector<const net_edge*>> a_inc, b_inc;
    std::vector<int> map_ab;
    std::vector<char> used_b;

    iso_search(const network& x, const network& y)
        : a(x), b(y), a_inc(x.nodes.size()), b_inc(y.nodes.size()),
          map_ab(x.nodes.size(), -1), used_b(y.nodes.size(), 0) {
        for (auto& e : a.edges) {
            a_inc[e.from.node].push_back(&e);
            if (e.to.node != e.from.node) a_inc[e.to.node].push_back(&e);
        }
        for (auto& e : b.edges) {
            b_inc[e.from.node].push_back(&e);
            if (e.to.node != e.from.node) b_inc[e.to.node].push_back(&e);
        }
    }

    static edge_sig between(const network& net,
                            const std::vector<const net_edge*>& inc, int x,
                            int y) {
        edge_sig s;
        for (const net_edge* e : inc)
            if (e->from.node == x && e->to.node == y)
                s.insert({static_cast<int>(e->kind),
                          exchangeable_out(net.at(x).atom) ? -1 : e->from.pin,
                          exchangeable_in(net.at(y).atom) ? -1 : e->to.pin});
        return s;
    }

    bool node_eq(const net_node& u, const net_node& v) const {
        return u.atom == v.atom && u.label == v.label &&
               u.in_pins == v.in_pins && u.out_pins == v.out_pins;
    }

    bool consistent(int u, int v) const {
        for (const net_edge* e : a_inc[u]) {
            int w = e->from.node == u ? e->to.node : e->from.node;
            if (map_ab[w] < 0) continue;
            if (between(a, a_inc[u], u, w) != between(b, b_inc[v], v, map_ab[w]))
                return false;
            if (between(a, a_inc[u], w, u) != between(b, b_inc[v], map_ab[w], v))
                return false;
        }
        return true;
    }

    bool run(const std::vector<int>& order, std::size_t at) {
        if (at == order.size()) return true;
        int u = order[at];
        for (auto& cand : b.nodes) {
            int v = cand.id;
            if (used_b[v] || !node_eq(a.at(u), cand)) continue;
            if (a_inc[u].size() != b_inc[v].size()) continue;
            if (!consistent(u, v)) continue;
            map_ab[u] = v;
            used_b[v] = 1;
            if (run(order, at + 1)) return true;
            map_ab[u] = -1;
            used_b[v] = 0;
        }
        return false;
    }
};

} // namespace

bool isomorphic(const network& a, const network& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size())
        return false;
    std::multiset<std::string> atoms_a, atoms_b;
    for (auto& n : a.nodes) atoms_a.insert(n.atom + "." + n.label);
    for (auto& n : b.nodes) atoms_b.insert(n.atom + "." + n.label);
    if (atoms_a != atoms_b) return false;

    iso_search s(a, b);
    // grow the assignment order along adjacency so each new node is checked
    // against a mapped neighbour right away
    std::vector<int> order;
    std::vector<char> placed(a.nodes.size(), 0);
    while (order.size() < a.nodes.size()) {
        int best = -1, best_links = -1;
        for (auto& n : a.nodes) {
            if (placed[n.id]) continue;
            int links = 0;
            for (const net_edge* e : s.a_inc[n.id]) {
                int w = e->from.node == n.id ? e->to.node : e->from.node;
                if (placed[w]) ++links;
            }
            if (links > best_links) { best_links = links; best = n.id; }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return s.run(order, 0);
}

} // namespace akton

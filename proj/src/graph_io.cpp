#include "akton/network.hpp"

#include "json.hpp"

#include <set>

#include <sstream>

namespace akton {

namespace {

const char* kind_name(edge_kind k) {
    switch (k) {
    case edge_kind::normal: return "normal";
    case edge_kind::cut_spatial: return "cut-spatial";
    case edge_kind::cut_planar: return "cut-planar";
    }
    return "normal";
}

edge_kind kind_from(const std::string& s) {
    if (s == "normal") return edge_kind::normal;
    if (s == "cut-spatial") return edge_kind::cut_spatial;
    if (s == "cut-planar") return edge_kind::cut_planar;
    throw std::runtime_error("unknown edge kind: " + s);
}

} // namespace

std::string to_json(const network& net) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (auto& n : net.nodes)
        j["nodes"].push_back({{"id", n.id}, {"atom", n.atom}, {"sort", name(n.s)}});
    j["edges"] = nlohmann::json::array();
    for (auto& e : net.edges)
        j["edges"].push_back({{"from", {e.from.node, e.from.pin}},
                              {"to", {e.to.node, e.to.pin}},
                              {"kind", kind_name(e.kind)}});
    return j.dump(2) + "\n";
}

network from_json(const std::string& text, const registry& reg) {
    nlohmann::json j = nlohmann::json::parse(text);
    network net;
    if (!j.contains("nodes") || !j.contains("edges"))
        throw std::runtime_error("graph json needs nodes and edges arrays");
    for (auto& jn : j["nodes"]) {
        net_node n;
        n.id = jn.at("id").get<int>();
        n.atom = jn.at("atom").get<std::string>();
        const atom_info* info = reg.find(n.atom);
        if (!info) throw std::runtime_error("unknown atom in graph: " + n.atom);
        if (jn.contains("sort")) {
            auto s = sort_from(jn.at("sort").get<std::string>());
            if (!s) throw std::runtime_error("unknown sort in graph json");
            n.s = *s;
        } else {
            n.s = info->s;
        }
        n.in_pins = static_cast<int>(pin_count(info->in));
        n.out_pins = static_cast<int>(pin_count(info->out));
        net.nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
        if (net.nodes[i].id != static_cast<int>(i))
            throw std::runtime_error("graph nodes must be numbered 0..n-1 in order");
    std::set<std::pair<int, int>> used_out, used_in;
    for (auto& je : j["edges"]) {
        net_edge e;
        e.from = {je.at("from").at(0).get<int>(), je.at("from").at(1).get<int>()};
        e.to = {je.at("to").at(0).get<int>(), je.at("to").at(1).get<int>()};
        e.kind = kind_from(je.value("kind", "normal"));
        for (auto ep : {e.from, e.to})
            if (ep.node < 0 || ep.node >= static_cast<int>(net.nodes.size()))
                throw std::runtime_error("edge endpoint out of range");
        auto check_pin = [&](endpoint ep, int limit, bool cut) {
            if (ep.pin < 0 || (ep.pin >= limit && !cut))
                throw std::runtime_error("edge pin out of range");
        };
        bool cut = e.kind != edge_kind::normal;
        check_pin(e.from, net.at(e.from.node).out_pins, cut);
        check_pin(e.to, net.at(e.to.node).in_pins, cut);
        if (!used_out.insert({e.from.node, e.from.pin}).second)
            throw std::runtime_error("output pin wired twice");
        if (!used_in.insert({e.to.node, e.to.pin}).second)
            throw std::runtime_error("input pin wired twice");
        net.edges.push_back(e);
    }
    // open pins, in node then pin order
    for (auto& n : net.nodes) {
        for (int p = 0; p < n.in_pins; ++p)
            if (!used_in.count({n.id, p})) net.inputs.push_back({n.id, p});
        for (int p = 0; p < n.out_pins; ++p)
            if (!used_out.count({n.id, p})) net.outputs.push_back({n.id, p});
    }
    return net;
}

std::string to_dot(const network& net) {
    std::ostringstream os;
    os << "digraph akton {\n  rankdir=LR;\n";
    for (auto& n : net.nodes) {
        os << "  n" << n.id << " [label=\"" << n.atom;
        if (!n.label.empty()) os << '.' << n.label;
        os << "\"];\n";
    }
    for (auto& e : net.edges) {
        os << "  n" << e.from.node << " -> n" << e.to.node << " [taillabel=\""
           << e.from.pin << "\" headlabel=\"" << e.to.pin << '"';
        if (e.kind == edge_kind::cut_spatial) os << " style=dashed";
        else if (e.kind == edge_kind::cut_planar) os << " style=dotted";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace akton

#pragma once
#include "akton/analysis.hpp"
#include "akton/term.hpp"

#include <string>
#include <vector>

namespace akton {

enum class edge_kind : std::uint8_t { normal, cut_spatial, cut_planar };

struct endpoint {
    int node = -1;
    int pin = 0;
    bool operator==(const endpoint&) const = default;
};

struct net_node {
    int id = 0;
    std::string atom;
    std::string label;
    sort s = sort::B;
    int in_pins = 0, out_pins = 0;
};

struct net_edge {
    endpoint from, to;
    edge_kind kind = edge_kind::normal;
};

struct network {
    std::vector<net_node> nodes;
    std::vector<net_edge> edges;
    std::vector<endpoint> inputs;  // open in pins, interface order
    std::vector<endpoint> outputs; // open out pins, interface order

    const net_node& at(int id) const { return nodes.at(id); }
};

enum class cut_policy : std::uint8_t { keep, heal };

// builds the nodal graph of a term; cut openings must pair up
network reconstruct(const term_ptr& t, const registry& reg, cut_policy policy);

// rewires every cut pair between bare cut atoms into a direct edge
void heal(network& net);

// splices out pass-through identity nodes (Link, Wire, straight duct pieces)
void contract_links(network& net);

// pin-preserving graph equality up to node renumbering and input order
bool isomorphic(const network& a, const network& b);

// serialization
std::string to_json(const network& net);
network from_json(const std::string& text, const registry& reg);
std::string to_dot(const network& net);

class not_orientable : public std::runtime_error {
public:
    explicit not_orientable(const std::string& msg) : std::runtime_error(msg) {}
};

// rebuilds a term whose reconstruction is the given network; the network is
// healed first, and feedback or lane crossings come back as labelled cut pairs
term_ptr linearize(const network& net, const registry& reg);

} // namespace akton

#include "doctest.h"

#include "akton/analysis.hpp"
#include "akton/network.hpp"
#include "akton/term.hpp"
#include "gen.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

using namespace akton;

namespace {

network net_of(const std::string& src, cut_policy policy = cut_policy::keep) {
    registry reg;
    return reconstruct(parse_term(src, reg), reg, policy);
}

int count_atom(const network& net, const std::string& atom) {
    int n = 0;
    for (auto& node : net.nodes)
        if (node.atom == atom) ++n;
    return n;
}

int count_kind(const network& net, edge_kind k) {
    int n = 0;
    for (auto& e : net.edges)
        if (e.kind == k) ++n;
    return n;
}

network round_trip(const network& g) {
    registry reg;
    term_ptr t = linearize(g, reg);
    network back = reconstruct(t, reg, cut_policy::heal);
    contract_links(back);
    return back;
}

network healed_contracted(network g) {
    heal(g);
    contract_links(g);
    return g;
}

} // namespace

TEST_CASE("diamond reconstructs with positional wiring") {
    network net = net_of("Entry > Fork > Link/Link > Join > Exit");
    CHECK(net.nodes.size() == 6);
    CHECK(net.edges.size() == 6);
    CHECK(net.inputs.empty());
    CHECK(net.outputs.empty());
    CHECK(count_kind(net, edge_kind::normal) == 6);
    // the two fork lanes stay parallel through the links
    const net_node* fork = nullptr;
    for (auto& n : net.nodes)
        if (n.atom == "Fork") fork = &n;
    REQUIRE(fork != nullptr);
    std::set<int> mids;
    for (auto& e : net.edges)
        if (e.from.node == fork->id) mids.insert(e.to.node);
    CHECK(mids.size() == 2);
    for (int mid : mids) CHECK(net.at(mid).atom == "Link");
}

TEST_CASE("serial mismatch is rejected at reconstruction") {
    registry reg;
    term_ptr t = parse_term("Entry > Join", reg);
    CHECK_THROWS_WITH_AS(reconstruct(t, reg, cut_policy::keep),
                         doctest::Contains("serial seam mismatch"),
                         std::runtime_error);
}

TEST_CASE("CS atoms vanish from the graph") {
    // CS has no pins, so it rides along without occupying a lane
    network net = net_of("CS/(Entry > Not > Exit)");
    CHECK(count_atom(net, "CS") == 0);
    CHECK(net.nodes.size() == 3);
    CHECK(net.edges.size() == 2);
}

TEST_CASE("open cuts block reconstruction") {
    registry reg;
    term_ptr t = parse_term("Link/Up > Link/Off", reg);
    CHECK_THROWS_WITH_AS(reconstruct(t, reg, cut_policy::keep),
                         doctest::Contains("unmatched cut openings"), bind_error);
}

static const char* tetra_src =
    "Set > Fork > Down/Fork > Link/Link/Up > Link/Join > Join > Off";

TEST_CASE("tetrahedron keeps one spatial and one planar cut edge") {
    network net = net_of(tetra_src);
    CHECK(count_kind(net, edge_kind::cut_spatial) == 1);
    CHECK(count_kind(net, edge_kind::cut_planar) == 1);
    CHECK(count_atom(net, "Set") == 1);
    CHECK(count_atom(net, "Off") == 1);
    // cut edges run tail to head: Off feeds Set, Down feeds Up
    for (auto& e : net.edges) {
        if (e.kind == edge_kind::cut_planar) {
            CHECK(net.at(e.from.node).atom == "Off");
            CHECK(net.at(e.to.node).atom == "Set");
        }
        if (e.kind == edge_kind::cut_spatial) {
            CHECK(net.at(e.from.node).atom == "Down");
            CHECK(net.at(e.to.node).atom == "Up");
        }
    }
}

TEST_CASE("healed tetrahedron contracts to the complete graph on four nodes") {
    network net = net_of(tetra_src, cut_policy::heal);
    CHECK(count_atom(net, "Set") == 0);
    CHECK(count_atom(net, "Up") == 0);
    contract_links(net);
    REQUIRE(net.nodes.size() == 4);
    CHECK(net.edges.size() == 6);
    CHECK(count_atom(net, "Fork") == 2);
    CHECK(count_atom(net, "Join") == 2);
    std::map<int, int> degree;
    std::set<std::pair<int, int>> pairs;
    for (auto& e : net.edges) {
        ++degree[e.from.node];
        ++degree[e.to.node];
        auto p = std::minmax(e.from.node, e.to.node);
        CHECK(pairs.insert({p.first, p.second}).second);
    }
    for (auto& n : net.nodes) CHECK(degree[n.id] == 3);
}

TEST_CASE("heal splices transitive cut chains") {
    // Down feeds Up through the seam, then the healed lane must run
    // Entry -> Not -> Exit after the cut atoms dissolve
    network net = net_of("Entry/Up > Down/Not > Exit", cut_policy::heal);
    CHECK(count_atom(net, "Up") == 0);
    CHECK(count_atom(net, "Down") == 0);
    REQUIRE(net.nodes.size() == 3);
    for (auto& e : net.edges) CHECK(e.kind == edge_kind::normal);
    int entry = -1, nt = -1, exit_ = -1;
    for (auto& n : net.nodes) {
        if (n.atom == "Entry") entry = n.id;
        if (n.atom == "Not") nt = n.id;
        if (n.atom == "Exit") exit_ = n.id;
    }
    std::set<std::pair<int, int>> want{{entry, nt}, {nt, exit_}};
    std::set<std::pair<int, int>> got;
    for (auto& e : net.edges) got.insert({e.from.node, e.to.node});
    CHECK(got == want);
}

TEST_CASE("contract_links splices pass-through nodes only") {
    network net = net_of("Entry > Link > Wire > Not > Exit");
    contract_links(net);
    CHECK(net.nodes.size() == 3);
    CHECK(net.edges.size() == 2);
    CHECK(count_atom(net, "Link") == 0);
    CHECK(count_atom(net, "Wire") == 0);
    CHECK(count_atom(net, "Not") == 1);
}

TEST_CASE("isomorphism is structural, not positional") {
    network a = net_of("Entry > Fork > Link/Not > Join > Exit");
    network b = net_of("Entry > Fork > Not/Link > Join > Exit");
    network c = net_of("Entry > Fork > Link/Link > Join > Exit");
    CHECK(isomorphic(a, a));
    CHECK(isomorphic(a, b));
    CHECK_FALSE(isomorphic(a, c));
    network d = net_of("Entry > Not > Exit");
    CHECK_FALSE(isomorphic(a, d));
}

TEST_CASE("isomorphism tries entry permutations") {
    network a = net_of("Entry.a/Entry.b > Not/Wire > Join > Exit");
    network b = net_of("Entry.b/Entry.a > Wire/Not > Join > Exit");
    CHECK(isomorphic(a, b));
    network c = net_of("Entry.a/Entry.b > Not/Not > Join > Exit");
    CHECK_FALSE(isomorphic(a, c));
}

TEST_CASE("graph json round trip") {
    network net = net_of(tetra_src);
    std::string js = to_json(net);
    registry reg;
    network back = from_json(js, reg);
    CHECK(isomorphic(net, back));
    CHECK(to_json(back) == js);
    CHECK(js.back() == '\n');
}

TEST_CASE("graph json rejects malformed input") {
    registry reg;
    CHECK_THROWS(from_json("{", reg));
    CHECK_THROWS(from_json(R"({"nodes":[{"id":1,"atom":"Entry","sort":"E"}],"edges":[]})", reg));
    CHECK_THROWS(from_json(R"({"nodes":[{"id":0,"atom":"Bogus","sort":"B"}],"edges":[]})", reg));
    CHECK_THROWS(from_json(
        R"({"nodes":[{"id":0,"atom":"Entry","sort":"E"}],"edges":[{"from":[0,3],"to":[0,0],"kind":"normal"}]})",
        reg));
}

TEST_CASE("dot output marks cut edges") {
    network net = net_of(tetra_src);
    std::string dot = to_dot(net);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("dashed") != std::string::npos);
    CHECK(dot.find("dotted") != std::string::npos);
}

TEST_CASE("linearize needs an oriented flow") {
    registry reg;
    network tetra = net_of(tetra_src);
    CHECK_THROWS_AS(linearize(tetra, reg), not_orientable);
    network empty;
    CHECK_THROWS_AS(linearize(empty, reg), not_orientable);
}

TEST_CASE("linearize round trips a straight line") {
    registry reg;
    network g = net_of("Entry > Not > Exit");
    term_ptr t = linearize(g, reg);
    CHECK(print(t) == "Entry > Not > Exit");
    CHECK(isomorphic(round_trip(g), healed_contracted(g)));
}

TEST_CASE("linearize round trips the diamond") {
    network g = net_of("Entry > Fork > Link/Not > Join > Exit");
    CHECK(isomorphic(round_trip(g), healed_contracted(g)));
}

TEST_CASE("linearize round trips crossing lanes") {
    // two lanes swap: the linearizer has to reintroduce a crossing stage
    network g;
    registry reg;
    auto add = [&](const std::string& atom) {
        const atom_info& info = reg.at(atom);
        net_node n;
        n.id = static_cast<int>(g.nodes.size());
        n.atom = atom;
        n.s = info.s;
        n.in_pins = static_cast<int>(pin_count(info.in));
        n.out_pins = static_cast<int>(pin_count(info.out));
        g.nodes.push_back(n);
        return n.id;
    };
    int ea = add("Entry"), eb = add("Entry");
    int nt = add("Not"), wr = add("Wire");
    int xa = add("Exit"), xb = add("Exit");
    g.edges.push_back({{ea, 0}, {nt, 0}, edge_kind::normal});
    g.edges.push_back({{eb, 0}, {wr, 0}, edge_kind::normal});
    g.edges.push_back({{nt, 0}, {xb, 0}, edge_kind::normal});
    g.edges.push_back({{wr, 0}, {xa, 0}, edge_kind::normal});
    term_ptr t = linearize(g, reg);
    check_report rep = check(t, reg);
    CHECK(rep.issues.empty());
    CHECK(isomorphic(round_trip(g), healed_contracted(g)));
}

TEST_CASE("linearized stages all sort") {
    network g = net_of(
        "Entry > Set/Wire > And > Not > Fork > Off/Wire > Exit",
        cut_policy::heal);
    registry reg;
    term_ptr t = linearize(g, reg);
    check_report rep = check(t, reg);
    CHECK(rep.issues.empty());
    CHECK(rep.open_cuts.empty());
    CHECK(rep.best() == sort::CS);
    CHECK(isomorphic(round_trip(g), healed_contracted(g)));
}

TEST_CASE("linearize round trips the flip flop") {
    network g = net_of(
        "(Entry.r/Entry.s) > "
        "(Wire/Up > Or > Not > Fork > Wire/Off)/"
        "(Set/Wire > Or > Not > Fork > Down/Wire) > "
        "(Exit.q/Exit.qbar)",
        cut_policy::heal);
    CHECK(isomorphic(round_trip(g), healed_contracted(g)));
}

TEST_CASE("linearize round trips random networks") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 40; ++i) {
        network g = gen::random_network(rng, 18, 2);
        network want = healed_contracted(g);
        network got = round_trip(g);
        CAPTURE(i);
        CHECK(isomorphic(got, want));
    }
}

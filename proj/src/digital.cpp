#include "akton/digital.hpp"

#include "akton/network.hpp"

#include <algorithm>
#include <functional>

namespace akton {

namespace {

bool is_value(char c) {
    return c == '0' || c == '1' || c == '#';
}

char invert(char c) {
    if (c == '0') return '1';
    if (c == '1') return '0';
    return '#';
}

term_ptr relabel_cuts(const term_ptr& t, const std::string& suffix,
                      const registry& reg) {
    switch (t->kind) {
    case term_kind::atom: {
        const atom_info& info = reg.at(t->atom);
        if (info.cut == cut_role::none || t->label.empty()) return t;
        return make_atom(t->atom, t->label + suffix);
    }
    case term_kind::next:
        return make_next(relabel_cuts(t->a, suffix, reg),
                         relabel_cuts(t->b, suffix, reg));
    case term_kind::juxta:
        return make_juxta(relabel_cuts(t->a, suffix, reg),
                          relabel_cuts(t->b, suffix, reg));
    case term_kind::tilt:
        return make_tilt(relabel_cuts(t->a, suffix, reg), t->turns);
    }
    throw std::logic_error("bad term kind");
}

} // namespace

char gate_out(const std::string& atom, const std::vector<char>& in) {
    for (char c : in)
        if (!is_value(c)) throw sim_error("bad digital value");
    auto unary = [&]() {
        if (in.size() != 1) throw sim_error(atom + " takes one input");
        return in[0];
    };
    if (atom == "And") {
        if (in.size() != 2) throw sim_error("And takes two inputs");
        if (in[0] == '0' || in[1] == '0') return '0';
        if (in[0] == '#' || in[1] == '#') return '#';
        return '1';
    }
    if (atom == "Or") {
        if (in.size() != 2) throw sim_error("Or takes two inputs");
        if (in[0] == '1' || in[1] == '1') return '1';
        if (in[0] == '#' || in[1] == '#') return '#';
        return '0';
    }
    if (atom == "Not") return invert(unary());
    if (atom == "Wire" || atom == "Fork") return unary();
    throw sim_error("no gate semantics for atom: " + atom);
}

term_ptr expand_concealed(const term_ptr& t, const registry& reg) {
    int instance = 0;
    std::function<term_ptr(const term_ptr&)> go =
        [&](const term_ptr& n) -> term_ptr {
        switch (n->kind) {
        case term_kind::atom: {
            const atom_info& info = reg.at(n->atom);
            if (!info.body) return n;
            int tag = ++instance;
            // every instance needs fresh nodes: cut binding and graph
            // building identify occurrences by node, not by position
            return clone(
                relabel_cuts(go(info.body), "_i" + std::to_string(tag), reg));
        }
        case term_kind::next:
            return make_next(go(n->a), go(n->b));
        case term_kind::juxta:
            return make_juxta(go(n->a), go(n->b));
        case term_kind::tilt:
            return make_tilt(go(n->a), n->turns);
        }
        throw std::logic_error("bad term kind");
    };
    return go(t);
}

sim_result simulate(const term_ptr& t, const registry& reg,
                    const std::map<std::string, std::string>& inputs,
                    sim_options opt) {
    for (auto& [name, wf] : inputs)
        for (char c : wf)
            if (!is_value(c))
                throw sim_error("bad waveform for " + name + ": " + wf);

    term_ptr flat = expand_concealed(t, reg);
    std::function<void(const term_ptr&)> vet = [&](const term_ptr& n) {
        if (n->kind == term_kind::tilt)
            throw sim_error("tilted terms have no gate semantics");
        if (n->kind != term_kind::atom) {
            vet(n->a);
            vet(n->b);
            return;
        }
        if (!reg.at(n->atom).digital)
            throw sim_error("not a digital atom: " + n->atom);
    };
    vet(flat);

    network net = reconstruct(flat, reg, cut_policy::keep);
    int n = static_cast<int>(net.nodes.size());

    // feedback cuts become registers; crossing cuts stay combinational
    std::vector<int> reg_of_set(n, -1), reg_of_off(n, -1);
    int nregs = 0;
    for (auto& e : net.edges) {
        if (e.kind != edge_kind::cut_planar) continue;
        reg_of_off[e.from.node] = nregs;
        reg_of_set[e.to.node] = nregs;
        ++nregs;
    }

    // dependency order over everything except the register boundary
    std::vector<std::vector<int>> succs(n);
    std::vector<int> indeg(n, 0);
    for (auto& e : net.edges) {
        if (e.kind == edge_kind::cut_planar) continue;
        succs[e.from.node].push_back(e.to.node);
        ++indeg[e.to.node];
    }
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) order.push_back(i);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int s : succs[order[k]])
            if (--indeg[s] == 0) order.push_back(s);
    if (static_cast<int>(order.size()) != n)
        throw sim_error("combinational cycle: every feedback loop needs a "
                        "Set/Off pair");

    std::vector<std::string> waveform(n);
    int horizon = 1;
    sim_result res;
    for (auto& node : net.nodes) {
        if (node.atom == "Entry") {
            std::string key = node.label.empty() ? "Entry" : node.label;
            auto it = inputs.find(key);
            waveform[node.id] = it == inputs.end() || it->second.empty()
                                    ? "#"
                                    : it->second;
            horizon = std::max(horizon,
                               static_cast<int>(waveform[node.id].size()));
        }
        std::string col = node.atom;
        if (!node.label.empty()) col += "." + node.label;
        res.columns.push_back(col + "@" + std::to_string(node.id));
    }

    std::vector<char> regs(nregs, '#');
    std::map<std::vector<char>, int> seen;
    for (int step = 0; step < opt.max_steps; ++step) {
        if (step >= horizon - 1) {
            auto it = seen.find(regs);
            if (it != seen.end()) {
                res.settled_at = it->second;
                res.period = step - it->second;
                res.shape = res.period == 1 ? run_shape::steady
                                            : run_shape::oscillating;
                return res;
            }
            seen.emplace(regs, step);
        }

        std::vector<std::vector<char>> inval(n), outval(n);
        for (int i = 0; i < n; ++i) {
            inval[i].assign(net.at(i).in_pins, '#');
            outval[i].assign(net.at(i).out_pins, '#');
        }
        std::vector<char> carried(n, '#'); // value a crossing tail hands on
        std::vector<char> next_regs(nregs, '#');
        std::map<std::string, char> out_row;
        std::vector<char> state_row(n, '#');

        for (int id : order) {
            const net_node& node = net.at(id);
            const std::string& a = node.atom;
            if (a == "Entry") {
                const std::string& wf = waveform[id];
                outval[id][0] =
                    wf[std::min<std::size_t>(step, wf.size() - 1)];
            } else if (a == "Exit") {
                std::string key = node.label.empty() ? "Exit" : node.label;
                while (out_row.count(key)) key += "'";
                out_row[key] = inval[id][0];
            } else if (a == "Set") {
                outval[id][0] = reg_of_set[id] >= 0 ? regs[reg_of_set[id]]
                                                    : '#';
            } else if (a == "Off") {
                if (reg_of_off[id] >= 0)
                    next_regs[reg_of_off[id]] = inval[id][0];
            } else if (a == "Down") {
                carried[id] = inval[id][0];
            } else if (a == "Up") {
                // outval[0] was filled through the crossing edge below
            } else if (a == "Fork") {
                char v = gate_out(a, {inval[id][0]});
                outval[id][0] = outval[id][1] = v;
            } else {
                outval[id][0] = gate_out(a, inval[id]);
            }

            state_row[id] = !outval[id].empty() ? outval[id][0]
                            : !inval[id].empty() ? inval[id][0]
                                                 : '#';

            for (auto& e : net.edges) {
                if (e.from.node != id || e.kind == edge_kind::cut_planar)
                    continue;
                char v = e.kind == edge_kind::cut_spatial
                             ? carried[id]
                             : outval[id][e.from.pin];
                if (e.to.pin < net.at(e.to.node).in_pins)
                    inval[e.to.node][e.to.pin] = v;
                else if (net.at(e.to.node).atom == "Up")
                    outval[e.to.node][0] = v;
            }
        }

        res.outputs.push_back(std::move(out_row));
        res.states.push_back(std::move(state_row));
        regs = std::move(next_regs);
    }
    res.settled_at = opt.max_steps;
    res.period = 0;
    res.shape = run_shape::truncated;
    return res;
}

} // namespace akton

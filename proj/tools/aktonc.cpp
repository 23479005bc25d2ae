#include "akton/analysis.hpp"
#include "akton/digital.hpp"
#include "akton/metric.hpp"
#include "akton/network.hpp"
#include "akton/rewrite.hpp"
#include "akton/term.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace akton;
using ordered_json = nlohmann::ordered_json;

namespace {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw io_error("cannot write " + out_path);
    out << text;
}

std::string atom_ref(const occurrence& o) {
    std::string s = o.node->atom;
    if (!o.node->label.empty()) s += "." + o.node->label;
    return s;
}

std::map<std::string, std::string> parse_waveforms(const std::string& text) {
    std::map<std::string, std::string> waves;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("inputs must look like name=bits: " + item);
        waves[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return waves;
}

const char* kind_word(edge_kind k) {
    switch (k) {
    case edge_kind::normal: return "normal";
    case edge_kind::cut_spatial: return "cut-spatial";
    default: return "cut-planar";
    }
}

int run_parse(const std::string& file, const std::string& format,
              const std::string& out) {
    registry reg;
    term_ptr t = parse_program(slurp(file), reg);
    std::string text = print(t);
    if (format == "json")
        emit(out, ordered_json{{"term", text}}.dump(2) + "\n");
    else
        emit(out, text + "\n");
    return 0;
}

int run_check(const std::string& file, const std::string& format,
              const std::string& out) {
    registry reg;
    term_ptr t = parse_program(slurp(file), reg);
    check_report rep = check(t, reg);
    if (format == "json") {
        ordered_json j;
        j["ok"] = rep.ok();
        j["sort"] = rep.strict || rep.analyzed ? ordered_json(std::string(name(rep.best())))
                                               : ordered_json(nullptr);
        j["strict"] = rep.strict ? ordered_json(std::string(name(*rep.strict)))
                                 : ordered_json(nullptr);
        j["analyzed"] = rep.analyzed ? ordered_json(std::string(name(*rep.analyzed)))
                                     : ordered_json(nullptr);
        j["issues"] = ordered_json::array();
        for (auto& issue : rep.issues)
            j["issues"].push_back({{"path", issue.path}, {"message", issue.message}});
        j["open_cuts"] = ordered_json::array();
        for (auto& o : rep.open_cuts) j["open_cuts"].push_back(atom_ref(o));
        emit(out, j.dump(2) + "\n");
    } else {
        std::ostringstream text;
        if (rep.strict || rep.analyzed)
            text << "sort: " << name(rep.best()) << "\n";
        else
            text << "sort: none\n";
        for (auto& issue : rep.issues)
            text << "issue at \"" << issue.path << "\": " << issue.message << "\n";
        for (auto& o : rep.open_cuts) text << "open cut: " << atom_ref(o) << "\n";
        emit(out, text.str());
    }
    return rep.ok() ? 0 : 1;
}

int run_graph(const std::string& file, const std::string& format,
              const std::string& out, bool do_heal) {
    registry reg;
    term_ptr t = parse_program(slurp(file), reg);
    network net = reconstruct(t, reg, do_heal ? cut_policy::heal : cut_policy::keep);
    if (format == "json") {
        emit(out, to_json(net) + "\n");
    } else if (format == "dot") {
        emit(out, to_dot(net));
    } else {
        std::ostringstream text;
        text << "nodes: " << net.nodes.size() << "\n";
        text << "edges: " << net.edges.size() << "\n";
        for (auto& n : net.nodes) {
            text << "  " << n.id << " " << n.atom;
            if (!n.label.empty()) text << "." << n.label;
            text << " [" << name(n.s) << "] in:" << n.in_pins
                 << " out:" << n.out_pins << "\n";
        }
        for (auto& e : net.edges)
            text << "  " << e.from.node << "." << e.from.pin << " -> "
                 << e.to.node << "." << e.to.pin << " " << kind_word(e.kind)
                 << "\n";
        emit(out, text.str());
    }
    return 0;
}

int run_linearize(const std::string& file, const std::string& format,
                  const std::string& out) {
    registry reg;
    std::string src = slurp(file);
    size_t first = src.find_first_not_of(" \t\r\n");
    network net;
    if (first != std::string::npos && src[first] == '{') {
        net = from_json(src, reg);
    } else {
        term_ptr t = parse_program(src, reg);
        net = reconstruct(t, reg, cut_policy::keep);
    }
    term_ptr lin = linearize(net, reg);
    std::string text = print(lin);
    if (format == "json")
        emit(out, ordered_json{{"term", text}}.dump(2) + "\n");
    else
        emit(out, text + "\n");
    return 0;
}

int run_rewrite(const std::string& file, const std::string& format,
                const std::string& out, const std::string& rule_text,
                const std::string& path, const std::string& with_src) {
    registry reg;
    term_ptr t = parse_program(slurp(file), reg);
    rewrite_rule rule = parse_rule(rule_text);
    term_ptr with = parse_term(with_src.empty() ? "CS" : with_src, reg);
    term_ptr result = apply(rule, t, path, reg, with);
    std::string text = print(result);
    if (format == "json")
        emit(out, ordered_json{{"rule", rule_name(rule)}, {"term", text}}.dump(2) + "\n");
    else
        emit(out, text + "\n");
    return 0;
}

const char* shape_word(run_shape s) {
    switch (s) {
    case run_shape::steady: return "steady";
    case run_shape::oscillating: return "oscillating";
    default: return "truncated";
    }
}

int run_simulate(const std::string& file, const std::string& format,
                 const std::string& out, const std::string& inputs, int steps,
                 const std::string& trace) {
    registry reg;
    term_ptr t = parse_program(slurp(file), reg);
    sim_options opt;
    opt.max_steps = steps;
    sim_result res = simulate(t, reg, parse_waveforms(inputs), opt);
    if (!trace.empty()) {
        std::ostringstream csv;
        csv << "step,node,value\n";
        for (size_t step = 0; step < res.states.size(); ++step)
            for (size_t col = 0; col < res.columns.size(); ++col)
                csv << step << "," << res.columns[col] << ","
                    << res.states[step][col] << "\n";
        emit(trace, csv.str());
    }
    if (format == "json") {
        ordered_json j;
        j["shape"] = shape_word(res.shape);
        j["period"] = res.period;
        j["settled_at"] = res.settled_at;
        j["outputs"] = ordered_json::array();
        for (auto& step : res.outputs) {
            ordered_json row;
            for (auto& [key, value] : step) row[key] = std::string(1, value);
            j["outputs"].push_back(row);
        }
        emit(out, j.dump(2) + "\n");
    } else {
        std::ostringstream text;
        text << "shape: " << shape_word(res.shape) << "\n";
        text << "period: " << res.period << "\n";
        text << "settled_at: " << res.settled_at << "\n";
        for (size_t step = 0; step < res.outputs.size(); ++step) {
            text << step << ":";
            for (auto& [key, value] : res.outputs[step])
                text << " " << key << "=" << value;
            text << "\n";
        }
        emit(out, text.str());
    }
    return 0;
}

int run_layout(const std::string& file, const std::string& format,
               const std::string& out) {
    registry reg;
    term_ptr t = parse_program(slurp(file), reg);
    layout_grid g = layout(t, reg);
    if (format == "svg") {
        emit(out, render_svg(g, reg));
    } else if (format == "json") {
        ordered_json j;
        j["rows"] = g.rows;
        j["cols"] = g.cols;
        j["cells"] = ordered_json::array();
        for (auto& [rc, cell] : g.cells)
            j["cells"].push_back({{"row", rc.first},
                                  {"col", rc.second},
                                  {"atom", cell.atom},
                                  {"rot", cell.rot}});
        emit(out, j.dump(2) + "\n");
    } else {
        emit(out, render_ascii(g, reg));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"akton algebra toolchain"};
    app.require_subcommand(1);

    std::string file, out;
    std::string format = "text";
    std::string rule, path, with_src, inputs, trace;
    int steps = 64;
    bool heal_flag = false, keep_flag = false;

    auto add_common = [&](CLI::App* cmd, std::vector<std::string> formats) {
        cmd->add_option("file", file, "input file")->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember(formats));
        cmd->add_option("--out", out, "write the output to a file");
    };

    CLI::App* parse_cmd = app.add_subcommand("parse", "parse and reprint a term");
    add_common(parse_cmd, {"text", "json"});

    CLI::App* check_cmd = app.add_subcommand("check", "sort and wiring report");
    add_common(check_cmd, {"text", "json"});

    CLI::App* graph_cmd = app.add_subcommand("graph", "reconstruct the nodal network");
    add_common(graph_cmd, {"text", "json", "dot"});
    graph_cmd->add_flag("--heal", heal_flag, "rewire cut pairs into direct edges");
    graph_cmd->add_flag("--keep-cuts", keep_flag, "keep cut pairs as marked edges");

    CLI::App* lin_cmd = app.add_subcommand("linearize", "rebuild a term from a network");
    add_common(lin_cmd, {"text", "json"});

    CLI::App* rw_cmd = app.add_subcommand("rewrite", "apply a replacement rule");
    add_common(rw_cmd, {"text", "json"});
    rw_cmd->add_option("--rule", rule, "family[.variant][:fwd|bwd]")->required();
    rw_cmd->add_option("--path", path, "dot path to the subterm, empty for the root");
    rw_cmd->add_option("--with", with_src, "inserted closed term where the rule grows one");

    CLI::App* sim_cmd = app.add_subcommand("simulate", "run the gate-level simulator");
    add_common(sim_cmd, {"text", "json"});
    sim_cmd->add_option("--inputs", inputs, "entry waveforms, name=bits pairs");
    sim_cmd->add_option("--steps", steps, "step budget")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--trace", trace, "write a per-node csv trace to a file");

    CLI::App* lay_cmd = app.add_subcommand("layout", "place a metric term on the grid");
    add_common(lay_cmd, {"text", "ascii", "svg", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (heal_flag && keep_flag) {
        std::cerr << "usage error: --heal and --keep-cuts exclude each other\n";
        return 2;
    }

    try {
        if (*parse_cmd) return run_parse(file, format, out);
        if (*check_cmd) return run_check(file, format, out);
        if (*graph_cmd) return run_graph(file, format, out, heal_flag);
        if (*lin_cmd) return run_linearize(file, format, out);
        if (*rw_cmd) return run_rewrite(file, format, out, rule, path, with_src);
        if (*sim_cmd) return run_simulate(file, format, out, inputs, steps, trace);
        if (*lay_cmd) return run_layout(file, format, out);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#pragma once
#include "akton/term.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace akton {

class sim_error : public std::runtime_error {
public:
    explicit sim_error(const std::string& msg) : std::runtime_error(msg) {}
};

// one gate evaluation over the value alphabet {'0','1','#'}; And is
// 0-dominant, Or is 1-dominant, '#' propagates otherwise
char gate_out(const std::string& atom, const std::vector<char>& in);

// replaces every concealed atom by its defining body; labelled cut atoms in
// a body get a per-instance suffix so separate instances never bind across
term_ptr expand_concealed(const term_ptr& t, const registry& reg);

enum class run_shape : std::uint8_t { steady, oscillating, truncated };

struct sim_result {
    // exit values per step, keyed by exit label ("Exit" when unlabelled)
    std::vector<std::map<std::string, char>> outputs;
    run_shape shape = run_shape::truncated;
    int period = 0;     // 1 once steady, >= 2 while oscillating
    int settled_at = 0; // first step of the repeating suffix
    // per-node signal table for tracing: columns[i] names a node, and
    // states[t][i] is its carried value at step t
    std::vector<std::string> columns;
    std::vector<std::vector<char>> states;
};

struct sim_options {
    int max_steps = 64;
};

// runs the gate-level semantics of a term: entries replay their waveform
// (last value held), crossing cuts pass through combinationally, feedback
// cuts act as one-step registers starting undefined
sim_result simulate(const term_ptr& t, const registry& reg,
                    const std::map<std::string, std::string>& inputs,
                    sim_options opt = {});

} // namespace akton

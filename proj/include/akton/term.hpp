#pragma once
#include "akton/interface.hpp"
#include "akton/sorts.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace akton {

struct term;
using term_ptr = std::shared_ptr<const term>;

enum class term_kind : std::uint8_t { atom, next, juxta, tilt };

struct term {
    term_kind kind;
    std::string atom;  // atom nodes: registry name
    std::string label; // atom nodes: optional ".label" suffix
    int turns = 0;     // tilt nodes: clockwise quarter turns, 1..3
    term_ptr a, b;     // next/juxta children; tilt child in a
};

term_ptr make_atom(std::string name, std::string label = "");
term_ptr make_next(term_ptr x, term_ptr y);
term_ptr make_juxta(term_ptr x, term_ptr y);
// nested tilts collapse mod 4; zero net turns returns the child unchanged
term_ptr make_tilt(term_ptr x, int turns);

bool equal(const term_ptr& x, const term_ptr& y);
term_ptr clone(const term_ptr& t); // fresh nodes, same shape

// pending-cut shape of an atom: 'B' bulk, or a run like "DB"; count applies to cut letters
struct profile_seg {
    char letter; // one of B U D S O
    int count = 1;
};
using atom_profile = std::vector<profile_seg>;

enum class cut_role : std::uint8_t {
    none,
    head_spatial, // produces the crossing wire (Up-like)
    tail_spatial, // consumes it (Down-like)
    head_planar,  // produces the feedback wire (Set-like)
    tail_planar,  // consumes it (Off-like)
};

struct atom_info {
    std::string name;
    sort s = sort::B;
    interface in, out;
    bool digital = false;          // admitted by the gate-level simulator
    bool metric = false;           // has a unit-cell side profile
    cut_role cut = cut_role::none;
    atom_profile profile{{'B'}};
    term_ptr body;                 // concealed atoms keep their defining term
    std::array<slot, 4> sides{};   // metric: s0 left, s1 top, s2 right, s3 bottom
    std::vector<int> in_sides, out_sides; // metric flow, in interface order
};

class registry {
public:
    registry(); // built-in atoms
    const atom_info* find(std::string_view name) const;
    const atom_info& at(std::string_view name) const; // throws on unknown atom
    void add(atom_info info);                          // throws on duplicate
    std::vector<std::string> names() const;

private:
    std::map<std::string, atom_info, std::less<>> atoms_;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, int line, int col);
    int line, col;
};

// parses a program: zero or more "name := term ;" definitions (registered as
// concealed atoms) followed by one term; counts are desugared into clones
term_ptr parse_program(std::string_view text, registry& reg);
term_ptr parse_term(std::string_view text, const registry& reg); // no definitions

std::string print(const term_ptr& t); // minimal parentheses; parse(print(t)) == t

interface in_of(const term_ptr& t, const registry& reg);
interface out_of(const term_ptr& t, const registry& reg);

// swaps Up with Down and Set with Off throughout
term_ptr complement(const term_ptr& t);

// defined for terms of the shape produced by the lane constructors
term_ptr pre_of(const term_ptr& t);
term_ptr suc_of(const term_ptr& t);

} // namespace akton

#pragma once
#include "akton/interface.hpp"
#include "akton/term.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace akton {

class metric_error : public std::runtime_error {
public:
    explicit metric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// gap trimming; the trimmed interface is the plug of a side
interface atrim(interface i); // drops leading gaps
interface btrim(interface i); // drops trailing gaps
interface trim(interface i);

// signed first-pin alignment between two facing sides; throws when the
// trimmed profiles differ
int plug_offset(const interface& out, const interface& in);

// unit-cell side occupancy, s0 left then clockwise; throws for atoms
// without a metric cell
std::array<slot, 4> atom_sides(const std::string& name, const registry& reg);

inline term_ptr tilt_left(const term_ptr& t) { return make_tilt(t, 3); }
inline term_ptr tilt_right(const term_ptr& t) { return make_tilt(t, 1); }

struct grid_cell {
    std::string atom;
    int rot = 0; // clockwise quarter turns
    bool operator==(const grid_cell&) const = default;
};

struct layout_grid {
    int rows = 0, cols = 0;
    std::map<std::pair<int, int>, grid_cell> cells; // sparse, (row, col)
    bool operator==(const layout_grid&) const = default;
};

// slot a placed cell shows toward a global side
slot cell_side(const grid_cell& c, int side, const registry& reg);

// full side reading of the bounding box; holes read as gaps; sides 0/2 are
// read top to bottom, sides 1/3 left to right
interface grid_side(const layout_grid& g, int side, const registry& reg);

// places a metric term on the unit grid
layout_grid layout(const term_ptr& t, const registry& reg);

// alignment offset between the facing sides of x > y; throws on mismatch
int metric_check(const term_ptr& x, const term_ptr& y, const registry& reg);

// adjacency violations between touching cells; empty for a sound layout
std::vector<std::string> grid_faults(const layout_grid& g, const registry& reg);

// strip builders
term_ptr metric_multiple_link(int i, char kind);             // 's', 'l', 'r'
term_ptr metric_multiple_fork(int i, std::string_view kind); // "ls", "sr"
term_ptr metric_multiple_join(int i, std::string_view kind); // "ls", "sr"

std::string render_ascii(const layout_grid& g, const registry& reg);
std::string render_svg(const layout_grid& g, const registry& reg);

} // namespace akton

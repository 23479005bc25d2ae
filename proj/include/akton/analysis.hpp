#pragma once
#include "akton/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace akton {

// strict, table-driven sorting of the tree exactly as written
sort sort_of(const term_ptr& t, const registry& reg); // throws undefined_composition
std::optional<sort> try_sort_of(const term_ptr& t, const registry& reg);

// head/tail layer: Entry/Up/Set-likes collapse to H, Exit/Down/Off-likes to T
sort fundamental_sort_of(const term_ptr& t, const registry& reg);

enum class cut_family : std::uint8_t { crossing, cycle, crosslink, twin };
enum class twist_dir : std::uint8_t { none, left, right };

// one cut occurrence; ordinal distinguishes the openings of a concealed atom
struct occurrence {
    const term* node = nullptr;
    int ordinal = 0;
    bool operator==(const occurrence&) const = default;
};

struct cut_pair {
    occurrence tail; // Down-like or Off-like: consumes the wire
    occurrence head; // Up-like or Set-like: re-emits it
    bool spatial = true;
    cut_family family = cut_family::crossing;
    twist_dir twist = twist_dir::none;
    std::string label;
};

struct cut_bindings {
    std::vector<cut_pair> pairs;
};

class bind_error : public std::runtime_error {
public:
    enum kind_t { unmatched, ambiguous };
    bind_error(kind_t k, const std::string& msg);
    kind_t kind;
};

struct check_issue {
    std::string path; // dot path from the root, "" for the whole term
    std::string message;
};

struct check_report {
    std::optional<sort> strict;   // table composition of the tree as written
    std::optional<sort> analyzed; // arrangement-derived sort (tolerant)
    std::vector<check_issue> issues;
    std::vector<occurrence> open_cuts; // pending openings; legal for non-closed sorts
    bool ok() const { return issues.empty() && (strict || analyzed); }
    sort best() const; // strict if present, else analyzed; throws when neither
};

check_report check(const term_ptr& t, const registry& reg);

// pairs every cut opening; throws bind_error when openings stay open,
// group sizes disagree, or a pairing is ambiguous
cut_bindings bind_cuts(const term_ptr& t, const registry& reg);

// registers a new atom hiding the given term behind a single node
void conceal(registry& reg, const std::string& name, const term_ptr& body);

} // namespace akton

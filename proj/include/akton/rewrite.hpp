#pragma once

#include "akton/term.hpp"

#include <stdexcept>
#include <string>

namespace akton {

// dependency-preserving replacement rules over the term tree
enum class rule_family { link, expansion, associativity, distributivity, connectivity };
enum class rule_dir { forward, backward };

struct rewrite_rule {
    rule_family family = rule_family::link;
    int variant = 1; // 1 or 2, the two rows of each family
    rule_dir dir = rule_dir::forward;
};

// "link.2:bwd", "assoc", "dist.1" ...
rewrite_rule parse_rule(const std::string& text);
std::string rule_name(const rewrite_rule& r);

struct no_match : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct constraint_violated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// path walks the tree: "0" left operand, "1" right, dots between levels,
// "" is the whole term; with supplies the inserted term where a rule needs one
term_ptr apply(const rewrite_rule& rule, const term_ptr& t,
               const std::string& path, const registry& reg,
               const term_ptr& with = nullptr);

term_ptr subterm_at(const term_ptr& t, const std::string& path);

// rotate every Next and Juxta chain into right-nested shape
term_ptr normalize_assoc(const term_ptr& t);

term_ptr multiple_link(int n);
term_ptr multiple_fork(int n, char handedness); // 'l' or 'r'
term_ptr multiple_join(int n, char handedness);

} // namespace akton

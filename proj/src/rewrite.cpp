#include "akton/rewrite.hpp"

#include "akton/analysis.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace akton {

namespace {

std::string dir_suffix(rule_dir d) {
    return d == rule_dir::forward ? "" : ":bwd";
}

term_ptr child(const term_ptr& t, char which, const std::string& path) {
    if (t->kind == term_kind::tilt) {
        if (which == '0') return t->a;
        throw no_match("no subterm at path " + path);
    }
    if (t->kind != term_kind::next && t->kind != term_kind::juxta)
        throw no_match("no subterm at path " + path);
    return which == '0' ? t->a : t->b;
}

term_ptr rebuild(const term_ptr& t, char which, const term_ptr& repl) {
    if (t->kind == term_kind::tilt) return make_tilt(repl, t->turns);
    term_ptr a = which == '0' ? repl : t->a;
    term_ptr b = which == '0' ? t->b : repl;
    return t->kind == term_kind::next ? make_next(a, b) : make_juxta(a, b);
}

void need_shape(bool ok, const std::string& what) {
    if (!ok) throw no_match("subterm does not have the shape " + what);
}

void need_with(const term_ptr& with, const char* rule) {
    if (!with)
        throw std::invalid_argument(std::string(rule) +
                                    " inserts a term and needs one supplied");
}

void need_eq(const interface& a, const interface& b, const std::string& what) {
    if (a != b)
        throw constraint_violated(what + " fails: " + to_string(a) + " vs " +
                                  to_string(b));
}

void need_cs(const term_ptr& y, const registry& reg) {
    check_report rep = check(y, reg);
    if (!rep.ok() || rep.best() != sort::CS)
        throw constraint_violated("inserted term is not a closed system");
}

bool is_next(const term_ptr& t) { return t->kind == term_kind::next; }
bool is_juxta(const term_ptr& t) { return t->kind == term_kind::juxta; }

// the neutral element for the link rules: a stack of bare Link lanes
bool is_link_stack(const term_ptr& t) {
    if (t->kind == term_kind::atom) return t->atom == "Link";
    if (t->kind == term_kind::juxta)
        return is_link_stack(t->a) && is_link_stack(t->b);
    return false;
}

term_ptr apply_at(const rewrite_rule& r, const term_ptr& t, const registry& reg,
                  const term_ptr& with) {
    bool fwd = r.dir == rule_dir::forward;
    switch (r.family) {
    case rule_family::link:
        if (fwd) {
            need_with(with, "link rule");
            if (r.variant == 1) {
                need_eq(in_of(with, reg), in_of(t, reg), "in(y) = in(x)");
                return make_next(with, t);
            }
            need_eq(out_of(with, reg), out_of(t, reg), "out(y) = out(x)");
            return make_next(t, with);
        }
        need_shape(is_next(t), "(y > x)");
        if (r.variant == 1) {
            need_shape(is_link_stack(t->a), "(links > x)");
            need_eq(in_of(t->a, reg), in_of(t->b, reg), "in(y) = in(x)");
            return t->b;
        }
        need_shape(is_link_stack(t->b), "(x > links)");
        need_eq(out_of(t->b, reg), out_of(t->a, reg), "out(y) = out(x)");
        return t->a;

    case rule_family::expansion:
        if (fwd) {
            term_ptr y = with ? with : make_atom("CS");
            need_cs(y, reg);
            return r.variant == 1 ? make_juxta(y, t) : make_juxta(t, y);
        }
        need_shape(is_juxta(t), "(y/x)");
        if (r.variant == 1) {
            need_cs(t->a, reg);
            return t->b;
        }
        need_cs(t->b, reg);
        return t->a;

    case rule_family::associativity: {
        auto is = r.variant == 1 ? is_next : is_juxta;
        auto mk = r.variant == 1 ? make_next : make_juxta;
        const char* shape = r.variant == 1 ? "((x > y) > z)" : "((x/y)/z)";
        if (fwd) {
            need_shape(is(t) && is(t->a), shape);
            return mk(t->a->a, mk(t->a->b, t->b));
        }
        need_shape(is(t) && is(t->b),
                   r.variant == 1 ? "(x > (y > z))" : "(x/(y/z))");
        return mk(mk(t->a, t->b->a), t->b->b);
    }

    case rule_family::distributivity:
        if (!fwd) throw no_match("distributivity rules run forward only");
        if (r.variant == 1) {
            need_shape(is_juxta(t) && is_next(t->a) && is_next(t->b),
                       "((w > x)/(y > z))");
            return make_next(make_juxta(t->a->a, t->b->a),
                             make_juxta(t->a->b, t->b->b));
        }
        need_shape(is_next(t) && is_juxta(t->a) && is_juxta(t->b),
                   "(w/y > x/z)");
        need_eq(out_of(t->a->a, reg), in_of(t->b->a, reg), "out(w) = in(x)");
        return make_juxta(make_next(t->a->a, t->b->a),
                          make_next(t->a->b, t->b->b));

    case rule_family::connectivity:
        if (fwd) {
            need_shape(is_juxta(t) && is_next(t->a) && is_next(t->b),
                       "((w > x)/(y > z))");
            term_ptr w = t->a->a, x = t->a->b, y = t->b->a, z = t->b->b;
            if (r.variant == 1) {
                need_eq(out_of(x, reg), {}, "out(x) = ()");
                need_eq(in_of(y, reg), {}, "in(y) = ()");
                return make_next(make_next(w, make_juxta(x, y)), z);
            }
            need_eq(in_of(w, reg), {}, "in(w) = ()");
            need_eq(out_of(z, reg), {}, "out(z) = ()");
            return make_next(make_next(y, make_juxta(w, z)), x);
        }
        need_shape(is_next(t) && is_next(t->a) && is_juxta(t->a->b),
                   r.variant == 1 ? "(w > x/y > z)" : "(y > w/z > x)");
        if (r.variant == 1) {
            term_ptr w = t->a->a, x = t->a->b->a, y = t->a->b->b, z = t->b;
            need_eq(out_of(x, reg), {}, "out(x) = ()");
            need_eq(in_of(y, reg), {}, "in(y) = ()");
            return make_juxta(make_next(w, x), make_next(y, z));
        }
        term_ptr y = t->a->a, w = t->a->b->a, z = t->a->b->b, x = t->b;
        need_eq(in_of(w, reg), {}, "in(w) = ()");
        need_eq(out_of(z, reg), {}, "out(z) = ()");
        return make_juxta(make_next(w, x), make_next(y, z));
    }
    throw no_match("unknown rule");
}

} // namespace

term_ptr subterm_at(const term_ptr& t, const std::string& path) {
    term_ptr cur = t;
    for (std::size_t i = 0; i < path.size(); ++i) {
        char c = path[i];
        if (c == '.') continue;
        if (c != '0' && c != '1')
            throw no_match("path steps must be 0 or 1, got '" +
                           std::string(1, c) + "'");
        cur = child(cur, c, path.substr(0, i + 1));
    }
    return cur;
}

term_ptr apply(const rewrite_rule& rule, const term_ptr& t,
               const std::string& path, const registry& reg,
               const term_ptr& with) {
    std::function<term_ptr(const term_ptr&, std::size_t)> go =
        [&](const term_ptr& cur, std::size_t at) -> term_ptr {
        while (at < path.size() && path[at] == '.') ++at;
        if (at == path.size()) return apply_at(rule, cur, reg, with);
        char c = path[at];
        if (c != '0' && c != '1')
            throw no_match("path steps must be 0 or 1, got '" +
                           std::string(1, c) + "'");
        return rebuild(cur, c, go(child(cur, c, path.substr(0, at + 1)), at + 1));
    };
    term_ptr out = go(t, 0);
    // a legal replacement never breaks wiring that was sound before, and
    // never changes which cut openings are still pending (removing one half
    // of a bound pair would silently drop a dependency)
    check_report before = check(t, reg);
    check_report after = check(out, reg);
    if (before.issues.empty() && !after.issues.empty())
        throw constraint_violated(
            "replacement would break a seam elsewhere in the term");
    auto pending = [](const check_report& rep) {
        std::vector<std::string> v;
        for (auto& o : rep.open_cuts) {
            std::string s = o.node->atom;
            if (!o.node->label.empty()) s += "." + o.node->label;
            v.push_back(s);
        }
        std::sort(v.begin(), v.end());
        return v;
    };
    if (pending(before) != pending(after))
        throw constraint_violated(
            "replacement changes the pending cut openings of the term");
    return out;
}

rewrite_rule parse_rule(const std::string& text) {
    std::string body = text, dir;
    if (auto colon = body.find(':'); colon != std::string::npos) {
        dir = body.substr(colon + 1);
        body = body.substr(0, colon);
    }
    std::string family = body;
    int variant = 1;
    if (auto dot = body.find('.'); dot != std::string::npos) {
        family = body.substr(0, dot);
        std::string v = body.substr(dot + 1);
        if (v != "1" && v != "2")
            throw std::invalid_argument("rule variant must be 1 or 2: " + text);
        variant = v == "2" ? 2 : 1;
    }
    rewrite_rule r;
    r.variant = variant;
    if (family == "link") r.family = rule_family::link;
    else if (family == "expansion" || family == "expand")
        r.family = rule_family::expansion;
    else if (family == "associativity" || family == "assoc")
        r.family = rule_family::associativity;
    else if (family == "distributivity" || family == "dist")
        r.family = rule_family::distributivity;
    else if (family == "connectivity" || family == "conn")
        r.family = rule_family::connectivity;
    else throw std::invalid_argument("unknown rule family: " + text);
    if (dir.empty() || dir == "fwd") r.dir = rule_dir::forward;
    else if (dir == "bwd") r.dir = rule_dir::backward;
    else throw std::invalid_argument("rule direction must be fwd or bwd: " + text);
    return r;
}

std::string rule_name(const rewrite_rule& r) {
    const char* fam = nullptr;
    switch (r.family) {
    case rule_family::link: fam = "link"; break;
    case rule_family::expansion: fam = "expansion"; break;
    case rule_family::associativity: fam = "associativity"; break;
    case rule_family::distributivity: fam = "distributivity"; break;
    case rule_family::connectivity: fam = "connectivity"; break;
    }
    return std::string(fam) + "." + std::to_string(r.variant) + dir_suffix(r.dir);
}

term_ptr normalize_assoc(const term_ptr& t) {
    switch (t->kind) {
    case term_kind::atom: return t;
    case term_kind::tilt: return make_tilt(normalize_assoc(t->a), t->turns);
    default: break;
    }
    std::vector<term_ptr> items;
    std::function<void(const term_ptr&)> flat = [&](const term_ptr& cur) {
        if (cur->kind == t->kind) {
            flat(cur->a);
            flat(cur->b);
        } else {
            items.push_back(normalize_assoc(cur));
        }
    };
    flat(t);
    auto mk = t->kind == term_kind::next ? make_next : make_juxta;
    term_ptr r = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) r = mk(items[i], r);
    return r;
}

term_ptr multiple_link(int n) {
    if (n < 1) throw std::invalid_argument("a link column needs at least one lane");
    term_ptr t = make_atom("Link");
    for (int i = 1; i < n; ++i) t = make_juxta(t, make_atom("Link"));
    return t;
}

namespace {

term_ptr lane_atom(const char* n) { return make_atom(n); }

} // namespace

term_ptr multiple_fork(int n, char handedness) {
    if (n < 1) throw std::invalid_argument("a fork tree needs at least one lane");
    if (handedness != 'l' && handedness != 'r')
        throw std::invalid_argument("handedness is l or r");
    bool left = handedness == 'l';
    auto head = [&] { // Fork > Down/Link, or Fork > Link/Down
        term_ptr cross = left
            ? make_juxta(lane_atom("Down"), lane_atom("Link"))
            : make_juxta(lane_atom("Link"), lane_atom("Down"));
        return make_next(lane_atom("Fork"), cross);
    };
    term_ptr t = make_next(head(), left
        ? make_juxta(lane_atom("Link"), lane_atom("Up"))
        : make_juxta(lane_atom("Up"), lane_atom("Link")));
    for (int i = 1; i < n; ++i) {
        term_ptr pre = pre_of(t), suc = suc_of(t);
        t = left ? make_next(make_juxta(pre, head()),
                             make_juxta(make_juxta(lane_atom("Link"), suc),
                                        lane_atom("Up")))
                 : make_next(make_juxta(pre, head()),
                             make_juxta(make_juxta(lane_atom("Up"), suc),
                                        lane_atom("Link")));
    }
    return t;
}

term_ptr multiple_join(int n, char handedness) {
    if (n < 1) throw std::invalid_argument("a join tree needs at least one lane");
    if (handedness != 'l' && handedness != 'r')
        throw std::invalid_argument("handedness is l or r");
    bool left = handedness == 'l';
    auto tail = [&] { // Link/Up > Join, or Up/Link > Join
        term_ptr cross = left
            ? make_juxta(lane_atom("Link"), lane_atom("Up"))
            : make_juxta(lane_atom("Up"), lane_atom("Link"));
        return make_next(cross, lane_atom("Join"));
    };
    term_ptr t = make_next(left
        ? make_juxta(lane_atom("Down"), lane_atom("Link"))
        : make_juxta(lane_atom("Link"), lane_atom("Down")), tail());
    for (int i = 1; i < n; ++i) {
        term_ptr pre = pre_of(t), suc = suc_of(t);
        t = left ? make_next(make_juxta(make_juxta(lane_atom("Down"), pre),
                                        lane_atom("Link")),
                             make_juxta(suc, tail()))
                 : make_next(make_juxta(make_juxta(lane_atom("Link"), pre),
                                        lane_atom("Down")),
                             make_juxta(suc, tail()));
    }
    return t;
}

} // namespace akton

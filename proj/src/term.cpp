#include "akton/term.hpp"
#include "akton/tables_data.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace akton {

term_ptr make_atom(std::string name, std::string label) {
    auto t = std::make_shared<term>();
    t->kind = term_kind::atom;
    t->atom = std::move(name);
    t->label = std::move(label);
    return t;
}

term_ptr make_next(term_ptr x, term_ptr y) {
    auto t = std::make_shared<term>();
    t->kind = term_kind::next;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
}

term_ptr make_juxta(term_ptr x, term_ptr y) {
    auto t = std::make_shared<term>();
    t->kind = term_kind::juxta;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
}

term_ptr make_tilt(term_ptr x, int turns) {
    turns = ((turns % 4) + 4) % 4;
    if (x->kind == term_kind::tilt) {
        turns = (turns + x->turns) % 4;
        x = x->a;
    }
    if (turns == 0) return x;
    auto t = std::make_shared<term>();
    t->kind = term_kind::tilt;
    t->turns = turns;
    t->a = std::move(x);
    return t;
}

bool equal(const term_ptr& x, const term_ptr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
    case term_kind::atom: return x->atom == y->atom && x->label == y->label;
    case term_kind::tilt: return x->turns == y->turns && equal(x->a, y->a);
    default: return equal(x->a, y->a) && equal(x->b, y->b);
    }
}

term_ptr clone(const term_ptr& t) {
    switch (t->kind) {
    case term_kind::atom: return make_atom(t->atom, t->label);
    case term_kind::tilt: return make_tilt(clone(t->a), t->turns);
    case term_kind::next: return make_next(clone(t->a), clone(t->b));
    default: return make_juxta(clone(t->a), clone(t->b));
    }
}

// ---------------------------------------------------------------------------
// registry

namespace {

std::array<slot, 4> parse_sides(std::string_view s) {
    std::array<slot, 4> r{};
    for (int i = 0; i < 4; i++) r[i] = (s[i] == 'P') ? slot::pin : slot::gap;
    return r;
}

std::vector<int> parse_side_list(std::string_view s) {
    std::vector<int> r;
    if (s == "-") return r;
    for (char c : s)
        if (c >= '0' && c <= '3') r.push_back(c - '0');
    return r;
}

atom_profile prof(std::string_view letters) {
    atom_profile p;
    for (char c : letters) p.push_back({c, 1});
    return p;
}

} // namespace

registry::registry() {
    auto add_core = [&](std::string name, sort s, int in, int out, bool digital,
                        cut_role cut, std::string_view profile) {
        atom_info a;
        a.name = std::move(name);
        a.s = s;
        a.in = pins(in);
        a.out = pins(out);
        a.digital = digital;
        a.cut = cut;
        a.profile = prof(profile);
        atoms_[a.name] = std::move(a);
    };
    add_core("Entry", sort::E, 0, 1, true, cut_role::none, "B");
    add_core("Exit", sort::X, 1, 0, true, cut_role::none, "B");
    add_core("Up", sort::U, 0, 1, true, cut_role::head_spatial, "U");
    add_core("Down", sort::D, 1, 0, true, cut_role::tail_spatial, "D");
    add_core("Set", sort::S, 0, 1, true, cut_role::head_planar, "S");
    add_core("Off", sort::O, 1, 0, true, cut_role::tail_planar, "O");
    add_core("Fork", sort::B, 1, 2, true, cut_role::none, "B");
    add_core("Join", sort::B, 2, 1, false, cut_role::none, "B");
    add_core("Link", sort::B, 1, 1, false, cut_role::none, "B");
    add_core("CS", sort::CS, 0, 0, true, cut_role::none, "");
    add_core("And", sort::B, 2, 1, true, cut_role::none, "B");
    add_core("Or", sort::B, 2, 1, true, cut_role::none, "B");
    add_core("Not", sort::B, 1, 1, true, cut_role::none, "B");
    add_core("Wire", sort::B, 1, 1, true, cut_role::none, "B");

    auto add_metric = [&](std::string name, sort s, int in, int out, cut_role cut,
                          std::string_view profile) {
        atom_info a;
        a.name = std::move(name);
        a.s = s;
        a.in = pins(in);
        a.out = pins(out);
        a.metric = true;
        a.cut = cut;
        a.profile = prof(profile);
        atoms_[a.name] = std::move(a);
    };
    add_metric("L_s", sort::B, 1, 1, cut_role::none, "B");
    add_metric("L_l", sort::B, 1, 1, cut_role::none, "B");
    add_metric("L_r", sort::B, 1, 1, cut_role::none, "B");
    add_metric("F_lr", sort::B, 1, 2, cut_role::none, "B");
    add_metric("F_ls", sort::B, 1, 2, cut_role::none, "B");
    add_metric("F_sr", sort::B, 1, 2, cut_role::none, "B");
    add_metric("J_lr", sort::B, 2, 1, cut_role::none, "B");
    add_metric("J_ls", sort::B, 2, 1, cut_role::none, "B");
    add_metric("J_sr", sort::B, 2, 1, cut_role::none, "B");
    add_metric("F_ld", sort::DB, 1, 1, cut_role::tail_spatial, "DB");
    add_metric("F_rd", sort::BD, 1, 1, cut_role::tail_spatial, "BD");
    add_metric("J_lu", sort::UB, 1, 1, cut_role::head_spatial, "UB");
    add_metric("J_ru", sort::BU, 1, 1, cut_role::head_spatial, "BU");

    // unit-cell side occupancy and flow sides
    std::istringstream in{std::string(tables::m5_sides)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string name, sides, ins, outs;
        if (!(ls >> name >> sides >> ins >> outs)) continue;
        auto it = atoms_.find(name);
        assert(it != atoms_.end());
        it->second.metric = true;
        it->second.sides = parse_sides(sides);
        it->second.in_sides = parse_side_list(ins);
        it->second.out_sides = parse_side_list(outs);
    }

    // grid realizations of the out-of-plane junction units
    auto at = [](const char* n) { return make_atom(n); };
    atoms_["F_ld"].body = make_next(
        at("F_ls"), make_juxta(make_tilt(at("Down"), 3),
                               make_next(at("L_l"), make_tilt(at("L_s"), 3))));
    atoms_["F_rd"].body = make_next(
        at("F_sr"), make_juxta(make_next(at("L_r"), make_tilt(at("L_s"), 1)),
                               make_tilt(at("Down"), 1)));
    atoms_["J_lu"].body = make_next(
        make_tilt(make_juxta(at("Up"), make_next(at("L_s"), at("L_l"))), 1), at("J_ls"));
    atoms_["J_ru"].body = make_next(
        make_tilt(make_juxta(make_next(at("L_s"), at("L_r")), at("Up")), 3), at("J_sr"));
}

const atom_info* registry::find(std::string_view name) const {
    auto it = atoms_.find(name);
    return it == atoms_.end() ? nullptr : &it->second;
}

const atom_info& registry::at(std::string_view name) const {
    if (auto* a = find(name)) return *a;
    throw std::runtime_error("unknown atom name '" + std::string(name) + "'");
}

void registry::add(atom_info info) {
    if (atoms_.count(info.name))
        throw std::runtime_error("atom name '" + info.name + "' is already registered");
    atoms_[info.name] = std::move(info);
}

std::vector<std::string> registry::names() const {
    std::vector<std::string> r;
    for (auto& [k, v] : atoms_) {
        (void)v;
        r.push_back(k);
    }
    return r;
}

// ---------------------------------------------------------------------------
// parser

parse_error::parse_error(const std::string& msg, int line_, int col_)
    : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(col_)),
      line(line_), col(col_) {}

namespace {

struct token {
    enum kind { ident, number, sym, end } k = end;
    std::string text;
    long value = 0;
    int line = 1, col = 1;
};

class lexer {
public:
    explicit lexer(std::string_view src) : src_(src) {
        buf_[0] = scan();
        buf_[1] = scan();
    }
    const token& peek(int n = 0) const { return buf_[n]; }
    token take() {
        token t = buf_[0];
        buf_[0] = buf_[1];
        buf_[1] = scan();
        return t;
    }

private:
    token scan() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') pos_++;
            } else if (c == '\n') {
                pos_++;
                line_++;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                pos_++;
                col_++;
            } else {
                break;
            }
        }
        token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.k = token::number;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                t.text += take_char();
            t.value = std::stol(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.k = token::ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                t.text += take_char();
            return t;
        }
        t.k = token::sym;
        if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            t.text = ":=";
            take_char();
            take_char();
            return t;
        }
        t.text = take_char();
        return t;
    }
    char take_char() {
        col_++;
        return src_[pos_++];
    }
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    token buf_[2];
};

class parser {
public:
    parser(std::string_view src, const registry& reg) : lx_(src), reg_(reg) {}

    // empty result only for pure zero-count expressions
    term_ptr expr() {
        term_ptr acc = juxtas();
        while (is_sym(">")) {
            lx_.take();
            term_ptr rhs = juxtas();
            acc = !acc ? rhs : (!rhs ? acc : make_next(acc, rhs));
        }
        return acc;
    }

    term_ptr whole_expr() {
        token start = lx_.peek();
        term_ptr t = expr();
        if (!t) throw parse_error("empty term", start.line, start.col);
        return t;
    }

    bool is_sym(std::string_view s) const {
        return lx_.peek().k == token::sym && lx_.peek().text == s;
    }
    bool at_definition() const {
        return lx_.peek().k == token::ident && lx_.peek(1).k == token::sym &&
               lx_.peek(1).text == ":=";
    }
    bool at_end() const { return lx_.peek().k == token::end; }
    token take() { return lx_.take(); }
    void expect_sym(std::string_view s) {
        if (!is_sym(s)) fail("expected '" + std::string(s) + "'");
        lx_.take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const token& t = lx_.peek();
        std::string got = t.k == token::end ? "end of input" : "'" + t.text + "'";
        throw parse_error(msg + ", got " + got, t.line, t.col);
    }

private:
    term_ptr juxtas() {
        term_ptr acc = counted();
        while (is_sym("/")) {
            lx_.take();
            term_ptr rhs = counted();
            acc = !acc ? rhs : (!rhs ? acc : make_juxta(acc, rhs));
        }
        return acc;
    }

    term_ptr counted() {
        if (lx_.peek().k == token::number) {
            token n = lx_.take();
            expect_sym("*");
            term_ptr body = counted();
            if (!body) fail("count applied to an empty term");
            term_ptr acc;
            for (long i = 0; i < n.value; i++)
                acc = acc ? make_next(acc, clone(body)) : body;
            return acc; // empty when n == 0
        }
        term_ptr t = primary();
        while (is_sym("^")) {
            lx_.take();
            if (lx_.peek().k != token::number) fail("expected a count");
            token n = lx_.take();
            term_ptr acc;
            for (long i = 0; i < n.value; i++)
                acc = acc ? make_juxta(acc, clone(t)) : t;
            t = acc;
        }
        return t;
    }

    term_ptr primary() {
        if (is_sym("(")) {
            token open = lx_.take();
            term_ptr t = expr();
            expect_sym(")");
            if (!t) throw parse_error("empty term", open.line, open.col);
            return t;
        }
        if (lx_.peek().k != token::ident) fail("expected a term");
        token id = lx_.take();
        if ((id.text == "tl" || id.text == "tr") && is_sym("(")) {
            lx_.take();
            term_ptr t = expr();
            expect_sym(")");
            if (!t) throw parse_error("empty term", id.line, id.col);
            check_metric(t, id);
            return make_tilt(t, id.text == "tr" ? 1 : 3);
        }
        std::string label;
        if (is_sym(".")) {
            lx_.take();
            const token& l = lx_.peek();
            if (l.k != token::ident && l.k != token::number) fail("expected a label");
            label = lx_.take().text;
        }
        if (!reg_.find(id.text))
            throw parse_error("unknown atom name '" + id.text + "'", id.line, id.col);
        return make_atom(id.text, label);
    }

    void check_metric(const term_ptr& t, const token& at) const {
        switch (t->kind) {
        case term_kind::atom:
            if (!reg_.at(t->atom).metric)
                throw parse_error("tilt applied to non-metric atom '" + t->atom + "'", at.line,
                                  at.col);
            return;
        case term_kind::tilt: check_metric(t->a, at); return;
        default:
            check_metric(t->a, at);
            check_metric(t->b, at);
        }
    }

    lexer lx_;
    const registry& reg_;
};

} // namespace

term_ptr parse_term(std::string_view text, const registry& reg) {
    parser p(text, reg);
    term_ptr t = p.whole_expr();
    if (p.is_sym(";")) p.take();
    if (!p.at_end()) p.fail("expected end of input");
    return t;
}

// declared in analysis.hpp; registers a concealed atom
void conceal(registry& reg, const std::string& name, const term_ptr& body);

term_ptr parse_program(std::string_view text, registry& reg) {
    parser p(text, reg);
    while (p.at_definition()) {
        token id = p.take();
        p.take(); // :=
        term_ptr body = p.whole_expr();
        p.expect_sym(";");
        try {
            conceal(reg, id.text, body);
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error(e.what(), id.line, id.col);
        }
    }
    term_ptr t = p.whole_expr();
    if (p.is_sym(";")) p.take();
    if (!p.at_end()) p.fail("expected end of input");
    return t;
}

// ---------------------------------------------------------------------------
// printer

namespace {

void print_rec(const term_ptr& t, int parent_prec, bool right_child, std::string& out) {
    switch (t->kind) {
    case term_kind::atom:
        out += t->atom;
        if (!t->label.empty()) {
            out += '.';
            out += t->label;
        }
        return;
    case term_kind::tilt: {
        out += (t->turns == 1) ? "tr(" : "tl(";
        if (t->turns == 2) {
            out += "tl(";
            print_rec(t->a, 0, false, out);
            out += ')';
        } else {
            print_rec(t->a, 0, false, out);
        }
        out += ')';
        return;
    }
    case term_kind::next:
    case term_kind::juxta: {
        int prec = (t->kind == term_kind::next) ? 1 : 2;
        bool parens = prec < parent_prec || (prec == parent_prec && right_child);
        if (parens) out += '(';
        print_rec(t->a, prec, false, out);
        out += (t->kind == term_kind::next) ? " > " : "/";
        print_rec(t->b, prec, true, out);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace

std::string print(const term_ptr& t) {
    std::string out;
    print_rec(t, 0, false, out);
    return out;
}

// ---------------------------------------------------------------------------
// interfaces

interface in_of(const term_ptr& t, const registry& reg) {
    switch (t->kind) {
    case term_kind::atom: return reg.at(t->atom).in;
    case term_kind::next: return in_of(t->a, reg);
    case term_kind::juxta: return concat(in_of(t->a, reg), in_of(t->b, reg));
    default: return in_of(t->a, reg);
    }
}

interface out_of(const term_ptr& t, const registry& reg) {
    switch (t->kind) {
    case term_kind::atom: return reg.at(t->atom).out;
    case term_kind::next: return out_of(t->b, reg);
    case term_kind::juxta: return concat(out_of(t->a, reg), out_of(t->b, reg));
    default: return out_of(t->a, reg);
    }
}

term_ptr complement(const term_ptr& t) {
    switch (t->kind) {
    case term_kind::atom: {
        std::string n = t->atom;
        if (n == "Up") n = "Down";
        else if (n == "Down") n = "Up";
        else if (n == "Set") n = "Off";
        else if (n == "Off") n = "Set";
        return make_atom(n, t->label);
    }
    case term_kind::tilt: return make_tilt(complement(t->a), t->turns);
    case term_kind::next: return make_next(complement(t->a), complement(t->b));
    default: return make_juxta(complement(t->a), complement(t->b));
    }
}

term_ptr pre_of(const term_ptr& t) {
    if (t->kind != term_kind::next)
        throw std::runtime_error("term has no serial decomposition");
    return t->a;
}

term_ptr suc_of(const term_ptr& t) {
    if (t->kind != term_kind::next)
        throw std::runtime_error("term has no serial decomposition");
    return t->b;
}

} // namespace akton

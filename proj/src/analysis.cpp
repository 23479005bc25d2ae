#include "akton/analysis.hpp"
#include "akton/interface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace akton {

namespace {

sort strict_rec(const term_ptr& t, const registry& reg, const sort_system& sys) {
    switch (t->kind) {
    case term_kind::atom: return reg.at(t->atom).s;
    case term_kind::tilt: return strict_rec(t->a, reg, sys);
    case term_kind::next:
        return sys.compose(strict_rec(t->a, reg, sys), strict_rec(t->b, reg, sys),
                           relation::next);
    case term_kind::juxta:
        return sys.compose(strict_rec(t->a, reg, sys), strict_rec(t->b, reg, sys),
                           relation::juxta);
    }
    throw std::logic_error("bad term kind");
}

sort to_fundamental(sort s) {
    switch (s) {
    case sort::E: case sort::U: case sort::S: return sort::H;
    case sort::X: case sort::D: case sort::O: return sort::T;
    case sort::CS: return sort::CS;
    default: return sort::B;
    }
}

sort fundamental_rec(const term_ptr& t, const registry& reg, const sort_system& sys) {
    switch (t->kind) {
    case term_kind::atom: return to_fundamental(reg.at(t->atom).s);
    case term_kind::tilt: return fundamental_rec(t->a, reg, sys);
    case term_kind::next:
        return sys.compose_fundamental(fundamental_rec(t->a, reg, sys),
                                       fundamental_rec(t->b, reg, sys), relation::next);
    case term_kind::juxta:
        return sys.compose_fundamental(fundamental_rec(t->a, reg, sys),
                                       fundamental_rec(t->b, reg, sys), relation::juxta);
    }
    throw std::logic_error("bad term kind");
}

// ---- cut arrangement profiles -------------------------------------------
//
// A profile lists, top to bottom, the horizontal bands of a term: bulk bands
// (wired content) and cut bands (pending cut openings of one letter).

constexpr bool spatial_letter(char c) { return c == 'U' || c == 'D'; }
constexpr bool planar_letter(char c) { return c == 'S' || c == 'O'; }
constexpr bool head_letter(char c) { return c == 'U' || c == 'S'; }

bool planar_partners(char a, char b) {
    return (a == 'S' && b == 'O') || (a == 'O' && b == 'S');
}
bool spatial_partners(char a, char b) {
    return (a == 'U' && b == 'D') || (a == 'D' && b == 'U');
}

struct band {
    char letter; // 'B' for bulk
    std::vector<occurrence> atoms; // top to bottom, empty for bulk
    bool bulk() const { return letter == 'B'; }
};

struct profile {
    std::vector<band> bands;
    int bulk_index() const {
        for (std::size_t i = 0; i < bands.size(); ++i)
            if (bands[i].bulk()) return static_cast<int>(i);
        return -1;
    }
};

enum polarity { above = 0, below = 1, pure = 2 };

polarity pol_of(const profile& p, int idx) {
    int b = p.bulk_index();
    if (b < 0) return pure;
    return idx < b ? above : below;
}

std::string letters_of(const profile& p) {
    std::string s;
    for (auto& b : p.bands) s.push_back(b.letter);
    return s;
}

struct binder {
    const registry& reg;
    std::vector<cut_pair> pairs;
    std::vector<check_issue> faults;
    std::map<std::string, std::vector<occurrence>> label_tails, label_heads;
    std::map<std::string, bool> label_spatial;

    explicit binder(const registry& r) : reg(r) {}

    void fault(const std::string& path, std::string msg) {
        faults.push_back({path, std::move(msg)});
    }

    void pair_up(occurrence tail, occurrence head, bool spatial, cut_family fam,
                 twist_dir twist = twist_dir::none, std::string label = {}) {
        pairs.push_back({tail, head, spatial, fam, twist, std::move(label)});
    }

    std::optional<profile> analyze(const term_ptr& t, const std::string& path);
    std::optional<profile> atom_profile(const term& t, const std::string& path);
    std::optional<profile> serial(profile x, profile y, const std::string& path);
    std::optional<profile> parallel(profile x, profile y, const std::string& path);
    bool normalize(profile& p, const std::string& path);
    bool valid_shape(const profile& p, const std::string& path);
};

std::optional<profile> binder::atom_profile(const term& t, const std::string& path) {
    const atom_info& info = reg.at(t.atom);
    // labels on ordinary atoms are plain names; only cut atoms bind through them
    if (!t.label.empty() && info.cut != cut_role::none) {
        bool spatial = info.cut == cut_role::head_spatial || info.cut == cut_role::tail_spatial;
        bool tail = info.cut == cut_role::tail_spatial || info.cut == cut_role::tail_planar;
        auto [it, fresh] = label_spatial.emplace(t.label, spatial);
        if (!fresh && it->second != spatial)
            fault(path, "label '" + t.label + "' mixes spatial and planar cuts");
        (tail ? label_tails : label_heads)[t.label].push_back({&t, 0});
        // a labelled opening is already resolved, the band behaves as bulk
        profile p;
        bool in_empty = info.in.empty(), out_empty = info.out.empty();
        if (!(in_empty && out_empty && info.profile.empty())) p.bands.push_back({'B', {}});
        return p;
    }
    profile p;
    int ordinal = 0;
    for (const profile_seg& seg : info.profile) {
        if (seg.letter == 'B') {
            p.bands.push_back({'B', {}});
        } else {
            band b{seg.letter, {}};
            for (int k = 0; k < seg.count; ++k) b.atoms.push_back({&t, ordinal++});
            p.bands.push_back(std::move(b));
        }
    }
    if (!normalize(p, path)) return std::nullopt;
    return p;
}

bool binder::normalize(profile& p, const std::string& path) {
    auto merge_adjacent = [&] {
        for (std::size_t i = 0; i + 1 < p.bands.size();) {
            if (p.bands[i].letter == p.bands[i + 1].letter) {
                auto& src = p.bands[i + 1].atoms;
                p.bands[i].atoms.insert(p.bands[i].atoms.end(), src.begin(), src.end());
                p.bands.erase(p.bands.begin() + i + 1);
            } else {
                ++i;
            }
        }
    };
    merge_adjacent();
    // an interior spatial band joins the same-letter band at the edge; the
    // crossing wire runs along the side of the bulk in between
    for (char letter : {'U', 'D'}) {
        for (;;) {
            std::size_t lead = 0;
            while (lead < p.bands.size() && !p.bands[lead].bulk()) ++lead;
            std::size_t trail = p.bands.size();
            while (trail > lead && !p.bands[trail - 1].bulk()) --trail;
            int interior = -1;
            for (std::size_t i = lead; i < trail; ++i)
                if (p.bands[i].letter == letter) { interior = static_cast<int>(i); break; }
            if (interior < 0) break;
            int edge = -1;
            bool edge_leading = false;
            for (std::size_t i = 0; i < lead; ++i)
                if (p.bands[i].letter == letter) { edge = static_cast<int>(i); edge_leading = true; }
            if (edge < 0)
                for (std::size_t i = trail; i < p.bands.size(); ++i)
                    if (p.bands[i].letter == letter) { edge = static_cast<int>(i); break; }
            if (edge < 0) {
                fault(path, "crossing band is walled in by wired content");
                return false;
            }
            auto atoms = std::move(p.bands[interior].atoms);
            p.bands.erase(p.bands.begin() + interior);
            if (edge > interior) --edge;
            auto& dst = p.bands[edge].atoms;
            if (edge_leading)
                dst.insert(dst.end(), atoms.begin(), atoms.end());
            else
                dst.insert(dst.begin(), atoms.begin(), atoms.end());
            merge_adjacent();
        }
    }
    return true;
}

bool binder::valid_shape(const profile& p, const std::string& path) {
    const std::string l = letters_of(p);
    auto cut = [&](std::size_t i) { return l[i] != 'B'; };
    bool ok = false;
    switch (l.size()) {
    case 0: ok = true; break;
    case 1: ok = true; break; // lone bulk or lone cut band
    case 2:
        ok = (l[0] == 'B') != (l[1] == 'B');
        break;
    case 3:
        if (l[1] == 'B' && cut(0) && cut(2))
            ok = planar_letter(l[0]) && planar_letter(l[2]);
        else if (l[0] == 'B' && cut(1) && cut(2))
            ok = spatial_letter(l[1]) != spatial_letter(l[2]);
        else if (l[2] == 'B' && cut(0) && cut(1))
            ok = spatial_letter(l[0]) != spatial_letter(l[1]);
        break;
    default: break;
    }
    if (!ok) fault(path, "cut openings do not form a sortable arrangement: " + l);
    return ok;
}

std::optional<profile> binder::serial(profile x, profile y, const std::string& path) {
    if (x.bands.empty()) return y;
    if (y.bands.empty()) return x;

    struct cand { int xi, yi; bool spatial; };
    std::vector<cand> cands;
    for (std::size_t xi = 0; xi < x.bands.size(); ++xi) {
        if (x.bands[xi].bulk()) continue;
        for (std::size_t yi = 0; yi < y.bands.size(); ++yi) {
            if (y.bands[yi].bulk()) continue;
            char a = x.bands[xi].letter, b = y.bands[yi].letter;
            polarity pa = pol_of(x, static_cast<int>(xi));
            polarity pb = pol_of(y, static_cast<int>(yi));
            // a band from a bulkless operand sits right at the seam and can
            // face either way; a crossing that dives and resurfaces with no
            // wired content at all has nowhere to run, so D>U stays apart
            bool opposite = (pa == above && pb == below) || (pa == below && pb == above);
            bool hit = false;
            if (planar_partners(a, b)) hit = pa == pb || pa == pure || pb == pure;
            else if (a == 'U' && b == 'D') hit = opposite || pa == pure || pb == pure;
            else if (a == 'D' && b == 'U') hit = opposite || ((pa == pure) != (pb == pure));
            if (hit) cands.push_back({static_cast<int>(xi), static_cast<int>(yi),
                                      spatial_letter(a)});
        }
    }
    std::map<int, int> xuse, yuse;
    for (auto& c : cands) { xuse[c.xi]++; yuse[c.yi]++; }
    for (auto& [_, n] : xuse)
        if (n > 1) { fault(path, "ambiguous cut pairing in serial composition"); return std::nullopt; }
    for (auto& [_, n] : yuse)
        if (n > 1) { fault(path, "ambiguous cut pairing in serial composition"); return std::nullopt; }

    std::set<int> xdone, ydone;
    for (auto& c : cands) {
        auto& A = x.bands[c.xi].atoms;
        auto& B = y.bands[c.yi].atoms;
        if (A.size() != B.size()) {
            fault(path, "cut groups pair with unequal sizes");
            return std::nullopt;
        }
        bool reversed = c.spatial && pol_of(x, c.xi) == below;
        char a = x.bands[c.xi].letter;
        cut_family fam = c.spatial ? cut_family::crossing : cut_family::cycle;
        for (std::size_t k = 0; k < A.size(); ++k) {
            const occurrence& xa = A[k];
            const occurrence& yb = B[reversed ? B.size() - 1 - k : k];
            if (head_letter(a)) pair_up(yb, xa, c.spatial, fam);
            else pair_up(xa, yb, c.spatial, fam);
        }
        xdone.insert(c.xi);
        ydone.insert(c.yi);
    }

    auto survivors = [&](const profile& p, const std::set<int>& done, polarity want) {
        std::vector<const band*> out;
        for (std::size_t i = 0; i < p.bands.size(); ++i)
            if (!p.bands[i].bulk() && !done.count(static_cast<int>(i)) &&
                pol_of(p, static_cast<int>(i)) == want)
                out.push_back(&p.bands[i]);
        return out;
    };
    bool x_bulk = x.bulk_index() >= 0, y_bulk = y.bulk_index() >= 0;
    auto xp = survivors(x, xdone, pure), yp = survivors(y, ydone, pure);
    // a pure planar band may ride across wired content: opening side first,
    // closing side last
    if (!xp.empty() || !yp.empty()) {
        if (!xp.empty() && yp.empty() && y_bulk && xp.size() == 1 &&
            xp[0]->letter == 'S' && survivors(y, ydone, above).empty() &&
            survivors(y, ydone, below).empty()) {
            profile r;
            r.bands.push_back(*xp[0]);
            return r;
        }
        if (!yp.empty() && xp.empty() && x_bulk && yp.size() == 1 &&
            yp[0]->letter == 'O' && survivors(x, xdone, above).empty() &&
            survivors(x, xdone, below).empty()) {
            profile r;
            r.bands.push_back(*yp[0]);
            return r;
        }
        if (!x_bulk && !y_bulk) {
            fault(path, "pending cut does not reach across the serial composition");
            return std::nullopt;
        }
    }

    auto xa = survivors(x, xdone, above), xb = survivors(x, xdone, below);
    auto ya = survivors(y, ydone, above), yb = survivors(y, ydone, below);
    bool from_x = !xa.empty() || !xb.empty();
    bool from_y = !ya.empty() || !yb.empty();
    if (from_x && from_y) {
        // both operands may leave openings only as a twin pair on one side
        bool one_side = (xa.empty() && ya.empty()) || (xb.empty() && yb.empty());
        if (!one_side) {
            fault(path, "pending cuts straddle both faces of a serial composition");
            return std::nullopt;
        }
        for (auto side : {std::pair{&xa, &ya}, std::pair{&xb, &yb}}) {
            bool sx = false, px = false, sy = false, py = false;
            for (auto* b : *side.first) (spatial_letter(b->letter) ? sx : px) = true;
            for (auto* b : *side.second) (spatial_letter(b->letter) ? sy : py) = true;
            if ((sx && sy) || (px && py)) {
                fault(path, "pending cuts of the same kind collide in serial composition");
                return std::nullopt;
            }
        }
    }

    // leftover bands from a bulkless operand settle next to the bulk, on
    // whichever face gives a sortable arrangement
    std::size_t mark = faults.size();
    for (bool pure_above : {true, false}) {
        profile r;
        for (auto* b : ya) r.bands.push_back(*b);
        for (auto* b : xa) r.bands.push_back(*b);
        if (pure_above)
            for (auto* list : {&xp, &yp})
                for (auto* b : *list) r.bands.push_back(*b);
        if (x_bulk || y_bulk) r.bands.push_back({'B', {}});
        if (!pure_above)
            for (auto* list : {&xp, &yp})
                for (auto* b : *list) r.bands.push_back(*b);
        for (auto* b : xb) r.bands.push_back(*b);
        for (auto* b : yb) r.bands.push_back(*b);
        if (normalize(r, path) && valid_shape(r, path)) {
            faults.resize(mark);
            return r;
        }
        bool last = !pure_above || (xp.empty() && yp.empty());
        if (last) return std::nullopt;
        faults.resize(mark);
    }
    return std::nullopt;
}

std::optional<profile> binder::parallel(profile x, profile y, const std::string& path) {
    // close cut bands meeting at the seam
    for (;;) {
        if (x.bands.empty() || y.bands.empty()) break;
        std::size_t xn = x.bands.size();
        band* a1 = &x.bands[xn - 1];
        band* c1 = &y.bands[0];
        if (a1->bulk() || c1->bulk()) break;
        band* a2 = xn >= 2 && !x.bands[xn - 2].bulk() ? &x.bands[xn - 2] : nullptr;
        band* c2 = y.bands.size() >= 2 && !y.bands[1].bulk() ? &y.bands[1] : nullptr;
        auto close_planar = [&](band& s, band& o, bool nested, cut_family fam,
                                twist_dir tw) {
            // s carries the opening heads, o the tails; innermost pairs first
            for (std::size_t k = 0; k < s.atoms.size(); ++k) {
                const occurrence& top = s.atoms[nested ? s.atoms.size() - 1 - k : k];
                const occurrence& bot = o.atoms[k];
                bool s_head = head_letter(s.letter);
                pair_up(s_head ? bot : top, s_head ? top : bot,
                        spatial_letter(s.letter), fam, tw);
            }
        };
        if (a2 && c2) {
            // two bands on each side of the seam: a twin closure pairs one
            // spatial with one planar partner, crossed or nested
            auto twin = [&](band& sx, band& px, band& sy, band& py) -> bool {
                if (!spatial_partners(sx.letter, sy.letter) ||
                    !planar_partners(px.letter, py.letter))
                    return false;
                if (sx.atoms.size() != sy.atoms.size() ||
                    px.atoms.size() != py.atoms.size()) {
                    fault(path, "cut groups pair with unequal sizes");
                    return false;
                }
                twist_dir tw = spatial_letter(a2->letter) ? twist_dir::left
                                                          : twist_dir::right;
                close_planar(sx, sy, true, cut_family::twin, tw);
                close_planar(px, py, true, cut_family::twin, tw);
                return true;
            };
            std::size_t before = faults.size();
            bool closed = false;
            if (spatial_partners(a2->letter, c1->letter))
                closed = twin(*a2, *a1, *c1, *c2); // crossed pairs
            else if (spatial_partners(a2->letter, c2->letter))
                closed = twin(*a2, *a1, *c2, *c1); // nested pairs
            else if (spatial_partners(a1->letter, c1->letter))
                closed = twin(*a1, *a2, *c1, *c2); // nested, planar outside
            else if (spatial_partners(a1->letter, c2->letter))
                closed = twin(*a1, *a2, *c2, *c1); // crossed, planar outside
            if (faults.size() > before && !closed) return std::nullopt;
            if (closed) {
                x.bands.pop_back();
                x.bands.pop_back();
                y.bands.erase(y.bands.begin(), y.bands.begin() + 2);
                continue;
            }
        }
        if (planar_partners(a1->letter, c1->letter)) {
            if (a1->atoms.size() != c1->atoms.size()) {
                fault(path, "cut groups pair with unequal sizes");
                return std::nullopt;
            }
            close_planar(*a1, *c1, true, cut_family::crosslink, twist_dir::none);
            x.bands.pop_back();
            y.bands.erase(y.bands.begin());
            continue;
        }
        break;
    }
    profile r;
    r.bands = std::move(x.bands);
    r.bands.insert(r.bands.end(), y.bands.begin(), y.bands.end());
    if (!normalize(r, path)) return std::nullopt;
    if (!valid_shape(r, path)) return std::nullopt;
    return r;
}

std::optional<profile> binder::analyze(const term_ptr& t, const std::string& path) {
    switch (t->kind) {
    case term_kind::atom: return atom_profile(*t, path);
    case term_kind::tilt: return analyze(t->a, path + (path.empty() ? "0" : ".0"));
    case term_kind::next:
    case term_kind::juxta: {
        auto l = analyze(t->a, path + (path.empty() ? "0" : ".0"));
        auto r = analyze(t->b, path + (path.empty() ? "1" : ".1"));
        if (!l || !r) return std::nullopt;
        return t->kind == term_kind::next ? serial(std::move(*l), std::move(*r), path)
                                          : parallel(std::move(*l), std::move(*r), path);
    }
    }
    throw std::logic_error("bad term kind");
}

// name the sort of a fully analyzed arrangement
std::optional<sort> name_profile(const profile& p, const term_ptr& t, const registry& reg) {
    const std::string l = letters_of(p);
    auto by_interfaces = [&]() -> sort {
        bool in_empty = pin_count(in_of(t, reg)) == 0;
        bool out_empty = pin_count(out_of(t, reg)) == 0;
        if (in_empty && out_empty) return sort::CS;
        if (in_empty) return sort::E;
        if (out_empty) return sort::X;
        return sort::B;
    };
    std::string name;
    if (l.empty() || l == "B") return by_interfaces();
    if (l.size() == 1) name = std::string(1, l[0]);
    else if (l.size() == 2) name = l;
    else if (l.size() == 3 && l[1] == 'B') name = l;
    else if (l.size() == 3 && l[0] == 'B') name = {'B', l[1], 'B', l[2]};
    else if (l.size() == 3 && l[2] == 'B') name = {l[1], 'B', l[0], 'B'};
    else return std::nullopt;
    return sort_from(name);
}

} // namespace

sort sort_of(const term_ptr& t, const registry& reg) {
    return strict_rec(t, reg, sort_system::instance());
}

std::optional<sort> try_sort_of(const term_ptr& t, const registry& reg) {
    try {
        return sort_of(t, reg);
    } catch (const undefined_composition&) {
        return std::nullopt;
    }
}

sort fundamental_sort_of(const term_ptr& t, const registry& reg) {
    return fundamental_rec(t, reg, sort_system::instance());
}

bind_error::bind_error(kind_t k, const std::string& msg)
    : std::runtime_error(msg), kind(k) {}

namespace {

// resolve labelled openings and flag label misuse
void bind_labels(binder& bd, std::vector<occurrence>* open) {
    std::set<std::string> labels;
    for (auto& [l, _] : bd.label_tails) labels.insert(l);
    for (auto& [l, _] : bd.label_heads) labels.insert(l);
    for (auto& l : labels) {
        auto& tails = bd.label_tails[l];
        auto& heads = bd.label_heads[l];
        if (tails.size() > 1 || heads.size() > 1) {
            bd.fault("", "label '" + l + "' is used by more than one cut pair");
            continue;
        }
        if (tails.size() == 1 && heads.size() == 1) {
            bool spatial = bd.label_spatial[l];
            bd.pair_up(tails[0], heads[0], spatial,
                       spatial ? cut_family::crossing : cut_family::cycle,
                       twist_dir::none, l);
        } else if (open) {
            for (auto& o : tails) open->push_back(o);
            for (auto& o : heads) open->push_back(o);
        }
    }
}

} // namespace

check_report check(const term_ptr& t, const registry& reg) {
    check_report rep;
    // wiring of every serial seam
    std::function<void(const term_ptr&, const std::string&)> walk =
        [&](const term_ptr& n, const std::string& path) {
            auto sub = [&](int i) {
                return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
            };
            switch (n->kind) {
            case term_kind::atom: return;
            case term_kind::tilt: walk(n->a, sub(0)); return;
            case term_kind::next: {
                interface o = out_of(n->a, reg), i = in_of(n->b, reg);
                if (o != i)
                    rep.issues.push_back(
                        {path, "serial seam mismatch: upstream emits " + to_string(o) +
                                   ", downstream expects " + to_string(i)});
                walk(n->a, sub(0));
                walk(n->b, sub(1));
                return;
            }
            case term_kind::juxta:
                walk(n->a, sub(0));
                walk(n->b, sub(1));
                return;
            }
        };
    walk(t, "");

    rep.strict = try_sort_of(t, reg);

    binder bd(reg);
    auto prof = bd.analyze(t, "");
    bind_labels(bd, &rep.open_cuts);
    for (auto& f : bd.faults) rep.issues.push_back(f);
    if (prof) {
        for (auto& b : prof->bands)
            for (auto& o : b.atoms) rep.open_cuts.push_back(o);
        rep.analyzed = name_profile(*prof, t, reg);
        if (!rep.analyzed && bd.faults.empty())
            rep.issues.push_back({"", "cut openings do not form a sortable arrangement"});
    }
    return rep;
}

sort check_report::best() const {
    if (strict) return *strict;
    if (analyzed) return *analyzed;
    throw std::runtime_error("term has no sort");
}

cut_bindings bind_cuts(const term_ptr& t, const registry& reg) {
    binder bd(reg);
    auto prof = bd.analyze(t, "");
    std::vector<occurrence> open;
    bind_labels(bd, &open);
    for (auto& f : bd.faults) {
        bool ambiguous = f.message.find("ambiguous") != std::string::npos;
        throw bind_error(ambiguous ? bind_error::ambiguous : bind_error::unmatched,
                         f.path.empty() ? f.message : f.message + " at " + f.path);
    }
    if (prof)
        for (auto& b : prof->bands)
            for (auto& o : b.atoms) open.push_back(o);
    if (!open.empty()) {
        std::ostringstream os;
        os << "unmatched cut openings:";
        for (auto& o : open) {
            os << ' ' << o.node->atom;
            if (!o.node->label.empty()) os << '.' << o.node->label;
        }
        throw bind_error(bind_error::unmatched, os.str());
    }
    cut_bindings out;
    out.pairs = std::move(bd.pairs);
    return out;
}

void conceal(registry& reg, const std::string& name, const term_ptr& body) {
    if (reg.find(name))
        throw std::invalid_argument("atom name already in use: " + name);
    binder bd(reg);
    auto prof = bd.analyze(body, "");
    bind_labels(bd, nullptr);
    if (!bd.faults.empty())
        throw std::invalid_argument("cannot conceal: " + bd.faults.front().message);
    if (!prof)
        throw std::invalid_argument("cannot conceal: term has no sort");
    auto analyzed = name_profile(*prof, body, reg);
    if (!analyzed)
        throw std::invalid_argument("cannot conceal: term has no sort");

    atom_info info;
    info.name = name;
    info.s = *analyzed;
    info.in = in_of(body, reg);
    info.out = out_of(body, reg);
    info.cut = cut_role::none;
    info.profile.clear();
    for (auto& b : prof->bands) {
        if (b.bulk()) info.profile.push_back({'B', 1});
        else info.profile.push_back({b.letter, static_cast<int>(b.atoms.size())});
    }
    bool digital = true;
    std::function<void(const term_ptr&)> leaves = [&](const term_ptr& n) {
        if (n->kind == term_kind::atom) {
            if (!reg.at(n->atom).digital) digital = false;
        } else if (n->kind == term_kind::tilt) {
            leaves(n->a);
        } else {
            leaves(n->a);
            leaves(n->b);
        }
    };
    leaves(body);
    info.digital = digital;
    info.metric = false;
    info.body = body;
    reg.add(std::move(info));
}

} // namespace akton

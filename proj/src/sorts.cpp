#include "akton/sorts.hpp"
#include "akton/tables_data.hpp"

#include <array>
#include <cassert>
#include <sstream>

namespace akton {

namespace {

constexpr std::array<std::string_view, 38> sort_names = {
    "E", "B", "X", "CS",
    "U", "D", "S", "O",
    "UB", "BU", "DB", "BD",
    "OB", "BO", "SB", "BS", "OBO", "OBS", "SBO", "SBS",
    "BUBO", "BUBS", "BDBO", "BDBS", "SBDB", "SBUB", "OBDB", "OBUB",
    "BOBU", "BOBD", "BSBU", "BSBD", "DBSB", "DBOB", "UBSB", "UBOB",
    "H", "T",
};

} // namespace

std::string_view name(sort s) { return sort_names[static_cast<size_t>(s)]; }

std::optional<sort> sort_from(std::string_view text) {
    for (size_t i = 0; i < sort_names.size(); i++)
        if (sort_names[i] == text) return static_cast<sort>(i);
    return std::nullopt;
}

undefined_composition::undefined_composition(sort l, sort r, relation rel_)
    : std::runtime_error("undefined composition: " + std::string(name(l)) + " " +
                         std::string(name(rel_)) + " " + std::string(name(r))),
      left(l), right(r), rel(rel_) {}

bool sort_table::in_domain(sort l, sort r) const {
    bool row = false, col = false;
    for (sort s : rows)
        if (s == l) { row = true; break; }
    for (sort s : cols)
        if (s == r) { col = true; break; }
    return row && col;
}

std::optional<sort> sort_table::lookup(sort l, sort r) const {
    auto it = cells.find({l, r});
    if (it == cells.end()) return std::nullopt;
    return it->second;
}

sort_table parse_sort_table(std::string_view id, relation rel, std::string_view text) {
    sort_table t;
    t.id = std::string(id);
    t.rel = rel;
    std::istringstream in{std::string(text)};
    std::string line;
    auto parse_sort = [&](const std::string& tok) {
        auto s = sort_from(tok);
        if (!s) throw std::runtime_error(t.id + ": unknown sort '" + tok + "'");
        return *s;
    };
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string a, b, c;
        if (!(ls >> a)) continue;
        if (a == "rows:" || a == "cols:") {
            auto& dom = (a == "rows:") ? t.rows : t.cols;
            std::string tok;
            while (ls >> tok) dom.push_back(parse_sort(tok));
            continue;
        }
        if (!(ls >> b >> c)) throw std::runtime_error(t.id + ": malformed line '" + line + "'");
        auto key = std::make_pair(parse_sort(a), parse_sort(b));
        if (t.cells.count(key)) throw std::runtime_error(t.id + ": duplicate cell '" + line + "'");
        t.cells[key] = parse_sort(c);
    }
    if (t.rows.empty() || t.cols.empty())
        throw std::runtime_error(t.id + ": missing rows/cols header");
    for (auto& [key, val] : t.cells) {
        (void)val;
        if (!t.in_domain(key.first, key.second))
            throw std::runtime_error(t.id + ": cell outside declared domain");
    }
    return t;
}

sort_system::sort_system() {
    production_.push_back(parse_sort_table("p1_next", relation::next, tables::p1_next));
    production_.push_back(parse_sort_table("p1_juxta", relation::juxta, tables::p1_juxta));
    production_.push_back(parse_sort_table("p2_next", relation::next, tables::p2_next));
    production_.push_back(parse_sort_table("p2_juxta", relation::juxta, tables::p2_juxta));
    production_.push_back(parse_sort_table("p3_next", relation::next, tables::p3_next));
    production_.push_back(parse_sort_table("p3_juxta", relation::juxta, tables::p3_juxta));
    production_.push_back(parse_sort_table("p4_next_left", relation::next, tables::p4_next_left));
    production_.push_back(parse_sort_table("p4_next_right", relation::next, tables::p4_next_right));
    production_.push_back(parse_sort_table("p4_juxta_left", relation::juxta, tables::p4_juxta_left));
    production_.push_back(parse_sort_table("p4_juxta_right", relation::juxta, tables::p4_juxta_right));
    fundamental_.push_back(parse_sort_table("fundamental_next", relation::next, tables::fundamental_next));
    fundamental_.push_back(parse_sort_table("fundamental_juxta", relation::juxta, tables::fundamental_juxta));

    // overlapping tables must agree wherever they both define a pair
    for (size_t i = 0; i < production_.size(); i++) {
        for (size_t j = i + 1; j < production_.size(); j++) {
            const auto& ta = production_[i];
            const auto& tb = production_[j];
            if (ta.rel != tb.rel) continue;
            for (auto& [key, val] : ta.cells) {
                auto other = tb.lookup(key.first, key.second);
                if (other && *other != val)
                    throw std::runtime_error("table disagreement between " + ta.id + " and " +
                                             tb.id + " at " + std::string(name(key.first)) + "," +
                                             std::string(name(key.second)));
            }
        }
    }
}

const sort_system& sort_system::instance() {
    static sort_system sys;
    return sys;
}

std::optional<sort> sort_system::try_compose(sort l, sort r, relation rel) const {
    for (const auto& t : production_) {
        if (t.rel != rel) continue;
        if (auto s = t.lookup(l, r)) return s;
    }
    return std::nullopt;
}

sort sort_system::compose(sort l, sort r, relation rel) const {
    if (auto s = try_compose(l, r, rel)) return *s;
    throw undefined_composition(l, r, rel);
}

std::optional<sort> sort_system::try_compose_fundamental(sort l, sort r, relation rel) const {
    for (const auto& t : fundamental_) {
        if (t.rel != rel) continue;
        if (auto s = t.lookup(l, r)) return s;
    }
    return std::nullopt;
}

sort sort_system::compose_fundamental(sort l, sort r, relation rel) const {
    if (auto s = try_compose_fundamental(l, r, rel)) return *s;
    throw undefined_composition(l, r, rel);
}

} // namespace akton

#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace akton {

enum class sort : std::uint8_t {
    // open terms
    E, B, X, CS,
    // bare cut halves
    U, D, S, O,
    // spatial cut pairs
    UB, BU, DB, BD,
    // planar cut pairs
    OB, BO, SB, BS, OBO, OBS, SBO, SBS,
    // twin cut pairs, left-twisted then right-twisted
    BUBO, BUBS, BDBO, BDBS, SBDB, SBUB, OBDB, OBUB,
    BOBU, BOBD, BSBU, BSBD, DBSB, DBOB, UBSB, UBOB,
    // head/tail layer
    H, T,
};

std::string_view name(sort s);
std::optional<sort> sort_from(std::string_view text);

enum class relation : std::uint8_t { next, juxta };

inline std::string_view name(relation r) { return r == relation::next ? ">" : "/"; }

class undefined_composition : public std::runtime_error {
public:
    undefined_composition(sort left, sort right, relation rel);
    sort left, right;
    relation rel;
};

struct sort_table {
    std::string id;
    relation rel = relation::next;
    std::vector<sort> rows, cols;
    std::map<std::pair<sort, sort>, sort> cells;

    bool in_domain(sort l, sort r) const;
    std::optional<sort> lookup(sort l, sort r) const;
};

// composition tables loaded from the embedded data fixtures
class sort_system {
public:
    static const sort_system& instance();

    // production tables in precedence order (first defined wins)
    const std::vector<sort_table>& production() const { return production_; }
    const std::vector<sort_table>& fundamental() const { return fundamental_; }

    // strict table lookup; throws undefined_composition when no table defines the pair
    sort compose(sort l, sort r, relation rel) const;
    std::optional<sort> try_compose(sort l, sort r, relation rel) const;

    // head/tail layer lookup over {H, B, T, CS}
    sort compose_fundamental(sort l, sort r, relation rel) const;
    std::optional<sort> try_compose_fundamental(sort l, sort r, relation rel) const;

private:
    sort_system();
    std::vector<sort_table> production_, fundamental_;
};

// parses the on-disk table format: '#' comments, "rows:"/"cols:" headers, "ROW COL RESULT" triples
sort_table parse_sort_table(std::string_view id, relation rel, std::string_view text);

} // namespace akton

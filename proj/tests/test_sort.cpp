#include "doctest.h"

#include "akton/analysis.hpp"
#include "akton/term.hpp"

using namespace akton;

static registry& reg() {
    static registry r;
    return r;
}

static term_ptr tp(const std::string& s) { return parse_term(s, reg()); }

static sort s_of(const std::string& s) { return sort_of(tp(s), reg()); }

TEST_CASE("atom sorts") {
    CHECK(s_of("Entry") == sort::E);
    CHECK(s_of("Exit") == sort::X);
    CHECK(s_of("Up") == sort::U);
    CHECK(s_of("Down") == sort::D);
    CHECK(s_of("Set") == sort::S);
    CHECK(s_of("Off") == sort::O);
    CHECK(s_of("Fork") == sort::B);
    CHECK(s_of("CS") == sort::CS);
    CHECK(s_of("F_ld") == sort::DB);
    CHECK(s_of("J_ru") == sort::BU);
}

TEST_CASE("open compositions") {
    CHECK(s_of("Entry > Fork") == sort::E);
    CHECK(s_of("Entry > Exit") == sort::CS);
    CHECK(s_of("Fork > Join") == sort::B);
    CHECK(s_of("Link > Exit") == sort::X);
    CHECK(s_of("Entry/Entry") == sort::E);
    CHECK(s_of("Entry/Exit") == sort::B);
    CHECK(s_of("Exit/Entry") == sort::B);
    CHECK(s_of("CS/Link") == sort::B);
    CHECK_THROWS_AS(s_of("Exit > Entry"), undefined_composition);
}

TEST_CASE("cut compositions follow the tables") {
    CHECK(s_of("Up > Down") == sort::CS);
    CHECK(s_of("Set > Off") == sort::CS);
    CHECK(s_of("Set > Link") == sort::S);
    CHECK(s_of("Link > Off") == sort::O);
    CHECK(s_of("Down/Link") == sort::DB);
    CHECK(s_of("Link/Up") == sort::BU);
    CHECK(s_of("Down/Link > Link/Up") == sort::B);
    CHECK(s_of("Link/Down > Up/Link") == sort::B);
    CHECK(s_of("Set/Link > Off/Link") == sort::B);
    CHECK(s_of("Set/Link > Down/Link") == sort::SBDB);
    CHECK(s_of("Link/Up > Link/Off") == sort::BUBO);
    CHECK(s_of("(Link/Up > Link/Off)/(Set/Link > Down/Link)") == sort::B);
    CHECK_THROWS_AS(s_of("Down > Up"), undefined_composition);
    CHECK_THROWS_AS(s_of("Up/Down"), undefined_composition);
}

TEST_CASE("tolerant analysis reaches terms the tables leave open") {
    // serial pass-through of a crossing band is not tabulated
    auto t = tp("Fork > Down/Link > Link/Up");
    CHECK(!try_sort_of(t, reg()));
    auto rep = check(t, reg());
    CHECK(rep.issues.empty());
    CHECK(rep.analyzed == sort::B);

    // labelled openings resolve by name instead of position
    auto l = tp("Up.1 > Down.1");
    auto lrep = check(l, reg());
    CHECK(lrep.issues.empty());
    CHECK(lrep.open_cuts.empty());
}

TEST_CASE("analysis agrees with the tables when both are defined") {
    const char* samples[] = {
        "Entry > Fork",          "Fork > Join",           "Entry > Exit",
        "Up > Down",             "Set > Link",            "Down/Link > Link/Up",
        "Set/Link > Off/Link",   "Link/Up > Link/Off",    "Set/Link > Down/Link",
        "Entry/Exit",            "Link/Down > Up/Link",   "Set/Link/Link > Off/Link/Link",
    };
    for (const char* s : samples) {
        auto t = tp(s);
        auto strict = try_sort_of(t, reg());
        REQUIRE(strict);
        auto rep = check(t, reg());
        REQUIRE(rep.analyzed);
        CHECK(*rep.analyzed == *strict);
    }
}

TEST_CASE("head tail layer") {
    CHECK(fundamental_sort_of(tp("Entry > Fork"), reg()) == sort::H);
    CHECK(fundamental_sort_of(tp("Entry > Exit"), reg()) == sort::CS);
    CHECK(fundamental_sort_of(tp("Up > Down"), reg()) == sort::CS);
    CHECK(fundamental_sort_of(tp("Entry/Exit"), reg()) == sort::B);
}

TEST_CASE("undefined lookups name both operands") {
    try {
        s_of("Exit > Entry");
        FAIL("expected failure");
    } catch (const undefined_composition& e) {
        CHECK(e.left == sort::X);
        CHECK(e.right == sort::E);
        CHECK(e.rel == relation::next);
    }
}

TEST_CASE("check reports wiring faults") {
    auto rep = check(tp("Link > Join"), reg());
    CHECK(!rep.issues.empty());
    CHECK(rep.strict == sort::B); // sorts ignore arity, the seam report does not

    auto ok = check(tp("Fork > Join"), reg());
    CHECK(ok.issues.empty());
}

TEST_CASE("pending openings are reported but legal") {
    auto rep = check(tp("Link/Up > Link/Off"), reg());
    CHECK(rep.issues.empty());
    CHECK(rep.analyzed == sort::BUBO);
    CHECK(rep.open_cuts.size() == 2);
    CHECK_THROWS_AS(bind_cuts(tp("Link/Up"), reg()), bind_error);
}

TEST_CASE("cut pairs carry geometry") {
    auto b = bind_cuts(tp("Down/Link > Link/Up"), reg());
    REQUIRE(b.pairs.size() == 1);
    CHECK(b.pairs[0].spatial);
    CHECK(b.pairs[0].family == cut_family::crossing);
    CHECK(b.pairs[0].tail.node->atom == "Down");
    CHECK(b.pairs[0].head.node->atom == "Up");

    auto c = bind_cuts(tp("Set/Link > Off/Link"), reg());
    REQUIRE(c.pairs.size() == 1);
    CHECK(!c.pairs[0].spatial);
    CHECK(c.pairs[0].family == cut_family::cycle);

    auto d = bind_cuts(tp("(Link/Up > Link/Off)/(Set/Link > Down/Link)"), reg());
    CHECK(d.pairs.size() == 2);
    for (auto& p : d.pairs) {
        CHECK(p.family == cut_family::twin);
        CHECK(p.twist == twist_dir::left);
    }
}

TEST_CASE("concealment registers the analyzed shape") {
    registry r;
    auto body = parse_term("Fork > Down/Link > Link/Up", r);
    conceal(r, "Xing", body);
    const atom_info& info = r.at("Xing");
    CHECK(info.s == sort::B);
    CHECK(pin_count(info.in) == 1);
    CHECK(pin_count(info.out) == 2);
    CHECK(info.digital == false); // Link is not a gate
    CHECK_THROWS(conceal(r, "Xing", body));

    auto open_body = parse_term("Link/Up", r);
    conceal(r, "HalfX", open_body);
    CHECK(r.at("HalfX").s == sort::BU);
    REQUIRE(r.at("HalfX").profile.size() == 2);
    CHECK(r.at("HalfX").profile[0].letter == 'B');
    CHECK(r.at("HalfX").profile[1].letter == 'U');

    // a concealed opening still closes from outside
    auto outer = parse_term("HalfX > Down/Link", r);
    auto rep = check(outer, r);
    CHECK(rep.analyzed == sort::B);
    CHECK(bind_cuts(outer, r).pairs.size() == 1);
}

#include "doctest.h"

#include "akton/digital.hpp"
#include "akton/network.hpp"

#include <map>
#include <string>
#include <vector>

using namespace akton;

namespace {

const registry& shared_reg() {
    static registry reg;
    return reg;
}

term_ptr t_(const std::string& src) {
    return parse_term(src, shared_reg());
}

using waves = std::map<std::string, std::string>;

} // namespace

TEST_CASE("binary gate tables are exhaustive") {
    const std::string vals = "01#";
    std::map<std::string, char> and_table = {
        {"00", '0'}, {"01", '0'}, {"0#", '0'}, {"10", '0'}, {"11", '1'},
        {"1#", '#'}, {"#0", '0'}, {"#1", '#'}, {"##", '#'},
    };
    std::map<std::string, char> or_table = {
        {"00", '0'}, {"01", '1'}, {"0#", '#'}, {"10", '1'}, {"11", '1'},
        {"1#", '1'}, {"#0", '#'}, {"#1", '1'}, {"##", '#'},
    };
    for (char a : vals)
        for (char b : vals) {
            std::string key{a, b};
            CHECK(gate_out("And", {a, b}) == and_table.at(key));
            CHECK(gate_out("Or", {a, b}) == or_table.at(key));
        }
    CHECK(gate_out("Not", {'0'}) == '1');
    CHECK(gate_out("Not", {'1'}) == '0');
    CHECK(gate_out("Not", {'#'}) == '#');
    for (char a : vals) {
        CHECK(gate_out("Wire", {a}) == a);
        CHECK(gate_out("Fork", {a}) == a);
    }
}

TEST_CASE("gate evaluation rejects bad calls") {
    CHECK_THROWS_AS(gate_out("And", {'1'}), sim_error);
    CHECK_THROWS_AS(gate_out("Not", {'1', '0'}), sim_error);
    CHECK_THROWS_AS(gate_out("Join", {'1', '0'}), sim_error);
    CHECK_THROWS_AS(gate_out("And", {'1', 'x'}), sim_error);
}

TEST_CASE("a wire chain settles within one step") {
    auto res = simulate(t_("Entry > Wire > Wire > Exit"), shared_reg(),
                        waves{{"Entry", "1"}});
    REQUIRE(res.outputs.size() == 1);
    CHECK(res.outputs[0].at("Exit") == '1');
    CHECK(res.shape == run_shape::steady);
    CHECK(res.period == 1);
}

TEST_CASE("waveforms replay and the last value holds") {
    auto res = simulate(t_("Entry > Not > Exit"), shared_reg(),
                        waves{{"Entry", "01"}});
    REQUIRE(res.outputs.size() == 2);
    CHECK(res.outputs[0].at("Exit") == '1');
    CHECK(res.outputs[1].at("Exit") == '0');
    CHECK(res.shape == run_shape::steady);
    CHECK(res.settled_at == 1);
}

TEST_CASE("an undriven entry stays undefined") {
    auto res = simulate(t_("Entry > Exit"), shared_reg(), waves{});
    CHECK(res.outputs[0].at("Exit") == '#');
}

TEST_CASE("feedback cycle is steady under low input") {
    auto osc = t_("Entry > Set/Wire > And > Not > Fork > Off/Wire > Exit");
    auto res = simulate(osc, shared_reg(), waves{{"Entry", "0"}});
    CHECK(res.shape == run_shape::steady);
    CHECK(res.period == 1);
    CHECK(res.outputs.back().at("Exit") == '1');
}

TEST_CASE("feedback cycle oscillates with period 2 once driven high") {
    auto osc = t_("Entry > Set/Wire > And > Not > Fork > Off/Wire > Exit");
    auto res = simulate(osc, shared_reg(), waves{{"Entry", "01"}});
    CHECK(res.shape == run_shape::oscillating);
    CHECK(res.period == 2);
    REQUIRE(res.outputs.size() == 3);
    CHECK(res.outputs[0].at("Exit") == '1');
    CHECK(res.outputs[1].at("Exit") == '0');
    CHECK(res.outputs[2].at("Exit") == '1');
}

TEST_CASE("detection stops early when the step budget runs out") {
    auto osc = t_("Entry > Set/Wire > And > Not > Fork > Off/Wire > Exit");
    auto res = simulate(osc, shared_reg(), waves{{"Entry", "01"}},
                        sim_options{.max_steps = 2});
    CHECK(res.shape == run_shape::truncated);
    CHECK(res.outputs.size() == 2);
}

static const char* had_src = R"(
HAd := Fork/Fork > Down/Wire/Wire/Wire > Or/Wire/Up > Wire/And
       > Wire/Fork > Wire/Not/Wire > And/Wire ;
Entry.a/Entry.b > HAd > Exit.sum/Exit.carry
)";

TEST_CASE("half adder matches arithmetic on all four cases") {
    registry reg;
    term_ptr t = parse_program(had_src, reg);
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
            auto res = simulate(t, reg,
                                waves{{"a", std::string(1, '0' + a)},
                                      {"b", std::string(1, '0' + b)}});
            REQUIRE(res.shape == run_shape::steady);
            int sum = res.outputs[0].at("sum") - '0';
            int carry = res.outputs[0].at("carry") - '0';
            CHECK(sum == (a ^ b));
            CHECK(carry == (a & b));
        }
}

TEST_CASE("half adder propagates the undefined value") {
    registry reg;
    term_ptr t = parse_program(had_src, reg);
    auto res = simulate(t, reg, waves{{"a", "#"}, {"b", "1"}});
    CHECK(res.outputs[0].at("sum") == '#');
    CHECK(res.outputs[0].at("carry") == '#');
}

TEST_CASE("full adder matches arithmetic on all eight cases") {
    registry reg;
    const char* src = R"(
HAd := Fork/Fork > Down/Wire/Wire/Wire > Or/Wire/Up > Wire/And
       > Wire/Fork > Wire/Not/Wire > And/Wire ;
FAd := HAd/Wire > Wire/Wire/Down > Up/Wire/Wire > HAd/Wire > Wire/Or ;
Entry.a/Entry.b/Entry.cin > FAd > Exit.sum/Exit.carry
)";
    term_ptr t = parse_program(src, reg);
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            for (int c = 0; c <= 1; ++c) {
                auto res = simulate(t, reg,
                                    waves{{"a", std::string(1, '0' + a)},
                                          {"b", std::string(1, '0' + b)},
                                          {"cin", std::string(1, '0' + c)}});
                REQUIRE(res.shape == run_shape::steady);
                int sum = res.outputs[0].at("sum") - '0';
                int carry = res.outputs[0].at("carry") - '0';
                CHECK(2 * carry + sum == a + b + c);
            }
}

TEST_CASE("set reset latch sets, holds, then resets") {
    auto latch = t_("(Entry.r/Entry.s) > "
                    "(Wire/Up > Or > Not > Fork > Wire/Off)/"
                    "(Set/Wire > Or > Not > Fork > Down/Wire) > "
                    "(Exit.q/Exit.qbar)");
    auto res = simulate(latch, shared_reg(),
                        waves{{"r", "001"}, {"s", "100"}});
    REQUIRE(res.outputs.size() >= 4);
    CHECK(res.outputs[0].at("q") == '1');
    CHECK(res.outputs[1].at("q") == '1');
    CHECK(res.outputs[2].at("q") == '0');
    // the complement output needs one more step to catch up after a reset
    CHECK(res.outputs[3].at("q") == '0');
    CHECK(res.outputs[3].at("qbar") == '1');
    CHECK(res.shape == run_shape::steady);
}

TEST_CASE("concealed instances keep their feedback private") {
    registry reg;
    const char* src = R"(
Cell := Set.m/Wire > Or > Not > Fork > Off.m/Wire ;
Entry.a/Entry.b > Cell/Cell > Exit.x/Exit.y
)";
    term_ptr t = parse_program(src, reg);
    auto res = simulate(t, reg, waves{{"a", "10"}, {"b", "11"}});
    CHECK(res.shape == run_shape::oscillating);
    CHECK(res.period == 2);
    for (std::size_t i = 1; i + 1 < res.outputs.size(); ++i) {
        CHECK(res.outputs[i].at("x") != res.outputs[i + 1].at("x"));
        CHECK(res.outputs[i].at("y") == '0');
    }
}

TEST_CASE("non digital atoms are rejected") {
    CHECK_THROWS_WITH_AS(simulate(t_("Entry > Fork > Join > Exit"),
                                  shared_reg(), waves{}),
                         "not a digital atom: Join", sim_error);
    CHECK_THROWS_AS(simulate(t_("Entry > L_s > Exit"), shared_reg(), waves{}),
                    sim_error);
}

TEST_CASE("a loop without a feedback cut is rejected") {
    auto t = t_("Up/Entry > And > Fork > Exit/Down");
    CHECK_THROWS_WITH_AS(simulate(t, shared_reg(), waves{{"Entry", "1"}}),
                         "combinational cycle: every feedback loop needs a "
                         "Set/Off pair",
                         sim_error);
}

TEST_CASE("bad waveforms are rejected") {
    CHECK_THROWS_AS(simulate(t_("Entry > Exit"), shared_reg(),
                             waves{{"Entry", "012"}}),
                    sim_error);
}

TEST_CASE("simulation is deterministic") {
    auto latch = t_("(Entry.r/Entry.s) > "
                    "(Wire/Up > Or > Not > Fork > Wire/Off)/"
                    "(Set/Wire > Or > Not > Fork > Down/Wire) > "
                    "(Exit.q/Exit.qbar)");
    auto a = simulate(latch, shared_reg(), waves{{"r", "010"}, {"s", "101"}});
    auto b = simulate(latch, shared_reg(), waves{{"r", "010"}, {"s", "101"}});
    CHECK(a.outputs == b.outputs);
    CHECK(a.states == b.states);
    CHECK(a.columns == b.columns);
    CHECK(a.period == b.period);
}

TEST_CASE("trace rows cover every node") {
    auto res = simulate(t_("Entry > Not > Exit"), shared_reg(),
                        waves{{"Entry", "0"}});
    REQUIRE(res.columns.size() == 3);
    REQUIRE(res.states.size() == res.outputs.size());
    CHECK(res.states[0].size() == res.columns.size());
    CHECK(res.states[0][1] == '1');
}

/*
 * Copyright 2026 The hdkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include "hdkit/automaton_io.hpp"
#include "hdkit/errors.hpp"
#include "hdkit/generate.hpp"
#include "hdkit/hd.hpp"
#include "hdkit/normalize.hpp"
#include "hdkit/strategy.hpp"
#include "hdkit/token_games.hpp"
#include "support.hpp"

using namespace hdkit;

namespace {

void
check_sound(const ParityAutomaton& a, const StrategyMachine& s)
{
    auto v = verify_strategy(a, s);
    CHECK(v.winning);
    CHECK(v.exact);
    for (auto& w : enumerate_lassos(a.num_letters(), 3)) REQUIRE_FALSE(simulate_play(a, s, w).violates);
    auto j = strategy_to_json(a, s);
    CHECK(strategy_to_json(a, strategy_from_json(a, j)) == j);
}

// Always moves to qb from q0.
const char* k_greedy = R"({"memory":["m"],"init":"m","step":[
  {"m":"m","q":"q0","a":"a","t":0,"m2":"m"},{"m":"m","q":"q0","a":"b","t":2,"m2":"m"},
  {"m":"m","q":"q0","a":"c","t":4,"m2":"m"},{"m":"m","q":"qb","a":"a","t":6,"m2":"m"},
  {"m":"m","q":"qb","a":"c","t":7,"m2":"m"},{"m":"m","q":"qb","a":"b","t":8,"m2":"m"}]})";

}  // namespace

TEST_CASE("coBuchi strategy for the first example")
{
    auto a = test::corpus("a1.json");
    auto s = extract_cobuchi(a);
    check_sound(a, s);
    auto p = simulate_play(a, s, parse_lasso(";a c", a));
    CHECK(p.in_language);
    CHECK(p.accepted);
    CHECK_FALSE(p.violates);
    CHECK(p.cycle_min == 2);
}

TEST_CASE("a wrong strategy is caught")
{
    auto a = test::corpus("a1.json");
    auto s = strategy_from_json(a, nlohmann::json::parse(k_greedy));
    auto v = verify_strategy(a, s);
    CHECK_FALSE(v.winning);
    CHECK(v.exact);
    REQUIRE(v.witness);
    CHECK(lasso_member(a, *v.witness));
    CHECK(simulate_play(a, s, *v.witness).violates);
    auto p = simulate_play(a, s, parse_lasso(";b", a));
    CHECK(p.in_language);
    CHECK_FALSE(p.accepted);
    CHECK(p.violates);
    CHECK(p.cycle_min == 1);
}

TEST_CASE("strategies outside the language never violate")
{
    auto a = test::corpus("a1.json");
    auto s = strategy_from_json(a, nlohmann::json::parse(k_greedy));
    auto p = simulate_play(a, s, parse_lasso(";b c", a));
    CHECK_FALSE(p.in_language);
    CHECK_FALSE(p.violates);
}

TEST_CASE("undefined strategy entries")
{
    auto a = test::corpus("a1.json");
    auto j = nlohmann::json::parse(k_greedy);
    j["step"].erase(4);  // qb on c
    auto s = strategy_from_json(a, j);
    CHECK_NOTHROW(simulate_play(a, s, parse_lasso(";a", a)));
    CHECK_THROWS_AS(simulate_play(a, s, parse_lasso("a;c", a)), PreconditionError);
}

TEST_CASE("strategy documents are validated")
{
    auto a = test::corpus("a1.json");
    auto j = nlohmann::json::parse(k_greedy);
    auto bad = j;
    bad["extra"] = 1;
    CHECK_THROWS_AS(strategy_from_json(a, bad), ParseError);
    bad = j;
    bad["step"][0]["t"] = 6;  // not a transition of q0
    CHECK_THROWS_AS(strategy_from_json(a, bad), ParseError);
    bad = j;
    bad["step"][0]["m2"] = "n";
    CHECK_THROWS_AS(strategy_from_json(a, bad), ParseError);
    bad = j;
    bad["init"] = "n";
    CHECK_THROWS_AS(strategy_from_json(a, bad), ParseError);
}

TEST_CASE("safety strategy")
{
    auto a = parse_automaton(R"({"alphabet":["a"],"states":["s","live","bad","sink"],"initial":"s","index":[1,2],
      "transitions":[{"from":"s","letter":"a","priority":2,"to":"live"},
                     {"from":"s","letter":"a","priority":2,"to":"bad"},
                     {"from":"live","letter":"a","priority":2,"to":"live"},
                     {"from":"bad","letter":"a","priority":1,"to":"sink"},
                     {"from":"sink","letter":"a","priority":1,"to":"sink"}]})",
                             Format::native);
    auto s = extract_safety_reach(a);
    CHECK(s.memory.size() == 1);
    CHECK(s.at(0, 0, 0).t == 0);
    check_sound(a, s);
}

TEST_CASE("extracted strategies on random automata")
{
    int checked = 0;
    for (unsigned lo : {0u, 1u}) {
        GenSpec g;
        g.seed = 17;
        g.count = 40;
        g.states = 4;
        g.index_low = lo;
        g.index_high = lo + 1;
        for (auto& a : generate(g)) {
            if (lo == 1) {
                auto sf = trim_unreachable(approximate(a, Approximation::safe)).automaton;
                if (decide_hd_safety_reach(sf).is_hd) {
                    check_sound(sf, extract_safety_reach(sf));
                    checked++;
                }
                if (wins_everywhere(a, 1)) {
                    check_sound(a, extract_cobuchi(a));
                    checked++;
                }
            } else {
                auto rc = trim_unreachable(approximate(a, Approximation::above0)).automaton;
                if (decide_hd_safety_reach(rc).is_hd) {
                    check_sound(rc, extract_safety_reach(rc));
                    checked++;
                }
                if (wins_everywhere(a, 1)) {
                    auto r = rank_reduce_buchi(a);
                    check_sound(r.output, extract_buchi(r.output));
                    checked++;
                }
            }
        }
    }
    CHECK(checked > 40);
}

TEST_CASE("extraction preconditions")
{
    CHECK_THROWS_AS(extract_cobuchi(test::corpus("a2.json")), PreconditionError);
    CHECK_THROWS_AS(extract_buchi(test::corpus("a1.json")), PreconditionError);
    CHECK_THROWS_AS(extract_safety_reach(test::corpus("a2.json")), PreconditionError);
}

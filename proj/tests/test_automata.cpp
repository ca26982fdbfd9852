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

#include <algorithm>
#include <random>

#include "hdkit/automaton.hpp"
#include "hdkit/automaton_io.hpp"
#include "hdkit/errors.hpp"
#include "hdkit/generate.hpp"
#include "hdkit/oracle.hpp"
#include "support.hpp"

using namespace hdkit;

namespace {

bool
cycle_has(const Lasso& w, LetterId l)
{
    return std::find(w.cycle.begin(), w.cycle.end(), l) != w.cycle.end();
}

}  // namespace

TEST_CASE("native round trip")
{
    for (auto name : {"a1.json", "a2.json", "a3.json"}) {
        auto a = test::corpus(name);
        auto b = parse_automaton(serialise_native(a), Format::native);
        CHECK(a == b);
        CHECK(serialise_native(b) == serialise_native(a));
    }
}

TEST_CASE("hoa sample matches native")
{
    auto h = test::corpus("a2.hoa");
    auto n = test::corpus("a2.json");
    CHECK(h.num_states() == 2);
    CHECK(h.index_low() == 0);
    CHECK(h.index_high() == 3);
    CHECK(h.transitions() == n.transitions());
    CHECK(parse_automaton(serialise_hoa(n), Format::hoa) == n);
}

TEST_CASE("hoa round trip on random automata")
{
    GenSpec s;
    s.seed = 5;
    s.count = 40;
    s.states = 4;
    s.index_low = 1;
    s.index_high = 4;
    for (auto& a : generate(s)) CHECK(parse_automaton(serialise_hoa(a), Format::hoa) == a);
}

TEST_CASE("format detection")
{
    CHECK(detect_format("  {\"states\": []}") == Format::native);
    CHECK(detect_format("HOA: v1\n") == Format::hoa);
}

TEST_CASE("malformed documents are rejected")
{
    CHECK_THROWS_AS(parse_automaton("{", Format::native), ParseError);
    CHECK_THROWS_AS(parse_automaton("[]", Format::native), ParseError);
    const char* unknown_field = R"({"alphabet":["a"],"states":["s"],"initial":"s","index":[0,0],
        "transitions":[{"from":"s","letter":"a","priority":0,"to":"s"}],"extra":1})";
    CHECK_THROWS_AS(parse_automaton(unknown_field, Format::native), ParseError);
    const char* bad_priority = R"({"alphabet":["a"],"states":["s"],"initial":"s","index":[0,0],
        "transitions":[{"from":"s","letter":"a","priority":3,"to":"s"}]})";
    CHECK_THROWS_AS(parse_automaton(bad_priority, Format::native), ParseError);
    const char* unknown_state = R"({"alphabet":["a"],"states":["s"],"initial":"t","index":[0,0],
        "transitions":[{"from":"s","letter":"a","priority":0,"to":"s"}]})";
    CHECK_THROWS_AS(parse_automaton(unknown_state, Format::native), ParseError);
}

TEST_CASE("incomplete input and the sink option")
{
    const char* partial = R"({"alphabet":["a","b"],"states":["s"],"initial":"s","index":[0,1],
        "transitions":[{"from":"s","letter":"a","priority":0,"to":"s"}]})";
    CHECK_THROWS_AS(parse_automaton(partial, Format::native), ParseError);
    auto a = parse_automaton(partial, Format::native, true);
    CHECK(a.num_states() == 2);
    CHECK(a.out(0, 1).size() == 1);
    CHECK(a.transition(a.out(0, 1)[0]).to == 1);
    CHECK(lasso_member(a, Lasso{{}, {0}}));
    CHECK_FALSE(lasso_member(a, Lasso{{}, {0, 1}}));
}

TEST_CASE("lasso text form")
{
    auto a = test::corpus("a1.json");
    auto w = parse_lasso("a b;c a", a);
    CHECK(w.prefix == std::vector<LetterId>{0, 1});
    CHECK(w.cycle == std::vector<LetterId>{2, 0});
    CHECK(format_lasso(w, a) == "a b;c a");
    CHECK(parse_lasso(";a", a).prefix.empty());
    CHECK_THROWS_AS(parse_lasso("a;", a), ParseError);
    CHECK_THROWS_AS(parse_lasso("a;z", a), ParseError);
}

TEST_CASE("first example language")
{
    // finitely many b or finitely many c
    auto a = test::corpus("a1.json");
    for (auto& w : enumerate_lassos(3, 3)) CHECK(lasso_member(a, w) == (!cycle_has(w, 1) || !cycle_has(w, 2)));
}

TEST_CASE("second example accepts everything")
{
    auto a = test::corpus("a2.json");
    CHECK(lasso_member(a, Lasso{{}, {0, 1}}));
    for (auto& w : enumerate_lassos(2, 3)) CHECK(lasso_member(a, w));
}

TEST_CASE("lasso membership agrees with the unrolled run graph")
{
    GenSpec s;
    s.seed = 9;
    s.count = 60;
    s.states = 4;
    s.index_low = 0;
    s.index_high = 3;
    for (auto& a : generate(s))
        for (auto& w : enumerate_lassos(2, 3)) REQUIRE(lasso_member(a, w) == brute_lasso_member(a, a.initial(), w));
}

TEST_CASE("coreachable pairs of the first example")
{
    auto a = test::corpus("a1.json");
    auto c = coreachability(a);
    CHECK(c.coreachable(1, 2));
    CHECK(c.coreachable(2, 1));
    CHECK(c.classes().size() == 1);
    CHECK(c.weakly_coreachable(0, 2));
}

TEST_CASE("approximations")
{
    GenSpec s;
    s.seed = 3;
    s.count = 40;
    s.states = 4;
    s.index_low = 1;
    s.index_high = 4;
    for (auto& a : generate(s)) {
        auto safe = approximate(a, Approximation::safe);
        auto gt1 = approximate(a, Approximation::above1);
        CHECK(safe.num_states() == a.num_states() + 1);
        CHECK(safe.index_low() == 1);
        CHECK(safe.index_high() == 2);
        for (auto& w : enumerate_lassos(2, 3)) {
            if (!lasso_member(gt1, w)) continue;
            CHECK(lasso_member(safe, w));
            CHECK(lasso_member(a, w));
        }
    }
    s.index_low = 0;
    s.index_high = 3;
    for (auto& a : generate(s)) {
        auto gt0 = approximate(a, Approximation::above0);
        CHECK(gt0.num_states() == a.num_states() + 1);
        for (auto& w : enumerate_lassos(2, 3))
            if (lasso_member(a, w)) CHECK(lasso_member(gt0, w));
    }
}

TEST_CASE("restriction keeps ids consistent")
{
    auto a = test::corpus("a1.json");
    std::vector<bool> keep(a.num_transitions(), true);
    keep[1] = keep[3] = keep[5] = false;  // q0 only moves to qb
    auto r = restrict_transitions(a, keep);
    CHECK(r.automaton.num_states() == 2);
    CHECK(r.automaton.num_transitions() == 6);
    CHECK(r.automaton.is_deterministic());
    for (TransId t = 0; t < r.automaton.num_transitions(); t++) {
        auto& nt = r.automaton.transition(t);
        auto& ot = a.transition(r.old_trans[t]);
        CHECK(r.old_state[nt.from] == ot.from);
        CHECK(r.old_state[nt.to] == ot.to);
        CHECK(nt.priority == ot.priority);
    }
    keep[6] = false;  // qb loses its a-transition
    CHECK_THROWS_AS(restrict_transitions(a, keep), InternalError);
}

TEST_CASE("priority shift")
{
    auto a = test::corpus("a2.json");
    auto b = shift_priorities(a, 2);
    CHECK(b.index_low() == 3);
    CHECK(b.index_high() == 5);
    CHECK(shift_priorities(b, -2) == a);
}

TEST_CASE("generator is deterministic")
{
    GenSpec s;
    s.seed = 1;
    s.count = 2;
    auto x = generate(s), y = generate(s);
    REQUIRE(x.size() == 2);
    CHECK(x[0] == y[0]);
    CHECK(x[1] == y[1]);
    s.density = 1.0;
    for (auto& a : generate(s)) {
        for (StateId q = 0; q < a.num_states(); q++)
            for (LetterId l = 0; l < a.num_letters(); l++) CHECK(a.out(q, l).size() >= 1);
    }
}

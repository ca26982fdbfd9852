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
#include "hdkit/oracle.hpp"
#include "hdkit/token_games.hpp"
#include "support.hpp"

using namespace hdkit;

namespace {

ParityAutomaton
from_text(const char* text)
{
    return parse_automaton(text, Format::native);
}

// On a, guess between a live and a dying successor.
const char* k_safety = R"({"alphabet":["a"],"states":["s","live","bad","sink"],"initial":"s","index":[1,2],
  "transitions":[{"from":"s","letter":"a","priority":2,"to":"live"},
                 {"from":"s","letter":"a","priority":2,"to":"bad"},
                 {"from":"live","letter":"a","priority":2,"to":"live"},
                 {"from":"bad","letter":"a","priority":1,"to":"sink"},
                 {"from":"sink","letter":"a","priority":1,"to":"sink"}]})";

// After an a, the accepting sink needs the next letter guessed in advance.
const char* k_reach = R"({"alphabet":["a","b"],"states":["s","ga","gb","acc"],"initial":"s","index":[1,2],
  "transitions":[{"from":"s","letter":"a","priority":1,"to":"ga"},
                 {"from":"s","letter":"a","priority":1,"to":"gb"},
                 {"from":"s","letter":"b","priority":1,"to":"s"},
                 {"from":"ga","letter":"a","priority":1,"to":"acc"},
                 {"from":"ga","letter":"b","priority":1,"to":"s"},
                 {"from":"gb","letter":"b","priority":1,"to":"acc"},
                 {"from":"gb","letter":"a","priority":1,"to":"s"},
                 {"from":"acc","letter":"a","priority":2,"to":"acc"},
                 {"from":"acc","letter":"b","priority":2,"to":"acc"}]})";

// The two a-successors accept a^w and b^w.
const char* k_split = R"({"alphabet":["a","b"],"states":["s","x","y","z"],"initial":"s","index":[0,1],
  "transitions":[{"from":"s","letter":"a","priority":1,"to":"x"},
                 {"from":"s","letter":"a","priority":1,"to":"y"},
                 {"from":"s","letter":"b","priority":1,"to":"z"},
                 {"from":"x","letter":"a","priority":0,"to":"x"},
                 {"from":"x","letter":"b","priority":1,"to":"z"},
                 {"from":"y","letter":"b","priority":0,"to":"y"},
                 {"from":"y","letter":"a","priority":1,"to":"z"},
                 {"from":"z","letter":"a","priority":1,"to":"z"},
                 {"from":"z","letter":"b","priority":1,"to":"z"}]})";

}  // namespace

TEST_CASE("verdicts on the corpus")
{
    auto a1 = test::corpus("a1.json");
    auto a2 = test::corpus("a2.json");
    auto a3 = test::corpus("a3.json");
    CHECK(decide_hd(a1).is_hd);
    CHECK_FALSE(decide_hd(a2).is_hd);
    CHECK(decide_hd(a3).is_hd);
    CHECK(decide_hd_oracle(a1).is_hd);
    CHECK_FALSE(decide_hd_oracle(a2).is_hd);

    auto v = decide_hd(a1);
    CHECK(v.method == HdMethod::two_token);
    REQUIRE(v.game);
    CHECK(v.game->winner == Player::eve);
    auto j = verdict_to_json(v);
    CHECK(j["verdict"] == "hd");
    CHECK(j["method"] == "two_token");
    CHECK(j["states"] == 3);
    CHECK(j["transitions"] == 12);
    CHECK(verdict_to_json(decide_hd(a2))["verdict"] == "not-hd");
}

TEST_CASE("pruning the coBuchi example")
{
    auto a = test::corpus("a1.json");
    auto b = prune_everywhere(a);
    CHECK(b.num_transitions() <= a.num_transitions());
    CHECK(wins_everywhere(b, 2));
    CHECK(simulation_equivalent(a, b));
    for (auto& w : enumerate_lassos(3, 3)) CHECK(lasso_member(a, w) == lasso_member(b, w));
}

TEST_CASE("pruning keeps deterministic automata")
{
    GenSpec s;
    s.seed = 6;
    s.count = 20;
    s.states = 4;
    s.index_low = 0;
    s.index_high = 3;
    for (auto& g : generate(s)) {
        auto a = test::first_choices(g);
        auto b = prune_everywhere(a);
        CHECK(b.num_transitions() == trim_unreachable(a).automaton.num_transitions());
    }
}

TEST_CASE("pruning needs a two token win")
{
    CHECK_THROWS_AS(prune_everywhere(test::corpus("a2.json")), PreconditionError);
}

TEST_CASE("safety automaton prunes to the live successor")
{
    auto a = from_text(k_safety);
    CHECK(safety_reach_kind(a) == SafetyReachKind::safety);
    auto v = decide_hd_safety_reach(a);
    CHECK(v.is_hd);
    CHECK(v.method == HdMethod::one_token_safety_reach);
    REQUIRE(v.pruned);
    CHECK(v.pruned->is_deterministic());
    CHECK_FALSE(v.pruned->find_state("bad").has_value());
    auto c = safety_reach_choice(a);
    CHECK(a.transition(c[0]).to == 1);
}

TEST_CASE("reachability by early guessing is not HD")
{
    auto a = from_text(k_reach);
    CHECK(safety_reach_kind(a) == SafetyReachKind::reachability);
    CHECK_FALSE(decide_hd_safety_reach(a).is_hd);
    CHECK_FALSE(decide_hd(a).is_hd);
    CHECK_FALSE(decide_hd_reference(a).is_hd);
}

TEST_CASE("shape check")
{
    CHECK_THROWS_AS(safety_reach_kind(test::corpus("a2.json")), PreconditionError);
    CHECK_THROWS_AS(safety_reach_kind(test::corpus("a3.json")), PreconditionError);
}

TEST_CASE("semantic determinism")
{
    CHECK(is_semantically_deterministic(test::corpus("a3.json")) == Tristate::yes);
    CHECK(is_semantically_deterministic(from_text(k_split)) == Tristate::no);
    GenSpec s;
    s.seed = 13;
    s.count = 60;
    s.states = 4;
    s.index_low = 1;
    s.index_high = 3;
    for (auto& g : generate(s)) {
        auto a = trim_unreachable(g).automaton;
        if (wins_everywhere(a, 1)) CHECK(is_semantically_deterministic(a) == Tristate::yes);
    }
}

TEST_CASE("good-enough realisability")
{
    // every input has some output that keeps the run accepting
    const char* free = R"({"alphabet":["0/0","0/1","1/0","1/1"],"states":["s","t"],"initial":"s","index":[0,1],
      "transitions":[{"from":"s","letter":"0/0","priority":0,"to":"s"},
                     {"from":"s","letter":"0/1","priority":1,"to":"t"},
                     {"from":"s","letter":"1/0","priority":1,"to":"t"},
                     {"from":"s","letter":"1/1","priority":0,"to":"s"},
                     {"from":"t","letter":"0/0","priority":1,"to":"t"},
                     {"from":"t","letter":"0/1","priority":1,"to":"t"},
                     {"from":"t","letter":"1/0","priority":1,"to":"t"},
                     {"from":"t","letter":"1/1","priority":1,"to":"t"}]})";
    auto d = from_text(free);
    auto split = split_from_names(d);
    CHECK(split[1] == std::pair<std::string, std::string>{"0", "1"});
    CHECK(input_projection(d, split).num_letters() == 2);
    CHECK(ge_realisable(d, split));
    CHECK(ge_reference(d, split));

    // the output must equal the next input, checked one step later
    const char* next = R"({"alphabet":["0/0","0/1","1/0","1/1"],"states":["s","w0","w1","bad"],"initial":"s","index":[0,1],
      "transitions":[{"from":"s","letter":"0/0","priority":0,"to":"w0"},
                     {"from":"s","letter":"1/0","priority":0,"to":"w0"},
                     {"from":"s","letter":"0/1","priority":0,"to":"w1"},
                     {"from":"s","letter":"1/1","priority":0,"to":"w1"},
                     {"from":"w0","letter":"0/0","priority":0,"to":"w0"},
                     {"from":"w0","letter":"0/1","priority":0,"to":"w1"},
                     {"from":"w0","letter":"1/0","priority":1,"to":"bad"},
                     {"from":"w0","letter":"1/1","priority":1,"to":"bad"},
                     {"from":"w1","letter":"1/0","priority":0,"to":"w0"},
                     {"from":"w1","letter":"1/1","priority":0,"to":"w1"},
                     {"from":"w1","letter":"0/0","priority":1,"to":"bad"},
                     {"from":"w1","letter":"0/1","priority":1,"to":"bad"},
                     {"from":"bad","letter":"0/0","priority":1,"to":"bad"},
                     {"from":"bad","letter":"0/1","priority":1,"to":"bad"},
                     {"from":"bad","letter":"1/0","priority":1,"to":"bad"},
                     {"from":"bad","letter":"1/1","priority":1,"to":"bad"}]})";
    auto e = from_text(next);
    auto es = split_from_names(e);
    CHECK_FALSE(ge_realisable(e, es));
    CHECK_FALSE(ge_reference(e, es));
    CHECK_FALSE(decide_hd_reference(input_projection(e, es)).is_hd);
}

TEST_CASE("good-enough realisability needs a deterministic automaton")
{
    auto a = test::corpus("a1.json");
    LetterSplit s{{"0", "0"}, {"0", "1"}, {"1", "0"}};
    CHECK_THROWS(ge_realisable(a, s));
}

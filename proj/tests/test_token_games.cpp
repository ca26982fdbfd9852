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

#include "hdkit/errors.hpp"
#include "hdkit/generate.hpp"
#include "hdkit/token_games.hpp"
#include "support.hpp"

using namespace hdkit;

namespace {

bool
eve_wins(const ParityAutomaton& a, StateId q, std::vector<StateId> p)
{
    return wins_gk(a, TokenConfig{q, std::move(p)}).winner == Player::eve;
}

std::vector<ParityAutomaton>
sample(std::uint64_t seed, unsigned count, unsigned low, unsigned high, unsigned states = 4)
{
    GenSpec s;
    s.seed = seed;
    s.count = count;
    s.states = states;
    s.index_low = low;
    s.index_high = high;
    return generate(s);
}

}  // namespace

TEST_CASE("deterministic automaton")
{
    auto a = test::corpus("a3.json");
    CHECK(eve_wins(a, 0, {0}));
    CHECK(eve_wins(a, 0, {0, 0}));
    CHECK(wins_everywhere(a, 1));
    CHECK(wins_everywhere(a, 2));
    auto g = build_g1_buchi(a);
    CHECK(solve_parity(g.game).eve_wins(g.at(0, 0)));
}

TEST_CASE("copying Adam wins on deterministic automata")
{
    GenSpec s;
    s.seed = 2;
    s.count = 30;
    s.states = 4;
    s.index_low = 0;
    s.index_high = 3;
    for (auto& g : generate(s)) {
        auto a = test::first_choices(g);
        REQUIRE(a.is_deterministic());
        CHECK(eve_wins(a, a.initial(), {a.initial()}));
        CHECK(eve_wins(a, a.initial(), {a.initial(), a.initial()}));
        CHECK(wins_everywhere(a, 2));
    }
}

TEST_CASE("one token is not enough")
{
    auto a = test::corpus("a2.json");
    CHECK(wins_everywhere(a, 1));
    CHECK_FALSE(wins_everywhere(a, 2));
    CHECK_FALSE(eve_wins(a, 0, {0, 0}));
}

TEST_CASE("coBuchi example wins two tokens")
{
    auto a = test::corpus("a1.json");
    CHECK(eve_wins(a, 0, {0, 0}));
    CHECK(wins_everywhere(a, 2));
    CHECK(wins_everywhere(a, 1));
}

TEST_CASE("token count out of range")
{
    auto a = test::corpus("a1.json");
    CHECK_THROWS_AS(wins_gk(a, TokenConfig{0, {}}), PreconditionError);
    CHECK_THROWS_AS(wins_gk(a, TokenConfig{0, {0, 0, 0, 0}}), PreconditionError);
}

TEST_CASE("two and three tokens agree")
{
    for (auto& a : sample(31, 80, 0, 3)) {
        const auto q = a.initial();
        CHECK(eve_wins(a, q, {q, q}) == eve_wins(a, q, {q, q, q}));
    }
}

TEST_CASE("two tokens everywhere implies one token everywhere")
{
    for (auto& a : sample(32, 80, 1, 3))
        if (wins_everywhere(a, 2)) CHECK(wins_everywhere(a, 1));
}

TEST_CASE("one token game implies simulation")
{
    for (auto& a : sample(33, 60, 0, 2, 3)) {
        auto c = coreachability(a);
        for (auto [p, q] : c.pair_list())
            if (eve_wins(a, p, {q})) CHECK(simulates(a, p, a, q).winner == Player::eve);
    }
}

TEST_CASE("simulation implies language inclusion")
{
    auto xs = sample(34, 40, 0, 2, 3);
    auto ys = sample(35, 40, 0, 2, 3);
    for (std::size_t i = 0; i < xs.size(); i++) {
        auto& a = xs[i];
        auto& b = ys[i];
        if (build_simulation(a, b).winner != Player::eve) continue;
        for (auto& w : enumerate_lassos(2, 3))
            if (lasso_member(b, w)) CHECK(lasso_member(a, w));
    }
    auto a = test::corpus("a1.json");
    CHECK(build_simulation(a, a).winner == Player::eve);
    CHECK(simulation_equivalent(a, a));
}

TEST_CASE("simulation needs a common alphabet")
{
    CHECK_THROWS_AS(build_simulation(test::corpus("a1.json"), test::corpus("a2.json")), PreconditionError);
}

TEST_CASE("Buchi one token game matches the generic product")
{
    for (auto& a : sample(36, 100, 0, 1)) {
        auto g = build_g1_buchi(a);
        auto s = solve_parity(g.game);
        auto c = coreachability(a);
        for (StateId q = 0; q < a.num_states(); q++)
            for (StateId p = 0; p < a.num_states(); p++) {
                if (!c.weakly_coreachable(q, p)) {
                    CHECK(g.at(q, p) == NONE);
                    continue;
                }
                REQUIRE(s.eve_wins(g.at(q, p)) == eve_wins(a, q, {p}));
            }
    }
}

TEST_CASE("Buchi game needs Buchi input")
{
    CHECK_THROWS_AS(build_g1_buchi(test::corpus("a1.json")), PreconditionError);
}

TEST_CASE("two token product is branch independent")
{
    for (auto& a : sample(37, 60, 0, 3)) {
        const auto q = a.initial();
        auto p = build_token_product(a, {&a, &a}, {TokenConfig{q, {q, q}}}, ProductOptions{true, false});
        auto s = solve_parity(p.game);
        const auto w = s.winner[p.find(q, {q, q}, 0)];
        for (std::uint32_t b = 0; b < p.tree->num_branches(); b++) CHECK(s.winner[p.find(q, {q, q}, b)] == w);
    }
}

TEST_CASE("rank information")
{
    for (auto& a : sample(38, 60, 0, 2)) {
        if (!wins_everywhere(a, 2)) {
            CHECK_THROWS_AS(state_rank_info(a), PreconditionError);
            continue;
        }
        auto r = state_rank_info(a);
        auto c = coreachability(a);
        for (StateId q = 0; q < a.num_states(); q++) {
            if (c.class_of(q) == NONE) continue;
            CHECK(r.opt[q] != RANK_INF);
            if (r.right[q]) CHECK(r.opt[q] == 0);
        }
    }
}

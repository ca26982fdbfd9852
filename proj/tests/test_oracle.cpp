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
#include <cstdlib>
#include <numeric>
#include <random>

#include "hdkit/errors.hpp"
#include "hdkit/generate.hpp"
#include "hdkit/oracle.hpp"
#include "support.hpp"

using namespace hdkit;

namespace {

std::vector<ParityAutomaton>
sample(std::uint64_t seed, unsigned count, unsigned low, unsigned high, unsigned states)
{
    GenSpec s;
    s.seed = seed;
    s.count = count;
    s.states = states;
    s.index_low = low;
    s.index_high = high;
    return generate(s);
}

ParityAutomaton
permuted(const ParityAutomaton& a, std::mt19937_64& rng)
{
    std::vector<StateId> perm(a.num_states());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto p = a.parts();
    AutomatonParts r = p;
    for (StateId q = 0; q < a.num_states(); q++) r.states[perm[q]] = "r" + p.states[q];
    r.initial = perm[p.initial];
    for (auto& t : r.transitions) {
        t.from = perm[t.from];
        t.to = perm[t.to];
    }
    return ParityAutomaton(r);
}

}  // namespace

TEST_CASE("Buchi translation and determinisation keep the language")
{
    for (auto& a : sample(51, 40, 0, 3, 4)) {
        auto b = parity_to_buchi(a);
        CHECK(b.index_low() == 0);
        CHECK(b.index_high() <= 1);
        auto d = determinise_buchi(b);
        CHECK(d.is_deterministic());
        for (auto& w : enumerate_lassos(2, 3)) {
            const bool x = lasso_member(a, w);
            REQUIRE(lasso_member(b, w) == x);
            REQUIRE(lasso_member(d, w) == x);
        }
    }
}

TEST_CASE("reference verdicts on the corpus")
{
    CHECK(decide_hd_reference(test::corpus("a1.json")).is_hd);
    CHECK_FALSE(decide_hd_reference(test::corpus("a2.json")).is_hd);
    CHECK(decide_hd_reference(test::corpus("a3.json")).is_hd);
    CHECK(explorable_reference(test::corpus("a2.json"), 1) == false);
    CHECK(explorable_reference(test::corpus("a1.json"), 2));
}

TEST_CASE("reference is invariant under shift and renaming")
{
    std::mt19937_64 rng(52);
    for (auto& a : sample(52, 40, 1, 3, 4)) {
        const bool hd = decide_hd_reference(a).is_hd;
        CHECK(decide_hd_reference(shift_priorities(a, 2)).is_hd == hd);
        CHECK(decide_hd_reference(permuted(a, rng)).is_hd == hd);
        CHECK(explorable_reference(a, 1) == hd);
    }
}

TEST_CASE("guard from the environment")
{
    const char* old = std::getenv("HDKIT_GUARD");
    const std::string saved = old ? old : "";
    setenv("HDKIT_GUARD", "1", 1);
    CHECK(oracle_guard() == 1);
    CHECK_THROWS_AS(determinise_buchi(parity_to_buchi(test::corpus("a1.json"))), ResourceLimit);
    setenv("HDKIT_GUARD", "junk", 1);
    CHECK(oracle_guard() == 10);
    if (old) setenv("HDKIT_GUARD", saved.c_str(), 1);
    else unsetenv("HDKIT_GUARD");
}

TEST_CASE("infinite brute ranks only where Adam wins")
{
    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; i++) {
        auto g = test::random_game(rng, 1 + rng() % 7, 3);
        auto r = brute_ranks(g);
        auto w = brute_solve_parity(g);
        for (std::uint32_t v = 0; v < g.num_vertices(); v++)
            if (r[v] == RANK_INF) CHECK(w[v] == Player::adam);
        for (std::uint32_t v = 0; v < g.num_vertices(); v++) CHECK(brute_rank(g, v) == r[v]);
    }
}

TEST_CASE("brute force guards")
{
    ParityGame g;
    for (int v = 0; v < 13; v++) g.add_vertex(Player::eve);
    for (std::uint32_t v = 0; v < 13; v++) g.add_edge(v, v, 0);
    g.finalise();
    CHECK_THROWS_AS(brute_solve_parity(g), ResourceLimit);
}

TEST_CASE("brute lasso membership on the first example")
{
    auto a = test::corpus("a1.json");
    CHECK(brute_lasso_member(a, 0, Lasso{{}, {0}}));
    CHECK_FALSE(brute_lasso_member(a, 0, Lasso{{}, {1, 2}}));
}

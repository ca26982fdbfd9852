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

#include <random>
#include <set>

#include "hdkit/errors.hpp"
#include "hdkit/game.hpp"
#include "hdkit/oracle.hpp"
#include "hdkit/zielonka.hpp"
#include "support.hpp"

using namespace hdkit;

namespace {

// The condition over {1,2,3,4} used in the worked Zielonka example, colours shifted to 0..3.
MullerCondition
example_condition()
{
    return [](std::uint32_t m) {
        for (std::uint32_t f : {0b1111u, 0b1110u, 0b0011u, 0b0110u, 0b1100u, 0b0001u, 0b0010u})
            if (f == m) return true;
        return false;
    };
}

std::string
path_string(const ZielonkaTree& t, std::uint32_t b)
{
    std::string s;
    for (auto v : t.branch(b)) s += t.label_string(v);
    return s;
}

bool
mask_in(const std::set<std::uint32_t>& f, std::uint32_t m)
{
    return f.count(m) != 0;
}

}  // namespace

TEST_CASE("single vertex games")
{
    ParityGame g;
    g.add_vertex(Player::eve);
    g.add_edge(0, 0, 0);
    g.finalise();
    CHECK(solve_parity(g).eve_wins(0));

    ParityGame h;
    h.add_vertex(Player::adam);
    h.add_edge(0, 0, 1);
    h.finalise();
    CHECK_FALSE(solve_parity(h).eve_wins(0));
}

TEST_CASE("dead ends are rejected")
{
    ParityGame g;
    g.add_vertex(Player::eve);
    g.add_vertex(Player::adam);
    g.add_edge(0, 1, 0);
    CHECK_THROWS(g.finalise());
}

TEST_CASE("solver agrees with exhaustive search")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 400; i++) {
        auto g = test::random_game(rng, 1 + rng() % 6, 4);
        auto s = solve_parity(g);
        REQUIRE(s.winner == brute_solve_parity(g));
        std::vector<bool> eve(g.num_vertices()), adam(g.num_vertices());
        for (std::uint32_t v = 0; v < g.num_vertices(); v++) {
            eve[v] = s.eve_wins(v);
            adam[v] = !eve[v];
        }
        CHECK(strategy_wins_on(g, Player::eve, s.eve, eve));
        CHECK(strategy_wins_on(g, Player::adam, s.adam, adam));
    }
}

TEST_CASE("ranks of small games")
{
    ParityGame g;
    g.add_vertex(Player::eve);
    g.add_edge(0, 0, 0);
    g.finalise();
    CHECK(compute_ranks(g).rank == std::vector<std::uint32_t>{0});

    ParityGame h;  // Adam -1-> Eve -0-> back
    h.add_vertex(Player::adam);
    h.add_vertex(Player::eve);
    h.add_edge(0, 1, 1);
    h.add_edge(1, 0, 0);
    h.finalise();
    CHECK(compute_ranks(h).rank == std::vector<std::uint32_t>{1, 0});
    CHECK(brute_ranks(h) == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("rank strategy must also win")
{
    // Looping on 3 avoids every 1-edge but loses; the winning route costs one.
    ParityGame g;
    g.add_vertex(Player::eve);
    g.add_vertex(Player::eve);
    g.add_edge(0, 0, 3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 0, 0);
    g.finalise();
    auto r = compute_ranks(g);
    CHECK(r.rank == std::vector<std::uint32_t>{1, 0});
    CHECK(g.priority(r.optimal.choice[0]) == 1);
    CHECK(brute_ranks(g) == r.rank);
    CHECK(ranks_monotone(g, r));
}

TEST_CASE("ranks need Eve winning everywhere")
{
    ParityGame h;
    h.add_vertex(Player::adam);
    h.add_edge(0, 0, 1);
    h.finalise();
    CHECK_THROWS_AS(compute_ranks(h), PreconditionError);
    CHECK(brute_ranks(h)[0] == RANK_INF);
}

TEST_CASE("ranks agree with brute force")
{
    std::mt19937_64 rng(4);
    int tested = 0;
    while (tested < 150) {
        auto g = test::random_game(rng, 2 + rng() % 7, 3);
        if (!test::eve_wins_all(solve_parity(g))) continue;
        tested++;
        auto r = compute_ranks(g);
        REQUIRE(r.rank == brute_ranks(g));
        CHECK(ranks_monotone(g, r));
    }
}

TEST_CASE("worked Zielonka tree")
{
    auto t = build_zielonka_generic(4, example_condition());
    CHECK(t.canonical_ordered() == "{0,1,2,3}[{0,1,2}[{0,1};{1,2}[{2}]];{0,1,3}[{0,1}];{0,2,3}[{0};{2,3}[{2};{3}]]]");
    CHECK(t.node(0).prioritydepth == 0);
    for (auto& n : t.nodes()) CHECK(n.prioritydepth % 2 == (n.accepting ? 0u : 1u));

    auto [b4, p4] = t.successor(0, 3);
    CHECK(p4 == 0);
    CHECK(path_string(t, b4) == "{0,1,2,3}{0,1,3}{0,1}");
    auto [b3, p3] = t.successor(0, 2);
    CHECK(p3 == 1);
    CHECK(path_string(t, b3) == "{0,1,2,3}{0,1,2}{1,2}{2}");
    for (std::uint32_t b = 0; b < t.num_branches(); b++)
        for (std::uint32_t c = 0; c < 4; c++) CHECK(t.successor(b, c) == t.successor_slow(b, c));
}

TEST_CASE("one colour trees")
{
    auto acc = build_zielonka_generic(1, [](std::uint32_t m) { return m == 1; });
    CHECK(acc.nodes().size() == 1);
    CHECK(acc.node(0).prioritydepth == 0);
    CHECK(acc.successor(0, 0) == std::pair<std::uint32_t, unsigned>{0, 0});
    auto rej = build_zielonka_generic(1, [](std::uint32_t) { return false; });
    CHECK(rej.nodes().size() == 1);
    CHECK(rej.node(0).prioritydepth == 1);
    CHECK(rej.successor(0, 0).second == 1);
}

TEST_CASE("generic builder guard")
{
    CHECK_THROWS_AS(build_zielonka_generic(13, [](std::uint32_t) { return false; }), ResourceLimit);
}

TEST_CASE("token tree layers")
{
    for (unsigned K = 2; K <= 4; K++) {
        auto t = build_zielonka_token(K, 2);
        CHECK(t.label_string(0) == "(0,0,0)");
        REQUIRE(t.node(0).children.size() == 1);
        auto c = t.node(0).children[0];
        CHECK(t.label_string(c) == "(1,0,0)");
        REQUIRE(t.node(c).children.size() == 2);
        CHECK(t.label_string(t.node(c).children[0]) == "(2,0,0)");
        CHECK(t.label_string(t.node(c).children[1]) == "(1,1,1)");
    }
}

TEST_CASE("token trees agree with the generic builder")
{
    for (auto [K, k] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}, {2, 1}}) {
        auto z = build_zielonka_token(K, k);
        auto g = build_zielonka_generic(z.num_colours(), token_condition(K, k));
        CHECK(z.canonical_unordered() == g.canonical_unordered());
    }
    for (unsigned k = 1; k <= 3; k++)
        for (unsigned K = 1; K <= 4; K++) {
            auto z = build_zielonka_token(K, k);
            auto y = build_zielonka_boxes(K, k + 1, token_corner_accepting);
            CHECK(z.canonical_ordered() == y.canonical_ordered());
        }
}

TEST_CASE("single token branch")
{
    auto t = build_zielonka_token(1, 1);
    CHECK(t.num_branches() == 1);
    CHECK(path_string(t, 0) == "(0,0)(1,0)(1,1)");
    CHECK(t.max_prioritydepth() == 2);
}

TEST_CASE("token tree parameter guard")
{
    CHECK_THROWS(build_zielonka_token(0, 1));
    CHECK_THROWS(build_zielonka_token(2, 4));
}

TEST_CASE("branch runs decide the Muller condition")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 60; i++) {
        const std::uint32_t n = 1 + rng() % 4;
        std::set<std::uint32_t> f;
        for (std::uint32_t m = 1; m < (1u << n); m++)
            if (rng() % 2) f.insert(m);
        auto t = build_zielonka_generic(n, [&](std::uint32_t m) { return mask_in(f, m); });
        std::vector<std::uint32_t> u, v;
        for (std::size_t lu = 0; lu <= 3; lu++)
            for (std::size_t lv = 1; lv <= 3; lv++)
            {
                std::uint32_t total = 1;
                for (std::size_t j = 0; j < lu + lv; j++) total *= n;
                for (std::uint32_t code = 0; code < total; code++) {
                    u.clear();
                    v.clear();
                    std::uint32_t x = code;
                    for (std::size_t j = 0; j < lu; j++, x /= n) u.push_back(x % n);
                    std::uint32_t inf = 0;
                    for (std::size_t j = 0; j < lv; j++, x /= n) {
                        v.push_back(x % n);
                        inf |= 1u << (x % n);
                    }
                    REQUIRE((dcf_lasso_priority(t, u, v) % 2 == 0) == mask_in(f, inf));
                }
            }
    }
}

TEST_CASE("Muller product of a single loop")
{
    for (bool accept : {true, false}) {
        MullerGame m;
        m.colours = 1;
        m.add_vertex(Player::eve);
        m.add_edge(0, 0, 0);
        m.condition = [accept](std::uint32_t s) { return accept && s == 1; };
        auto t = build_zielonka_generic(1, m.condition);
        auto g = muller_to_parity(m, t);
        CHECK(solve_parity(g).eve_wins(g.initial) == accept);
    }
}

TEST_CASE("Muller products are branch independent")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; i++) {
        MullerGame m;
        m.colours = 1 + rng() % 3;
        const std::uint32_t n = 1 + rng() % 4;
        for (std::uint32_t v = 0; v < n; v++) m.add_vertex(rng() % 2 ? Player::eve : Player::adam);
        for (std::uint32_t v = 0; v < n; v++)
            for (unsigned d = 0, e = 1 + rng() % 2; d < e; d++) m.add_edge(v, rng() % n, rng() % m.colours);
        std::set<std::uint32_t> f;
        for (std::uint32_t s = 1; s < (1u << m.colours); s++)
            if (rng() % 2) f.insert(s);
        m.condition = [f](std::uint32_t s) { return f.count(s) != 0; };
        auto t = build_zielonka_generic(m.colours, m.condition);
        auto g = muller_to_parity(m, t);
        auto s = solve_parity(g);
        auto direct = brute_solve_muller(m);
        for (std::uint32_t v = 0; v < n; v++)
            for (std::uint32_t b = 0; b < t.num_branches(); b++)
                REQUIRE(s.winner[v * t.num_branches() + b] == direct[v]);
    }
}

TEST_CASE("game json")
{
    ParityGame g;
    g.add_vertex(Player::eve);
    g.add_vertex(Player::adam);
    g.add_edge(0, 1, 2);
    g.add_edge(1, 0, 1);
    g.finalise();
    auto j = game_to_json(g);
    CHECK(j.dump().find("\"edges\"") != std::string::npos);
}

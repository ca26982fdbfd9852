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

#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hdkit/automaton.hpp"
#include "hdkit/game.hpp"
#include "hdkit/zielonka.hpp"

namespace hdkit {

struct TokenConfig
{
    StateId eve = 0;
    std::vector<StateId> adam;
};

/**
 * What a product vertex stands for. kind 1: round start (Adam picks a
 * letter); kind 2: letter chosen; kind 3: a transition chosen (Eve's in
 * token games, Adam's in the simulation game).
 */
struct ProductVertex
{
    std::uint8_t kind = 1;
    StateId q = NONE;
    std::array<StateId, 3> p{NONE, NONE, NONE};
    std::uint32_t branch = 0;
    LetterId letter = NONE;
    TransId eve_t = NONE;
    TransId adam_t = NONE;
};

/** Parity game obtained from a token (or simulation) game and a token Zielonka tree. */
struct TokenProduct
{
    ParityGame game;
    const ZielonkaTree* tree = nullptr;
    unsigned k = 1;
    unsigned shift = 0;
    bool simulation = false;
    std::vector<ProductVertex> info;
    std::vector<std::uint32_t> v1s;

    std::uint32_t find(StateId q, const std::vector<StateId>& p, std::uint32_t branch) const;
    /** The vertex after Adam plays letter a at round-start vertex v1. */
    std::uint32_t after_letter(std::uint32_t v1, LetterId a) const { return game.to(game.out(v1)[a]); }

    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::uint64_t> radix;
    std::uint64_t key(StateId q, const StateId* p, std::uint32_t branch) const;
};

struct ProductOptions
{
    bool all_branches = false;  // start from every branch, not only the leftmost
    bool simulation = false;    // Adam moves before Eve; needs exactly one Adam automaton
};

/** The token tree for [0,K] and k Adam tokens, built once per process. */
const ZielonkaTree& token_tree(unsigned K, unsigned k);

/**
 * Explores the product forward from the given configurations. Priorities
 * are shifted down by an even amount so that they start at 0 or 1.
 */
TokenProduct build_token_product(const ParityAutomaton& eve, const std::vector<const ParityAutomaton*>& adam,
                                 const std::vector<TokenConfig>& starts, ProductOptions options);

struct TokenGameResult
{
    Player winner = Player::adam;
    TokenProduct product;
    ParitySolution solution;
    std::uint32_t start = 0;
};

/** Gk(eve, q; adam_1, p_1, ...); 1 <= k <= 3. */
TokenGameResult wins_tokens(const ParityAutomaton& eve, StateId q, const std::vector<const ParityAutomaton*>& adam,
                            const std::vector<StateId>& p);
/** Gk(q; p_1, ..., p_k) within one automaton. */
TokenGameResult wins_gk(const ParityAutomaton& a, const TokenConfig& cfg);

std::vector<TokenConfig> weakly_coreachable_tuples(const ParityAutomaton& a, unsigned k);

/** Eve wins Gk from every tuple of weakly coreachable states; k in {1,2,3}. */
bool wins_everywhere(const ParityAutomaton& a, unsigned k);

/** Whether (a, p) simulates (b, q). */
TokenGameResult simulates(const ParityAutomaton& a, StateId p, const ParityAutomaton& b, StateId q);
/** The simulation game of b by a from the initial states. */
TokenGameResult build_simulation(const ParityAutomaton& a, const ParityAutomaton& b);
bool simulation_equivalent(const ParityAutomaton& a, const ParityAutomaton& b);

/** The [0,2] game for the 1-token game on a Büchi automaton. */
struct BuchiGame
{
    ParityGame game;
    std::vector<ProductVertex> info;
    std::vector<std::uint32_t> v1;  // q * |Q| + p -> vertex, NONE if not weakly coreachable
    std::size_t n = 0;

    std::uint32_t at(StateId q, StateId p) const { return v1[q * n + p]; }
};

BuchiGame build_g1_buchi(const ParityAutomaton& a);

/** opt(q): least rank of (q, p) over weakly coreachable p. */
std::vector<std::uint32_t> buchi_opt(const BuchiGame& g, const RankTable& r);

/** The Zielonka product of the 2-token game from all weakly coreachable triples and branches. */
TokenProduct build_g2_product(const ParityAutomaton& a);

bool is_right_branch(const ZielonkaTree& t, std::uint32_t b);

struct StateRankInfo
{
    std::vector<std::uint32_t> opt;
    std::vector<std::array<std::uint32_t, 3>> witness;  // (p, r, branch)
    std::vector<bool> right;
};

struct G2Analysis
{
    TokenProduct product;
    ParitySolution solution;
    RankTable ranks;
    StateRankInfo info;
};

/** Requires Eve to win the 2-token game from everywhere (PreconditionError). */
G2Analysis analyse_g2(const ParityAutomaton& a);
StateRankInfo state_rank_info(const ParityAutomaton& a);

} // namespace hdkit

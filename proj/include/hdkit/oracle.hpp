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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hdkit/automaton.hpp"
#include "hdkit/game.hpp"
#include "hdkit/zielonka.hpp"

namespace hdkit {

/*
 * Brute-force references. Nothing here uses the token games or the
 * normalisation code.
 */

/** Live-state limit for determinisation: HDKIT_GUARD if set, else 10. */
std::size_t oracle_guard();

/** Nondeterministic Büchi automaton ([0,1]) with the same language. */
ParityAutomaton parity_to_buchi(const ParityAutomaton& a);

/**
 * Safra-style determinisation of a Büchi automaton with accepting (priority
 * 0) transitions, followed by priority minimisation. Throws ResourceLimit
 * when the automaton has more live states than the guard.
 */
ParityAutomaton determinise_buchi(const ParityAutomaton& b);

/** Renumbers priorities of a deterministic automaton along its SCC structure. */
ParityAutomaton minimise_priorities(const ParityAutomaton& d);

struct OracleVerdict
{
    bool is_hd = false;
    std::size_t buchi_states = 0;
    std::size_t det_states = 0;
    std::size_t game_vertices = 0;
};

/** Solves the letter game against a deterministic automaton for L(a). */
OracleVerdict decide_hd_reference(const ParityAutomaton& a);

/** Whether Eve wins the k-token letter game (k = 1 is the HD game); k in {1,2}. */
bool explorable_reference(const ParityAutomaton& a, unsigned k);

/** Exhaustive positional-strategy search; at most 12 vertices. */
std::vector<Player> brute_solve_parity(const ParityGame& g);

/** Search over Eve strategies with Zielonka-tree memory; at most 12 vertices. */
std::vector<Player> brute_solve_muller(const MullerGame& m);

/** Max-min count of priority-1 edges before a priority-0 edge; RANK_INF if unbounded. */
std::uint32_t brute_rank(const ParityGame& g, std::uint32_t v);
std::vector<std::uint32_t> brute_ranks(const ParityGame& g);

/** Lasso membership by closure over the unrolled run graph. */
bool brute_lasso_member(const ParityAutomaton& a, StateId q, const Lasso& w);

/** Each letter as an (input, output) pair of names. */
using LetterSplit = std::vector<std::pair<std::string, std::string>>;

/**
 * Good-enough realisability by a direct game: Adam plays inputs, Eve
 * outputs, and Eve must produce an accepting run of d whenever the input
 * word has some accepting completion.
 */
bool ge_reference(const ParityAutomaton& d, const LetterSplit& split);

} // namespace hdkit

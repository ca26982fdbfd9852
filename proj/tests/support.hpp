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

#include <random>
#include <string>

#include "hdkit/automaton.hpp"
#include "hdkit/automaton_io.hpp"
#include "hdkit/game.hpp"

namespace hdkit::test {

inline ParityAutomaton
corpus(const std::string& name)
{
    const std::string path = std::string(HDKIT_CORPUS_DIR) + "/" + name;
    const auto text = read_file(path);
    return parse_automaton(text, detect_format(text));
}

/* Keeps the first transition of every state and letter. */
inline ParityAutomaton
first_choices(const ParityAutomaton& a)
{
    std::vector<bool> keep(a.num_transitions(), false);
    for (StateId q = 0; q < a.num_states(); q++)
        for (LetterId l = 0; l < a.num_letters(); l++) keep[a.out(q, l)[0]] = true;
    return restrict_transitions(a, keep).automaton;
}

/* n vertices, 1 or 2 edges each, priorities below maxp. */
inline ParityGame
random_game(std::mt19937_64& rng, unsigned n, unsigned maxp)
{
    ParityGame g;
    for (unsigned v = 0; v < n; v++) g.add_vertex(rng() % 2 ? Player::eve : Player::adam);
    for (unsigned v = 0; v < n; v++) {
        const unsigned d = 1 + rng() % 2;
        for (unsigned j = 0; j < d; j++) g.add_edge(v, rng() % n, rng() % maxp);
    }
    g.finalise();
    return g;
}

inline bool
eve_wins_all(const ParitySolution& s)
{
    for (auto w : s.winner)
        if (w != Player::eve) return false;
    return true;
}

} // namespace hdkit::test

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
#include <random>
#include <vector>

#include "hdkit/automaton.hpp"

namespace hdkit {

struct GenSpec
{
    std::uint64_t seed = 1;
    unsigned states = 3;
    unsigned letters = 2;
    unsigned index_low = 0;
    unsigned index_high = 2;
    double density = 0.3;
    unsigned count = 1;
};

/* Uniform draw in [0, n); same sequence on every platform. */
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n);

/* Bernoulli draw with probability p. */
bool draw_chance(std::mt19937_64& rng, double p);

/*
 * Complete random automata: one transition per state and letter, then
 * each target is added again with probability density.
 */
std::vector<ParityAutomaton> generate(const GenSpec& spec);

ParityAutomaton random_automaton(std::mt19937_64& rng, const GenSpec& spec);

} // namespace hdkit

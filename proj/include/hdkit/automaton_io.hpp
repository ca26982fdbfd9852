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

#include <string>
#include <string_view>

#include <json.hpp>

#include "hdkit/automaton.hpp"

namespace hdkit {

enum class Format { native, hoa };

/** Parses and validates; see ParityAutomaton::from_parts for with_sink. */
ParityAutomaton parse_automaton(std::string_view text, Format format, bool complete_with_sink = false);
ParityAutomaton automaton_from_json(const nlohmann::json& j, bool complete_with_sink = false);

nlohmann::ordered_json automaton_to_json(const ParityAutomaton& a);
std::string serialise_native(const ParityAutomaton& a);
std::string serialise_hoa(const ParityAutomaton& a);

/** Lasso text form "u;v", letters separated by blanks. */
Lasso parse_lasso(std::string_view text, const ParityAutomaton& a);
std::string format_lasso(const Lasso& w, const ParityAutomaton& a);

/** Whole file contents; throws ParseError when unreadable. */
std::string read_file(const std::string& path);

/** Guesses the format from the first non-blank characters. */
Format detect_format(std::string_view text);

} // namespace hdkit

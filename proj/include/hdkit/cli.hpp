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

#include <iosfwd>
#include <string>
#include <vector>

namespace hdkit {

/**
 * The hdkit command line. JSON goes to out, diagnostics to err. Returns the
 * exit status: 0 success (whatever the verdict), 1 internal error, 2 parse
 * error, 3 precondition violation, 4 resource limit.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hdkit

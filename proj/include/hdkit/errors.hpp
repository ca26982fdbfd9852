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

#include <stdexcept>
#include <string>

namespace hdkit {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/** Malformed or invalid input document (CLI exit code 2). */
class ParseError : public Error
{
  public:
    using Error::Error;
};

/** An operation was called outside its domain (CLI exit code 3). */
class PreconditionError : public Error
{
  public:
    using Error::Error;
};

/** A size guard was exceeded (CLI exit code 4). */
class ResourceLimit : public Error
{
  public:
    using Error::Error;
};

/** A postcondition that should hold by construction failed. */
class InternalError : public Error
{
  public:
    using Error::Error;
};

#define HDKIT_ASSERT(cond, msg)                                                \
    do {                                                                       \
        if (!(cond)) throw ::hdkit::InternalError(std::string(msg));           \
    } while (0)

} // namespace hdkit

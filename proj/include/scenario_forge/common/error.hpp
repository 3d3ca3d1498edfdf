// Copyright 2026 The Scenario Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENARIO_FORGE__COMMON__ERROR_HPP_
#define SCENARIO_FORGE__COMMON__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace scenario_forge
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error
{
public:
  using Error::Error;
};

/// Input text or document does not follow the expected format.
class FormatError : public Error
{
public:
  using Error::Error;
};

/// Input is well-formed but violates a domain rule (range, reference, precondition).
class DomainError : public Error
{
public:
  using Error::Error;
};

}  // namespace scenario_forge

#endif  // SCENARIO_FORGE__COMMON__ERROR_HPP_

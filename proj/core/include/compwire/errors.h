// Copyright 2026 The compwire Authors.
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

#ifndef COMPWIRE_ERRORS_H_
#define COMPWIRE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compwire {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, non-finite values, enumeration cap
// exceeded, unreadable files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a polynomial expression or table file. `position` is a
// 0-based byte offset (expressions) or 1-based line number (tables).
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A mathematical precondition of an operation does not hold (variance too
// large, influence above the declared epsilon, non-Boolean function, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace compwire

#endif  // COMPWIRE_ERRORS_H_

// Copyright 2026 The Kennedy Receiver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KENNEDY_ERRORS_H
#define KENNEDY_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kennedy {

/// Raised when an argument violates an operation's precondition or a type
/// invariant (negative photon number, unsorted grid, length mismatch, ...).
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the model fit has too little information to pin both parameters.
class FitUnderdetermined : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
    kMissingHeader,
    kMalformedLine,
    kNonMonotone,
    kIo,
};

/// Text-format parse failure. `line()` is 1-based and counts the header line.
class ParseError : public std::runtime_error {
   public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string &what)
        : std::runtime_error(what), kind_(kind), line_(line) {}

    ParseErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

   private:
    ParseErrorKind kind_;
    std::size_t line_;
};

}  // namespace kennedy

#endif  // KENNEDY_ERRORS_H

// Copyright 2026 the qdel authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdel {

/// Base class for all qdel errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix expected to be Hermitian failed the symmetry check.
class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

/// An iterative solver exceeded its iteration cap.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A state vector or density operator failed its normalization check.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Machine parameters violate a bound or normalization invariant.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// A parameter file is malformed (bad syntax, unknown key, bound violation).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string key)
      : Error(what), line_(line), key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_ = 0;
  std::string key_;
};

/// A loaded amplitude block does not have unit norm.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdel

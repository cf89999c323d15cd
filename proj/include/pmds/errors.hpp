// Copyright 2026 The pmds-raid Authors
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

#include <stdexcept>
#include <string>

namespace pmds {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands come from different algebras.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested algebra is malformed: reducible field modulus, composite p, or
/// an unsupported width.
class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class ParameterViolation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class DecodeFailureReason { BeyondCapability, UncorrectablePattern };

class DecodeFailure : public Error {
 public:
  DecodeFailure(DecodeFailureReason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  DecodeFailureReason reason() const noexcept { return reason_; }

 private:
  DecodeFailureReason reason_;
};

enum class FormatErrorKind { BadMagic, BadVersion, BadParams, HeaderMismatch, Truncated, BadSymbol, Io };

/// Malformed container, device file, sidecar or serialized symbol.
class FormatError : public Error {
 public:
  FormatError(FormatErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}

  FormatErrorKind kind() const noexcept { return kind_; }

 private:
  FormatErrorKind kind_;
};

}  // namespace pmds

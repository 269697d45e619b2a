// Copyright 2026 The koopq Authors
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

namespace koopq {

/// Broad failure classes. The CLI maps each onto a process exit code.
enum class ErrorKind {
    Config = 2,
    Data = 3,
    Numerical = 4,
    Verification = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string &what) : Error(ErrorKind::Config, what) {}
};

/// Malformed input document. `field()` names the offending key path.
class ParseError : public Error {
  public:
    ParseError(std::string field, const std::string &what)
        : Error(ErrorKind::Data, "parse error at '" + field + "': " + what),
          field_(std::move(field)) {}

    [[nodiscard]] const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &what) : Error(ErrorKind::Data, what) {}
};

/// Shape or length mismatch between inputs.
class SizingError : public Error {
  public:
    explicit SizingError(const std::string &what) : Error(ErrorKind::Data, what) {}
};

class IoError : public Error {
  public:
    IoError(std::string path, const std::string &what)
        : Error(ErrorKind::Data, what + ": " + path), path_(std::move(path)) {}

    [[nodiscard]] const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

class NumericalError : public Error {
  public:
    explicit NumericalError(const std::string &what) : Error(ErrorKind::Numerical, what) {}
};

/// Overflow or loss of range in a matrix function.
class RangeError : public NumericalError {
  public:
    explicit RangeError(const std::string &what) : NumericalError("range error: " + what) {}
};

/// Rank-deficient Gram or basis; `index()` names the dependent element.
class DegeneracyError : public NumericalError {
  public:
    DegeneracyError(std::size_t index, const std::string &what)
        : NumericalError(what), index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

/// Input outside the class an operation supports (e.g. a defective matrix).
class UnsupportedInputError : public Error {
  public:
    explicit UnsupportedInputError(const std::string &what) : Error(ErrorKind::Data, what) {}
};

class VerificationFailure : public Error {
  public:
    explicit VerificationFailure(const std::string &what)
        : Error(ErrorKind::Verification, what) {}
};

} // namespace koopq

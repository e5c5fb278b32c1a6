/*
 * Copyright 2026 The avgcoreset Authors.
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
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avgcoreset {

// Base for every failure raised by the library. Configuration mistakes derive
// from InvalidInput, numerical breakdowns from NumericalError; the CLI maps the
// two families to distinct exit codes.
class CoresetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public CoresetError {
 public:
  using CoresetError::CoresetError;
};

class NumericalError : public CoresetError {
 public:
  using CoresetError::CoresetError;
};

/// Weighted variance is (numerically) zero; every point coincides with the mean.
class DegenerateVariance : public NumericalError {
 public:
  DegenerateVariance() : NumericalError("weighted variance is zero (all points coincide)") {}
};

class UnitBallViolation : public InvalidInput {
 public:
  UnitBallViolation(std::size_t index, double norm)
      : InvalidInput("point " + std::to_string(index) + " has norm " + std::to_string(norm) +
                     " > 1"),
        index_(index),
        norm_(norm) {}

  std::size_t index() const { return index_; }
  double norm() const { return norm_; }

 private:
  std::size_t index_;
  double norm_;
};

class ConvergenceFailure : public NumericalError {
 public:
  explicit ConvergenceFailure(int sweeps)
      : NumericalError("Jacobi SVD did not converge after " + std::to_string(sweeps) + " sweeps") {}
};

class RankTooLow : public NumericalError {
 public:
  RankTooLow() : NumericalError("trailing singular block is zero") {}
};

class ExactRankCase : public NumericalError {
 public:
  ExactRankCase() : NumericalError("optimal k-SVD cost is zero but the coreset subspace is not") {}
};

class EmptyStream : public InvalidInput {
 public:
  EmptyStream() : InvalidInput("stream has not seen any point") {}
};

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InvalidInput("parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  // Both 1-based.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class RaggedRows : public InvalidInput {
 public:
  RaggedRows(std::size_t line, std::size_t expected, std::size_t got)
      : InvalidInput("line " + std::to_string(line) + " has " + std::to_string(got) +
                     " fields, expected " + std::to_string(expected)),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace avgcoreset

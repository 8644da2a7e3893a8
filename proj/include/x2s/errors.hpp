// Copyright 2026 The x2static Authors. All rights reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace x2s {

/// Base for every recoverable data or format problem. The CLI maps these to
/// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition (dimension mismatch and the like).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : Error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::uint64_t record_index)
      : Error(what + " (record " + std::to_string(record_index) + ")"),
        record_index_(record_index) {}
  std::uint64_t record_index() const { return record_index_; }

 private:
  std::uint64_t record_index_;
};

class EmptyVocabulary : public Error {
 public:
  EmptyVocabulary() : Error("vocabulary is empty after filtering") {}
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class NonFiniteGradient : public Error {
 public:
  NonFiniteGradient(std::uint32_t row, std::uint64_t batch)
      : Error("non-finite gradient for row " + std::to_string(row) +
              " in batch " + std::to_string(batch)),
        row_(row),
        batch_(batch) {}
  std::uint32_t row() const { return row_; }
  std::uint64_t batch() const { return batch_; }

 private:
  std::uint32_t row_;
  std::uint64_t batch_;
};

class InsufficientCoverage : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

}  // namespace x2s

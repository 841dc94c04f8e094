// Copyright 2026 The Derivata Authors
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

#ifndef DERIVATA_ERRORS_HPP
#define DERIVATA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace derivata {

// Manifest and text ingestion failures. CLI exit code 3.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateIdError final : public IngestError {
 public:
  explicit DuplicateIdError(const std::string& id)
      : IngestError("duplicate document id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class DanglingReferenceError final : public IngestError {
 public:
  explicit DanglingReferenceError(const std::string& id)
      : IngestError("reference to unknown id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Document has no recognizable section structure.
class SegmentationError final : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fingerprint index cannot be built (input shorter than one k-gram).
class IndexError final : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixture CSV is malformed or fails the section-sum integrity check.
// CLI exit code 5.
class FixtureIntegrityError final : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Statistical input on which the requested quantity is undefined
// (constant vector, single-class labels, empty group). CLI exit code 4.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyGroupError final : public DegenerateInputError {
 public:
  using DegenerateInputError::DegenerateInputError;
};

class PositionError final : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGoldIdError final : public std::runtime_error {
 public:
  explicit UnknownGoldIdError(const std::string& id)
      : std::runtime_error("gold label for unknown article id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Bad CLI or RunConfig values. CLI exit code 2.
class ConfigError final : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace derivata

#endif  // DERIVATA_ERRORS_HPP

// Copyright 2026 The SCPOS Toolkit Authors.
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

#ifndef SCPOS_ERROR_H_
#define SCPOS_ERROR_H_

#include <stdexcept>
#include <string>

namespace scpos {

// Base of all toolkit errors. The category maps onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Category { kValidation = 1, kIo = 2, kEndpoint = 3 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const { return category_; }

 private:
  Category category_;
};

// Malformed or schema-invalid input data, violated preconditions.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(Category::kValidation, what) {}
};

// Unreadable or unwritable files.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Category::kIo, what) {}
};

// Generation endpoint failures: exhausted retries, non-retryable status,
// malformed response body, replay cache miss.
class EndpointError : public Error {
 public:
  EndpointError(const std::string& what, int attempts = 0)
      : Error(Category::kEndpoint, what), attempts_(attempts) {}

  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace scpos

#endif  // SCPOS_ERROR_H_

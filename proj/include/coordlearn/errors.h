// Copyright 2026 The CoordLearn Authors
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

#ifndef COORDLEARN_ERRORS_H_
#define COORDLEARN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace coordlearn {

// Base of every error the library throws. Callers that only need to
// distinguish "bad input data" from programming errors catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Predicate used with a different number of arguments than before.
class ArityError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration. `key` names the offending setting.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace coordlearn

#endif  // COORDLEARN_ERRORS_H_

// Copyright 2026 The ecebias Authors.
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

#ifndef ECEBIAS_ERROR_H_
#define ECEBIAS_ERROR_H_

#include <stdexcept>
#include <string>

namespace ecebias {

// Base class for every domain error raised by the toolkit. The CLI maps
// these to exit status 1; anything else is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

class CorpusError : public Error {
 public:
  // line is 1-based; 0 means the error is not tied to an input line.
  CorpusError(const std::string &what, size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class StatsError : public Error {
  using Error::Error;
};

class MetricsError : public Error {
 public:
  MetricsError(const std::string &what, size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what) {}
};

class BaselineError : public Error {
  using Error::Error;
};

class LexiconError : public Error {
  using Error::Error;
};

class DebiasError : public Error {
  using Error::Error;
};

class SynthError : public Error {
  using Error::Error;
};

}  // namespace ecebias

#endif  // ECEBIAS_ERROR_H_

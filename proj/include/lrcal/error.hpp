// Copyright 2026  lrcal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lrcal {

// Every error message is prefixed with the module that raised it, e.g.
// "anchoring: insufficient data: empty Hp pool".
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module), detail_(what) {}
  const std::string& module() const { return module_; }
  // Message without the module prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string module_;
  std::string detail_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& module, std::size_t line, const std::string& what)
      : Error(module, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ReferenceError : public Error {
  using Error::Error;
};

class SymmetryError : public Error {
  using Error::Error;
};

class NotFoundError : public Error {
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  // side is "Hp", "Hd" or empty when not specific to one proposition.
  InsufficientDataError(const std::string& module, const std::string& side,
                        const std::string& what)
      : Error(module, side.empty() ? "insufficient data: " + what
                                   : "insufficient data (" + side + "): " + what),
        side_(side) {}
  const std::string& side() const { return side_; }

 private:
  std::string side_;
};

class ImproperPosteriorError : public Error {
  using Error::Error;
};

class ConfigError : public Error {
  using Error::Error;
};

class IoError : public Error {
  using Error::Error;
};

}  // namespace lrcal

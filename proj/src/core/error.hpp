// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace eegrec {

enum class ErrorKind {
  config,    // bad user configuration or hyperparameters
  contract,  // precondition violated by a caller
  data,      // dataset/catalog content problems
  parse,     // malformed input file
  io,        // filesystem failures
  internal,  // should-not-happen states
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorKind::config, msg); }
[[noreturn]] inline void throw_contract(const std::string& msg) { throw Error(ErrorKind::contract, msg); }
[[noreturn]] inline void throw_data(const std::string& msg) { throw Error(ErrorKind::data, msg); }
[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(ErrorKind::parse, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::io, msg); }
[[noreturn]] inline void throw_internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

}  // namespace eegrec

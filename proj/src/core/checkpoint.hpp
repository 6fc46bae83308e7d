// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/tensor.hpp"

namespace eegrec::checkpoint {

// Binary container: magic + version, a config text block, then each named
// parameter as dimension list plus raw row-major doubles. Round-trips are
// bit-exact.

struct Loaded {
  std::string config_text;
  std::vector<std::pair<std::string, Tensor>> params;
};

void save(const std::string& path, const std::string& config_text,
          const std::vector<std::pair<std::string, Tensor>>& params);

Loaded load(const std::string& path);

/// Copies loaded values into live parameters matched by name; every live
/// parameter must be present with an identical shape.
void restore_into(const Loaded& loaded,
                  const std::vector<std::pair<std::string, Tensor>>& live);

}  // namespace eegrec::checkpoint

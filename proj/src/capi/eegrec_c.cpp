// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "eegrec.h"

#include <cstring>
#include <sstream>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/runner.hpp"

struct eegrec_ctx {
  eegrec::RunConfig config;
  std::string last_error;
};

namespace {

eegrec_status status_of(eegrec::ErrorKind kind) {
  using eegrec::ErrorKind;
  switch (kind) {
    case ErrorKind::config: return EEGREC_ERR_CONFIG;
    case ErrorKind::data: return EEGREC_ERR_DATA;
    case ErrorKind::parse: return EEGREC_ERR_PARSE;
    case ErrorKind::io: return EEGREC_ERR_IO;
    case ErrorKind::contract: return EEGREC_ERR_CONTRACT;
    case ErrorKind::internal: return EEGREC_ERR_INTERNAL;
  }
  return EEGREC_ERR_INTERNAL;
}

template <typename F>
eegrec_status guarded(eegrec_ctx* ctx, F&& body) {
  if (!ctx) return EEGREC_ERR_CONTRACT;
  try {
    body();
    ctx->last_error.clear();
    return EEGREC_OK;
  } catch (const eegrec::Error& e) {
    ctx->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return EEGREC_ERR_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown failure";
    return EEGREC_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

eegrec_ctx* eegrec_ctx_new(void) {
  try {
    return new eegrec_ctx();
  } catch (...) {
    return nullptr;
  }
}

void eegrec_ctx_free(eegrec_ctx* ctx) { delete ctx; }

const char* eegrec_last_error(const eegrec_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

const char* eegrec_version(void) { return "0.1.0"; }

eegrec_status eegrec_config_load(eegrec_ctx* ctx, const char* path) {
  return guarded(ctx, [&] {
    if (!path) eegrec::throw_contract("config path is null");
    ctx->config.load_file(path);
  });
}

eegrec_status eegrec_config_set(eegrec_ctx* ctx, const char* key, const char* value) {
  return guarded(ctx, [&] {
    if (!key || !value) eegrec::throw_contract("config key/value is null");
    ctx->config.set(key, value);
  });
}

eegrec_status eegrec_config_get(eegrec_ctx* ctx, const char* key, char* buffer,
                                size_t buffer_len) {
  return guarded(ctx, [&] {
    if (!key || !buffer || buffer_len == 0) eegrec::throw_contract("bad config_get arguments");
    std::istringstream all(ctx->config.serialize());
    std::string line;
    std::string want = std::string(key) + " = ";
    while (std::getline(all, line)) {
      if (line.rfind(want, 0) == 0) {
        std::string value = line.substr(want.size());
        if (value.size() + 1 > buffer_len) {
          eegrec::throw_contract("buffer too small for value of '" + std::string(key) + "'");
        }
        std::memcpy(buffer, value.c_str(), value.size() + 1);
        return;
      }
    }
    eegrec::throw_config("unknown configuration key '" + std::string(key) + "'");
  });
}

eegrec_status eegrec_generate(eegrec_ctx* ctx) {
  return guarded(ctx, [&] { eegrec::runner::cmd_generate(ctx->config); });
}

eegrec_status eegrec_train(eegrec_ctx* ctx) {
  return guarded(ctx, [&] { eegrec::runner::cmd_train(ctx->config); });
}

eegrec_status eegrec_eval(eegrec_ctx* ctx, const char* checkpoint_path,
                          eegrec_metrics* metrics_out) {
  return guarded(ctx, [&] {
    if (!checkpoint_path) eegrec::throw_contract("checkpoint path is null");
    eegrec::runner::EvalSummary s = eegrec::runner::cmd_eval(ctx->config, checkpoint_path);
    if (metrics_out) {
      metrics_out->p_at_k = s.p_at_k;
      metrics_out->r_at_k = s.r_at_k;
      metrics_out->f1_at_k = s.f1_at_k;
      metrics_out->instances = s.instances;
    }
  });
}

eegrec_status eegrec_sweep(eegrec_ctx* ctx, const char* key, const char* values_csv) {
  return guarded(ctx, [&] {
    if (!key || !values_csv) eegrec::throw_contract("sweep key/values is null");
    std::vector<std::string> values;
    std::string current;
    for (const char* p = values_csv;; ++p) {
      if (*p == ',' || *p == '\0') {
        if (!current.empty()) values.push_back(current);
        current.clear();
        if (*p == '\0') break;
      } else {
        current.push_back(*p);
      }
    }
    eegrec::runner::cmd_sweep(ctx->config, key, values);
  });
}

eegrec_status eegrec_inspect(eegrec_ctx* ctx, const char* checkpoint_path,
                             const char* recording_id) {
  return guarded(ctx, [&] {
    if (!checkpoint_path) eegrec::throw_contract("checkpoint path is null");
    eegrec::runner::cmd_inspect(ctx->config, checkpoint_path,
                                recording_id ? recording_id : "");
  });
}

}  // extern "C"

// Copyright 2026 the eegrec authors
// SPDX-License-Identifier: Apache-2.0

#include "core/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>

#include "core/error.hpp"

namespace eegrec::checkpoint {

namespace {

constexpr char kMagic[8] = {'E', 'E', 'G', 'R', 'E', 'C', 'K', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in, const std::string& path) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) {
    throw_parse("checkpoint '" + path + "' is truncated");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
  for (double d : v) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
  }
}

}  // namespace

void save(const std::string& path, const std::string& config_text,
          const std::vector<std::pair<std::string, Tensor>>& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io("cannot write checkpoint '" + path + "'");
  out.write(kMagic, 8);
  put_u64(out, config_text.size());
  out.write(config_text.data(), static_cast<std::streamsize>(config_text.size()));
  put_u64(out, params.size());
  for (const auto& [name, tensor] : params) {
    put_u64(out, name.size());
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_u64(out, tensor.ndim());
    for (std::size_t d : tensor.shape()) put_u64(out, d);
    put_doubles(out, tensor.values());
  }
  if (!out) throw_io("failed writing checkpoint '" + path + "'");
}

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open checkpoint '" + path + "'");
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
    throw_parse("'" + path + "' is not an eegrec checkpoint");
  }
  Loaded out;
  std::uint64_t cfg_len = get_u64(in, path);
  out.config_text.resize(cfg_len);
  if (cfg_len && !in.read(out.config_text.data(), static_cast<std::streamsize>(cfg_len))) {
    throw_parse("checkpoint '" + path + "' is truncated");
  }
  std::uint64_t count = get_u64(in, path);
  out.params.reserve(count);
  for (std::uint64_t p = 0; p < count; ++p) {
    std::uint64_t name_len = get_u64(in, path);
    std::string name(name_len, '\0');
    if (name_len && !in.read(name.data(), static_cast<std::streamsize>(name_len))) {
      throw_parse("checkpoint '" + path + "' is truncated");
    }
    std::uint64_t ndim = get_u64(in, path);
    Shape shape(ndim);
    for (std::uint64_t d = 0; d < ndim; ++d) shape[d] = get_u64(in, path);
    std::vector<double> values(shape_numel(shape));
    for (double& v : values) {
      std::uint64_t bits = get_u64(in, path);
      std::memcpy(&v, &bits, 8);
    }
    out.params.emplace_back(name, Tensor::from_values(shape, std::move(values)));
  }
  return out;
}

void restore_into(const Loaded& loaded,
                  const std::vector<std::pair<std::string, Tensor>>& live) {
  std::map<std::string, const Tensor*> by_name;
  for (const auto& [name, tensor] : loaded.params) by_name[name] = &tensor;
  for (const auto& [name, tensor] : live) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw_data("checkpoint is missing parameter '" + name + "'");
    }
    if (it->second->shape() != tensor.shape()) {
      throw_data("checkpoint parameter '" + name + "' has shape " +
                 shape_str(it->second->shape()) + ", expected " + shape_str(tensor.shape()));
    }
    const_cast<Tensor&>(tensor).values() = it->second->values();
  }
}

}  // namespace eegrec::checkpoint

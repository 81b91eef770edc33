//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/nn/weights.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "coolant/core/rng.hpp"

namespace coolant::nn {

namespace {

constexpr char kMagic[4] = {'C', 'F', 'W', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  // Little-endian hosts only (x86-64 / aarch64); asserted at build time.
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated weight file");
  return v;
}

}  // namespace

void save_weights(const std::string& path, const ParamStore& params,
                  const std::string& hyper_json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Tensor& t = params.at(i);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(t.value.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(t.value.cols()));
    out.write(reinterpret_cast<const char*>(t.value.data()),
              static_cast<std::streamsize>(sizeof(double) * t.value.size()));
  }
  if (!out) throw std::runtime_error("write failed: " + path);

  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("cannot open " + path + ".json");
  side << hyper_json;
}

void load_weights(const std::string& path, ParamStore& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path + " is not a CFW1 weight file");
  }
  const auto count = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = get<std::uint32_t>(in);
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);
    const auto rows = static_cast<Eigen::Index>(get<std::uint64_t>(in));
    const auto cols = static_cast<Eigen::Index>(get<std::uint64_t>(in));
    Tensor* t = params.find(name);
    if (t == nullptr) {
      t = &params.create(name, rows, cols);
    } else if (t->value.rows() != rows || t->value.cols() != cols) {
      throw std::runtime_error("shape mismatch loading tensor " + name);
    }
    in.read(reinterpret_cast<char*>(t->value.data()),
            static_cast<std::streamsize>(sizeof(double) * t->value.size()));
    if (!in) throw std::runtime_error("truncated weight file: " + path);
  }
}

std::string load_weights_sidecar(const std::string& path) {
  std::ifstream side(path + ".json");
  if (!side) return std::string();
  std::ostringstream ss;
  ss << side.rdbuf();
  return ss.str();
}

std::uint64_t weights_file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = kFnvOffset;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= kFnvPrime;
    }
    if (!in) break;
  }
  return h;
}

std::uint64_t params_hash(const ParamStore& params) {
  std::uint64_t h = kFnvOffset;
  const auto mix = [&h](const void* p, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= kFnvPrime;
    }
  };
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Tensor& t = params.at(i);
    mix(t.name.data(), t.name.size());
    const std::uint64_t rows = static_cast<std::uint64_t>(t.value.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(t.value.cols());
    mix(&rows, sizeof(rows));
    mix(&cols, sizeof(cols));
    mix(t.value.data(), sizeof(double) * static_cast<std::size_t>(t.value.size()));
  }
  return h;
}

}  // namespace coolant::nn

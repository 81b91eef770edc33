//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "coolant/nn/weights.hpp"
#include "coolant/surrogate/surrogate.hpp"

namespace coolant::surrogate {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated embedding table");
  return v;
}

}  // namespace

void EmbeddingTable::insert(const std::string& id, Eigen::VectorXd embedding) {
  if (index_.count(id) != 0) {
    throw std::invalid_argument("duplicate embedding id: " + id);
  }
  if (ids_.empty()) {
    dim_ = static_cast<int>(embedding.size());
  } else if (static_cast<int>(embedding.size()) != dim_) {
    throw std::invalid_argument("embedding width mismatch for " + id);
  }
  index_.emplace(id, ids_.size());
  ids_.push_back(id);
  rows_.push_back(std::move(embedding));
}

const Eigen::VectorXd& EmbeddingTable::at(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw MissingEmbedding("no embedding for " + id);
  return rows_[it->second];
}

bool EmbeddingTable::contains(const std::string& id) const {
  return index_.count(id) != 0;
}

EmbeddingTable build_lookup(const std::vector<std::string>& ids,
                            const std::vector<const chem::MolGraph*>& graphs,
                            const gate::GateModel& teacher) {
  if (ids.size() != graphs.size()) {
    throw std::invalid_argument("build_lookup: ids/graphs length mismatch");
  }
  EmbeddingTable table;
  table.provenance = nn::params_hash(teacher.params());
  if (ids.empty()) return table;
  const Eigen::MatrixXd z = teacher.embed_batch(graphs);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    table.insert(ids[i], z.row(static_cast<Eigen::Index>(i)).transpose());
  }
  return table;
}

void save_table(const std::string& path, const EmbeddingTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  put<std::uint64_t>(out, table.provenance);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(table.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(table.size()));
  for (const std::string& id : table.ids()) {
    const Eigen::VectorXd& e = table.at(id);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    out.write(reinterpret_cast<const char*>(e.data()),
              static_cast<std::streamsize>(sizeof(double) * e.size()));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

EmbeddingTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path + " is not an EMB1 table");
  }
  EmbeddingTable table;
  table.provenance = get<std::uint64_t>(in);
  const auto dim = get<std::uint32_t>(in);
  const auto count = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto id_len = get<std::uint32_t>(in);
    std::string id(id_len, '\0');
    in.read(id.data(), id_len);
    Eigen::VectorXd e(dim);
    in.read(reinterpret_cast<char*>(e.data()),
            static_cast<std::streamsize>(sizeof(double) * dim));
    if (!in) throw std::runtime_error("truncated embedding table: " + path);
    table.insert(id, std::move(e));
  }
  return table;
}

Eigen::VectorXd surrogate_input(const std::string& first,
                                const std::string& second,
                                const EmbeddingTable& table) {
  const Eigen::VectorXd& a = table.at(first);
  const Eigen::VectorXd& b = table.at(second);
  Eigen::VectorXd out(a.size() + b.size());
  out.head(a.size()) = a;
  out.tail(b.size()) = b;
  return out;
}

}  // namespace coolant::surrogate

//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coolant/gate/train.hpp"
#include "coolant/surrogate/surrogate.hpp"

namespace coolant::pipeline {

/// Contiguous slice of the alcohol axis for the enumeration stage.
struct ShardSpec {
  int index = 0;
  int count = 1;
};

struct BiasStageConfig {
  int max_k = 4;               // criteria-count sweep 1..max_k
  double rho = -0.3;           // chain correlation between neighbours
  std::uint64_t samples = 200000;
  int chunks = 8;
};

/// One config drives every stage; all randomness descends from `seed`.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::vector<std::string> stages;  // execution order; empty = full pipeline
  std::string library;              // SMILES lines for parse/filter
  std::string reactants;            // CSV smiles,role for react onwards
  std::string purchasables;         // optional SMILES lines
  std::string criteria;             // full-strength criteria JSON
  double relax_fraction = 0.15;
  ShardSpec shard;
  int train_molecules = 240;
  double train_noise = 0.05;
  gate::GateConfig gate;
  surrogate::SurrogateConfig surrogate;
  BiasStageConfig bias;
  bool audit = false;               // brute-force check in the screen stage
  std::uint64_t config_hash = 0;    // FNV over the canonical JSON dump
};

std::vector<std::string> default_stages();
RunConfig load_run_config(const std::string& path);
void save_run_config(const std::string& path, const RunConfig& config);

/// Deterministic per-stage record: content hashes of everything read and
/// written plus integer counters. `chain` folds the previous stage's chain
/// into this record, so editing any intermediate artifact breaks every
/// later link. Wall times live in a separate unhashed timings file to keep
/// reruns byte-identical.
struct StageManifest {
  std::string stage;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<std::pair<std::string, std::uint64_t>> inputs;
  std::vector<std::pair<std::string, std::uint64_t>> outputs;
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::uint64_t chain = 0;
  std::string error;
};

/// FNV-1a over the file's bytes; throws std::runtime_error if unreadable.
std::uint64_t hash_file(const std::string& path);

/// Chain value for `m` given the previous stage's chain (entries are
/// hashed in sorted order; `m.chain` itself is not an input).
std::uint64_t chain_manifest(std::uint64_t prev, const StageManifest& m);

void write_manifest(const std::string& path, const StageManifest& m);
StageManifest read_manifest(const std::string& path);

/// One SMILES per line; blank lines, `#` comments and a bare `smiles`
/// header are skipped.
std::vector<std::string> read_smiles_lines(const std::string& path);

/// CSV `smiles,role` with role alcohol|chloride|acid.
struct ReactantLists {
  std::vector<std::string> alcohols;
  std::vector<std::string> chlorides;
  std::vector<std::string> acids;
};
ReactantLists load_reactant_lists(const std::string& path);

struct PipelineResult {
  int exit_code = 0;
  std::vector<StageManifest> manifests;
  std::vector<std::pair<std::string, double>> wall_ms;
};

/// Runs the configured stages in order, writing artifacts and manifests
/// under `out_dir`. Stops at the first failing stage (its manifest records
/// the error) and returns exit code 1; 0 when every stage completes.
PipelineResult run_pipeline(const RunConfig& config);

/// Re-runs only the aggregation stage against manifests already on disk,
/// using the full configured stage order for chain verification.
PipelineResult run_report(const RunConfig& config);

struct BenchRow {
  std::string stage;
  std::uint64_t items = 0;
  double seconds = 0.0;
  double per_second = 0.0;  // zero when nothing was processed
};
struct BenchReport {
  std::vector<BenchRow> rows;
};

/// Throughput measurement over the configured inputs; reuses models from
/// `out_dir` when present. Reports numbers only, asserts nothing.
BenchReport bench(const RunConfig& config);
void write_bench_json(const std::string& path, const BenchReport& report);

}  // namespace coolant::pipeline

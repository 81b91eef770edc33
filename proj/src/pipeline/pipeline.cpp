//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "coolant/bias/bias.hpp"
#include "coolant/core/rng.hpp"
#include "coolant/filters/filters.hpp"
#include "coolant/gate/dataset.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "coolant/nn/weights.hpp"
#include "coolant/reactor/reactor.hpp"
#include "coolant/screen/screening.hpp"

namespace coolant::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> read_smiles_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#' || line == "smiles") continue;
    lines.push_back(line);
  }
  return lines;
}

namespace {

std::uint64_t mix_bytes(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix_u64(std::uint64_t h, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  return mix_bytes(h, bytes, 8);
}

std::uint64_t mix_string(std::uint64_t h, const std::string& s) {
  h = mix_u64(h, s.size());
  return mix_bytes(h, s.data(), s.size());
}

std::string to_hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t from_hex(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

void write_lines(const std::string& path, const std::string& header,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << header << "\n";
  for (const std::string& l : lines) out << l << "\n";
}

struct StageContext {
  const RunConfig& cfg;
  std::string dir(const std::string& name) const {
    return (fs::path(cfg.out_dir) / name).string();
  }
};

void record_in(StageManifest& m, const std::string& path) {
  m.inputs.emplace_back(path, hash_file(path));
}

void record_out(StageManifest& m, const StageContext& ctx, const std::string& name) {
  m.outputs.emplace_back(name, hash_file(ctx.dir(name)));
}

void count(StageManifest& m, const std::string& name, std::int64_t value) {
  m.counts.emplace_back(name, value);
}

reactor::ReactantSets load_sets(const RunConfig& cfg) {
  const ReactantLists lists = load_reactant_lists(cfg.reactants);
  return reactor::build_reactant_sets(lists.alcohols, lists.chlorides, lists.acids);
}

std::vector<reactor::Reactant> load_purchasables(const RunConfig& cfg) {
  std::vector<reactor::Reactant> out;
  if (cfg.purchasables.empty()) return out;
  for (const std::string& s : read_smiles_lines(cfg.purchasables)) {
    chem::MolGraph g = chem::parse_smiles(s);
    std::string canonical = chem::write_smiles(g);
    out.push_back({std::move(g), std::move(canonical)});
  }
  return out;
}

/// Unique reactants in first-appearance order, the teacher-embedding set.
void unique_reactants(const reactor::ReactantSets& sets,
                      std::vector<std::string>& ids,
                      std::vector<const chem::MolGraph*>& graphs) {
  std::unordered_set<std::string> seen;
  const auto add = [&](const reactor::Reactant& r) {
    if (seen.insert(r.smiles).second) {
      ids.push_back(r.smiles);
      graphs.push_back(&r.graph);
    }
  };
  for (const auto& r : sets.alcohols) add(r);
  for (const auto& r : sets.chlorides) add(r);
  for (const auto& r : sets.acids) add(r);
}

StageManifest stage_parse(const StageContext& ctx) {
  StageManifest m;
  m.stage = "parse";
  record_in(m, ctx.cfg.library);
  const std::vector<std::string> raw = read_smiles_lines(ctx.cfg.library);
  std::vector<std::string> canonical;
  std::unordered_set<std::string> seen;
  std::int64_t failed = 0;
  for (const std::string& s : raw) {
    try {
      const std::string c = chem::write_smiles(chem::parse_smiles(s));
      if (seen.insert(c).second) canonical.push_back(c);
    } catch (const std::exception&) {
      ++failed;
    }
  }
  write_lines(ctx.dir("parsed.csv"), "smiles", canonical);
  record_out(m, ctx, "parsed.csv");
  count(m, "in", static_cast<std::int64_t>(raw.size()));
  count(m, "parsed", static_cast<std::int64_t>(raw.size()) - failed);
  count(m, "failed", failed);
  count(m, "unique", static_cast<std::int64_t>(canonical.size()));
  return m;
}

StageManifest stage_filter(const StageContext& ctx) {
  StageManifest m;
  m.stage = "filter";
  const std::string in_path = ctx.dir("parsed.csv");
  record_in(m, in_path);
  const std::vector<std::string> mols = read_smiles_lines(in_path);
  std::vector<std::string> kept;
  std::int64_t halogen = 0, sulfur = 0, aromatic = 0, strained = 0;
  for (const std::string& s : mols) {
    const chem::MolGraph g = chem::parse_smiles(s);
    const filters::FilterVerdict v = filters::prefilter(g);
    if (v.passed) {
      kept.push_back(s);
      continue;
    }
    for (const filters::Violation viol : v.violations) {
      switch (viol) {
        case filters::Violation::HalogenFBrI: ++halogen; break;
        case filters::Violation::Sulfur: ++sulfur; break;
        case filters::Violation::AromaticRing: ++aromatic; break;
        case filters::Violation::StrainedRing: ++strained; break;
        default: break;
      }
    }
  }
  write_lines(ctx.dir("filtered.csv"), "smiles", kept);
  record_out(m, ctx, "filtered.csv");
  count(m, "in", static_cast<std::int64_t>(mols.size()));
  count(m, "out", static_cast<std::int64_t>(kept.size()));
  count(m, "rejected", static_cast<std::int64_t>(mols.size() - kept.size()));
  count(m, "violation_halogen", halogen);
  count(m, "violation_sulfur", sulfur);
  count(m, "violation_aromatic_ring", aromatic);
  count(m, "violation_strained_ring", strained);
  return m;
}

StageManifest stage_react(const StageContext& ctx) {
  StageManifest m;
  m.stage = "react";
  record_in(m, ctx.cfg.reactants);
  const reactor::ReactantSets sets = load_sets(ctx.cfg);
  const std::string out_path = ctx.dir("products.csv");
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << "smiles,reaction,parent_a,parent_b\n";
  const reactor::Shard shard{ctx.cfg.shard.index, ctx.cfg.shard.count};
  const reactor::EnumerationCounts delivered = reactor::stream_products(
      sets,
      [&](const reactor::ProductRecord& rec) {
        out << chem::write_smiles(rec.product) << ","
            << (rec.reaction == reactor::Reaction::Ether ? "ether" : "ester")
            << "," << sets.alcohols[rec.parent_a].smiles << ","
            << (rec.reaction == reactor::Reaction::Ether
                    ? sets.chlorides[rec.parent_b].smiles
                    : sets.acids[rec.parent_b].smiles)
            << "\n";
        return true;
      },
      shard);
  out.close();
  record_out(m, ctx, "products.csv");
  count(m, "alcohols", static_cast<std::int64_t>(sets.alcohols.size()));
  count(m, "chlorides", static_cast<std::int64_t>(sets.chlorides.size()));
  count(m, "acids", static_cast<std::int64_t>(sets.acids.size()));
  count(m, "ethers", static_cast<std::int64_t>(delivered.ethers));
  count(m, "esters", static_cast<std::int64_t>(delivered.esters));
  count(m, "products", static_cast<std::int64_t>(delivered.total));
  return m;
}

StageManifest stage_train_gate(const StageContext& ctx) {
  StageManifest m;
  m.stage = "train-gate";
  const RunConfig& cfg = ctx.cfg;
  // Size range reaches the reaction products, whose weight is roughly the
  // sum of two reactants, so the teacher is not extrapolating at screen
  // time.
  const std::vector<std::string> smiles =
      gate::random_molecules(cfg.train_molecules, 4, 12, cfg.seed);
  const gate::Dataset ds =
      gate::make_property_tasks(smiles, cfg.train_noise, cfg.seed);
  gate::save_dataset_csv(ctx.dir("train_data.csv"), ds);

  gate::GateConfig gcfg = cfg.gate;
  gcfg.seed = cfg.seed;
  gate::TrainOutcome outcome = gate::train_gate(ds, gcfg);
  outcome.model.save(ctx.dir("gate.cfw1"));
  gate::write_metrics_jsonl(ctx.dir("gate_metrics.jsonl"), outcome.epochs);

  record_out(m, ctx, "train_data.csv");
  record_out(m, ctx, "gate.cfw1");
  record_out(m, ctx, "gate_metrics.jsonl");
  count(m, "molecules", static_cast<std::int64_t>(ds.graphs.size()));
  count(m, "tasks", ds.n_tasks);
  count(m, "epochs", static_cast<std::int64_t>(outcome.epochs.size()));
  count(m, "parameters", static_cast<std::int64_t>(outcome.model.params().size()));
  return m;
}

StageManifest stage_train_surrogate(const StageContext& ctx) {
  StageManifest m;
  m.stage = "train-surrogate";
  const RunConfig& cfg = ctx.cfg;
  record_in(m, cfg.reactants);
  record_in(m, ctx.dir("gate.cfw1"));

  const gate::GateModel teacher = gate::GateModel::load(ctx.dir("gate.cfw1"));
  const reactor::ReactantSets sets = load_sets(cfg);
  std::vector<std::string> ids;
  std::vector<const chem::MolGraph*> graphs;
  unique_reactants(sets, ids, graphs);
  const surrogate::EmbeddingTable table =
      surrogate::build_lookup(ids, graphs, teacher);
  surrogate::save_table(ctx.dir("embeddings.emb1"), table);

  const std::size_t n = sets.alcohols.size();
  const std::size_t partners = sets.chlorides.size() + sets.acids.size();
  surrogate::SurrogateConfig scfg = cfg.surrogate;
  scfg.seed = cfg.seed;
  scfg.latent = cfg.gate.enc.latent;
  const std::vector<std::pair<int, int>> pairs =
      surrogate::sample_pairs(n, partners, scfg.sample_fraction, cfg.seed);
  const surrogate::PairSample sample =
      surrogate::build_distillation(sets, table, teacher, pairs);
  surrogate::SurrogateTrainOutcome outcome =
      surrogate::train_surrogate(sample, scfg);
  outcome.model.save(ctx.dir("surrogate.cfw1"));

  std::vector<std::string> names;
  for (int t = 0; t < screen::kPropertyCount; ++t) {
    names.push_back(screen::property_name(static_cast<screen::Property>(t)));
  }
  surrogate::write_fidelity_csv(ctx.dir("fidelity.csv"),
                                {outcome.val_r, outcome.val_mae}, names);

  record_out(m, ctx, "embeddings.emb1");
  record_out(m, ctx, "surrogate.cfw1");
  record_out(m, ctx, "fidelity.csv");
  count(m, "unique_reactants", static_cast<std::int64_t>(ids.size()));
  count(m, "pairs_grid", static_cast<std::int64_t>(n * partners));
  count(m, "pairs_sampled", static_cast<std::int64_t>(pairs.size()));
  count(m, "epochs", static_cast<std::int64_t>(outcome.epoch_loss.size()));
  return m;
}

StageManifest stage_screen(const StageContext& ctx) {
  StageManifest m;
  m.stage = "screen";
  const RunConfig& cfg = ctx.cfg;
  record_in(m, cfg.reactants);
  record_in(m, cfg.criteria);
  record_in(m, ctx.dir("gate.cfw1"));
  record_in(m, ctx.dir("surrogate.cfw1"));
  record_in(m, ctx.dir("embeddings.emb1"));
  if (!cfg.purchasables.empty()) record_in(m, cfg.purchasables);

  const gate::GateModel teacher = gate::GateModel::load(ctx.dir("gate.cfw1"));
  const surrogate::SurrogateModel surrogate_model =
      surrogate::SurrogateModel::load(ctx.dir("surrogate.cfw1"));
  surrogate::EmbeddingTable table =
      surrogate::load_table(ctx.dir("embeddings.emb1"));
  if (table.provenance != nn::params_hash(teacher.params())) {
    throw surrogate::ProvenanceMismatch(
        "embeddings.emb1 was built from a different teacher");
  }

  const screen::CriteriaSet final_set = screen::load_criteria(cfg.criteria);
  const screen::CriteriaSet relaxed =
      screen::relax(final_set, cfg.relax_fraction);
  const reactor::ReactantSets sets = load_sets(cfg);
  const std::vector<reactor::Reactant> purchasables = load_purchasables(cfg);

  const screen::ScreenOutcome outcome = screen::two_stage_screen(
      sets, purchasables, surrogate_model, teacher, relaxed, final_set,
      cfg.audit);
  screen::write_candidates_csv(ctx.dir("candidates.csv"), outcome.candidates);
  screen::write_report_json(ctx.dir("screen_report.json"), outcome.report);

  record_out(m, ctx, "candidates.csv");
  record_out(m, ctx, "screen_report.json");
  const screen::ScreeningReport& r = outcome.report;
  count(m, "pairs_total", static_cast<std::int64_t>(r.pairs_total));
  count(m, "pairs_scored", static_cast<std::int64_t>(r.pairs_scored));
  count(m, "surrogate_pass", static_cast<std::int64_t>(r.surrogate_pass));
  count(m, "postfilter_reject", static_cast<std::int64_t>(r.postfilter_reject));
  count(m, "teacher_pass", static_cast<std::int64_t>(r.teacher_pass));
  count(m, "purchasables_pass", static_cast<std::int64_t>(r.purchasables_pass));
  count(m, "candidates", static_cast<std::int64_t>(outcome.candidates.size()));
  count(m, "teacher_embed_calls", static_cast<std::int64_t>(r.teacher_embed_calls));
  count(m, "missed_candidates", r.missed_candidates);
  return m;
}

StageManifest stage_bias(const StageContext& ctx) {
  StageManifest m;
  m.stage = "bias";
  const BiasStageConfig& b = ctx.cfg.bias;
  bias::InflationConfig icfg;
  icfg.correlation = bias::chain_correlation(b.max_k, b.rho);
  icfg.thresholds.assign(static_cast<std::size_t>(b.max_k), 0.0);
  icfg.samples = b.samples;
  icfg.seed = ctx.cfg.seed;
  icfg.chunks = b.chunks;
  const std::vector<bias::InflationPoint> points = bias::fp_inflation_sim(icfg);
  bias::write_inflation_csv(ctx.dir("inflation.csv"), points);

  bool monotone = true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].gap_rel <= points[i - 1].gap_rel) monotone = false;
  }
  json summary{{"max_k", b.max_k},
               {"rho", b.rho},
               {"samples", b.samples},
               {"gap_rel", json::array()},
               {"monotone", monotone}};
  for (const auto& p : points) summary["gap_rel"].push_back(p.gap_rel);
  std::ofstream out(ctx.dir("bias_summary.json"));
  if (!out) throw std::runtime_error("cannot write bias_summary.json");
  out << summary.dump(2) << "\n";
  out.close();

  record_out(m, ctx, "inflation.csv");
  record_out(m, ctx, "bias_summary.json");
  count(m, "max_k", b.max_k);
  count(m, "samples", static_cast<std::int64_t>(b.samples));
  count(m, "monotone", monotone ? 1 : 0);
  return m;
}

StageManifest stage_report(const StageContext& ctx) {
  StageManifest m;
  m.stage = "report";
  const RunConfig& cfg = ctx.cfg;

  // Walk every stage ahead of us in the configured order, re-deriving the
  // chain and re-hashing recorded outputs; any edit breaks the walk.
  std::uint64_t prev = cfg.config_hash;
  json stages = json::array();
  std::int64_t outputs_checked = 0;
  for (const std::string& name : cfg.stages) {
    if (name == "report") break;
    const std::string path =
        (fs::path(cfg.out_dir) / "manifests" / (name + ".json")).string();
    const StageManifest prior = read_manifest(path);
    if (chain_manifest(prev, prior) != prior.chain) {
      throw std::runtime_error("manifest chain broken at stage " + name);
    }
    for (const auto& [out_name, recorded] : prior.outputs) {
      if (hash_file(ctx.dir(out_name)) != recorded) {
        throw std::runtime_error("artifact modified since " + name + " ran: " +
                                 out_name);
      }
      ++outputs_checked;
    }
    prev = prior.chain;
    json s{{"stage", prior.stage},
           {"chain", to_hex(prior.chain)},
           {"counts", json::object()}};
    for (const auto& [k, v] : prior.counts) s["counts"][k] = v;
    stages.push_back(s);
  }

  json report{{"config_hash", to_hex(cfg.config_hash)},
              {"seed", cfg.seed},
              {"verified_chain", to_hex(prev)},
              {"stages", stages}};
  std::ofstream out(ctx.dir("report.json"));
  if (!out) throw std::runtime_error("cannot write report.json");
  out << report.dump(2) << "\n";
  out.close();

  record_out(m, ctx, "report.json");
  count(m, "stages_verified", static_cast<std::int64_t>(stages.size()));
  count(m, "outputs_checked", outputs_checked);
  return m;
}

StageManifest run_stage(const std::string& name, const StageContext& ctx) {
  if (name == "parse") return stage_parse(ctx);
  if (name == "filter") return stage_filter(ctx);
  if (name == "react") return stage_react(ctx);
  if (name == "train-gate") return stage_train_gate(ctx);
  if (name == "train-surrogate") return stage_train_surrogate(ctx);
  if (name == "screen") return stage_screen(ctx);
  if (name == "bias") return stage_bias(ctx);
  if (name == "report") return stage_report(ctx);
  throw std::invalid_argument("unknown stage: " + name);
}

}  // namespace

std::vector<std::string> default_stages() {
  return {"parse",          "filter", "react", "train-gate",
          "train-surrogate", "screen", "bias",  "report"};
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash missing file " + path);
  std::uint64_t h = kFnvOffset;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    h = mix_bytes(h, buf, static_cast<std::size_t>(in.gcount()));
  }
  return h;
}

std::uint64_t chain_manifest(std::uint64_t prev, const StageManifest& m) {
  auto inputs = m.inputs;
  auto outputs = m.outputs;
  auto counts = m.counts;
  std::sort(inputs.begin(), inputs.end());
  std::sort(outputs.begin(), outputs.end());
  std::sort(counts.begin(), counts.end());

  std::uint64_t h = kFnvOffset;
  h = mix_u64(h, prev);
  h = mix_string(h, m.stage);
  h = mix_u64(h, m.seed);
  h = mix_u64(h, m.config_hash);
  for (const auto& [name, hash] : inputs) {
    h = mix_string(h, name);
    h = mix_u64(h, hash);
  }
  for (const auto& [name, hash] : outputs) {
    h = mix_string(h, name);
    h = mix_u64(h, hash);
  }
  for (const auto& [name, value] : counts) {
    h = mix_string(h, name);
    h = mix_u64(h, static_cast<std::uint64_t>(value));
  }
  h = mix_string(h, m.error);
  return h;
}

void write_manifest(const std::string& path, const StageManifest& m) {
  json inputs = json::object();
  for (const auto& [name, hash] : m.inputs) inputs[name] = to_hex(hash);
  json outputs = json::object();
  for (const auto& [name, hash] : m.outputs) outputs[name] = to_hex(hash);
  json counts = json::object();
  for (const auto& [name, value] : m.counts) counts[name] = value;
  const json j{{"stage", m.stage},        {"seed", m.seed},
               {"config_hash", to_hex(m.config_hash)},
               {"inputs", inputs},        {"outputs", outputs},
               {"counts", counts},        {"chain", to_hex(m.chain)},
               {"error", m.error}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

StageManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  const json j = json::parse(in);
  StageManifest m;
  m.stage = j.at("stage").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.config_hash = from_hex(j.at("config_hash").get<std::string>());
  for (const auto& [name, hash] : j.at("inputs").items()) {
    m.inputs.emplace_back(name, from_hex(hash.get<std::string>()));
  }
  for (const auto& [name, hash] : j.at("outputs").items()) {
    m.outputs.emplace_back(name, from_hex(hash.get<std::string>()));
  }
  for (const auto& [name, value] : j.at("counts").items()) {
    m.counts.emplace_back(name, value.get<std::int64_t>());
  }
  m.chain = from_hex(j.at("chain").get<std::string>());
  m.error = j.at("error").get<std::string>();
  return m;
}

ReactantLists load_reactant_lists(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ReactantLists lists;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (first && line == "smiles,role") {
      first = false;
      continue;
    }
    first = false;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("reactants row needs smiles,role: " + line);
    }
    const std::string smiles = line.substr(0, comma);
    const std::string role = line.substr(comma + 1);
    if (role == "alcohol") {
      lists.alcohols.push_back(smiles);
    } else if (role == "chloride") {
      lists.chlorides.push_back(smiles);
    } else if (role == "acid") {
      lists.acids.push_back(smiles);
    } else {
      throw std::runtime_error("unknown reactant role: " + role);
    }
  }
  return lists;
}

PipelineResult run_pipeline(const RunConfig& config) {
  RunConfig cfg = config;
  if (cfg.stages.empty()) cfg.stages = default_stages();
  for (const std::string& name : cfg.stages) {
    static const std::vector<std::string> known = default_stages();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown stage: " + name);
    }
  }
  fs::create_directories(fs::path(cfg.out_dir) / "manifests");

  PipelineResult result;
  const StageContext ctx{cfg};
  std::uint64_t prev = cfg.config_hash;
  for (const std::string& name : cfg.stages) {
    const auto t0 = std::chrono::steady_clock::now();
    StageManifest m;
    try {
      m = run_stage(name, ctx);
    } catch (const std::exception& e) {
      m = StageManifest{};
      m.stage = name;
      m.error = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    m.seed = cfg.seed;
    m.config_hash = cfg.config_hash;
    std::sort(m.inputs.begin(), m.inputs.end());
    std::sort(m.outputs.begin(), m.outputs.end());
    std::sort(m.counts.begin(), m.counts.end());
    m.chain = chain_manifest(prev, m);
    prev = m.chain;
    write_manifest(
        (fs::path(cfg.out_dir) / "manifests" / (name + ".json")).string(), m);
    result.wall_ms.emplace_back(
        name, std::chrono::duration<double, std::milli>(t1 - t0).count());
    const bool failed = !m.error.empty();
    result.manifests.push_back(std::move(m));
    if (failed) {
      result.exit_code = 1;
      break;
    }
  }

  // Timing sidecar: informational, intentionally outside the hash chain so
  // reruns stay byte-identical where it matters.
  json timings = json::object();
  for (const auto& [name, ms] : result.wall_ms) timings[name] = ms;
  std::ofstream tout(ctx.dir("timings.json"));
  if (tout) tout << timings.dump(2) << "\n";
  return result;
}

PipelineResult run_report(const RunConfig& config) {
  RunConfig cfg = config;
  if (cfg.stages.empty()) cfg.stages = default_stages();
  fs::create_directories(fs::path(cfg.out_dir) / "manifests");

  // Chain position of the report stage = last manifest ahead of it; the
  // stage body re-verifies the whole walk itself.
  std::uint64_t prev = cfg.config_hash;
  for (const std::string& name : cfg.stages) {
    if (name == "report") break;
    const std::string path =
        (fs::path(cfg.out_dir) / "manifests" / (name + ".json")).string();
    prev = read_manifest(path).chain;
  }

  PipelineResult result;
  const StageContext ctx{cfg};
  const auto t0 = std::chrono::steady_clock::now();
  StageManifest m;
  try {
    m = stage_report(ctx);
  } catch (const std::exception& e) {
    m = StageManifest{};
    m.stage = "report";
    m.error = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  m.seed = cfg.seed;
  m.config_hash = cfg.config_hash;
  std::sort(m.inputs.begin(), m.inputs.end());
  std::sort(m.outputs.begin(), m.outputs.end());
  std::sort(m.counts.begin(), m.counts.end());
  m.chain = chain_manifest(prev, m);
  write_manifest(
      (fs::path(cfg.out_dir) / "manifests" / "report.json").string(), m);
  result.wall_ms.emplace_back(
      "report", std::chrono::duration<double, std::milli>(t1 - t0).count());
  if (!m.error.empty()) result.exit_code = 1;
  result.manifests.push_back(std::move(m));
  return result;
}

BenchReport bench(const RunConfig& config) {
  BenchReport report;
  const StageContext ctx{config};
  const auto timed = [&](const std::string& stage, auto&& body) {
    BenchRow row;
    row.stage = stage;
    const auto t0 = std::chrono::steady_clock::now();
    row.items = static_cast<std::uint64_t>(body());
    const auto t1 = std::chrono::steady_clock::now();
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    row.per_second =
        (row.items > 0 && row.seconds > 0.0)
            ? static_cast<double>(row.items) / row.seconds
            : 0.0;
    report.rows.push_back(row);
  };

  std::vector<chem::MolGraph> parsed;
  if (!config.library.empty() && fs::exists(config.library)) {
    const std::vector<std::string> raw = read_smiles_lines(config.library);
    timed("parse", [&] {
      for (const std::string& s : raw) {
        try {
          parsed.push_back(chem::parse_smiles(s));
        } catch (const std::exception&) {
        }
      }
      return parsed.size();
    });
    timed("filter", [&] {
      for (const chem::MolGraph& g : parsed) filters::prefilter(g);
      return parsed.size();
    });
  } else {
    report.rows.push_back({"parse", 0, 0.0, 0.0});
    report.rows.push_back({"filter", 0, 0.0, 0.0});
  }

  if (config.reactants.empty() || !fs::exists(config.reactants)) return report;
  const reactor::ReactantSets sets = load_sets(config);

  std::vector<reactor::ProductRecord> products;
  timed("react", [&] {
    reactor::stream_products(sets, [&](const reactor::ProductRecord& rec) {
      products.push_back(rec);
      return products.size() < 512;  // bounded probe, rate is what matters
    });
    return products.size();
  });

  const std::string gate_path = ctx.dir("gate.cfw1");
  const std::string surrogate_path = ctx.dir("surrogate.cfw1");
  const std::string table_path = ctx.dir("embeddings.emb1");
  if (!products.empty() && fs::exists(gate_path) && fs::exists(surrogate_path) &&
      fs::exists(table_path)) {
    const gate::GateModel teacher = gate::GateModel::load(gate_path);
    const surrogate::SurrogateModel surrogate_model =
        surrogate::SurrogateModel::load(surrogate_path);
    const surrogate::EmbeddingTable table = surrogate::load_table(table_path);
    timed("teacher", [&] {
      for (const auto& rec : products) teacher.predict(rec.product);
      return products.size();
    });
    timed("surrogate", [&] {
      for (const auto& rec : products) {
        const auto& a = sets.alcohols[rec.parent_a];
        const auto& b = rec.reaction == reactor::Reaction::Ether
                            ? sets.chlorides[rec.parent_b]
                            : sets.acids[rec.parent_b];
        surrogate::predict_pair(a.smiles, b.smiles, surrogate_model, table);
      }
      return products.size();
    });
  }
  return report;
}

void write_bench_json(const std::string& path, const BenchReport& report) {
  json rows = json::array();
  for (const BenchRow& r : report.rows) {
    rows.push_back({{"stage", r.stage},
                    {"items", r.items},
                    {"seconds", r.seconds},
                    {"per_second", r.per_second}});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << json{{"rows", rows}}.dump(2) << "\n";
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (j.contains(key)) return j.at(key).get<T>();
  return fallback;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  const json j = json::parse(in);

  RunConfig cfg;
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
  cfg.out_dir = get_or<std::string>(j, "out_dir", "out");
  cfg.stages = get_or<std::vector<std::string>>(j, "stages", {});
  cfg.library = get_or<std::string>(j, "library", "");
  cfg.reactants = get_or<std::string>(j, "reactants", "");
  cfg.purchasables = get_or<std::string>(j, "purchasables", "");
  cfg.criteria = get_or<std::string>(j, "criteria", "");
  cfg.relax_fraction = get_or<double>(j, "relax_fraction", 0.15);
  cfg.audit = get_or<bool>(j, "audit", false);
  cfg.train_molecules = get_or<int>(j, "train_molecules", 240);
  cfg.train_noise = get_or<double>(j, "train_noise", 0.05);
  if (j.contains("shard")) {
    cfg.shard.index = get_or<int>(j.at("shard"), "index", 0);
    cfg.shard.count = get_or<int>(j.at("shard"), "count", 1);
  }
  if (j.contains("gate")) {
    const json& g = j.at("gate");
    cfg.gate.epochs = get_or<int>(g, "epochs", cfg.gate.epochs);
    cfg.gate.batch = get_or<int>(g, "batch", cfg.gate.batch);
    cfg.gate.lr = get_or<double>(g, "lr", cfg.gate.lr);
    cfg.gate.weight_decay = get_or<double>(g, "weight_decay", cfg.gate.weight_decay);
    cfg.gate.alpha = get_or<double>(g, "alpha", cfg.gate.alpha);
    cfg.gate.beta = get_or<double>(g, "beta", cfg.gate.beta);
    cfg.gate.gamma = get_or<double>(g, "gamma", cfg.gate.gamma);
    cfg.gate.delta = get_or<double>(g, "delta", cfg.gate.delta);
    cfg.gate.perturbations = get_or<int>(g, "perturbations", cfg.gate.perturbations);
    cfg.gate.sigma = get_or<double>(g, "sigma", cfg.gate.sigma);
    cfg.gate.val_fraction = get_or<double>(g, "val_fraction", cfg.gate.val_fraction);
    cfg.gate.head_hidden = get_or<int>(g, "head_hidden", cfg.gate.head_hidden);
    cfg.gate.enc.hidden = get_or<int>(g, "hidden", cfg.gate.enc.hidden);
    cfg.gate.enc.latent = get_or<int>(g, "latent", cfg.gate.enc.latent);
    cfg.gate.enc.depth = get_or<int>(g, "depth", cfg.gate.enc.depth);
  }
  if (j.contains("surrogate")) {
    const json& s = j.at("surrogate");
    cfg.surrogate.epochs = get_or<int>(s, "epochs", cfg.surrogate.epochs);
    cfg.surrogate.batch = get_or<int>(s, "batch", cfg.surrogate.batch);
    cfg.surrogate.lr = get_or<double>(s, "lr", cfg.surrogate.lr);
    cfg.surrogate.sample_fraction =
        get_or<double>(s, "sample_fraction", cfg.surrogate.sample_fraction);
    cfg.surrogate.val_fraction =
        get_or<double>(s, "val_fraction", cfg.surrogate.val_fraction);
  }
  if (j.contains("bias")) {
    const json& b = j.at("bias");
    cfg.bias.max_k = get_or<int>(b, "max_k", cfg.bias.max_k);
    cfg.bias.rho = get_or<double>(b, "rho", cfg.bias.rho);
    cfg.bias.samples = get_or<std::uint64_t>(b, "samples", cfg.bias.samples);
    cfg.bias.chunks = get_or<int>(b, "chunks", cfg.bias.chunks);
  }
  cfg.surrogate.latent = cfg.gate.enc.latent;

  const std::string canonical = j.dump();
  cfg.config_hash = fnv1a64(canonical);
  return cfg;
}

void save_run_config(const std::string& path, const RunConfig& cfg) {
  json j{{"seed", cfg.seed},
         {"out_dir", cfg.out_dir},
         {"stages", cfg.stages},
         {"library", cfg.library},
         {"reactants", cfg.reactants},
         {"purchasables", cfg.purchasables},
         {"criteria", cfg.criteria},
         {"relax_fraction", cfg.relax_fraction},
         {"audit", cfg.audit},
         {"train_molecules", cfg.train_molecules},
         {"train_noise", cfg.train_noise},
         {"shard", {{"index", cfg.shard.index}, {"count", cfg.shard.count}}},
         {"gate",
          {{"epochs", cfg.gate.epochs},
           {"batch", cfg.gate.batch},
           {"lr", cfg.gate.lr},
           {"alpha", cfg.gate.alpha},
           {"beta", cfg.gate.beta},
           {"gamma", cfg.gate.gamma},
           {"delta", cfg.gate.delta}}},
         {"surrogate",
          {{"epochs", cfg.surrogate.epochs},
           {"batch", cfg.surrogate.batch},
           {"lr", cfg.surrogate.lr},
           {"sample_fraction", cfg.surrogate.sample_fraction}}},
         {"bias",
          {{"max_k", cfg.bias.max_k},
           {"rho", cfg.bias.rho},
           {"samples", cfg.bias.samples},
           {"chunks", cfg.bias.chunks}}}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace coolant::pipeline

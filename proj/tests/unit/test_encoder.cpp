//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include <Eigen/Core>
#include <algorithm>
#include <string>
#include <vector>

#include "coolant/encoder/encoder.hpp"
#include "coolant/encoder/featurize.hpp"
#include "coolant/molgraph/smiles.hpp"
#include "coolant/nn/tape.hpp"
#include "coolant/nn/weights.hpp"
#include "doctest.h"

namespace {

using coolant::chem::MolGraph;
using coolant::encoder::EncoderConfig;
using coolant::encoder::EncoderParams;

MolGraph parsed(const std::string& s) { return coolant::chem::parse_smiles(s); }

EncoderConfig small_config() {
  EncoderConfig cfg;
  cfg.hidden = 8;
  cfg.latent = 4;
  cfg.depth = 2;
  return cfg;
}

int edge_index(const coolant::encoder::FeaturizedGraph& fg, int u, int v) {
  for (std::size_t k = 0; k < fg.edges.size(); ++k) {
    if (fg.edges[k] == std::make_pair(u, v)) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("featurization shapes and one-hot structure") {
  const auto fg = coolant::encoder::featurize(parsed("CCO"));
  CHECK(fg.atom_features.rows() == 3);
  CHECK(fg.atom_features.cols() == coolant::encoder::kAtomFeatureDim);
  CHECK(fg.edges.size() == 4);  // two bonds, two directions each
  CHECK(fg.edge_features.rows() == 4);
  CHECK(fg.edge_features.cols() == coolant::encoder::kEdgeFeatureDim);
  // Non-aromatic atoms light exactly two one-hots: element and degree.
  for (Eigen::Index r = 0; r < fg.atom_features.rows(); ++r) {
    CHECK(fg.atom_features.row(r).sum() == doctest::Approx(2.0));
  }
}

TEST_CASE("directed edges exclude the reverse direction in message inputs") {
  const auto fg = coolant::encoder::featurize(parsed("CCC"));
  const int e01 = edge_index(fg, 0, 1);
  const int e12 = edge_index(fg, 1, 2);
  const int e21 = edge_index(fg, 2, 1);
  REQUIRE(e01 >= 0);
  REQUIRE(e12 >= 0);
  REQUIRE(e21 >= 0);
  // Edge 1->2 hears 0->1 but never its own reverse 2->1.
  CHECK(fg.incoming_excl_reverse[static_cast<std::size_t>(e12)] ==
        std::vector<int>{e01});
  // Atom 1 receives both incoming directions.
  auto at1 = fg.incoming_at_atom[1];
  std::sort(at1.begin(), at1.end());
  std::vector<int> expected = {e01, e21};
  std::sort(expected.begin(), expected.end());
  CHECK(at1 == expected);
}

TEST_CASE("batches are disjoint unions with per-molecule pooling groups") {
  const auto a = coolant::encoder::featurize(parsed("CCO"));
  const auto b = coolant::encoder::featurize(parsed("CC"));
  const auto batch = coolant::encoder::featurize_batch({&a, &b});
  CHECK(batch.merged.atom_features.rows() == 5);
  REQUIRE(batch.molecule_atoms.size() == 2);
  CHECK(batch.molecule_atoms[0] == std::vector<int>{0, 1, 2});
  CHECK(batch.molecule_atoms[1] == std::vector<int>{3, 4});
  CHECK(batch.inv_atom_counts[0] == doctest::Approx(1.0 / 3.0));
  CHECK(batch.inv_atom_counts[1] == doctest::Approx(0.5));
}

TEST_CASE("a batch encodes exactly like its molecules taken alone") {
  coolant::nn::ParamStore store;
  const auto p = EncoderParams::create(store, small_config(), 17);
  const std::vector<std::string> mols = {"CCO", "CCC(C)O", "CCOCC"};

  std::vector<coolant::encoder::FeaturizedGraph> feats;
  std::vector<const coolant::encoder::FeaturizedGraph*> parts;
  std::vector<MolGraph> graphs;
  for (const auto& s : mols) graphs.push_back(parsed(s));
  for (const auto& g : graphs) feats.push_back(coolant::encoder::featurize(g));
  for (const auto& f : feats) parts.push_back(&f);

  const auto batch = coolant::encoder::featurize_batch(parts);
  const Eigen::MatrixXd z = coolant::encoder::encode_batch_infer(batch, p);
  REQUIRE(z.rows() == 3);
  for (std::size_t i = 0; i < mols.size(); ++i) {
    const Eigen::VectorXd zi = coolant::encoder::encode_one(graphs[i], p);
    CHECK((z.row(static_cast<Eigen::Index>(i)).transpose() - zi)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("tape forward and inference forward agree") {
  coolant::nn::ParamStore store;
  const auto p = EncoderParams::create(store, small_config(), 5);
  const auto g1 = parsed("CCOC(C)=O");
  const auto g2 = parsed("CCCCO");
  const auto f1 = coolant::encoder::featurize(g1);
  const auto f2 = coolant::encoder::featurize(g2);
  const auto batch = coolant::encoder::featurize_batch({&f1, &f2});

  coolant::nn::Tape tape;
  const auto z_var = coolant::encoder::encode_batch(tape, batch, p);
  const Eigen::MatrixXd z = coolant::encoder::encode_batch_infer(batch, p);
  CHECK((tape.value(z_var) - z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("latents are invariant to the SMILES spelling") {
  coolant::nn::ParamStore store;
  const auto p = EncoderParams::create(store, small_config(), 23);
  const Eigen::VectorXd a = coolant::encoder::encode_one(parsed("CCOC(C)=O"), p);
  const Eigen::VectorXd b = coolant::encoder::encode_one(parsed("O=C(C)OCC"), p);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("depth zero reduces to pooled atom features") {
  coolant::nn::ParamStore store;
  EncoderConfig cfg = small_config();
  cfg.depth = 0;
  const auto p = EncoderParams::create(store, cfg, 2);
  const Eigen::VectorXd z = coolant::encoder::encode_one(parsed("CCO"), p);
  CHECK(z.size() == cfg.latent);
  CHECK(z.allFinite());
}

TEST_CASE("decoder reconstructs into the hidden width") {
  coolant::nn::ParamStore store;
  const auto p = EncoderParams::create(store, small_config(), 2);
  Eigen::MatrixXd z(3, 4);
  z.setRandom();
  const Eigen::MatrixXd back = coolant::encoder::reconstruct(z, p);
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 8);
}

TEST_CASE("parameter creation is seed-deterministic") {
  coolant::nn::ParamStore s1, s2, s3;
  EncoderParams::create(s1, small_config(), 99);
  EncoderParams::create(s2, small_config(), 99);
  EncoderParams::create(s3, small_config(), 100);
  CHECK(coolant::nn::params_hash(s1) == coolant::nn::params_hash(s2));
  CHECK(coolant::nn::params_hash(s1) != coolant::nn::params_hash(s3));
}

}  // TEST_SUITE("encoder")

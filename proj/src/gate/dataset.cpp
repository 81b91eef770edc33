//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/gate/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "coolant/core/rng.hpp"
#include "coolant/core/stats.hpp"
#include "coolant/molgraph/descriptors.hpp"
#include "coolant/molgraph/smiles.hpp"

namespace coolant::gate {

Dataset Dataset::task_view(int t) const {
  if (t < 0 || t >= n_tasks) throw std::out_of_range("task index");
  Dataset v;
  v.smiles = smiles;
  v.graphs = graphs;
  v.n_tasks = 1;
  v.labels = {labels[static_cast<std::size_t>(t)]};
  v.eval_molecules = eval_molecules;
  if (!eval_labels.empty()) {
    v.eval_labels = {eval_labels[static_cast<std::size_t>(t)]};
  }
  return v;
}

namespace {

using chem::BondOrder;
using chem::Element;
using chem::MolGraph;

// Tree-structured skeleton grown atom by atom; each atom keeps its unused
// valence so the result is always valence-consistent.
struct Skeleton {
  MolGraph g;
  std::vector<int> free_valence;

  int add(Element e) {
    g.add_atom(e);
    free_valence.push_back(chem::default_valence(e));
    return static_cast<int>(free_valence.size()) - 1;
  }

  void bond(int a, int b, BondOrder order) {
    g.add_bond(a, b, order);
    const int cost = order == BondOrder::Double ? 2 : 1;
    free_valence[static_cast<std::size_t>(a)] -= cost;
    free_valence[static_cast<std::size_t>(b)] -= cost;
  }

  std::vector<int> open_sites(int need, Element only = Element::B) const {
    // Element::B never appears in grown skeletons, so it doubles as "any".
    std::vector<int> out;
    for (std::size_t i = 0; i < free_valence.size(); ++i) {
      if (free_valence[i] < need) continue;
      if (only != Element::B && g.atom(static_cast<int>(i)).element != only) continue;
      out.push_back(static_cast<int>(i));
    }
    return out;
  }
};

Element pick_element(Rng& rng, bool allow_hetero) {
  if (!allow_hetero) return Element::C;
  const double p = rng.uniform();
  if (p < 0.74) return Element::C;
  if (p < 0.90) return Element::O;
  if (p < 0.96) return Element::N;
  return Element::Si;
}

// Random acyclic skeleton with `n` atoms. Heteroatoms optional; occasional
// C=C double bonds when both ends have the valence to spare.
Skeleton grow_skeleton(int n, Rng& rng, bool allow_hetero, bool allow_double) {
  Skeleton s;
  s.add(Element::C);
  while (static_cast<int>(s.free_valence.size()) < n) {
    const std::vector<int> sites = s.open_sites(1);
    if (sites.empty()) break;
    const int anchor = sites[rng.index(sites.size())];
    Element e = pick_element(rng, allow_hetero);
    // Avoid O-O / O-Si / N-N chains: keep heteroatoms separated by carbon.
    if (e != Element::C && s.g.atom(anchor).element != Element::C) e = Element::C;
    const int idx = s.add(e);
    const bool can_double = allow_double && e == Element::C &&
                            s.g.atom(anchor).element == Element::C &&
                            s.free_valence[static_cast<std::size_t>(anchor)] >= 2 &&
                            rng.uniform() < 0.12;
    s.bond(anchor, idx, can_double ? BondOrder::Double : BondOrder::Single);
  }
  return s;
}

std::vector<std::string> generate_unique(
    int count, std::uint64_t seed, std::string_view tag,
    const std::function<bool(Skeleton&, Rng&)>& decorate, int min_atoms,
    int max_atoms, bool allow_hetero, bool allow_double) {
  Rng rng = Rng::derived(seed, tag);
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 200 * count + 10000) {
      throw std::runtime_error("molecule generator failed to reach count");
    }
    const int n =
        min_atoms + static_cast<int>(rng.index(
                        static_cast<std::size_t>(max_atoms - min_atoms + 1)));
    Skeleton s = grow_skeleton(n, rng, allow_hetero, allow_double);
    if (!decorate(s, rng)) continue;
    s.g.assign_implicit_hydrogens();
    const std::string canonical = chem::write_smiles(s.g);
    if (seen.insert(canonical).second) out.push_back(canonical);
  }
  return out;
}

}  // namespace

std::vector<std::string> random_molecules(int count, int min_atoms, int max_atoms,
                                          std::uint64_t seed) {
  return generate_unique(
      count, seed, "molgen.generic", [](Skeleton&, Rng&) { return true; },
      min_atoms, max_atoms, true, true);
}

std::vector<std::string> random_alcohols(int count, std::uint64_t seed) {
  return generate_unique(
      count, seed, "molgen.alcohol",
      [](Skeleton& s, Rng& rng) {
        const std::vector<int> sites = s.open_sites(1, Element::C);
        if (sites.empty()) return false;
        const int c = sites[rng.index(sites.size())];
        const int o = s.add(Element::O);
        s.bond(c, o, BondOrder::Single);
        return true;
      },
      3, 9, true, true);
}

std::vector<std::string> random_chlorides(int count, std::uint64_t seed) {
  return generate_unique(
      count, seed, "molgen.chloride",
      [](Skeleton& s, Rng& rng) {
        const std::vector<int> sites = s.open_sites(1, Element::C);
        if (sites.empty()) return false;
        const int c = sites[rng.index(sites.size())];
        const int cl = s.add(Element::Cl);
        s.bond(c, cl, BondOrder::Single);
        return true;
      },
      3, 8, true, false);  // single bonds only: the C-Cl carbon must stay sp3
}

std::vector<std::string> random_acids(int count, std::uint64_t seed) {
  return generate_unique(
      count, seed, "molgen.acid",
      [](Skeleton& s, Rng& rng) {
        const std::vector<int> sites = s.open_sites(1, Element::C);
        if (sites.empty()) return false;
        const int c = sites[rng.index(sites.size())];
        const int carboxyl = s.add(Element::C);
        s.bond(c, carboxyl, BondOrder::Single);
        const int o_dbl = s.add(Element::O);
        s.bond(carboxyl, o_dbl, BondOrder::Double);
        const int o_h = s.add(Element::O);
        s.bond(carboxyl, o_h, BondOrder::Single);
        return true;
      },
      2, 7, true, true);
}

namespace {

std::vector<double> zscore(std::vector<double> v) {
  const double m = mean(v);
  double var = 0.0;
  for (double x : v) var += (x - m) * (x - m);
  const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size())) : 0.0;
  for (double& x : v) x = sd > 1e-12 ? (x - m) / sd : 0.0;
  return v;
}

double molecule_draw(std::uint64_t seed, const std::string& tag,
                     const std::string& smiles) {
  return Rng::derived(seed, tag + "." + smiles).normal();
}

}  // namespace

Dataset make_synthetic_tasks(int n_mols, const SyntheticSpec& spec,
                             std::uint64_t seed) {
  if (spec.rho < -1.0 || spec.rho > 1.0) {
    throw std::invalid_argument("rho must lie in [-1, 1]");
  }
  Dataset ds;
  ds.n_tasks = spec.n_tasks;
  ds.smiles = random_molecules(n_mols + spec.eval_count, spec.min_atoms,
                               spec.max_atoms, seed);
  ds.graphs.reserve(ds.smiles.size());
  for (const auto& s : ds.smiles) ds.graphs.push_back(chem::parse_smiles(s));

  // Shared factor u: standardized blend of size, chain length and branching.
  std::vector<double> mw, chain, branch;
  for (const auto& g : ds.graphs) {
    const chem::Descriptors d = chem::descriptors(g);
    mw.push_back(d.molecular_weight);
    chain.push_back(static_cast<double>(d.longest_chain));
    branch.push_back(d.branching_degree);
  }
  mw = zscore(std::move(mw));
  chain = zscore(std::move(chain));
  branch = zscore(std::move(branch));
  std::vector<double> u(ds.smiles.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = 0.6 * mw[i] + 0.25 * chain[i] + 0.15 * branch[i];
  }
  u = zscore(std::move(u));

  const auto label_of = [&](int task, std::size_t mol) {
    const std::string& s = ds.smiles[mol];
    double y = u[mol];
    if (task > 0) {
      const double w = molecule_draw(seed, "w." + std::to_string(task), s);
      y = spec.rho * u[mol] + std::sqrt(1.0 - spec.rho * spec.rho) * w;
    }
    if (spec.noise > 0.0) {
      y += spec.noise * molecule_draw(seed, "noise." + std::to_string(task), s);
    }
    return y;
  };

  ds.labels.resize(static_cast<std::size_t>(spec.n_tasks));
  ds.eval_labels.resize(static_cast<std::size_t>(spec.n_tasks));
  for (int t = 0; t < spec.n_tasks; ++t) {
    int quota = n_mols;
    if (static_cast<int>(spec.labels_per_task.size()) > t) {
      quota = std::min(n_mols, spec.labels_per_task[static_cast<std::size_t>(t)]);
    }
    Rng pick = Rng::derived(seed, "labels.task" + std::to_string(t));
    std::vector<std::size_t> chosen =
        pick.sample_without_replacement(static_cast<std::size_t>(n_mols),
                                        static_cast<std::size_t>(quota));
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t mol : chosen) {
      ds.labels[static_cast<std::size_t>(t)].emplace_back(static_cast<int>(mol),
                                                          label_of(t, mol));
    }
  }
  for (int k = 0; k < spec.eval_count; ++k) {
    const std::size_t mol = static_cast<std::size_t>(n_mols + k);
    ds.eval_molecules.push_back(static_cast<int>(mol));
    for (int t = 0; t < spec.n_tasks; ++t) {
      ds.eval_labels[static_cast<std::size_t>(t)].push_back(label_of(t, mol));
    }
  }
  return ds;
}

Dataset make_property_tasks(const std::vector<std::string>& smiles, double noise,
                            std::uint64_t seed) {
  Dataset ds;
  ds.n_tasks = 10;
  ds.smiles = smiles;
  ds.graphs.reserve(smiles.size());
  for (const auto& s : smiles) ds.graphs.push_back(chem::parse_smiles(s));
  ds.labels.resize(10);
  ds.eval_labels.resize(10);

  for (std::size_t i = 0; i < ds.smiles.size(); ++i) {
    const chem::Descriptors d = chem::descriptors(ds.graphs[i]);
    const auto frac = [&](Element e) {
      const auto it = d.element_fractions.find(e);
      return it == d.element_fractions.end() ? 0.0 : it->second;
    };
    const double u1 = (d.molecular_weight - 120.0) / 50.0;  // size
    const double u2 = (d.branching_degree - 0.12) / 0.12;   // branching
    const double u3 = (frac(Element::O) - 0.12) / 0.08;     // polarity proxy
    const double u4 = molecule_draw(seed, "latent", ds.smiles[i]);

    // Index order matches screen::Property.
    const double values[10] = {
        170.0 + 45.0 * u1 - 10.0 * u2,          // boiling_point
        -45.0 + 25.0 * u2 + 15.0 * u4,          // melting_point
        150.0 + 28.0 * u1 - 8.0 * u3,           // flash_point
        160.0 + 30.0 * u1,                      // critical_temperature
        155.0 + 25.0 * u1 - 10.0 * u3,          // decomposition_temperature
        2.0 + 0.4 * u3,                         // specific_heat
        0.6 - 0.35 * u1 + 0.1 * u4,             // vapor_pressure
        0.0105 + 0.005 * u1 + 0.004 * u2,       // dynamic_viscosity
        900.0 + 150.0 * u3 + 60.0 * u4,         // density
        4.0 + 2.2 * u3 + 1.2 * u4,              // dielectric_constant
    };
    const double scales[10] = {45.0, 25.0, 28.0, 30.0, 25.0,
                               0.4,  0.35, 0.005, 150.0, 2.2};
    for (int t = 0; t < 10; ++t) {
      double y = values[t];
      if (noise > 0.0) {
        y += noise * scales[t] *
             molecule_draw(seed, "noise." + std::to_string(t), ds.smiles[i]);
      }
      ds.labels[static_cast<std::size_t>(t)].emplace_back(static_cast<int>(i), y);
    }
  }
  return ds;
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Dataset ds;
  std::unordered_map<std::string, int> index;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("smiles,", 0) == 0) continue;  // header
    }
    std::istringstream row(line);
    std::string smiles_field, task_field, value_field;
    if (!std::getline(row, smiles_field, ',') ||
        !std::getline(row, task_field, ',') ||
        !std::getline(row, value_field)) {
      throw std::runtime_error("malformed dataset row: " + line);
    }
    chem::MolGraph g = chem::parse_smiles(smiles_field);
    const std::string canonical = chem::write_smiles(g);
    int mol = 0;
    const auto it = index.find(canonical);
    if (it == index.end()) {
      mol = static_cast<int>(ds.smiles.size());
      index[canonical] = mol;
      ds.smiles.push_back(canonical);
      ds.graphs.push_back(std::move(g));
    } else {
      mol = it->second;
    }
    const int task = std::stoi(task_field);
    if (task < 0) throw std::runtime_error("negative task id: " + line);
    if (task >= ds.n_tasks) {
      ds.n_tasks = task + 1;
      ds.labels.resize(static_cast<std::size_t>(ds.n_tasks));
    }
    ds.labels[static_cast<std::size_t>(task)].emplace_back(
        mol, std::stod(value_field));
  }
  ds.eval_labels.resize(static_cast<std::size_t>(ds.n_tasks));
  return ds;
}

void save_dataset_csv(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "smiles,task_id,value\n";
  out.precision(17);
  for (int t = 0; t < ds.n_tasks; ++t) {
    for (const auto& [mol, y] : ds.labels[static_cast<std::size_t>(t)]) {
      out << ds.smiles[static_cast<std::size_t>(mol)] << ',' << t << ',' << y
          << '\n';
    }
  }
}

}  // namespace coolant::gate

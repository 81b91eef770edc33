//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/molgraph/rings.hpp"

#include <vector>

#include "coolant/molgraph/molgraph.hpp"

namespace coolant::chem {

namespace {

// True when the cycle (given as an ordered atom walk) has no chord, i.e. no
// bond between two non-consecutive members.
bool chordless(const MolGraph& g, const std::vector<int>& cycle) {
  const int n = static_cast<int>(cycle.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // closing edge
      if (g.find_bond(cycle[static_cast<std::size_t>(i)],
                      cycle[static_cast<std::size_t>(j)]) >= 0) {
        return false;
      }
    }
  }
  return true;
}

void extend(const MolGraph& g, std::vector<int>& path, std::vector<bool>& on_path,
            int max_size, std::vector<std::vector<int>>& out) {
  const int start = path.front();
  const int head = path.back();
  for (int bi : g.incident_bonds(head)) {
    const int next = g.bond(bi).other(head);
    if (next == start) {
      // Closed a cycle; keep one orientation only (second atom < last atom).
      if (path.size() >= 3 && path[1] < path.back() && chordless(g, path)) {
        out.push_back(path);
      }
      continue;
    }
    if (next < start || on_path[static_cast<std::size_t>(next)]) continue;
    if (static_cast<int>(path.size()) == max_size) continue;
    path.push_back(next);
    on_path[static_cast<std::size_t>(next)] = true;
    extend(g, path, on_path, max_size, out);
    on_path[static_cast<std::size_t>(next)] = false;
    path.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> chordless_cycles(const MolGraph& g, int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<bool> on_path(static_cast<std::size_t>(g.atom_count()), false);
  // Enumerate each cycle once through its smallest atom index.
  for (int s = 0; s < g.atom_count(); ++s) {
    std::vector<int> path{s};
    on_path[static_cast<std::size_t>(s)] = true;
    extend(g, path, on_path, max_size, out);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return out;
}

}  // namespace coolant::chem

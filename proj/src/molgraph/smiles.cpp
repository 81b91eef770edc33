//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "coolant/molgraph/smiles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coolant::chem {

namespace {

struct RingOpen {
  int atom = -1;
  std::optional<BondOrder> order;
  std::size_t offset = 0;
};

BondOrder resolve_order(const MolGraph& g, int a, int b,
                        std::optional<BondOrder> explicit_order) {
  if (explicit_order) return *explicit_order;
  if (g.atom(a).aromatic && g.atom(b).aromatic) return BondOrder::Aromatic;
  return BondOrder::Single;
}

}  // namespace

MolGraph parse_smiles(const std::string& text) {
  MolGraph g;
  std::vector<std::size_t> atom_offset;
  int prev = -1;
  std::vector<std::pair<int, std::size_t>> branch_stack;
  std::optional<BondOrder> pending;
  std::size_t pending_offset = 0;
  std::map<int, RingOpen> ring_open;

  const auto add_parsed_atom = [&](Element e, bool aromatic, std::size_t offset) {
    const int idx = g.add_atom(e, aromatic);
    atom_offset.push_back(offset);
    if (prev >= 0) {
      g.add_bond(prev, idx, resolve_order(g, prev, idx, pending));
    } else if (pending) {
      throw SmilesError(SmilesErrorKind::UnsupportedToken, pending_offset,
                        "bond symbol before any atom");
    }
    pending.reset();
    prev = idx;
  };

  const auto close_or_open_ring = [&](int label, std::size_t offset) {
    if (prev < 0) {
      throw SmilesError(SmilesErrorKind::UnsupportedToken, offset,
                        "ring bond before any atom");
    }
    const auto it = ring_open.find(label);
    if (it == ring_open.end()) {
      ring_open[label] = RingOpen{prev, pending, offset};
      pending.reset();
      return;
    }
    const RingOpen open = it->second;
    ring_open.erase(it);
    if (open.atom == prev) {
      throw SmilesError(SmilesErrorKind::UnmatchedRingBond, offset,
                        "ring bond closes on its own atom");
    }
    if (pending && open.order && *pending != *open.order) {
      throw SmilesError(SmilesErrorKind::UnmatchedRingBond, offset,
                        "conflicting bond orders on ring closure");
    }
    const std::optional<BondOrder> explicit_order = pending ? pending : open.order;
    try {
      g.add_bond(open.atom, prev, resolve_order(g, open.atom, prev, explicit_order));
    } catch (const MolGraphError&) {
      throw SmilesError(SmilesErrorKind::UnmatchedRingBond, offset,
                        "ring closure duplicates an existing bond");
    }
    pending.reset();
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    switch (c) {
      case 'C':
        if (i + 1 < n && text[i + 1] == 'l') {
          add_parsed_atom(Element::Cl, false, i);
          i += 2;
        } else {
          add_parsed_atom(Element::C, false, i);
          ++i;
        }
        break;
      case 'B':
        if (i + 1 < n && text[i + 1] == 'r') {
          add_parsed_atom(Element::Br, false, i);
          i += 2;
        } else {
          add_parsed_atom(Element::B, false, i);
          ++i;
        }
        break;
      case 'N': add_parsed_atom(Element::N, false, i); ++i; break;
      case 'O': add_parsed_atom(Element::O, false, i); ++i; break;
      case 'F': add_parsed_atom(Element::F, false, i); ++i; break;
      case 'P': add_parsed_atom(Element::P, false, i); ++i; break;
      case 'S': add_parsed_atom(Element::S, false, i); ++i; break;
      case 'I': add_parsed_atom(Element::I, false, i); ++i; break;
      case 'c': add_parsed_atom(Element::C, true, i); ++i; break;
      case 'n': add_parsed_atom(Element::N, true, i); ++i; break;
      case 'o': add_parsed_atom(Element::O, true, i); ++i; break;
      case 's': add_parsed_atom(Element::S, true, i); ++i; break;
      case '[':
        if (text.compare(i, 4, "[Si]") == 0) {
          add_parsed_atom(Element::Si, false, i);
          i += 4;
        } else {
          throw SmilesError(SmilesErrorKind::UnsupportedToken, i,
                            "unsupported bracket atom");
        }
        break;
      case '(':
        if (prev < 0) {
          throw SmilesError(SmilesErrorKind::UnsupportedToken, i,
                            "branch before any atom");
        }
        if (pending) {
          throw SmilesError(SmilesErrorKind::UnsupportedToken, pending_offset,
                            "bond symbol before branch");
        }
        branch_stack.emplace_back(prev, i);
        ++i;
        break;
      case ')':
        if (branch_stack.empty()) {
          throw SmilesError(SmilesErrorKind::UnclosedBranch, i, "unmatched ')'");
        }
        if (pending) {
          throw SmilesError(SmilesErrorKind::UnsupportedToken, pending_offset,
                            "dangling bond symbol");
        }
        prev = branch_stack.back().first;
        branch_stack.pop_back();
        ++i;
        break;
      case '-':
      case '=':
      case '#': {
        if (pending) {
          throw SmilesError(SmilesErrorKind::UnsupportedToken, i,
                            "repeated bond symbol");
        }
        pending = c == '-' ? BondOrder::Single
                 : c == '=' ? BondOrder::Double
                            : BondOrder::Triple;
        pending_offset = i;
        ++i;
        break;
      }
      case '%': {
        if (i + 2 >= n || text[i + 1] < '0' || text[i + 1] > '9' ||
            text[i + 2] < '0' || text[i + 2] > '9') {
          throw SmilesError(SmilesErrorKind::UnsupportedToken, i,
                            "'%' must be followed by two digits");
        }
        const int label = (text[i + 1] - '0') * 10 + (text[i + 2] - '0');
        close_or_open_ring(label, i);
        i += 3;
        break;
      }
      case '.':
        throw SmilesError(SmilesErrorKind::DisconnectedInput, i,
                          "disconnected components are not supported");
      default:
        if (c >= '1' && c <= '9') {
          close_or_open_ring(c - '0', i);
          ++i;
          break;
        }
        throw SmilesError(SmilesErrorKind::UnsupportedToken, i,
                          std::string("unsupported character '") + c + "'");
    }
  }

  if (pending) {
    throw SmilesError(SmilesErrorKind::UnsupportedToken, pending_offset,
                      "dangling bond symbol");
  }
  if (!branch_stack.empty()) {
    throw SmilesError(SmilesErrorKind::UnclosedBranch, branch_stack.back().second,
                      "unclosed '('");
  }
  if (!ring_open.empty()) {
    throw SmilesError(SmilesErrorKind::UnmatchedRingBond,
                      ring_open.begin()->second.offset, "unmatched ring bond");
  }
  if (g.atom_count() == 0) {
    throw SmilesError(SmilesErrorKind::UnsupportedToken, 0, "empty input");
  }

  for (int a = 0; a < g.atom_count(); ++a) {
    const int valence = default_valence(g.atom(a).element);
    if (g.valence_order_sum(a) > static_cast<double>(valence) + 0.5 + 1e-9) {
      throw SmilesError(SmilesErrorKind::ValenceViolation,
                        atom_offset[static_cast<std::size_t>(a)],
                        "explicit bonds exceed valence");
    }
  }
  g.assign_implicit_hydrogens();
  if (!g.connected()) {
    throw SmilesError(SmilesErrorKind::DisconnectedInput, 0,
                      "graph is not connected");
  }
  return g;
}

namespace {

// Dense ranks (0-based, ties share a rank) of arbitrary sortable keys.
template <typename Key>
std::vector<int> dense_ranks(const std::vector<Key>& keys) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  std::vector<int> ranks(static_cast<std::size_t>(n), 0);
  int r = 0;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && keys[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] !=
                     keys[static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)])]) {
      ++r;
    }
    ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = r;
  }
  return ranks;
}

int distinct_count(const std::vector<int>& ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

// One refinement sweep: each atom's new key is its old rank plus the sorted
// multiset of (neighbor rank, bond order) pairs.
std::vector<int> refine_once(const MolGraph& g, const std::vector<int>& ranks) {
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(g.atom_count()));
  for (int i = 0; i < g.atom_count(); ++i) {
    std::vector<int>& key = keys[static_cast<std::size_t>(i)];
    key.push_back(ranks[static_cast<std::size_t>(i)]);
    std::vector<std::pair<int, int>> env;
    for (int bi : g.incident_bonds(i)) {
      const Bond& b = g.bond(bi);
      env.emplace_back(ranks[static_cast<std::size_t>(b.other(i))],
                       static_cast<int>(b.order));
    }
    std::sort(env.begin(), env.end());
    for (const auto& [nr, bo] : env) {
      key.push_back(nr);
      key.push_back(bo);
    }
  }
  return dense_ranks(keys);
}

std::vector<int> refine_to_fixpoint(const MolGraph& g, std::vector<int> ranks) {
  for (int pass = 0; pass <= g.atom_count(); ++pass) {
    std::vector<int> next = refine_once(g, ranks);
    if (next == ranks) break;
    ranks = std::move(next);
  }
  return ranks;
}

}  // namespace

std::vector<int> canonical_ranks(const MolGraph& g) {
  const int n = g.atom_count();
  std::vector<std::vector<int>> init(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Atom& a = g.atom(i);
    init[static_cast<std::size_t>(i)] = {static_cast<int>(a.element),
                                         a.aromatic ? 1 : 0, g.degree(i),
                                         a.implicit_h};
  }
  std::vector<int> ranks = refine_to_fixpoint(g, dense_ranks(init));

  // Break remaining ties by input index: promote the lowest-index member of
  // the lowest tied class, then re-refine. Automorphic atoms make any choice
  // equivalent, so the emitted string does not depend on input order.
  while (distinct_count(ranks) < n) {
    std::vector<int> class_size(static_cast<std::size_t>(distinct_count(ranks)), 0);
    for (int r : ranks) ++class_size[static_cast<std::size_t>(r)];
    int target_class = 0;
    while (class_size[static_cast<std::size_t>(target_class)] < 2) ++target_class;
    int chosen = -1;
    for (int i = 0; i < n && chosen < 0; ++i) {
      if (ranks[static_cast<std::size_t>(i)] == target_class) chosen = i;
    }
    std::vector<std::pair<int, int>> keys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      keys[static_cast<std::size_t>(i)] = {ranks[static_cast<std::size_t>(i)],
                                           i == chosen ? 0 : 1};
    }
    std::vector<std::pair<int, int>> key_copy = keys;
    std::vector<int> seeded = dense_ranks(key_copy);
    ranks = refine_to_fixpoint(g, std::move(seeded));
  }
  return ranks;
}

namespace {

// Canonical writer. Pass 1 walks a DFS tree with neighbors ordered by rank
// and classifies every bond as a tree edge or a ring-closure (back) edge.
// Pass 2 replays the same walk and emits the string; ring-closure bonds are
// known up front, so both endpoints can write their digit in place.
struct Emitter {
  const MolGraph& g;
  const std::vector<int>& ranks;
  std::vector<bool> visited;
  std::vector<bool> is_tree_bond;
  std::vector<std::vector<int>> ring_bonds_at;  // back-edge bonds per atom
  std::vector<int> digit_of_bond;
  std::vector<bool> digit_in_use;
  std::string out;

  explicit Emitter(const MolGraph& graph, const std::vector<int>& r)
      : g(graph),
        ranks(r),
        visited(static_cast<std::size_t>(graph.atom_count()), false),
        is_tree_bond(static_cast<std::size_t>(graph.bond_count()), false),
        ring_bonds_at(static_cast<std::size_t>(graph.atom_count())),
        digit_of_bond(static_cast<std::size_t>(graph.bond_count()), -1),
        digit_in_use(100, false) {}

  std::vector<int> ordered_bonds(int atom, int from_bond) const {
    std::vector<int> order;
    for (int bi : g.incident_bonds(atom)) {
      if (bi != from_bond) order.push_back(bi);
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return ranks[static_cast<std::size_t>(g.bond(x).other(atom))] <
             ranks[static_cast<std::size_t>(g.bond(y).other(atom))];
    });
    return order;
  }

  void classify(int atom, int from_bond) {
    visited[static_cast<std::size_t>(atom)] = true;
    for (int bi : ordered_bonds(atom, from_bond)) {
      const int next = g.bond(bi).other(atom);
      if (!visited[static_cast<std::size_t>(next)]) {
        is_tree_bond[static_cast<std::size_t>(bi)] = true;
        classify(next, bi);
      } else if (!is_tree_bond[static_cast<std::size_t>(bi)] &&
                 digit_of_bond[static_cast<std::size_t>(bi)] != -2) {
        digit_of_bond[static_cast<std::size_t>(bi)] = -2;  // marked back edge
        ring_bonds_at[static_cast<std::size_t>(atom)].push_back(bi);
        ring_bonds_at[static_cast<std::size_t>(next)].push_back(bi);
      }
    }
  }

  int claim_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!digit_in_use[static_cast<std::size_t>(d)]) {
        digit_in_use[static_cast<std::size_t>(d)] = true;
        return d;
      }
    }
    throw MolGraphError("out of ring-closure digits");
  }

  void append_digit(int d) {
    if (d < 10) {
      out += static_cast<char>('0' + d);
    } else {
      out += '%';
      out += static_cast<char>('0' + d / 10);
      out += static_cast<char>('0' + d % 10);
    }
  }

  void append_order(BondOrder order, int a, int b) {
    switch (order) {
      case BondOrder::Single:
        if (g.atom(a).aromatic && g.atom(b).aromatic) out += '-';
        break;
      case BondOrder::Double: out += '='; break;
      case BondOrder::Triple: out += '#'; break;
      case BondOrder::Aromatic: break;  // implied by lowercase endpoints
    }
  }

  void append_atom(int i) {
    const Atom& a = g.atom(i);
    if (a.element == Element::Si) {
      out += "[Si]";
      return;
    }
    std::string sym{symbol(a.element)};
    if (a.aromatic) {
      for (char& c : sym) c = static_cast<char>(c - 'A' + 'a');
    }
    out += sym;
  }

  void emit(int atom, int from_bond) {
    append_atom(atom);
    for (int bi : ring_bonds_at[static_cast<std::size_t>(atom)]) {
      int& digit = digit_of_bond[static_cast<std::size_t>(bi)];
      if (digit < 0) {
        digit = claim_digit();
        append_order(g.bond(bi).order, g.bond(bi).a, g.bond(bi).b);
        append_digit(digit);
      } else {
        append_digit(digit);
        digit_in_use[static_cast<std::size_t>(digit)] = false;
      }
    }
    std::vector<int> children;
    for (int bi : ordered_bonds(atom, from_bond)) {
      if (is_tree_bond[static_cast<std::size_t>(bi)] &&
          !emitted[static_cast<std::size_t>(g.bond(bi).other(atom))]) {
        children.push_back(bi);
      }
    }
    emitted[static_cast<std::size_t>(atom)] = true;
    for (std::size_t k = 0; k < children.size(); ++k) {
      const int bi = children[k];
      const int next = g.bond(bi).other(atom);
      const bool last = k + 1 == children.size();
      if (!last) out += '(';
      append_order(g.bond(bi).order, atom, next);
      emit(next, bi);
      if (!last) out += ')';
    }
  }

  std::vector<bool> emitted;
};

}  // namespace

std::string write_smiles(const MolGraph& g) {
  if (g.atom_count() == 0) return std::string();
  const std::vector<int> ranks = canonical_ranks(g);
  int root = 0;
  for (int i = 0; i < g.atom_count(); ++i) {
    if (ranks[static_cast<std::size_t>(i)] == 0) root = i;
  }
  Emitter em(g, ranks);
  em.emitted.assign(static_cast<std::size_t>(g.atom_count()), false);
  em.classify(root, -1);
  em.emit(root, -1);
  return em.out;
}

}  // namespace coolant::chem

// Copyright 2026 The isoising Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "isoising/oracle.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "isoising/errors.hpp"

namespace isoising {
namespace {

void check_weights(const PeriodicGraph& g, std::size_t size) {
  if (size != g.edges.size()) throw DomainError("one weight per edge required");
}

struct MatchingSearch {
  const PeriodicGraph& g;
  const std::vector<double>& weights;
  std::vector<std::vector<int>> incident;
  std::vector<char> matched;
  std::vector<int> chosen;
  MatchingSummary* out;
  bool marginals;
  std::vector<std::vector<int>>* listing = nullptr;

  void run(int lowest, double w) {
    while (lowest < g.num_vertices() && matched[lowest]) ++lowest;
    if (lowest == g.num_vertices()) {
      ++out->count;
      out->weighted_sum += w;
      if (marginals)
        for (int e : chosen) out->marginals[e] += w;
      if (listing) listing->push_back(chosen);
      return;
    }
    matched[lowest] = 1;
    for (int e : incident[lowest]) {
      const auto& edge = g.edges[e];
      int other = edge.u == lowest ? edge.v : edge.u;
      if (other == lowest || matched[other]) continue;
      matched[other] = 1;
      chosen.push_back(e);
      run(lowest + 1, w * weights[e]);
      chosen.pop_back();
      matched[other] = 0;
    }
    matched[lowest] = 0;
  }
};

// Parity of wraps summed over an edge subset.
Cell wrap_parity(const PeriodicGraph& g, std::uint64_t mask) {
  Cell c;
  while (mask) {
    int e = std::countr_zero(mask);
    mask &= mask - 1;
    c = c + g.edges[e].offset;
  }
  return {mod(c.x, 2), mod(c.y, 2)};
}

Cell normalize_sign(Cell h) {
  if (h.x < 0 || (h.x == 0 && h.y < 0)) return -h;
  return h;
}

MatchingSummary search_matchings(const PeriodicGraph& g, const std::vector<double>& weights,
                                 bool with_marginals, const EnumerationBudget& budget,
                                 std::vector<std::vector<int>>* listing) {
  check_weights(g, weights.size());
  if (g.num_vertices() > budget.max_matching_vertices)
    throw BudgetExceeded("matching enumeration limited to " +
                         std::to_string(budget.max_matching_vertices) + " vertices");
  MatchingSummary summary;
  if (with_marginals) summary.marginals.assign(g.edges.size(), 0.0);
  MatchingSearch search{g, weights, {}, {}, {}, &summary, with_marginals, listing};
  search.incident.resize(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) {
    search.incident[g.edges[e].u].push_back(e);
    if (g.edges[e].v != g.edges[e].u) search.incident[g.edges[e].v].push_back(e);
  }
  search.matched.assign(g.num_vertices(), 0);
  search.run(0, 1.0);
  if (with_marginals && summary.weighted_sum > 0)
    for (auto& m : summary.marginals) m /= summary.weighted_sum;
  return summary;
}

}  // namespace

MatchingSummary enumerate_matchings(const PeriodicGraph& g, const std::vector<double>& weights,
                                    bool with_marginals, const EnumerationBudget& budget) {
  return search_matchings(g, weights, with_marginals, budget, nullptr);
}

std::vector<std::vector<int>> list_matchings(const PeriodicGraph& g,
                                             const EnumerationBudget& budget) {
  std::vector<std::vector<int>> out;
  search_matchings(g, std::vector<double>(g.edges.size(), 1.0), false, budget, &out);
  return out;
}

double ising_partition(const PeriodicGraph& g, const std::vector<double>& J,
                       const EnumerationBudget& budget) {
  check_weights(g, J.size());
  const int n = g.num_vertices();
  if (n > budget.max_spins)
    throw BudgetExceeded("spin enumeration limited to " + std::to_string(budget.max_spins));
  double z = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    double energy = 0.0;
    for (int e = 0; e < g.num_edges(); ++e) {
      bool same = ((s >> g.edges[e].u) & 1) == ((s >> g.edges[e].v) & 1);
      energy += same ? J[e] : -J[e];
    }
    z += std::exp(energy);
  }
  return z;
}

namespace {

// Gray-code walk over edge subsets; calls visit(mask) for every even subset.
template <typename Visit>
void for_each_even_subgraph(const PeriodicGraph& g, int max_edges, Visit&& visit) {
  const int m = g.num_edges();
  if (m > max_edges)
    throw BudgetExceeded("contour enumeration limited to " + std::to_string(max_edges) +
                         " edges");
  if (g.num_vertices() > 64) throw BudgetExceeded("contour enumeration limited to 64 vertices");
  std::vector<std::uint64_t> flip(m);
  for (int e = 0; e < m; ++e)
    flip[e] = (std::uint64_t{1} << g.edges[e].u) ^ (std::uint64_t{1} << g.edges[e].v);
  std::uint64_t mask = 0;
  std::uint64_t parity = 0;
  visit(mask);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
    int e = std::countr_zero(i);
    mask ^= std::uint64_t{1} << e;
    parity ^= flip[e];
    if (parity == 0) visit(mask);
  }
}

double product_over(std::uint64_t mask, const std::vector<double>& x) {
  double p = 1.0;
  while (mask) {
    p *= x[std::countr_zero(mask)];
    mask &= mask - 1;
  }
  return p;
}

}  // namespace

double even_subgraph_sum(const PeriodicGraph& g, const std::vector<double>& x,
                         const EnumerationBudget& budget) {
  check_weights(g, x.size());
  double sum = 0.0;
  for_each_even_subgraph(g, budget.max_contour_edges,
                         [&](std::uint64_t mask) { sum += product_over(mask, x); });
  return sum;
}

double low_temperature_partition(const PeriodicGraph& dual, const std::vector<double>& J,
                                 const EnumerationBudget& budget) {
  check_weights(dual, J.size());
  std::vector<double> x(J.size());
  double total = 0.0;
  for (std::size_t e = 0; e < J.size(); ++e) {
    x[e] = std::exp(-2.0 * J[e]);
    total += J[e];
  }
  double sum = 0.0;
  for_each_even_subgraph(dual, budget.max_contour_edges, [&](std::uint64_t mask) {
    if (wrap_parity(dual, mask) == Cell{}) sum += product_over(mask, x);
  });
  return 2.0 * std::exp(total) * sum;
}

std::vector<Crsf> enumerate_crsf(const PeriodicGraph& g, const EnumerationBudget& budget) {
  const int m = g.num_edges();
  const int nv = g.num_vertices();
  if (m > budget.max_crsf_edges)
    throw BudgetExceeded("CRSF enumeration limited to " + std::to_string(budget.max_crsf_edges) +
                         " edges");
  std::vector<Crsf> out;
  std::vector<int> pick(nv);
  std::iota(pick.begin(), pick.end(), 0);
  if (nv > m) return out;
  // Walk all nv-subsets of edges in lexicographic order.
  while (true) {
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (int e : pick) parent[find(g.edges[e].u)] = find(g.edges[e].v);

    std::vector<int> vertex_count(nv, 0), edge_count(nv, 0);
    for (int v = 0; v < nv; ++v) ++vertex_count[find(v)];
    for (int e : pick) ++edge_count[find(g.edges[e].u)];
    bool unicyclic = true;
    for (int r = 0; r < nv; ++r)
      if (vertex_count[r] > 0 && vertex_count[r] != edge_count[r]) unicyclic = false;

    if (unicyclic) {
      Crsf forest;
      forest.edges = pick;
      bool contractible = false;
      std::vector<int> root_slot(nv, -1);
      for (int v = 0; v < nv; ++v) {
        int r = find(v);
        if (root_slot[r] < 0) {
          root_slot[r] = static_cast<int>(forest.components.size());
          forest.components.emplace_back();
        }
        forest.components[root_slot[r]].vertices.push_back(v);
      }
      for (int e : pick) forest.components[root_slot[find(g.edges[e].u)]].edges.push_back(e);
      for (auto& comp : forest.components) {
        // Potentials along a BFS tree; the leftover edge closes the cycle.
        std::vector<Cell> pot(nv);
        std::vector<char> seen(nv, 0), used(g.edges.size(), 0);
        std::vector<int> queue{comp.vertices.front()};
        seen[comp.vertices.front()] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
          int v = queue[q];
          for (int e : comp.edges) {
            const auto& edge = g.edges[e];
            if (used[e]) continue;
            int w;
            Cell p;
            if (edge.u == v) {
              w = edge.v;
              p = pot[v] + edge.offset;
            } else if (edge.v == v) {
              w = edge.u;
              p = pot[v] - edge.offset;
            } else {
              continue;
            }
            if (seen[w]) continue;
            used[e] = 1;
            seen[w] = 1;
            pot[w] = p;
            queue.push_back(w);
          }
        }
        for (int e : comp.edges) {
          if (used[e]) continue;
          const auto& edge = g.edges[e];
          comp.homology = normalize_sign(pot[edge.u] + edge.offset - pot[edge.v]);
        }
        if (comp.homology == Cell{}) contractible = true;
      }
      if (!contractible) out.push_back(std::move(forest));
    }

    int i = nv - 1;
    while (i >= 0 && pick[i] == m - nv + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < nv; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace isoising

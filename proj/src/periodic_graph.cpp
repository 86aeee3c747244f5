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

#include "isoising/periodic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isoising/errors.hpp"

namespace isoising {

Cell PeriodicGraph::cell_of(const Vec2& p) const {
  Vec2 coords = basis.partialPivLu().solve(p);
  return {static_cast<int>(std::floor(coords.x() + 1e-9)),
          static_cast<int>(std::floor(coords.y() + 1e-9))};
}

int origin(const PeriodicGraph& g, HalfEdge h) {
  const auto& e = g.edges[h.edge()];
  return h.forward() ? e.u : e.v;
}

int target(const PeriodicGraph& g, HalfEdge h) {
  const auto& e = g.edges[h.edge()];
  return h.forward() ? e.v : e.u;
}

Cell step(const PeriodicGraph& g, HalfEdge h) {
  const auto& e = g.edges[h.edge()];
  return h.forward() ? e.offset : -e.offset;
}

Vec2 direction(const PeriodicGraph& g, HalfEdge h) {
  return g.lift(target(g, h), step(g, h)) - g.positions[origin(g, h)];
}

Embedding trace_faces(const PeriodicGraph& g) {
  const int num_half = 2 * g.num_edges();
  Embedding emb;
  emb.rotation.assign(g.num_vertices(), {});
  for (int id = 0; id < num_half; ++id) {
    HalfEdge h{id};
    emb.rotation[origin(g, h)].push_back(h);
  }
  std::vector<int> slot(num_half, -1);
  for (auto& around : emb.rotation) {
    std::vector<double> angle(around.size());
    for (std::size_t i = 0; i < around.size(); ++i) {
      Vec2 d = direction(g, around[i]);
      if (d.norm() < 1e-12) throw SchemaError("zero-length edge in embedding");
      angle[i] = std::atan2(d.y(), d.x());
    }
    std::vector<std::size_t> order(around.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (angle[order[i + 1]] - angle[order[i]] < 1e-12)
        throw SchemaError("overlapping edges at a vertex");
    }
    std::vector<HalfEdge> sorted;
    for (auto i : order) sorted.push_back(around[i]);
    around = std::move(sorted);
    for (std::size_t i = 0; i < around.size(); ++i) slot[around[i].id] = static_cast<int>(i);
  }

  // next(h): the outgoing half-edge just clockwise of twin(h) at target(h).
  auto next = [&](HalfEdge h) {
    HalfEdge t = h.twin();
    const auto& around = emb.rotation[origin(g, t)];
    int k = slot[t.id];
    int prev = (k + static_cast<int>(around.size()) - 1) % static_cast<int>(around.size());
    return around[prev];
  };

  emb.face_of.assign(num_half, -1);
  emb.position_in_face.assign(num_half, -1);
  for (int start = 0; start < num_half; ++start) {
    if (emb.face_of[start] >= 0) continue;
    FaceWalk walk;
    const int face = static_cast<int>(emb.faces.size());
    HalfEdge h{start};
    Cell cell{};
    do {
      if (emb.face_of[h.id] >= 0) throw SchemaError("inconsistent rotation system");
      emb.face_of[h.id] = face;
      emb.position_in_face[h.id] = static_cast<int>(walk.half_edges.size());
      walk.half_edges.push_back(h);
      walk.origin_cells.push_back(cell);
      cell = cell + step(g, h);
      h = next(h);
    } while (h.id != start);
    if (cell != Cell{}) throw SchemaError("face boundary does not close in the plane");
    emb.faces.push_back(std::move(walk));
  }
  return emb;
}

ToroidalGraph quotient(const PeriodicGraph& g, int n, Cell seam) {
  if (n < 1) throw DomainError("quotient size must be positive");
  ToroidalGraph t;
  t.n = n;
  t.base_vertices = g.num_vertices();
  t.base_edges = g.num_edges();
  t.seam = seam;
  auto& q = t.graph;
  q.basis = static_cast<double>(n) * g.basis;
  q.positions.resize(static_cast<std::size_t>(n * n * t.base_vertices));
  q.ids.resize(q.positions.size());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      // Label (x, y) is the geometric cell (x, y) - seam.
      Cell geometric = Cell{x, y} - seam;
      for (int v = 0; v < t.base_vertices; ++v) {
        int i = t.vertex(v, {x, y});
        q.positions[i] = g.lift(v, geometric);
        q.ids[i] = g.ids[v] + "@" + std::to_string(x) + ":" + std::to_string(y);
      }
    }
  }
  q.edges.resize(static_cast<std::size_t>(n * n * t.base_edges));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      for (int e = 0; e < t.base_edges; ++e) {
        const auto& base = g.edges[e];
        Cell to = Cell{x, y} + base.offset;
        Cell wrap{floor_div(to.x, n), floor_div(to.y, n)};
        q.edges[(y * n + x) * t.base_edges + e] =
            PeriodicEdge{t.vertex(base.u, {x, y}), t.vertex(base.v, to), wrap};
      }
    }
  }
  return t;
}

PeriodicGraph reanchor(const PeriodicGraph& g, const std::vector<Cell>& shift) {
  if (static_cast<int>(shift.size()) != g.num_vertices())
    throw DomainError("one shift per vertex required");
  PeriodicGraph out = g;
  for (int v = 0; v < g.num_vertices(); ++v) out.positions[v] = g.lift(v, shift[v]);
  for (auto& e : out.edges) e.offset = e.offset + shift[e.u] - shift[e.v];
  return out;
}

}  // namespace isoising

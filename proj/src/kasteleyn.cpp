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

#include "isoising/kasteleyn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "isoising/errors.hpp"
#include "isoising/parallel.hpp"

namespace isoising {
namespace {

bool co_oriented(const std::vector<char>& forward, HalfEdge h) {
  return static_cast<bool>(forward[h.edge()]) == h.forward();
}

int permutation_sign(const std::vector<int>& order) {
  std::vector<char> seen(order.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = order[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// sum_i c_i * phase_i * exp(log_i), returned as (sign, log|.|).
std::pair<double, double> log_sum(const std::array<double, 4>& c,
                                  const std::array<LogPfaffian<double>, 4>& pf) {
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    if (c[i] != 0.0 && !pf[i].is_zero()) top = std::max(top, pf[i].log_abs);
  if (!std::isfinite(top)) return {0.0, 0.0};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    if (!pf[i].is_zero()) sum += c[i] * pf[i].phase * std::exp(pf[i].log_abs - top);
  if (sum == 0.0) return {0.0, 0.0};
  return {sum > 0 ? 1.0 : -1.0, top + std::log(std::abs(sum))};
}

}  // namespace

bool KasteleynOrientation::valid() const {
  return std::all_of(certificate.begin(), certificate.end(),
                     [](const FaceParity& f) { return f.odd(); });
}

std::vector<FaceParity> face_parities(const PeriodicGraph& g, const std::vector<char>& forward) {
  Embedding emb = trace_faces(g);
  std::vector<FaceParity> out;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    FaceParity p;
    p.face = static_cast<int>(f);
    for (HalfEdge h : emb.faces[f].half_edges) {
      ++p.length;
      if (!co_oriented(forward, h)) ++p.clockwise;
    }
    out.push_back(p);
  }
  return out;
}

KasteleynOrientation orient(const PeriodicGraph& g) {
  if (g.num_vertices() % 2 != 0) throw OddSize("Kasteleyn orientation needs an even vertex count");
  Embedding emb = trace_faces(g);
  const int num_faces = static_cast<int>(emb.faces.size());
  KasteleynOrientation k;
  k.forward.assign(g.edges.size(), 1);

  // BFS tree of the dual; tree edges are fixed last, leaves first.
  std::vector<int> parent_edge(num_faces, -1);
  std::vector<char> reached(num_faces, 0);
  std::vector<int> order{0};
  reached[0] = 1;
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (HalfEdge h : emb.faces[order[q]].half_edges) {
      int other = emb.face_of[h.twin().id];
      if (reached[other]) continue;
      reached[other] = 1;
      parent_edge[other] = h.edge();
      order.push_back(other);
    }
  }
  if (static_cast<int>(order.size()) != num_faces)
    throw OrientationFailure("dual graph is disconnected");

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int f = *it;
    if (parent_edge[f] < 0) continue;
    int clockwise = 0;
    HalfEdge tree_half{-1};
    for (HalfEdge h : emb.faces[f].half_edges) {
      if (h.edge() == parent_edge[f]) {
        tree_half = h;
        continue;
      }
      if (!co_oriented(k.forward, h)) ++clockwise;
    }
    // Tree edge goes against the walk iff that is needed to make the count odd.
    bool against = clockwise % 2 == 0;
    k.forward[tree_half.edge()] = static_cast<char>(against != tree_half.forward());
  }
  k.certificate = face_parities(g, k.forward);
  if (!k.valid()) throw OrientationFailure("root face is not clockwise odd");
  return k;
}

int normalize_at_one(KasteleynOrientation& k, const PeriodicGraph& g,
                     const std::vector<double>& weights) {
  ToroidalGraph cell = quotient(g, 1);
  int best = 0;
  double smallest = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 4; ++t) {
    auto pf = log_pfaffian(twisted_matrix(cell, k.forward, weights, t % 2, t / 2));
    double size = pf.is_zero() ? -std::numeric_limits<double>::infinity() : pf.log_abs;
    if (size < smallest) {
      smallest = size;
      best = t;
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    Cell d = g.edges[e].offset;
    if (((best % 2) * d.x + (best / 2) * d.y) % 2 != 0) k.forward[e] ^= 1;
  }
  k.certificate = face_parities(g, k.forward);
  if (!k.valid()) throw OrientationFailure("normalization broke a face parity");
  return best;
}

std::vector<char> periodic_orientation(const ToroidalGraph& t, const std::vector<char>& base) {
  std::vector<char> out(t.graph.edges.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[t.base_edge(static_cast<int>(i))];
  return out;
}

MatrixXd twisted_matrix(const ToroidalGraph& t, const std::vector<char>& forward,
                        const std::vector<double>& weights, int theta, int tau) {
  const int n = t.graph.num_vertices();
  MatrixXd k = MatrixXd::Zero(n, n);
  for (int i = 0; i < t.graph.num_edges(); ++i) {
    const auto& e = t.graph.edges[i];
    const int b = t.base_edge(i);
    double value = forward[b] ? weights[b] : -weights[b];
    Cell w = t.wraps(i);
    if ((theta * w.x + tau * w.y) % 2 != 0) value = -value;
    k(e.u, e.v) += value;
    k(e.v, e.u) -= value;
  }
  return k;
}

std::string PartitionResult::sign_pattern() const {
  std::string s;
  for (double c : coefficients) s += c > 0 ? '+' : '-';
  return s;
}

KasteleynOrientation critical_orientation(const FisherGraph& f) {
  KasteleynOrientation k = orient(f.graph);
  normalize_at_one(k, f.graph, critical_weights(f));
  return k;
}

TorusSymbol critical_symbol(const FisherGraph& f) {
  return skew_symbol(f.graph, critical_orientation(f).forward, critical_weights(f));
}

ToroidalDimerModel::ToroidalDimerModel(const FisherGraph& f, int n)
    : ToroidalDimerModel(f, n, critical_weights(f), critical_orientation(f)) {}

ToroidalDimerModel::ToroidalDimerModel(const FisherGraph& f, int n, std::vector<double> weights,
                                       KasteleynOrientation orientation)
    : fisher_(f),
      n_(n),
      weights_(std::move(weights)),
      orientation_(std::move(orientation)),
      torus_(quotient(f.graph, n)) {
  if (weights_.size() != f.graph.edges.size()) throw DomainError("one weight per Fisher edge");
  compute();
}

void ToroidalDimerModel::compute() {
  for (int t = 0; t < 4; ++t)
    matrices_[t] = twisted_matrix(torus_, orientation_.forward, weights_, t % 2, t / 2);

  // One matching per homology class, from contours of G_n along a BFS tree.
  const int fv = fisher_.graph.num_vertices();
  const int gv = n_ * n_ * fisher_.num_g_vertices;
  const int ge = n_ * n_ * fisher_.num_g_edges;
  auto owner = [&](int x) { return (x / fv) * fisher_.num_g_vertices + fisher_.g_vertex[x % fv]; };
  struct GEdge {
    int u, v;
    Cell wrap;
  };
  std::vector<GEdge> gedges(ge);
  std::vector<std::vector<int>> incident(gv);
  for (int i = 0; i < ge; ++i) {
    const int le = long_edge_of(fisher_, i);
    const auto& e = torus_.graph.edges[le];
    gedges[i] = {owner(e.u), owner(e.v), torus_.wraps(le)};
    incident[gedges[i].u].push_back(i);
    incident[gedges[i].v].push_back(i);
  }
  std::vector<int> parent(gv, -1);
  std::vector<Cell> potential(gv);
  std::vector<char> seen(gv, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    for (int i : incident[v]) {
      const auto& e = gedges[i];
      int w = e.u == v ? e.v : e.u;
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = i;
      potential[w] = e.u == v ? potential[v] + e.wrap : potential[v] - e.wrap;
      queue.push_back(w);
    }
  }
  auto parity = [](Cell c) { return Cell{mod(c.x, 2), mod(c.y, 2)}; };
  auto cycle_of = [&](int i) {
    std::vector<char> flags(ge, 0);
    flags[i] ^= 1;
    for (int v : {gedges[i].u, gedges[i].v})
      for (int x = v; parent[x] >= 0;) {
        int p = parent[x];
        flags[p] ^= 1;
        x = gedges[p].u == x ? gedges[p].v : gedges[p].u;
      }
    return flags;
  };
  std::vector<std::pair<Cell, std::vector<char>>> generators;
  for (int i = 0; i < ge && generators.size() < 2; ++i) {
    if (parent[gedges[i].u] == i || parent[gedges[i].v] == i) continue;
    Cell c = parity(potential[gedges[i].u] + gedges[i].wrap - potential[gedges[i].v]);
    if (c == Cell{}) continue;
    if (!generators.empty() && c == generators[0].first) continue;
    generators.emplace_back(c, cycle_of(i));
  }
  if (generators.size() != 2) throw OrientationFailure("could not find two independent cycles");

  std::array<std::vector<int>, 4> by_class;
  for (int choice = 0; choice < 4; ++choice) {
    std::vector<char> contour(ge, 0);
    for (int g = 0; g < 2; ++g)
      if ((choice >> g) & 1)
        for (int i = 0; i < ge; ++i) contour[i] ^= generators[g].second[i];
    auto completion = matchings_of_contour(fisher_, n_, contour, 0);
    if (completion.count == 0) throw OrientationFailure("contour without completion");
    Cell cls;
    for (int e : completion.matching) cls = cls + torus_.wraps(e);
    cls = parity(cls);
    by_class[cls.x + 2 * cls.y] = std::move(completion.matching);
  }

  const int nv = torus_.graph.num_vertices();
  for (int c = 0; c < 4; ++c) {
    if (by_class[c].empty() && nv > 0) throw OrientationFailure("missing homology class");
    std::vector<int> order;
    for (int e : by_class[c]) {
      const auto& edge = torus_.graph.edges[e];
      order.push_back(std::min(edge.u, edge.v));
      order.push_back(std::max(edge.u, edge.v));
    }
    int base_sign = permutation_sign(order);
    for (int t = 0; t < 4; ++t) {
      int sign = base_sign;
      for (std::size_t k = 0; k < order.size(); k += 2)
        if (matrices_[t](order[k], order[k + 1]) < 0) sign = -sign;
      partition_.class_signs(t, c) = sign;
    }
  }
  Eigen::Vector4d coef =
      partition_.class_signs.transpose().fullPivLu().solve(Eigen::Vector4d::Ones());
  for (int t = 0; t < 4; ++t) {
    if (std::abs(std::abs(coef[t]) - 0.5) > 1e-12)
      throw OrientationFailure("sign matrix does not combine the four Pfaffians");
    partition_.coefficients[t] = coef[t];
  }

  parallel_for(4, [&](std::size_t t) { partition_.pfaffians[t] = log_pfaffian(matrices_[t]); });
  auto [sign, log_z] = log_sum(partition_.coefficients, partition_.pfaffians);
  if (sign <= 0) throw OrientationFailure("partition function is not positive");
  partition_.log_z = log_z;
  partition_.z = std::exp(log_z);
}

double ToroidalDimerModel::boltzmann_probability(const std::vector<int>& edges) const {
  const int nv = torus_.graph.num_vertices();
  std::vector<int> order;
  std::vector<char> used(nv, 0);
  for (int e : edges) {
    const auto& edge = torus_.graph.edges.at(e);
    for (int x : {edge.u, edge.v}) {
      if (used[x]) throw NotDisjoint("edges share a vertex");
      used[x] = 1;
    }
    order.push_back(edge.u);
    order.push_back(edge.v);
  }
  if (edges.empty()) return 1.0;
  std::vector<int> rest;
  for (int x = 0; x < nv; ++x)
    if (!used[x]) rest.push_back(x);
  std::vector<int> full = order;
  full.insert(full.end(), rest.begin(), rest.end());
  const int perm = permutation_sign(full);

  std::array<LogPfaffian<double>, 4> terms;
  parallel_for(4, [&](std::size_t t) {
    const MatrixXd& k = matrices_[t];
    MatrixXd sub(rest.size(), rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (std::size_t j = 0; j < rest.size(); ++j) sub(i, j) = k(rest[i], rest[j]);
    LogPfaffian<double> r = log_pfaffian(sub);
    r.phase *= perm;
    for (std::size_t i = 0; i < order.size(); i += 2) {
      double entry = k(order[i], order[i + 1]);
      if (entry == 0.0) {
        r.phase = 0.0;
        break;
      }
      r.phase *= entry > 0 ? 1.0 : -1.0;
      r.log_abs += std::log(std::abs(entry));
    }
    terms[t] = r;
  });
  auto [sign, log_r] = log_sum(partition_.coefficients, terms);
  return sign * std::exp(log_r - partition_.log_z);
}

}  // namespace isoising

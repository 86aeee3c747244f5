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

#include "isoising/gibbs.hpp"

#include <algorithm>
#include <cmath>

#include "isoising/errors.hpp"
#include "isoising/parallel.hpp"
#include "isoising/pfaffian.hpp"

namespace isoising {

MatrixXc inverse_block_sum(const TorusSymbol& s, Cell d, int m) {
  std::vector<MatrixXc> rows(m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
    Complex z = std::polar(1.0, (2.0 * double(j) + 1) * kPi / m);
    MatrixXc acc = MatrixXc::Zero(s.size(), s.size());
    for (int k = 0; k < m; ++k) {
      Complex w = std::polar(1.0, 2 * kPi * double(k) / m);
      acc += s(z, w).partialPivLu().inverse() * monomial(z, w, d);
    }
    rows[j] = std::move(acc);
  });
  MatrixXc total = MatrixXc::Zero(s.size(), s.size());
  for (const auto& r : rows) total += r;
  return total / (double(m) * m);
}

GibbsCorrelator::GibbsCorrelator(const FisherGraph& f, GibbsOptions options)
    : fisher_(f), options_(options), weights_(critical_weights(f)) {
  orientation_ = critical_orientation(f);
  symbol_ = skew_symbol(f.graph, orientation_.forward, weights_);
}

GibbsCorrelator::Block GibbsCorrelator::compute_block(Cell d) const {
  // Ladder m, 2m, 4m with Richardson steps in h^2; doubled until two
  // consecutive extrapolants agree.
  int m = options_.base_resolution;
  std::vector<MatrixXc> sums{inverse_block_sum(symbol_, d, m),
                             inverse_block_sum(symbol_, d, 2 * m)};
  std::vector<MatrixXc> extrapolated{sums[1] + (sums[1] - sums[0]) / 3.0};
  for (int top = 4 * m; top <= options_.max_resolution; top *= 2) {
    sums.push_back(inverse_block_sum(symbol_, d, top));
    const auto& a = sums[sums.size() - 2];
    const auto& b = sums.back();
    extrapolated.push_back(b + (b - a) / 3.0);
    double error =
        (extrapolated.back() - extrapolated[extrapolated.size() - 2]).cwiseAbs().maxCoeff();
    if (error < options_.tolerance) return {extrapolated.back(), error};
  }
  throw NonConvergent("inverse Kasteleyn quadrature did not reach tolerance at displacement (" +
                      std::to_string(d.x) + "," + std::to_string(d.y) + ")");
}

GibbsCorrelator::Block GibbsCorrelator::block(Cell d) const {
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
  }
  Block b = compute_block(d);
  if (std::abs(d.x) <= options_.cache_range && std::abs(d.y) <= options_.cache_range) {
    std::unique_lock lock(cache_mutex_);
    cache_.emplace(d, b);
  }
  return b;
}

Complex GibbsCorrelator::inverse_coefficient(LatticeVertex a, LatticeVertex b) const {
  return block(b.cell - a.cell).value(a.v, b.v);
}

double GibbsCorrelator::quadrature_error(Cell d) const { return block(d).error; }

double GibbsCorrelator::kasteleyn_entry(int e) const {
  return orientation_.forward[e] ? weights_[e] : -weights_[e];
}

EdgeProbability GibbsCorrelator::edge_probability(const std::vector<LatticeEdge>& edges) const {
  EdgeProbability out;
  if (edges.empty()) {
    out.value = out.raw = 1.0;
    return out;
  }
  std::vector<LatticeVertex> order;
  double product = 1.0;
  for (const auto& le : edges) {
    const auto& e = fisher_.graph.edges.at(le.edge);
    LatticeVertex u{e.u, le.cell}, v{e.v, le.cell + e.offset};
    for (const auto& x : order)
      if ((x.v == u.v && x.cell == u.cell) || (x.v == v.v && x.cell == v.cell))
        throw NotDisjoint("edges share a vertex");
    order.push_back(v);
    order.push_back(u);
    product *= kasteleyn_entry(le.edge);
  }
  const int size = static_cast<int>(order.size());
  MatrixXc sub = MatrixXc::Zero(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) sub(i, j) = inverse_coefficient(order[i], order[j]);
  Complex p = product * pfaffian(sub);
  out.raw = p.real();
  out.imaginary = p.imag();
  out.value = std::clamp(out.raw, 0.0, 1.0);
  out.clamped = out.value != out.raw;
  return out;
}

ConvergenceReport GibbsCorrelator::convergence_report(const std::vector<LatticeEdge>& edges,
                                                      const std::vector<int>& n_list) const {
  ConvergenceReport report;
  report.limit = edge_probability(edges).raw;
  for (int n : n_list) {
    ToroidalDimerModel model(fisher_, n, weights_, orientation_);
    std::vector<int> finite;
    for (const auto& le : edges) {
      Cell c{mod(le.cell.x, n), mod(le.cell.y, n)};
      finite.push_back((c.y * n + c.x) * fisher_.graph.num_edges() + le.edge);
    }
    double p = model.boltzmann_probability(finite);
    report.rows.push_back({n, p, std::abs(p - report.limit)});
  }
  report.strictly_decreasing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (!(report.rows[i].gap < report.rows[i - 1].gap)) report.strictly_decreasing = false;
  return report;
}

}  // namespace isoising

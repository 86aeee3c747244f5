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


#include "isoising/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <tuple>

#include "isoising/errors.hpp"
#include "isoising/fisher.hpp"
#include "isoising/kasteleyn.hpp"
#include "isoising/parallel.hpp"

namespace isoising {
namespace {

Complex to_complex(const Vec2& v) { return {v.x(), v.y()}; }

double arg(const Vec2& v) { return std::atan2(v.y(), v.x()); }

void add_edge_terms(std::vector<SymbolTerm>& terms, int u, int v, Cell offset, double c) {
  terms.push_back({u, u, {}, c});
  terms.push_back({v, v, {}, c});
  terms.push_back({u, v, -offset, -c});
  terms.push_back({v, u, offset, -c});
}

// The small rhombus of the double graph around the diagonal w-b, where w is the
// centre of the big rhombus and p1, p2 are the big-rhombus neighbours of b.
DoubleEdge small_rhombus(int white, int black, Cell cell, const Vec2& w, const Vec2& b,
                         const Vec2& p1, const Vec2& p2) {
  Vec2 e1 = (b + p1) - 2 * w;
  Vec2 e2 = (b + p2) - 2 * w;
  double a1 = arg(e1);
  double turn = std::remainder(arg(e2) - a1, 2 * kPi);
  DoubleEdge d;
  d.white = white;
  d.black = black;
  d.cell = cell;
  d.alpha = turn > 0 ? a1 : a1 + turn;
  d.beta = d.alpha + std::abs(turn);
  d.theta = std::abs(turn) / 2;
  d.value = (std::polar(1.0, d.beta) - std::polar(1.0, d.alpha)) / Complex(0, 1);
  return d;
}

double relative_gap(Complex a, Complex b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TorusSymbol LaplacianOperator::symbol() const {
  std::vector<SymbolTerm> terms;
  for (std::size_t e = 0; e < edges.size(); ++e)
    add_edge_terms(terms, edges[e].u, edges[e].v, edges[e].offset, conductance[e]);
  return TorusSymbol(size, std::move(terms));
}

LaplacianOperator laplacian(const PeriodicIsoradialGraph& g) {
  LaplacianOperator op;
  op.size = g.num_vertices();
  op.edges = g.graph().edges;
  for (int e = 0; e < g.num_edges(); ++e) op.conductance.push_back(std::tan(g.theta(e)));
  return op;
}

LaplacianOperator dual_laplacian(const PeriodicIsoradialGraph& g) {
  LaplacianOperator op;
  op.size = g.num_faces();
  for (int e = 0; e < g.num_edges(); ++e) {
    const Rhombus& r = g.rhombus(e);
    op.edges.push_back({r.right_face, r.left_face, r.left_cell - r.right_cell});
    op.conductance.push_back(1.0 / std::tan(r.theta));
  }
  return op;
}

LaurentPoly2 laplacian_polynomial(const PeriodicIsoradialGraph& g) {
  return characteristic_polynomial(laplacian(g).symbol());
}

int DoubleGraph::degree(int white) const {
  return static_cast<int>(
      std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.white == white; }));
}

DoubleGraph double_graph(const PeriodicIsoradialGraph& g) {
  DoubleGraph d;
  d.num_primal = g.num_vertices();
  d.num_dual = g.num_faces();
  const PeriodicGraph& pg = g.graph();
  for (int e = 0; e < g.num_edges(); ++e) {
    const PeriodicEdge& edge = pg.edges[e];
    const Rhombus& r = g.rhombus(e);
    auto [u, cl, v, cr] = g.rhombus_vertices(e);
    Vec2 w = (u + v) / 2;
    d.psi.push_back(arg(v - u));
    d.theta.push_back(r.theta);
    d.edges.push_back(small_rhombus(e, edge.u, {}, w, u, cl, cr));
    d.edges.push_back(small_rhombus(e, edge.v, edge.offset, w, v, cl, cr));
    d.edges.push_back(small_rhombus(e, d.num_primal + r.left_face, r.left_cell, w, cl, u, v));
    d.edges.push_back(small_rhombus(e, d.num_primal + r.right_face, r.right_cell, w, cr, u, v));
  }
  return d;
}

TorusSymbol kasteleyn_symbol(const DoubleGraph& d) {
  std::vector<SymbolTerm> terms;
  for (const auto& e : d.edges) terms.push_back({e.white, e.black, -e.cell, e.value});
  return TorusSymbol(d.num_white(), d.num_black(), std::move(terms));
}

VectorXc gauge_diagonal(const DoubleGraph& d) {
  VectorXc a(d.num_white());
  for (int w = 0; w < d.num_white(); ++w) {
    double t = d.theta[w];
    a(w) = std::polar(1.0, -d.psi[w]) / (2 * std::sqrt(std::sin(t) * std::cos(t)));
  }
  return a;
}

Incidence incidence(const PeriodicIsoradialGraph& g, const std::vector<char>& reversed) {
  std::vector<SymbolTerm> primal, dual;
  for (int e = 0; e < g.num_edges(); ++e) {
    const PeriodicEdge& edge = g.graph().edges[e];
    const Rhombus& r = g.rhombus(e);
    double s = (!reversed.empty() && reversed[e]) ? -1.0 : 1.0;
    double a = std::sqrt(std::tan(r.theta)), b = 1.0 / a;
    primal.push_back({e, edge.u, {}, -s * a});
    primal.push_back({e, edge.v, -edge.offset, s * a});
    dual.push_back({e, r.right_face, -r.right_cell, -s * b});
    dual.push_back({e, r.left_face, -r.left_cell, s * b});
  }
  return {TorusSymbol(g.num_edges(), g.num_vertices(), std::move(primal)),
          TorusSymbol(g.num_edges(), g.num_faces(), std::move(dual))};
}

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (int i = 0; i < 7; ++i)
    if (ran[i]) m = std::max(m, residuals[i]);
  return m;
}

IdentityReport identity_suite(const PeriodicIsoradialGraph& g, const SuiteOptions& options) {
  IdentityReport report;
  for (int item : options.items) {
    if (item < 1 || item > 7) throw DomainError("identity items are numbered 1 to 7");
    report.ran[item - 1] = true;
  }

  const DoubleGraph d = double_graph(g);
  const TorusSymbol k = kasteleyn_symbol(d);
  const VectorXc a = gauge_diagonal(d);
  const Incidence m = incidence(g);
  const TorusSymbol lap = laplacian(g).symbol();
  const TorusSymbol lap_dual = dual_laplacian(g).symbol();
  const int nv = g.num_vertices(), nf = g.num_faces();

  double cos_product = 1.0, sin_cos_product = 1.0;
  report.tan_product = 1.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    double t = g.theta(e);
    report.tan_product *= std::tan(t);
    cos_product *= 2 * std::cos(t);
    sin_cos_product *= 4 * std::sin(t) * std::cos(t);
  }

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::vector<std::pair<Complex, Complex>> points(options.torus_samples);
  for (auto& p : points) p = {std::polar(1.0, angle(rng)), std::polar(1.0, angle(rng))};

  struct Sample {
    std::array<double, 5> r{};
    Complex zeta;
  };
  std::vector<Sample> samples(points.size());
  parallel_for(points.size(), [&](std::size_t s) {
    auto [z, w] = points[s];
    MatrixXc kz = k(z, w);
    MatrixXc ak = a.asDiagonal() * kz;
    MatrixXc expected(kz.rows(), kz.cols());
    expected << m.primal(z, w), Complex(0, 1) * m.dual(z, w);
    Sample& out = samples[s];
    out.r[0] = (ak - expected).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff();

    MatrixXc block = MatrixXc::Zero(nv + nf, nv + nf);
    MatrixXc dg = lap(z, w), dd = lap_dual(z, w);
    block.topLeftCorner(nv, nv) = dg;
    block.bottomRightCorner(nf, nf) = dd;
    out.r[1] = (ak.adjoint() * ak - block).cwiseAbs().maxCoeff() / block.cwiseAbs().maxCoeff();

    Complex det_k = kz.determinant(), det_g = dg.determinant(), det_d = dd.determinant();
    out.r[2] = relative_gap(std::norm(det_k) / sin_cos_product, det_g * det_d);
    out.r[3] = relative_gap(det_g, report.tan_product * det_d);
    out.r[4] = relative_gap(std::abs(det_g), std::abs(det_k) / cos_product);
    out.zeta = det_g * cos_product / det_k;
  });
  for (const auto& s : samples)
    for (int i = 0; i < 5; ++i) report.residuals[i] = std::max(report.residuals[i], s.r[i]);
  if (!samples.empty()) report.zeta = samples.front().zeta;

  if (report.ran[5] || report.ran[6]) {
    report.p = characteristic_polynomial(critical_symbol(fisher_graph(g))).phase_normalized();
    report.p_delta = characteristic_polynomial(lap);
    report.newton_p = newton_polygon(report.p);
    report.newton_p_delta = newton_polygon(report.p_delta);
    report.residuals[6] = report.newton_p == report.newton_p_delta ? 0.0 : 1.0;

    // Skip points close to the zero at (1,1).
    const double floor = 1e-3 * report.p_delta.l1_norm();
    std::vector<Complex> ratios;
    double conj_gap = 0.0;
    while (static_cast<int>(ratios.size()) < options.ratio_samples) {
      Complex z = std::polar(1.0, angle(rng)), w = std::polar(1.0, angle(rng));
      Complex pd = report.p_delta(z, w);
      if (std::abs(pd) < floor) continue;
      Complex r = report.p(z, w) / pd;
      Complex rc = report.p(std::conj(z), std::conj(w)) / report.p_delta(std::conj(z), std::conj(w));
      conj_gap = std::max(conj_gap, std::abs(r - rc) / std::abs(r));
      ratios.push_back(r);
    }
    report.c = ratios.front();
    for (Complex r : ratios)
      report.residuals[5] = std::max(report.residuals[5], std::abs(r - report.c) / std::abs(report.c));
    report.c_conjugate_gap = conj_gap;
  }

  if (options.throw_on_violation)
    for (int i = 0; i < 7; ++i)
      if (report.ran[i] && report.residuals[i] > options.tolerance)
        throw IdentityViolation(IdentityReport::kNames[i], report.residuals[i]);
  return report;
}

LaurentPoly2 crsf_polynomial(const PeriodicIsoradialGraph& g) {
  if (g.num_vertices() > 6 || g.num_edges() > 14)
    throw TooLarge("CRSF enumeration is limited to 6 vertices and 14 edges");
  std::map<Cell, Complex> coeffs;
  for (const Crsf& forest : enumerate_crsf(g.graph())) {
    // Product over components of t_T (2 - m_T - 1/m_T), expanded term by term.
    std::map<Cell, Complex> product{{Cell{}, 1.0}};
    for (const auto& comp : forest.components) {
      double weight = 1.0;
      for (int e : comp.edges) weight *= std::tan(g.theta(e));
      std::map<Cell, Complex> next;
      for (const auto& [x, c] : product) {
        next[x] += 2.0 * weight * c;
        next[x + comp.homology] -= weight * c;
        next[x - comp.homology] -= weight * c;
      }
      product = std::move(next);
    }
    for (const auto& [x, c] : product) coeffs[x] += c;
  }
  LaurentPoly2 p(std::move(coeffs));
  p.prune(1e-14);
  return p;
}

DiscreteExponential discrete_exponential(const PeriodicIsoradialGraph& g, Complex lambda) {
  const PeriodicGraph& pg = g.graph();
  auto factor = [&](const Vec2& step) {
    Complex s = to_complex(step);
    if (std::abs(lambda - s) < 1e-12 || std::abs(lambda + s) < 1e-12)
      throw PoleHit("lambda coincides with a rhombus direction");
    return (lambda + s) / (lambda - s);
  };

  // Breadth-first over lifted vertices; each edge u -> v is walked as
  // u -> left face centre -> v in the rhombus tiling.
  using Key = std::tuple<int, int, int>;
  std::map<Key, Complex> value;
  std::deque<std::pair<int, Cell>> queue;
  value[{0, 0, 0}] = 1.0;
  queue.push_back({0, {}});
  const int range = 2 * std::max(1, g.num_vertices()) + 2;
  auto visit = [&](int v, Cell c, Complex f) {
    if (std::abs(c.x) > range || std::abs(c.y) > range) return;
    if (value.emplace(Key{v, c.x, c.y}, f).second) queue.push_back({v, c});
  };
  while (!queue.empty()) {
    auto [x, c] = queue.front();
    queue.pop_front();
    Complex f = value.at({x, c.x, c.y});
    for (int e = 0; e < pg.num_edges(); ++e) {
      const PeriodicEdge& edge = pg.edges[e];
      const Vec2 u0 = pg.positions[edge.u];
      const Vec2 v0 = pg.lift(edge.v, edge.offset);
      const Vec2 center = g.rhombus(e).left_center;
      Complex forward = factor(center - u0) * factor(v0 - center);
      if (edge.u == x) visit(edge.v, c + edge.offset, f * forward);
      if (edge.v == x) visit(edge.u, c - edge.offset, f / forward);
    }
  }
  auto at = [&](int v, Cell c) {
    auto it = value.find({v, c.x, c.y});
    if (it == value.end()) throw DomainError("graph is not connected");
    return it->second;
  };
  DiscreteExponential out;
  out.z = 1.0 / at(0, {1, 0});
  out.w = 1.0 / at(0, {0, 1});
  out.values.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) out.values(v) = at(v, {});
  return out;
}

}  // namespace isoising

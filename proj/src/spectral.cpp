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

#include "isoising/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "isoising/errors.hpp"
#include "isoising/parallel.hpp"

namespace isoising {
namespace {

Complex unit(double angle) { return std::polar(1.0, angle); }

long long cross(Cell o, Cell a, Cell b) {
  return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
         static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

}  // namespace

TorusSymbol::TorusSymbol(int size, std::vector<SymbolTerm> terms)
    : TorusSymbol(size, size, std::move(terms)) {}

TorusSymbol::TorusSymbol(int rows, int cols, std::vector<SymbolTerm> terms)
    : size_(rows), cols_(cols), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    bounds_.x = std::max(bounds_.x, std::abs(t.exponent.x));
    bounds_.y = std::max(bounds_.y, std::abs(t.exponent.y));
  }
}

MatrixXc TorusSymbol::operator()(Complex z, Complex w) const {
  MatrixXc m = MatrixXc::Zero(size_, cols_);
  for (const auto& t : terms_) m(t.row, t.col) += t.value * monomial(z, w, t.exponent);
  return m;
}

TorusSymbol skew_symbol(const PeriodicGraph& g, const std::vector<char>& forward,
                        const std::vector<double>& weights) {
  std::vector<SymbolTerm> terms;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges[e];
    double value = forward[e] ? weights[e] : -weights[e];
    terms.push_back({edge.u, edge.v, -edge.offset, value});
    terms.push_back({edge.v, edge.u, edge.offset, -value});
  }
  return TorusSymbol(g.num_vertices(), std::move(terms));
}

LaurentPoly2::LaurentPoly2(std::map<Cell, Complex> coefficients)
    : coeffs_(std::move(coefficients)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex(0); });
}

Complex LaurentPoly2::coefficient(Cell c) const {
  auto it = coeffs_.find(c);
  return it == coeffs_.end() ? Complex(0) : it->second;
}

double LaurentPoly2::max_abs() const {
  double m = 0.0;
  for (const auto& [_, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double LaurentPoly2::l1_norm() const {
  double s = 0.0;
  for (const auto& [_, c] : coeffs_) s += std::abs(c);
  return s;
}

Complex LaurentPoly2::operator()(Complex z, Complex w) const {
  Complex sum = 0.0;
  for (const auto& [e, c] : coeffs_) sum += c * monomial(z, w, e);
  return sum;
}

void LaurentPoly2::prune(double relative) {
  const double cut = relative * max_abs();
  std::erase_if(coeffs_, [cut](const auto& kv) { return std::abs(kv.second) < cut; });
}

LaurentPoly2 LaurentPoly2::phase_normalized() const {
  if (coeffs_.empty()) return *this;
  // The constant term wins ties.
  const double top = max_abs();
  Complex lead = coefficient({});
  if (std::abs(lead) < top * (1 - 1e-12)) {
    for (const auto& [_, c] : coeffs_)
      if (std::abs(c) == top) {
        lead = c;
        break;
      }
  }
  return *this * (std::conj(lead) / std::abs(lead));
}

LaurentPoly2 LaurentPoly2::operator*(Complex s) const {
  auto out = coeffs_;
  for (auto& [_, c] : out) c *= s;
  return LaurentPoly2(std::move(out));
}

LaurentPoly2 characteristic_polynomial(const TorusSymbol& s) {
  if (s.rows() != s.cols()) throw DomainError("characteristic polynomial of a non-square symbol");
  const int bx = s.size() * s.bounds().x;
  const int by = s.size() * s.bounds().y;
  const int mx = 2 * bx + 1;
  const int my = 2 * by + 1;
  MatrixXc values(mx, my);
  parallel_for(static_cast<std::size_t>(mx * my), [&](std::size_t idx) {
    int j = static_cast<int>(idx) / my, k = static_cast<int>(idx) % my;
    values(j, k) = s(unit(2 * kPi * j / mx), unit(2 * kPi * k / my)).determinant();
  });
  // Separable inverse DFT onto exponents -b..b.
  MatrixXc fx(mx, mx), fy(my, my);
  for (int a = 0; a < mx; ++a)
    for (int j = 0; j < mx; ++j) fx(a, j) = unit(-2 * kPi * double(a - bx) * j / mx) / double(mx);
  for (int b = 0; b < my; ++b)
    for (int k = 0; k < my; ++k) fy(b, k) = unit(-2 * kPi * double(b - by) * k / my) / double(my);
  MatrixXc c = fx * values * fy.transpose();

  std::map<Cell, Complex> coeffs;
  for (int a = 0; a < mx; ++a)
    for (int b = 0; b < my; ++b) coeffs[{a - bx, b - by}] = c(a, b);
  LaurentPoly2 p(std::move(coeffs));
  p.prune(1e-9);

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  const double scale = std::max(p.l1_norm(), 1e-300);
  for (int trial = 0; trial < 20; ++trial) {
    Complex z = unit(angle(rng)), w = unit(angle(rng));
    double residual = std::abs(p(z, w) - s(z, w).determinant()) / scale;
    if (residual > 1e-8)
      throw InterpolationResidual("interpolated polynomial misses det by " +
                                  std::to_string(residual));
  }
  return p;
}

bool NewtonPolygon::contains(Cell c) const {
  if (vertices.empty()) return false;
  if (vertices.size() == 1) return c == vertices[0];
  if (vertices.size() == 2) {
    return cross(vertices[0], vertices[1], c) == 0 &&
           std::min(vertices[0].x, vertices[1].x) <= c.x &&
           c.x <= std::max(vertices[0].x, vertices[1].x) &&
           std::min(vertices[0].y, vertices[1].y) <= c.y &&
           c.y <= std::max(vertices[0].y, vertices[1].y);
  }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (cross(vertices[i], vertices[(i + 1) % vertices.size()], c) < 0) return false;
  return true;
}

std::vector<Cell> NewtonPolygon::lattice_points() const {
  std::vector<Cell> out;
  if (vertices.empty()) return out;
  int x0 = vertices[0].x, x1 = x0, y0 = vertices[0].y, y1 = y0;
  for (Cell v : vertices) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  for (int x = x0; x <= x1; ++x)
    for (int y = y0; y <= y1; ++y)
      if (contains({x, y})) out.push_back({x, y});
  return out;
}

NewtonPolygon newton_polygon(const LaurentPoly2& p) {
  if (p.is_zero()) throw ZeroPolynomial("Newton polygon of the zero polynomial");
  std::vector<Cell> pts;
  for (const auto& [e, _] : p.coefficients()) pts.push_back(e);
  std::sort(pts.begin(), pts.end());
  if (pts.size() == 1) return {pts};
  // Andrew's monotone chain.
  std::vector<Cell> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return {hull};
}

ZeroReport zero_at_one_one(const LaurentPoly2& p) {
  ZeroReport r;
  Complex saa = 0, sab = 0, sbb = 0;
  for (const auto& [e, c] : p.coefficients()) {
    r.value += c;
    r.grad_z += double(e.x) * c;
    r.grad_w += double(e.y) * c;
    saa += double(e.x) * e.x * c;
    sab += double(e.x) * e.y * c;
    sbb += double(e.y) * e.y * c;
  }
  const double k = -kPi * kPi / 2;
  r.alpha = (k * saa).real();
  r.beta = (k * sab).real();
  r.gamma = (k * sbb).real();
  const double scale = std::max(p.max_abs(), 1e-300);
  r.definite = r.alpha * r.gamma - r.beta * r.beta > 1e-12 * scale * scale;
  return r;
}

bool TorusScan::adjacent_to_one() const {
  auto near = [this](int j) { return j <= 1 || j >= m - 1; };
  return near(argmin_j) && near(argmin_k);
}

TorusScan scan_torus(const LaurentPoly2& p, int m) {
  TorusScan scan;
  scan.m = m;
  MatrixXd values(m, m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
    Complex z = unit(2 * kPi * double(j) / m);
    for (int k = 0; k < m; ++k) values(j, k) = std::abs(p(z, unit(2 * kPi * double(k) / m)));
  });
  Eigen::Index j, k;
  scan.minimum = values.minCoeff(&j, &k);
  scan.argmin_j = static_cast<int>(j);
  scan.argmin_k = static_cast<int>(k);
  scan.margin = std::numeric_limits<double>::infinity();
  auto near = [m](int i) { return i <= 1 || i >= m - 1; };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (!(near(a) && near(b))) scan.margin = std::min(scan.margin, values(a, b));
  return scan;
}

double shifted_log_mean(const LaurentPoly2& p, int m) {
  std::vector<double> rows(m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
    Complex z = unit((2.0 * double(j) + 1) * kPi / m);
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += std::log(std::abs(p(z, unit(2 * kPi * double(k) / m))));
    rows[j] = s;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total / (double(m) * m);
}

FreeEnergy free_energy(const LaurentPoly2& p, std::vector<int> ladder) {
  if (ladder.size() < 3) throw DomainError("free energy needs at least three resolutions");
  FreeEnergy f;
  f.resolutions = ladder;
  for (int m : ladder) f.sums.push_back(-0.5 * shifted_log_mean(p, m));
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    double r = double(ladder[i]) / ladder[i - 1];
    f.extrapolated.push_back(f.sums[i] + (f.sums[i] - f.sums[i - 1]) / (r * r - 1));
  }
  std::vector<double> diffs;
  for (std::size_t i = 1; i < ladder.size(); ++i)
    diffs.push_back(std::abs(f.sums[i] - f.sums[i - 1]));
  for (std::size_t i = 1; i < diffs.size(); ++i)
    if (diffs[i] > diffs[i - 1] && diffs[i] > 1e-14)
      throw NonConvergent("free-energy Riemann sums do not settle");
  f.value = f.extrapolated.back();
  f.error = std::abs(f.extrapolated.back() - f.extrapolated[f.extrapolated.size() - 2]);
  return f;
}

std::vector<AmoebaPoint> amoeba_samples(const LaurentPoly2& p, int samples, double radius,
                                        unsigned seed) {
  if (p.is_zero()) throw ZeroPolynomial("amoeba of the zero polynomial");
  int ylo = std::numeric_limits<int>::max(), yhi = std::numeric_limits<int>::min();
  for (const auto& [e, _] : p.coefficients()) {
    ylo = std::min(ylo, e.y);
    yhi = std::max(yhi, e.y);
  }
  const int degree = yhi - ylo;
  std::vector<AmoebaPoint> out;
  if (degree == 0) return out;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (int i = 0; i < samples; ++i) {
    double s = samples > 1 ? -radius + 2 * radius * i / (samples - 1) : 0.0;
    Complex z = std::exp(Complex(s, angle(rng)));
    VectorXc a = VectorXc::Zero(degree + 1);  // coefficient of w^{ylo + d}
    for (const auto& [e, c] : p.coefficients()) a[e.y - ylo] += c * std::pow(z, e.x);
    if (std::abs(a[degree]) < 1e-300) continue;
    MatrixXc companion = MatrixXc::Zero(degree, degree);
    for (int d = 0; d < degree; ++d) companion(0, d) = -a[degree - 1 - d] / a[degree];
    for (int d = 1; d < degree; ++d) companion(d, d - 1) = 1.0;
    Eigen::ComplexEigenSolver<MatrixXc> solver(companion, false);
    for (const auto& w : solver.eigenvalues())
      if (std::abs(w) > 0) out.push_back({s, std::log(std::abs(w))});
  }
  return out;
}

}  // namespace isoising

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

#include "isoising/isoradial.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <json.hpp>

#include "isoising/errors.hpp"

namespace isoising {
namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Circumcenter of the first non-degenerate triple of points.
Vec2 circumcenter(const std::vector<Vec2>& pts) {
  const Vec2& a = pts[0];
  for (std::size_t i = 1; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Vec2 b = pts[i] - a;
      Vec2 c = pts[j] - a;
      double d = 2.0 * cross(b, c);
      if (std::abs(d) < 1e-12) continue;
      double b2 = b.squaredNorm();
      double c2 = c.squaredNorm();
      return a + Vec2(c.y() * b2 - b.y() * c2, b.x() * c2 - c.x() * b2) / d;
    }
  }
  throw IsoradialityError("face has collinear boundary");
}

// Signed angle from a to b in (-pi, pi].
double signed_angle(const Vec2& a, const Vec2& b) {
  return std::atan2(cross(a, b), a.dot(b));
}

}  // namespace

PeriodicIsoradialGraph PeriodicIsoradialGraph::build(PeriodicGraph graph) {
  PeriodicIsoradialGraph g;
  g.graph_ = std::move(graph);
  const PeriodicGraph& pg = g.graph_;
  g.embedding_ = trace_faces(pg);
  const auto& faces = g.embedding_.faces;

  // Face representative cell, relative to the origin of its first half-edge.
  std::vector<Cell> face_cell(faces.size());
  g.face_centers_.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& walk = faces[f];
    if (walk.half_edges.size() < 3) throw IsoradialityError("face with fewer than 3 sides");
    std::vector<Vec2> pts;
    for (std::size_t k = 0; k < walk.half_edges.size(); ++k)
      pts.push_back(pg.lift(origin(pg, walk.half_edges[k]), walk.origin_cells[k]));
    Vec2 c = circumcenter(pts);
    for (const auto& p : pts) {
      if (std::abs((p - c).norm() - 1.0) > kIsoradialTolerance)
        throw IsoradialityError("face " + std::to_string(f) +
                                " is not inscribed in a unit circle");
    }
    face_cell[f] = pg.cell_of(c);
    g.face_centers_[f] = c - pg.translation(face_cell[f]);
  }

  auto face_cell_from = [&](HalfEdge h) {
    int f = g.embedding_.face_of[h.id];
    int k = g.embedding_.position_in_face[h.id];
    return std::pair{f, face_cell[f] - faces[f].origin_cells[k]};
  };

  g.rhombi_.resize(pg.edges.size());
  for (int e = 0; e < pg.num_edges(); ++e) {
    const auto& edge = pg.edges[e];
    Rhombus r;
    auto [lf, lc] = face_cell_from(HalfEdge{2 * e});
    auto [rf, rc] = face_cell_from(HalfEdge{2 * e + 1});
    r.left_face = lf;
    r.left_cell = lc;
    r.right_face = rf;
    r.right_cell = rc + edge.offset;
    const Vec2 u = pg.positions[edge.u];
    const Vec2 v = pg.lift(edge.v, edge.offset);
    r.left_center = g.face_centers_[lf] + pg.translation(r.left_cell);
    r.right_center = g.face_centers_[rf] + pg.translation(r.right_cell);
    const Vec2 d = v - u;
    double theta_left = signed_angle(d, r.left_center - u);
    double theta_right = -signed_angle(d, r.right_center - u);
    const double tol = kIsoradialTolerance;
    if (theta_left <= tol || theta_left >= kPi / 2 - tol || theta_right <= tol ||
        theta_right >= kPi / 2 - tol) {
      throw DegenerateAngle("edge " + std::to_string(e) + " has rhombus half-angle outside (0, pi/2)");
    }
    if (std::abs(theta_left - theta_right) > 1e-8)
      throw IsoradialityError("edge " + std::to_string(e) + " is not a rhombus diagonal");
    r.theta = 0.5 * (theta_left + theta_right);
    g.rhombi_[e] = r;
  }
  return g;
}

std::array<Vec2, 4> PeriodicIsoradialGraph::rhombus_vertices(int e) const {
  const auto& edge = graph_.edges[e];
  const auto& r = rhombi_[e];
  return {graph_.positions[edge.u], r.left_center, graph_.lift(edge.v, edge.offset),
          r.right_center};
}

PeriodicIsoradialGraph standard_lattice(LatticeKind kind) {
  PeriodicGraph g;
  const double s3 = std::sqrt(3.0);
  switch (kind) {
    case LatticeKind::kSquare:
      g.basis << std::sqrt(2.0), 0.0, 0.0, std::sqrt(2.0);
      g.ids = {"v"};
      g.positions = {Vec2(0.0, 0.0)};
      g.edges = {{0, 0, {1, 0}}, {0, 0, {0, 1}}};
      break;
    case LatticeKind::kTriangular:
      g.basis << s3, s3 / 2, 0.0, 1.5;
      g.ids = {"v"};
      g.positions = {Vec2(0.0, 0.0)};
      g.edges = {{0, 0, {1, 0}}, {0, 0, {0, 1}}, {0, 0, {-1, 1}}};
      break;
    case LatticeKind::kHoneycomb:
      g.basis << s3 / 2, -s3 / 2, 1.5, 1.5;
      g.ids = {"a", "b"};
      g.positions = {Vec2(0.0, 0.0), Vec2(0.0, 1.0)};
      g.edges = {{0, 1, {0, 0}}, {0, 1, {-1, 0}}, {0, 1, {0, -1}}};
      break;
  }
  return PeriodicIsoradialGraph::build(std::move(g));
}

PeriodicIsoradialGraph acute_triangular_lattice(double a, double b) {
  const double c = kPi - a - b;
  if (a <= 0 || b <= 0 || c <= 0 || a >= kPi / 2 || b >= kPi / 2 || c >= kPi / 2)
    throw DomainError("triangle must be acute");
  PeriodicGraph g;
  // Corners P0 = 0, P1, P2 with angles a, b, c; side |P_iP_j| = 2 sin(opposite).
  Vec2 p1(2 * std::sin(c), 0.0);
  Vec2 p2 = 2 * std::sin(b) * Vec2(std::cos(a), std::sin(a));
  g.basis.col(0) = p1;
  g.basis.col(1) = p2;
  g.ids = {"v"};
  g.positions = {Vec2(0.0, 0.0)};
  g.edges = {{0, 0, {1, 0}}, {0, 0, {0, 1}}, {0, 0, {-1, 1}}};
  return PeriodicIsoradialGraph::build(std::move(g));
}

PeriodicIsoradialGraph dual(const PeriodicIsoradialGraph& g) {
  PeriodicGraph d;
  d.basis = g.graph().basis;
  d.positions = g.face_centers();
  for (int f = 0; f < g.num_faces(); ++f) d.ids.push_back("f" + std::to_string(f));
  for (const auto& r : g.rhombi())
    d.edges.push_back({r.right_face, r.left_face, r.left_cell - r.right_cell});
  auto result = PeriodicIsoradialGraph::build(std::move(d));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (std::abs(result.theta(e) + g.theta(e) - kPi / 2) > 1e-9)
      throw IsoradialityError("dual angle mismatch on edge " + std::to_string(e));
  }
  return result;
}

ToroidalGraph quotient(const PeriodicIsoradialGraph& g, int n, Cell seam) {
  return quotient(g.graph(), n, seam);
}

PeriodicIsoradialGraph load_graph(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("graph spec is not valid JSON: ") + ex.what());
  }
  auto pair_of = [](const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      throw SchemaError(std::string(what) + " must be a pair of numbers");
    return std::pair{j[0].get<double>(), j[1].get<double>()};
  };
  auto int_pair_of = [](const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
      throw SchemaError(std::string(what) + " must be a pair of integers");
    return Cell{j[0].get<int>(), j[1].get<int>()};
  };
  if (!doc.is_object()) throw SchemaError("graph spec must be an object");
  for (const char* key : {"basis", "vertices", "edges"})
    if (!doc.contains(key)) throw SchemaError(std::string("missing key: ") + key);

  PeriodicGraph g;
  const auto& basis = doc["basis"];
  if (!basis.is_array() || basis.size() != 2) throw SchemaError("basis must hold two vectors");
  for (int i = 0; i < 2; ++i) {
    auto [x, y] = pair_of(basis[i], "basis vector");
    g.basis.col(i) = Vec2(x, y);
  }
  if (std::abs(g.basis.determinant()) < 1e-12) throw SchemaError("degenerate basis");

  std::map<std::string, int> index;
  if (!doc["vertices"].is_array() || doc["vertices"].empty())
    throw SchemaError("vertices must be a non-empty array");
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v["id"].is_string() || !v.contains("pos"))
      throw SchemaError("vertex needs a string id and a pos");
    auto id = v["id"].get<std::string>();
    auto [x, y] = pair_of(v["pos"], "vertex pos");
    if (!std::isfinite(x) || !std::isfinite(y)) throw SchemaError("non-finite position");
    if (!index.emplace(id, g.num_vertices()).second) throw SchemaError("duplicate vertex id " + id);
    g.ids.push_back(id);
    g.positions.emplace_back(x, y);
  }

  std::set<std::tuple<int, int, int, int>> seen;
  if (!doc["edges"].is_array()) throw SchemaError("edges must be an array");
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e["u"].is_string() ||
        !e["v"].is_string())
      throw SchemaError("edge needs string endpoints u and v");
    auto u = index.find(e["u"].get<std::string>());
    auto v = index.find(e["v"].get<std::string>());
    if (u == index.end() || v == index.end()) throw SchemaError("edge refers to unknown vertex");
    Cell off = e.contains("offset") ? int_pair_of(e["offset"], "edge offset") : Cell{};
    if (u->second == v->second && off == Cell{}) throw SchemaError("self-loop with zero offset");
    auto key = std::tuple{u->second, v->second, off.x, off.y};
    auto rev = std::tuple{v->second, u->second, -off.x, -off.y};
    if (seen.count(key) || seen.count(rev)) throw SchemaError("duplicate edge");
    seen.insert(key);
    g.edges.push_back({u->second, v->second, off});
  }
  return PeriodicIsoradialGraph::build(std::move(g));
}

std::string to_document(const PeriodicGraph& g) {
  nlohmann::ordered_json doc;
  doc["basis"] = {{g.basis(0, 0), g.basis(1, 0)}, {g.basis(0, 1), g.basis(1, 1)}};
  doc["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    doc["vertices"].push_back({{"id", g.ids[v]}, {"pos", {g.positions[v].x(), g.positions[v].y()}}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges)
    doc["edges"].push_back(
        {{"u", g.ids[e.u]}, {"v", g.ids[e.v]}, {"offset", {e.offset.x, e.offset.y}}});
  return doc.dump(2);
}

}  // namespace isoising

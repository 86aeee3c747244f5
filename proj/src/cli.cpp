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


#include "isoising/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "isoising/errors.hpp"
#include "isoising/fisher.hpp"
#include "isoising/gibbs.hpp"
#include "isoising/ising.hpp"
#include "isoising/isoradial.hpp"
#include "isoising/kasteleyn.hpp"
#include "isoising/laplacian.hpp"
#include "isoising/oracle.hpp"
#include "isoising/parallel.hpp"
#include "isoising/spectral.hpp"

namespace isoising {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string graph = "square";
  int n = 1;
  double k = 0.0;
  std::optional<double> theta;
  std::string edges;
  std::optional<double> tol;
  int threads = 0;
  std::string format = "json";
  std::string n_list;
  std::string suite = "all";
  int samples = 200;
  std::string what = "matchings";
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string number(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Option values arrive as text; numbers are stored as numbers.
Json typed(const std::string& text) {
  double v = 0.0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec == std::errc() && r.ptr == text.data() + text.size()) {
    if (text.find_first_of(".eE") == std::string::npos) return static_cast<long long>(v);
    return v;
  }
  return text;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad integer list: " + text);
    }
  }
  return out;
}

// "idx@x:y" separated by commas; the cell may be omitted.
std::vector<LatticeEdge> parse_edges(const std::string& text, int num_edges) {
  std::vector<LatticeEdge> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    LatticeEdge e;
    int x = 0, y = 0;
    char at = 0, colon = 0;
    std::istringstream s(item);
    if (!(s >> e.edge)) throw UsageError("bad edge: " + item);
    if (s >> at) {
      if (at != '@' || !(s >> x >> colon >> y) || colon != ':') throw UsageError("bad edge: " + item);
    }
    if (!s.eof() && s.peek() != EOF) throw UsageError("bad edge: " + item);
    if (e.edge < 0 || e.edge >= num_edges) throw UsageError("edge index out of range: " + item);
    e.cell = {x, y};
    out.push_back(e);
  }
  if (out.empty()) throw UsageError("--edges is required");
  return out;
}

PeriodicIsoradialGraph load(const std::string& name) {
  if (name == "square") return standard_lattice(LatticeKind::kSquare);
  if (name == "triangular") return standard_lattice(LatticeKind::kTriangular);
  if (name == "honeycomb") return standard_lattice(LatticeKind::kHoneycomb);
  std::ifstream file(name);
  if (!file) throw UsageError("cannot open graph file " + name);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return load_graph(buffer.str());
}

Json polygon_json(const NewtonPolygon& p) {
  Json out = Json::array();
  for (Cell c : p.vertices) out.push_back(Json::array({c.x, c.y}));
  return out;
}

std::vector<double> fisher_weights(const FisherGraph& f, double k) {
  if (k == 0.0) return critical_weights(f);
  std::vector<double> w(f.graph.num_edges(), 1.0);
  for (int e = 0; e < f.graph.num_edges(); ++e)
    if (f.role[e] == FisherRole::kLong) w[e] = 1.0 / std::tanh(coupling(f.theta[f.g_edge[e]], k));
  return w;
}

class Command {
 public:
  Command(const Options& o, RunReport& r, Table& t) : opt_(o), report_(r), table_(t) {}

  void lattice() {
    const auto g = load(opt_.graph);
    const auto d = dual(g);
    const auto f = fisher_graph(g);
    auto& res = report_.results;
    res["vertices"] = g.num_vertices();
    res["edges"] = g.num_edges();
    res["faces"] = g.num_faces();
    Json theta = Json::array(), dual_theta = Json::array();
    table_.header = {"edge", "u", "v", "dx", "dy", "theta", "dual_theta"};
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& edge = g.graph().edges[e];
      theta.push_back(g.theta(e));
      dual_theta.push_back(d.theta(e));
      table_.rows.push_back({std::to_string(e), std::to_string(edge.u), std::to_string(edge.v),
                             std::to_string(edge.offset.x), std::to_string(edge.offset.y),
                             number(g.theta(e)), number(d.theta(e))});
    }
    res["theta"] = theta;
    res["dual_theta"] = dual_theta;
    res["fisher_vertices"] = f.graph.num_vertices();
    res["fisher_edges"] = f.graph.num_edges();
    res["fisher_long_edges"] = f.long_edge;
    const auto t = quotient(g, opt_.n);
    res["torus_vertices"] = t.graph.num_vertices();
    res["torus_edges"] = t.graph.num_edges();
  }

  void coupling_cmd() {
    auto& res = report_.results;
    res["k"] = opt_.k;
    res["K"] = complete_elliptic_K(opt_.k);
    std::vector<double> thetas;
    if (opt_.theta) {
      thetas.push_back(*opt_.theta);
    } else {
      const auto g = load(opt_.graph);
      for (int e = 0; e < g.num_edges(); ++e) thetas.push_back(g.theta(e));
    }
    Json js = Json::array();
    double worst = 0.0;
    table_.header = {"theta", "J"};
    for (double t : thetas) {
      double j = coupling(t, opt_.k);
      js.push_back(j);
      table_.rows.push_back({number(t), number(j)});
      if (opt_.k == 0.0)
        worst = std::max(worst, std::abs(j - 0.5 * std::log((1 + std::sin(t)) / std::cos(t))));
    }
    res["J"] = js;
    if (opt_.k == 0.0) {
      report_.residuals["closed_form"] = worst;
      report_.tolerances["closed_form"] = 1e-12;
      report_.provenance["closed_form"] = "closed form at k = 0";
    }
    report_.provenance["J"] = "computed";
  }

  void partition() {
    const auto g = load(opt_.graph);
    const auto f = fisher_graph(g);
    ToroidalDimerModel m(f, opt_.n, fisher_weights(f, opt_.k), critical_orientation(f));
    const auto& p = m.partition();
    auto& res = report_.results;
    res["log_z"] = p.log_z;
    res["z"] = p.z;
    res["sign_pattern"] = p.sign_pattern();
    Json pf = Json::array();
    table_.header = {"theta", "tau", "phase", "log_abs", "coefficient"};
    for (int tau = 0; tau < 2; ++tau)
      for (int th = 0; th < 2; ++th) {
        int i = twist_index(th, tau);
        pf.push_back({{"theta", th},
                      {"tau", tau},
                      {"phase", p.pfaffians[i].phase},
                      {"log_abs", p.pfaffians[i].log_abs},
                      {"coefficient", p.coefficients[i]}});
        table_.rows.push_back({std::to_string(th), std::to_string(tau),
                               number(p.pfaffians[i].phase), number(p.pfaffians[i].log_abs),
                               number(p.coefficients[i])});
      }
    res["pfaffians"] = pf;
    report_.provenance["log_z"] = "pfaffian";

    const auto t = quotient(g, opt_.n);
    std::vector<double> J;
    double log_sinh = 0.0;
    for (int i = 0; i < t.graph.num_edges(); ++i) {
      J.push_back(coupling(g.theta(t.base_edge(i)), opt_.k));
      log_sinh += std::log(std::sinh(J.back()));
    }
    res["log_ising"] = p.log_z + log_sinh;
    report_.provenance["log_ising"] = "pfaffian";

    const double tol = opt_.tol.value_or(1e-9);
    const auto& tg = m.torus().graph;
    if (tg.num_vertices() <= EnumerationBudget{}.max_matching_vertices) {
      std::vector<double> w;
      for (int i = 0; i < tg.num_edges(); ++i) w.push_back(m.weight(i));
      double z = enumerate_matchings(tg, w).weighted_sum;
      res["oracle_z"] = z;
      report_.provenance["oracle_z"] = "oracle";
      report_.residuals["z_vs_oracle"] = std::abs(p.z - z) / z;
      report_.tolerances["z_vs_oracle"] = tol;
    }
    if (t.graph.num_vertices() <= EnumerationBudget{}.max_spins) {
      double spins = ising_partition(t.graph, J);
      res["oracle_ising"] = spins;
      report_.provenance["oracle_ising"] = "oracle";
      report_.residuals["ising_vs_oracle"] = std::abs(std::exp(p.log_z + log_sinh) - spins) / spins;
      report_.tolerances["ising_vs_oracle"] = tol;
    }
  }

  void prob() {
    const auto g = load(opt_.graph);
    const auto f = fisher_graph(g);
    auto edges = parse_edges(opt_.edges, f.graph.num_edges());
    GibbsOptions go;
    if (opt_.tol) go.tolerance = *opt_.tol;
    GibbsCorrelator c(f, go);
    auto p = c.edge_probability(edges);
    auto& res = report_.results;
    res["probability"] = p.value;
    res["raw"] = p.raw;
    res["imaginary"] = p.imaginary;
    res["clamped"] = p.clamped;
    report_.provenance["probability"] = "torus integral";
    report_.tolerances["probability"] = go.tolerance;
    table_.header = {"n", "probability"};
    table_.rows.push_back({"inf", number(p.value)});
    if (opt_.n > 1) {
      auto rep = c.convergence_report(edges, {opt_.n});
      res["finite"] = rep.rows[0].finite;
      res["finite_gap"] = rep.rows[0].gap;
      report_.provenance["finite"] = "pfaffian";
      table_.rows.push_back({std::to_string(opt_.n), number(rep.rows[0].finite)});
    }
  }

  void spectral() {
    const auto g = load(opt_.graph);
    auto p = characteristic_polynomial(critical_symbol(fisher_graph(g))).phase_normalized();
    auto& res = report_.results;
    Json coeffs = Json::array();
    table_.header = {"x", "y", "re", "im"};
    for (const auto& [e, c] : p.coefficients()) {
      coeffs.push_back({{"x", e.x}, {"y", e.y}, {"re", c.real()}, {"im", c.imag()}});
      table_.rows.push_back({std::to_string(e.x), std::to_string(e.y), number(c.real()),
                             number(c.imag())});
    }
    res["coefficients"] = coeffs;
    res["newton_polygon"] = polygon_json(newton_polygon(p));
    auto z = zero_at_one_one(p);
    res["zero"] = {{"value", complex_json(z.value)},
                   {"grad_z", complex_json(z.grad_z)},
                   {"grad_w", complex_json(z.grad_w)},
                   {"alpha", z.alpha},
                   {"beta", z.beta},
                   {"gamma", z.gamma},
                   {"definite", z.definite}};
    auto scan = scan_torus(p, 200);
    res["scan"] = {{"m", scan.m},
                   {"argmin", Json::array({scan.argmin_j, scan.argmin_k})},
                   {"minimum", scan.minimum},
                   {"margin", scan.margin},
                   {"adjacent_to_one", scan.adjacent_to_one()}};
    auto fe = free_energy(p);
    res["free_energy"] = fe.value;
    const double scale = p.max_abs();
    report_.residuals["zero_value"] = std::abs(z.value) / scale;
    report_.residuals["zero_gradient"] = std::max(std::abs(z.grad_z), std::abs(z.grad_w)) / scale;
    report_.residuals["free_energy_ladder"] = fe.error;
    report_.tolerances["zero_value"] = 1e-8;
    report_.tolerances["zero_gradient"] = 1e-8;
    report_.tolerances["free_energy_ladder"] = 1e-6;
    report_.provenance["coefficients"] = "interpolated determinant";
  }

  void amoeba() {
    const auto g = load(opt_.graph);
    auto p = characteristic_polynomial(critical_symbol(fisher_graph(g))).phase_normalized();
    auto pts = amoeba_samples(p, opt_.samples);
    Json js = Json::array();
    table_.header = {"log_abs_z", "log_abs_w"};
    for (const auto& a : pts) {
      js.push_back(Json::array({a.log_abs_z, a.log_abs_w}));
      table_.rows.push_back({number(a.log_abs_z), number(a.log_abs_w)});
    }
    report_.results["samples"] = js;
  }

  void free_energy_cmd() {
    const auto g = load(opt_.graph);
    const auto f = fisher_graph(g);
    auto p = characteristic_polynomial(critical_symbol(f)).phase_normalized();
    auto fe = free_energy(p);
    auto& res = report_.results;
    res["value"] = fe.value;
    Json ladder = Json::array();
    for (std::size_t i = 0; i < fe.resolutions.size(); ++i)
      ladder.push_back({{"m", fe.resolutions[i]}, {"sum", fe.sums[i]}});
    res["ladder"] = ladder;
    res["extrapolated"] = fe.extrapolated;
    report_.residuals["ladder"] = fe.error;
    report_.tolerances["ladder"] = opt_.tol.value_or(1e-6);
    report_.provenance["value"] = "quadrature";
    table_.header = {"n", "per_site", "gap"};
    if (opt_.n_list.empty()) return;
    Json rows = Json::array();
    std::vector<std::pair<int, double>> per_site;
    for (int n : parse_int_list(opt_.n_list)) {
      ToroidalDimerModel m(f, n);
      double v = -m.partition().log_z / (n * n);
      per_site.push_back({n, v});
      rows.push_back({{"n", n}, {"per_site", v}, {"gap", std::abs(v - fe.value)}});
      table_.rows.push_back({std::to_string(n), number(v), number(std::abs(v - fe.value))});
    }
    res["finite"] = rows;
    if (per_site.size() >= 2) {
      // Remove the O(1/n^2) term using the last two sizes.
      auto [n1, v1] = per_site[per_site.size() - 2];
      auto [n2, v2] = per_site.back();
      double ex = (n2 * n2 * v2 - n1 * n1 * v1) / (n2 * n2 - n1 * n1);
      res["finite_extrapolated"] = ex;
      report_.residuals["extrapolated_gap"] = std::abs(ex - fe.value);
      report_.tolerances["extrapolated_gap"] = 2e-2;
      report_.provenance["finite_extrapolated"] = "pfaffian";
    }
  }

  void correlate() {
    const auto g = load(opt_.graph);
    const auto f = fisher_graph(g);
    auto edges = parse_edges(opt_.edges, f.graph.num_edges());
    GibbsOptions go;
    if (opt_.tol) go.tolerance = *opt_.tol;
    GibbsCorrelator c(f, go);
    auto rep = c.convergence_report(edges, parse_int_list(opt_.n_list.empty() ? "2,4,8" : opt_.n_list));
    auto& res = report_.results;
    res["limit"] = rep.limit;
    Json rows = Json::array();
    table_.header = {"n", "finite", "gap"};
    for (const auto& r : rep.rows) {
      rows.push_back({{"n", r.n}, {"finite", r.finite}, {"gap", r.gap}});
      table_.rows.push_back({std::to_string(r.n), number(r.finite), number(r.gap)});
    }
    res["rows"] = rows;
    res["strictly_decreasing"] = rep.strictly_decreasing;
    report_.provenance["limit"] = "torus integral";
    report_.provenance["rows"] = "pfaffian";
  }

  int verify() {
    const auto g = load(opt_.graph);
    SuiteOptions so;
    so.throw_on_violation = false;
    so.tolerance = opt_.tol.value_or(1e-7);
    if (opt_.suite != "all") {
      so.items.clear();
      std::stringstream in(opt_.suite);
      std::string item;
      while (std::getline(in, item, ',')) {
        auto it = std::find(IdentityReport::kNames.begin(), IdentityReport::kNames.end(), item);
        if (it == IdentityReport::kNames.end()) throw UsageError("unknown suite item " + item);
        so.items.push_back(static_cast<int>(it - IdentityReport::kNames.begin()) + 1);
      }
    }
    auto r = identity_suite(g, so);
    table_.header = {"item", "residual", "tolerance"};
    int status = 0;
    for (int i = 0; i < 7; ++i) {
      if (!r.ran[i]) continue;
      report_.residuals[IdentityReport::kNames[i]] = r.residuals[i];
      report_.tolerances[IdentityReport::kNames[i]] = so.tolerance;
      table_.rows.push_back({IdentityReport::kNames[i], number(r.residuals[i]), number(so.tolerance)});
      if (r.residuals[i] > so.tolerance) status = 1;
    }
    auto& res = report_.results;
    res["tan_product"] = r.tan_product;
    res["zeta"] = complex_json(r.zeta);
    if (r.ran[5] || r.ran[6]) {
      res["c"] = complex_json(r.c);
      res["c_conjugate_gap"] = r.c_conjugate_gap;
      res["newton_p"] = polygon_json(r.newton_p);
      res["newton_p_delta"] = polygon_json(r.newton_p_delta);
    }
    res["passed"] = status == 0;
    return status;
  }

  void oracle() {
    const auto g = load(opt_.graph);
    auto& res = report_.results;
    const auto t = quotient(g, opt_.n);
    std::vector<double> J;
    for (int i = 0; i < t.graph.num_edges(); ++i)
      J.push_back(coupling(g.theta(t.base_edge(i)), opt_.k));
    table_.header = {"quantity", "value"};
    auto put = [&](const std::string& key, Json v) {
      table_.rows.push_back({key, v.is_number_float() ? number(v.get<double>()) : v.dump()});
      res[key] = std::move(v);
      report_.provenance[key] = "oracle";
    };
    if (opt_.what == "matchings") {
      const auto f = fisher_graph(g);
      ToroidalDimerModel m(f, opt_.n, fisher_weights(f, opt_.k), critical_orientation(f));
      const auto& tg = m.torus().graph;
      std::vector<double> w;
      for (int i = 0; i < tg.num_edges(); ++i) w.push_back(m.weight(i));
      auto s = enumerate_matchings(tg, w);
      put("count", s.count);
      put("weighted_sum", s.weighted_sum);
    } else if (opt_.what == "spins") {
      put("ising", ising_partition(t.graph, J));
    } else if (opt_.what == "contours") {
      std::vector<double> x;
      double prefix = std::pow(2.0, t.graph.num_vertices());
      for (double j : J) {
        x.push_back(std::tanh(j));
        prefix *= std::cosh(j);
      }
      double s = even_subgraph_sum(t.graph, x);
      put("even_subgraph_sum", s);
      put("ising", prefix * s);
    } else if (opt_.what == "crsf") {
      auto forests = enumerate_crsf(t.graph);
      put("forests", forests.size());
      if (opt_.n == 1) {
        Json coeffs = Json::array();
        const auto poly = crsf_polynomial(g);
        for (const auto& [e, c] : poly.coefficients())
          coeffs.push_back({{"x", e.x}, {"y", e.y}, {"re", c.real()}, {"im", c.imag()}});
        res["polynomial"] = coeffs;
      }
    } else {
      throw UsageError("--what must be matchings, spins, contours or crsf");
    }
  }

 private:
  const Options& opt_;
  RunReport& report_;
  Table& table_;
};

void write_csv(std::ostream& out, const RunReport& report, const Table& table) {
  if (!table.header.empty()) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
      out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
    return;
  }
  out << "key,value\n";
  for (const auto& [k, v] : report.results.items())
    if (v.is_primitive()) out << k << "," << v.dump() << "\n";
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["input_hash"] = input_hash;
  j["parameters"] = parameters;
  j["results"] = results;
  j["residuals"] = residuals;
  j["tolerances"] = tolerances;
  j["provenance"] = provenance;
  j["wall_seconds"] = wall_seconds;
  return j;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"isoising"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Critical Z-invariant Ising model on periodic isoradial graphs"};
  app.require_subcommand(1, 1);

  auto graph = [&](CLI::App* s) {
    s->add_option("--graph", opt.graph, "graph spec file or square|triangular|honeycomb");
  };
  auto n = [&](CLI::App* s) { s->add_option("--n", opt.n, "torus size")->check(CLI::Range(1, 64)); };
  auto k = [&](CLI::App* s) { s->add_option("--k", opt.k, "elliptic modulus")->check(CLI::Range(0.0, 0.999999)); };
  auto tol = [&](CLI::App* s) { s->add_option("--tol", opt.tol, "tolerance override"); };
  auto edges = [&](CLI::App* s) {
    s->add_option("--edges", opt.edges, "Fisher edges as idx@x:y, comma separated")->required();
  };
  auto n_list = [&](CLI::App* s) { s->add_option("--n-list", opt.n_list, "torus sizes, comma separated"); };

  auto* lattice = app.add_subcommand("lattice", "graph, dual and Fisher graph summary");
  graph(lattice);
  n(lattice);
  auto* coup = app.add_subcommand("coupling", "Z-invariant coupling constants");
  graph(coup);
  k(coup);
  coup->add_option("--theta", opt.theta, "single rhombus half-angle");
  auto* part = app.add_subcommand("partition", "Pfaffian partition function on the n x n torus");
  graph(part);
  n(part);
  k(part);
  tol(part);
  auto* prob = app.add_subcommand("prob", "edge probabilities of the Gibbs measure");
  graph(prob);
  n(prob);
  edges(prob);
  tol(prob);
  auto* spec = app.add_subcommand("spectral", "characteristic polynomial and its zero at (1,1)");
  graph(spec);
  auto* amoe = app.add_subcommand("amoeba", "samples of the amoeba of the spectral curve");
  graph(amoe);
  amoe->add_option("--samples", opt.samples, "number of z samples")->check(CLI::Range(1, 100000));
  auto* free = app.add_subcommand("free-energy", "free energy and finite-torus comparison");
  graph(free);
  n_list(free);
  tol(free);
  auto* corr = app.add_subcommand("correlate", "finite-torus convergence of edge probabilities");
  graph(corr);
  edges(corr);
  n_list(corr);
  tol(corr);
  auto* ver = app.add_subcommand("verify", "Laplacian and double-graph identity suite");
  graph(ver);
  ver->add_option("--suite", opt.suite, "all or a comma list of i..vii");
  tol(ver);
  auto* orc = app.add_subcommand("oracle", "brute-force enumeration");
  graph(orc);
  n(orc);
  k(orc);
  orc->add_option("--what", opt.what, "matchings|spins|contours|crsf")
      ->check(CLI::IsMember({"matchings", "spins", "contours", "crsf"}));

  for (auto* s : app.get_subcommands({})) {
    s->add_option("--threads", opt.threads, "worker thread cap, 0 for all")->check(CLI::NonNegativeNumber);
    s->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  RunReport report;
  report.command = sub->get_name();
  Table table;
  set_max_threads(opt.threads);
  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    for (const auto* o : sub->get_options()) {
      if (o->get_single_name() == "help" || o->count() == 0) continue;
      auto values = o->results();
      Json j = Json::array();
      for (const auto& v : values) j.push_back(typed(v));
      report.parameters[o->get_single_name()] = values.size() == 1 ? j[0] : j;
    }
    std::string doc = opt.graph;
    if (opt.graph != "square" && opt.graph != "triangular" && opt.graph != "honeycomb")
      doc = to_document(load(opt.graph).graph());
    std::uint64_t h = fnv1a(doc);
    h = fnv1a(report.command, h);
    h = fnv1a(report.parameters.dump(), h);
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    report.input_hash = hex.str();

    Command cmd(opt, report, table);
    const std::string& name = report.command;
    if (name == "lattice") cmd.lattice();
    else if (name == "coupling") cmd.coupling_cmd();
    else if (name == "partition") cmd.partition();
    else if (name == "prob") cmd.prob();
    else if (name == "spectral") cmd.spectral();
    else if (name == "amoeba") cmd.amoeba();
    else if (name == "free-energy") cmd.free_energy_cmd();
    else if (name == "correlate") cmd.correlate();
    else if (name == "verify") status = cmd.verify();
    else if (name == "oracle") cmd.oracle();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << sub->help();
    return 2;
  } catch (const SchemaError& e) {
    err << "invalid graph: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (opt.format == "csv")
    write_csv(out, report, table);
  else
    out << report.to_json().dump(2) << "\n";
  return status;
}

}  // namespace isoising

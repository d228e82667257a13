#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bloch/laurent.hpp"

namespace bloch {

struct Edge {
  std::size_t u = 0, v = 0;
  IVec offset;                      // edge joins u and offset + v
  std::optional<ParamPoly> label;   // nullopt only for malformed input
};

// Z^d-periodic graph together with its labeling (potential and edge labels).
class PeriodicGraph {
 public:
  PeriodicGraph() = default;
  PeriodicGraph(std::string name, int d);

  std::size_t add_vertex(const std::string& name, std::optional<ParamPoly> potential = std::nullopt);
  // Stores the canonical representative of (u,v,a) ~ (v,u,-a).
  void add_edge(std::size_t u, std::size_t v, IVec offset, std::optional<ParamPoly> label);
  void add_edge_named(const std::string& u, const std::string& v, IVec offset, const ParamPoly& label);
  void set_potential(std::size_t v, const ParamPoly& p) { potential_.at(v) = p; }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int d() const { return d_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& edges() { return edges_; }
  const std::vector<std::optional<ParamPoly>>& potential() const { return potential_; }
  std::optional<std::size_t> index_of(const std::string& v) const;

  // Empty when valid.
  std::vector<std::string> validate() const;
  void require_valid() const;

  // Symbols occurring in vertex potentials.
  std::set<std::string> potential_symbols() const;
  bool labels_numeric() const;

  // L(z, lambda) = L_c(z) - lambda I.
  LaurentMatrix floquet_matrix() const;
  LaurentMatrix floquet_matrix_no_lambda() const;
  LaurentPoly dispersion(std::size_t cap = kDefaultDetCap) const;

  // Offsets of edges, closed under negation.
  std::set<IVec> offset_set() const;

  PeriodicGraph with_label_values(const std::map<std::string, ParamPoly>& values) const;
  PeriodicGraph with_potential(const std::vector<ParamPoly>& values) const;

 private:
  std::string name_ = "graph";
  int d_ = 0;
  std::vector<std::string> vertices_;
  std::vector<std::optional<ParamPoly>> potential_;
  std::vector<Edge> edges_;
};

// Cell index k in the box prod [0, q_i), k_1 most significant.
std::vector<IVec> cells(const std::vector<long>& Q);
long order_of(const std::vector<long>& Q);
std::string cell_suffix(const IVec& k);

struct QExpansion {
  PeriodicGraph base;
  std::vector<long> Q;
  PeriodicGraph expanded;  // vertex (k, rho) at index cell_index(k) * m + rho

  // True when every base vertex carries the same potential in every cell.
  bool potential_zd_periodic() const;
  // Base graph whose potential is the (common) cell value; requires Zd periodicity.
  PeriodicGraph base_with_periodic_potential() const;
  LaurentPoly dispersion(std::size_t cap = kDefaultDetCap) const { return expanded.dispersion(cap); }
};

// potential_Q indexed like expanded vertices; empty inherits the base potential.
QExpansion q_expand(const PeriodicGraph& g, const std::vector<long>& Q,
                    const std::vector<ParamPoly>& potential_Q = {});

// Potential assignment for the expanded vertices from a textual spec:
// symbolic | symbolic-zd | zero | random-rational(seed) | random-zd(seed) | name=p/q,...
std::vector<ParamPoly> potential_from_spec(const PeriodicGraph& base, const std::vector<long>& Q,
                                           const std::string& spec);
// Edge label substitution: symbolic | random-rational(seed) | name=p/q,...
std::map<std::string, ParamPoly> labels_from_spec(const PeriodicGraph& g, const std::string& spec);

// Deterministic random rational with a prime denominator.
mpq_class random_rational(std::uint64_t& state);

// Family builders (default symbolic labels and potentials V_<vertex>).
PeriodicGraph one_vertex(int d, const std::vector<std::pair<IVec, ParamPoly>>& loops);
PeriodicGraph honeycomb_diamond(int d);
PeriodicGraph dice(int d);
PeriodicGraph dense_2d();
PeriodicGraph dense_3d();
PeriodicGraph square_lattice(int d);
PeriodicGraph cross_graph(const std::vector<long>& A);
PeriodicGraph line_graph(long a);
PeriodicGraph isolated_vertex(int d, const std::string& name = "w");
PeriodicGraph disjoint_union(const PeriodicGraph& a, const PeriodicGraph& b);
PeriodicGraph omega_honeycomb();
// name[:args] as accepted by the command line.
PeriodicGraph builtin(const std::string& name, int d);
std::vector<std::string> builtin_names();

nlohmann::json graph_to_json(const PeriodicGraph& g);
PeriodicGraph graph_from_json(const nlohmann::json& j);

}  // namespace bloch

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "bloch/laurent.hpp"

namespace bloch {

class Polytope;

struct Face {
  std::shared_ptr<const struct PolytopeData> parent;
  std::vector<std::size_t> vertex_ids;  // sorted, into parent vertices
  IVec normal;                          // one exposing vector (ambient)
  int dim = -1;

  std::vector<IVec> vertices() const;
  bool contains_vertex(std::size_t id) const;
};

struct FacetRecord {
  IVec normal;  // primitive, inner, ambient coordinates
  long offset;  // min of normal . v
  std::vector<std::size_t> vertex_ids;
};

struct PolytopeData {
  int ambient = 0;
  int dim = -1;
  std::vector<IVec> vertices;  // lexicographically sorted
  std::vector<FacetRecord> facets;
  IVec origin;
  std::vector<IVec> basis;                 // saturated lattice basis of the affine hull
  std::vector<std::size_t> pivots;
  std::vector<IVec> lattice_normals;       // facet normals in basis coordinates
};

struct PyramidInfo {
  std::size_t apex;
  std::vector<std::size_t> base;
  long height;
};

class Polytope {
 public:
  Polytope() = default;
  static Polytope hull(const std::vector<IVec>& points);
  static Polytope newton(const LaurentPoly& f);

  int ambient() const { return data_->ambient; }
  int dim() const { return data_->dim; }
  const std::vector<IVec>& vertices() const { return data_->vertices; }
  const std::vector<FacetRecord>& facet_records() const { return data_->facets; }
  std::vector<Face> facets() const;
  Face face_exposed(const IVec& w) const;
  Face whole() const;
  std::optional<std::size_t> vertex_index(const IVec& v) const;

  bool contains(const IVec& p) const;
  bool contains(const Polytope& other) const;
  bool operator==(const Polytope& o) const { return vertices() == o.vertices(); }

  nlohmann::json to_json() const;
  // Hull of the projection onto three coordinates, as an OFF document.
  std::string to_off(std::vector<int> coords = {}) const;

  const std::shared_ptr<const PolytopeData>& data() const { return data_; }

 private:
  std::shared_ptr<const PolytopeData> data_;
};

// Affine rank of a point set (-1 when empty).
int affine_rank(const std::vector<IVec>& pts);

int face_intersection_dim(const Face& a, const Face& b);

// Faces in the returned chain are indices into certified.
std::optional<std::vector<std::size_t>> strong_chain(const Polytope& P,
                                                     const std::vector<Face>& certified,
                                                     std::size_t a, std::size_t b);

Polytope minkowski_sum(const Polytope& P, const Polytope& K);

struct Homothety {
  mpq_class r;
  std::vector<mpq_class> a;
};
// K = r P + a.
std::optional<Homothety> homothety_of(const Polytope& K, const Polytope& P);

std::vector<PyramidInfo> pyramids(const Polytope& P);
// Apex/base check with a caller-chosen apex.
std::optional<PyramidInfo> pyramid_with_apex(const Polytope& P, std::size_t apex);

// A indexed by ambient axis (0 on axes the polytope does not span).
std::optional<std::vector<long>> cross_polytope_dilation(const Polytope& P);

Polytope contracted_dilation(const Polytope& P, const std::vector<long>& Q);
IVec exposing_vector_map(const IVec& w, const std::vector<long>& Q);

}  // namespace bloch

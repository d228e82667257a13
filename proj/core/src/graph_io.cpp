#include <stdexcept>

#include "bloch/periodic_graph.hpp"

namespace bloch {

nlohmann::json graph_to_json(const PeriodicGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", g.vertices()[e.u]},
                     {"v", g.vertices()[e.v]},
                     {"offset", e.offset},
                     {"label", e.label ? e.label->to_string() : std::string()}});
  nlohmann::json pot = nlohmann::json::object();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.potential()[i]) pot[g.vertices()[i]] = g.potential()[i]->to_string();
  return {{"name", g.name()}, {"d", g.d()}, {"vertices", g.vertices()}, {"edges", edges},
          {"potential", pot}};
}

PeriodicGraph graph_from_json(const nlohmann::json& j) {
  PeriodicGraph g(j.value("name", std::string("graph")), j.at("d").get<int>());
  const auto& pot = j.contains("potential") ? j.at("potential") : nlohmann::json::object();
  for (const auto& v : j.at("vertices")) {
    auto name = v.get<std::string>();
    std::optional<ParamPoly> p;
    if (pot.contains(name)) p = ParamPoly::parse_atom(pot.at(name).get<std::string>());
    g.add_vertex(name, p);
  }
  for (const auto& [k, v] : pot.items())
    if (!g.index_of(k)) throw std::invalid_argument("potential names unknown vertex '" + k + "'");
  for (const auto& e : j.value("edges", nlohmann::json::array())) {
    auto u = g.index_of(e.at("u").get<std::string>());
    auto v = g.index_of(e.at("v").get<std::string>());
    if (!u || !v) throw std::invalid_argument("edge names an unknown vertex");
    std::optional<ParamPoly> label;
    if (e.contains("label") && !e.at("label").get<std::string>().empty())
      label = ParamPoly::parse_atom(e.at("label").get<std::string>());
    g.add_edge(*u, *v, e.at("offset").get<IVec>(), label);
  }
  return g;
}

}  // namespace bloch

#include <algorithm>
#include <stdexcept>

#include "bloch/criteria.hpp"

namespace bloch {

std::string claim_name(Claim c) {
  switch (c) {
    case Claim::Irreducible: return "Irreducible";
    case Claim::OnlyHomotheticallyReducible: return "OnlyHomotheticallyReducible";
    case Claim::PotentialIndependent: return "PotentialIndependent";
    case Claim::Reducible: return "Reducible";
  }
  return "?";
}

Claim claim_from_name(const std::string& s) {
  for (Claim c : {Claim::Irreducible, Claim::OnlyHomotheticallyReducible, Claim::PotentialIndependent,
                  Claim::Reducible})
    if (claim_name(c) == s) return c;
  if (s == "OHR") return Claim::OnlyHomotheticallyReducible;
  throw std::invalid_argument("unknown claim '" + s + "'");
}

std::string verdict_name(VerdictKind v) {
  switch (v) {
    case VerdictKind::Irreducible: return "Irreducible";
    case VerdictKind::OnlyHomotheticallyReducible: return "OnlyHomotheticallyReducible";
    case VerdictKind::ReducibleWithFactors: return "ReducibleWithFactors";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

nlohmann::json subject_to_json(const Subject& s) {
  return {{"variant", s.variant == Variant::Actual ? "actual" : "reference"}, {"S", s.S}, {"face", s.face}};
}

Subject subject_from_json(const nlohmann::json& j) {
  Subject s;
  s.variant = j.at("variant").get<std::string>() == "reference" ? Variant::Reference : Variant::Actual;
  s.S = j.at("S").get<std::vector<long>>();
  s.face = j.at("face").get<IVec>();
  return s;
}

std::size_t FactStore::add(Fact f) {
  auto key = std::make_pair(f.subject, f.claim);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  if (f.id == 0) f.id = facts_.empty() ? 1 : facts_.back().id + 1;
  if (by_id_.count(f.id)) throw std::invalid_argument("duplicate fact id");
  for (auto p : f.premises)
    if (!by_id_.count(p)) throw std::invalid_argument("fact premise not in store");
  index_[key] = f.id;
  by_id_[f.id] = facts_.size();
  facts_.push_back(std::move(f));
  return facts_.back().id;
}

std::optional<std::size_t> FactStore::find(const Subject& s, Claim c) const {
  auto it = index_.find({s, c});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Fact& FactStore::get(std::size_t id) const { return facts_.at(by_id_.at(id)); }

std::vector<Axiom> axioms_from_json(const nlohmann::json& j) {
  std::vector<Axiom> out;
  const auto& arr = j.is_object() && j.contains("axioms") ? j.at("axioms") : j;
  for (const auto& a : arr) {
    Axiom x;
    x.source = a.at("source").get<std::string>();
    x.graph = a.value("graph", std::string());
    if (a.contains("lambda0") && !a.at("lambda0").is_null()) {
      auto s = a.at("lambda0").get<std::string>();
      if (s == "any")
        x.any_lambda0 = true;
      else
        x.lambda0 = parse_rational(s);
    }
    x.claim = claim_from_name(a.value("claim", std::string("Irreducible")));
    for (const auto& f : a.at("faces")) x.faces.push_back(f.get<IVec>());
    out.push_back(std::move(x));
  }
  return out;
}

nlohmann::json axioms_to_json(const std::vector<Axiom>& axs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : axs) {
    nlohmann::json j{{"source", a.source}, {"graph", a.graph}, {"claim", claim_name(a.claim)}, {"faces", a.faces}};
    if (a.any_lambda0)
      j["lambda0"] = "any";
    else if (a.lambda0)
      j["lambda0"] = rational_string(*a.lambda0);
    else
      j["lambda0"] = nullptr;
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json input_to_json(const AnalysisInput& in) {
  std::vector<std::string> pot;
  for (const auto& p : in.potential_Q) pot.push_back(p.to_string());
  nlohmann::json j{{"graph", graph_to_json(in.base)},
                   {"Q", in.Q},
                   {"potential", pot},
                   {"div_zero_as_q", in.options.div_zero_as_q},
                   {"cap", in.options.cap},
                   {"axioms", axioms_to_json(in.options.axioms)}};
  j["lambda0"] = in.lambda0 ? nlohmann::json(rational_string(*in.lambda0)) : nlohmann::json(nullptr);
  return j;
}

AnalysisInput input_from_json(const nlohmann::json& j) {
  AnalysisInput in;
  in.base = graph_from_json(j.at("graph"));
  in.Q = j.at("Q").get<std::vector<long>>();
  for (const auto& s : j.at("potential")) in.potential_Q.push_back(ParamPoly::parse_atom(s.get<std::string>()));
  if (!j.at("lambda0").is_null()) in.lambda0 = parse_rational(j.at("lambda0").get<std::string>());
  in.options.div_zero_as_q = j.value("div_zero_as_q", false);
  in.options.cap = j.value("cap", kDefaultDetCap);
  in.options.axioms = axioms_from_json(j.at("axioms"));
  return in;
}

}  // namespace bloch

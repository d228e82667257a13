#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "bloch/flat_bands.hpp"
#include "bloch/laurent.hpp"
#include "bloch/periodic_graph.hpp"
#include "bloch/polytope.hpp"
#include "bloch/weight_bound.hpp"

namespace bloch {

enum class Claim { Irreducible, OnlyHomotheticallyReducible, PotentialIndependent, Reducible };

std::string claim_name(Claim c);
Claim claim_from_name(const std::string& s);

// Actual: the user's potential. Reference: a Z^d-periodic stand-in (zero
// potential) used when the actual potential is only Q-periodic.
enum class Variant { Actual, Reference };

// D_S for the chosen variant (specialised at lambda0 in Fermi runs), or its
// facial polynomial for the face of newt(D_S) matching the base facet `face`.
struct Subject {
  Variant variant = Variant::Actual;
  std::vector<long> S;
  IVec face;  // facet normal of the base Newton polytope; empty means whole

  bool whole() const { return face.empty(); }
  auto operator<=>(const Subject&) const = default;
};

nlohmann::json subject_to_json(const Subject& s);
Subject subject_from_json(const nlohmann::json& j);

struct Fact {
  std::size_t id = 0;
  Subject subject;
  Claim claim = Claim::Irreducible;
  std::string rule;
  std::string paper_ref;
  std::vector<std::size_t> premises;
  nlohmann::json witness = nlohmann::json::object();
};

class FactStore {
 public:
  // Returns the id of the stored fact (existing id if already known).
  std::size_t add(Fact f);
  std::optional<std::size_t> find(const Subject& s, Claim c) const;
  const Fact& get(std::size_t id) const;
  bool has(std::size_t id) const { return by_id_.count(id) != 0; }
  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }

 private:
  std::vector<Fact> facts_;
  std::map<std::size_t, std::size_t> by_id_;
  std::map<std::pair<Subject, Claim>, std::size_t> index_;
};

// External statement accepted without proof, e.g. facial irreducibility
// imported from smoothness results.
struct Axiom {
  std::string source;
  std::string graph;                      // base graph name it applies to
  std::optional<mpq_class> lambda0;       // Fermi slice; nullopt means the Bloch variety
  bool any_lambda0 = false;               // applies to every lambda0 slice
  std::vector<IVec> faces;                // base facet normals; empty vector entry means whole
  Claim claim = Claim::Irreducible;
};

std::vector<Axiom> axioms_from_json(const nlohmann::json& j);
nlohmann::json axioms_to_json(const std::vector<Axiom>& a);

struct AnalysisOptions {
  bool div_zero_as_q = false;
  std::size_t cap = kDefaultDetCap;
  std::vector<Axiom> axioms;
};

struct AnalysisInput {
  PeriodicGraph base;                 // labels as given; potential ignored
  std::vector<long> Q;
  std::vector<ParamPoly> potential_Q; // one value per expanded vertex
  std::optional<mpq_class> lambda0;
  AnalysisOptions options;
};

// Shared, read-only data for rule evaluation. Facet weight bounds are cached.
class Context {
 public:
  explicit Context(AnalysisInput in);

  const AnalysisInput& input() const { return in_; }
  int d() const { return in_.base.d(); }
  long order() const { return order_; }
  const std::vector<long>& Q() const { return in_.Q; }
  std::vector<long> ones() const { return std::vector<long>(in_.Q.size(), 1); }
  bool fermi() const { return in_.lambda0.has_value(); }
  const QExpansion& expansion() const { return qe_; }

  // Actual potential is Z^d-periodic.
  bool zd() const { return zd_; }
  Variant base_variant() const { return zd_ ? Variant::Actual : Variant::Reference; }
  bool variant_zd(Variant v) const { return v == Variant::Reference || zd_; }
  // Potential of the variant is periodic under A (A divides Q).
  bool periodic_under(Variant v, const std::vector<long>& A) const;
  std::set<std::string> potential_symbols(Variant v) const;

  // Base polynomial of the base variant (D or D(z, lambda0)) and its geometry.
  const LaurentPoly& base_poly() const { return base_poly_; }
  const Polytope& base_polytope() const { return base_P_; }
  std::vector<IVec> base_facets() const;
  long facet_offset(const IVec& w) const;
  std::optional<Face> base_face(const IVec& w) const;
  LaurentPoly base_face_poly(const IVec& w) const;

  // Exact D_Q (actual potential) when coefficients are numeric and |Q|m <= cap.
  const std::optional<LaurentPoly>& exact_target() const { return exact_; }
  std::string exact_note() const { return exact_note_; }

  // The polynomial a subject denotes, when it is known exactly.
  std::optional<LaurentPoly> poly_of(const Subject& s) const;
  bool subject_valid(const Subject& s) const;

  // Weight bound for the facet w mapped to D_Q coordinates (actual L_Q).
  const WeightBound& facet_bound(const IVec& w) const;

  // Coefficients assumed nonzero because they are symbolic but not monomials
  // in edge labels.
  const std::vector<std::string>& assumptions() const { return assumptions_; }

  Subject target() const { return {Variant::Actual, in_.Q, {}}; }
  std::string describe(const Subject& s) const;

 private:
  AnalysisInput in_;
  long order_ = 1;
  QExpansion qe_;
  bool zd_ = false;
  PeriodicGraph base_graph_;  // base variant graph with its potential
  LaurentPoly base_poly_;
  Polytope base_P_;
  std::optional<LaurentPoly> exact_;
  std::string exact_note_;
  LaurentMatrix LQ_;  // actual expanded Floquet matrix without lambda
  mutable std::map<IVec, WeightBound> bounds_;
  std::vector<std::string> assumptions_;
};

bool potential_independent(const LaurentPoly& face_poly, const std::set<std::string>& potential_symbols);

// Gao-type indecomposability: some vertex v with the others in a hyperplane
// missing v and gcd of all coordinates of v - u over the other vertices u
// equal to 1. Returns the apex index into newt(f).vertices().
std::optional<std::size_t> pyramid_apex(const LaurentPoly& f);

struct Derivation {
  Subject subject;
  Claim claim = Claim::Irreducible;
  std::string rule;
  std::vector<std::size_t> premises;
  nlohmann::json witness = nlohmann::json::object();
};

struct RuleResult {
  std::optional<Derivation> derived;
  std::vector<std::string> blocked;
};

// Individual rules. Each checks its preconditions against the store and either
// derives the claim about `target` or reports why it is blocked.
RuleResult rule_lemma_red(const Context& ctx, const FactStore& st, const Subject& target);
RuleResult rule_pyramid(const Context& ctx, const Subject& target);
RuleResult rule_axiom(const Context& ctx, const Subject& target);
RuleResult rule_weight_pi(const Context& ctx, const Subject& target);
RuleResult rule_exact_pi(const Context& ctx, const Subject& target);
RuleResult rule_cor_coprime(const Context& ctx, const FactStore& st, const Subject& target);
RuleResult rule_lemma_coprime(const Context& ctx, const FactStore& st, const Subject& target,
                              const std::vector<int>& sigma);
RuleResult rule_th1(const Context& ctx, const FactStore& st, const Subject& target, int k);
RuleResult rule_potential_transfer(const Context& ctx, const FactStore& st, const Subject& target, Claim c);
RuleResult rule_ohr_weakening(const FactStore& st, const Subject& target);
RuleResult rule_ohr_propagation(const Context& ctx, const FactStore& st, const Subject& target);
RuleResult rule_strong_chain_ohr(const Context& ctx, const FactStore& st, const Subject& target);
RuleResult rule_cor_zd_periodic(const Context& ctx, const FactStore& st, const Subject& target);
RuleResult rule_cor_irred(const Context& ctx, const FactStore& st, const Subject& target);
RuleResult rule_flat_bands(const Context& ctx, const Subject& target);

std::string rule_anchor(const std::string& rule);

enum class VerdictKind { Irreducible, OnlyHomotheticallyReducible, ReducibleWithFactors, Inconclusive };
std::string verdict_name(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::vector<FlatBand> factors;
  std::vector<std::string> blocking;
  nlohmann::json certificate;
  std::vector<std::string> log;  // human-readable summary lines
};

// Forward chaining to a fixpoint; returns the full store.
FactStore run_rules(const Context& ctx, std::vector<std::string>* blocking = nullptr);

Verdict analyze(const AnalysisInput& in);

struct ReplayReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Re-checks every fact of a certificate from its premises alone.
ReplayReport replay(const nlohmann::json& certificate);

// Serialised inputs so that a certificate is self-contained.
nlohmann::json input_to_json(const AnalysisInput& in);
AnalysisInput input_from_json(const nlohmann::json& j);

}  // namespace bloch

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bloch/criteria.hpp"
#include "bloch/numeric.hpp"

namespace fs = std::filesystem;
using namespace bloch;

namespace {

enum Exit { kOk = 0, kFail = 1, kInvalid = 2, kCap = 3, kInconclusive = 10 };

struct RunConfig {
  std::string graph;
  int d = 2;
  std::string Q;
  std::string potential;
  std::string labels;
  std::string lambda0;
  std::string axioms;
  std::string out;
  std::string certificate;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool div_zero_as_q = false;
  std::size_t max_size = kDefaultDetCap;
  int grid = 0;
  int points = 20;
};

std::string vec_str(const std::vector<long>& v) {
  std::ostringstream o;
  o << "(";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  return o.str() + ")";
}

std::string point_str(const IVec& p) { return vec_str(std::vector<long>(p.begin(), p.end())); }

// "random-rational" without a seed picks up --seed.
std::string with_seed(const std::string& spec, std::uint64_t seed) {
  static const std::set<std::string> seedable{"random-rational", "random-zd", "random-int", "random-int-zd"};
  std::string out, item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    if (!out.empty()) out += ",";
    out += seedable.count(item) ? item + "(" + std::to_string(seed) + ")" : item;
  }
  return out;
}

PeriodicGraph load_graph(const RunConfig& c) {
  if (c.graph.empty()) throw std::invalid_argument("--graph is required");
  PeriodicGraph g;
  if (c.graph.size() > 5 && c.graph.substr(c.graph.size() - 5) == ".json") {
    std::ifstream f(c.graph);
    if (!f) throw std::invalid_argument("cannot open graph file " + c.graph);
    g = graph_from_json(nlohmann::json::parse(f));
  } else {
    g = builtin(c.graph, c.d);
  }
  if (g.size() == 0) throw std::invalid_argument("graph has no vertices");
  auto labels = labels_from_spec(g, with_seed(c.labels, c.seed));
  if (!labels.empty()) g = g.with_label_values(labels);
  g.require_valid();
  return g;
}

std::vector<long> parse_Q(const RunConfig& c, int d) {
  std::vector<long> Q;
  if (c.Q.empty()) return std::vector<long>(static_cast<std::size_t>(d), 1);
  std::string t;
  std::istringstream in(c.Q);
  while (std::getline(in, t, ',')) Q.push_back(std::stol(t));
  if (static_cast<int>(Q.size()) != d) throw std::invalid_argument("--Q needs " + std::to_string(d) + " entries");
  for (long q : Q)
    if (q <= 0) throw std::invalid_argument("--Q entries must be positive");
  return Q;
}

AnalysisInput make_input(const RunConfig& c) {
  AnalysisInput in;
  in.base = load_graph(c);
  in.Q = parse_Q(c, in.base.d());
  in.potential_Q = potential_from_spec(in.base, in.Q, with_seed(c.potential, c.seed));
  if (!c.lambda0.empty()) in.lambda0 = parse_rational(c.lambda0);
  in.options.div_zero_as_q = c.div_zero_as_q;
  in.options.cap = c.max_size;
  if (!c.axioms.empty()) {
    std::ifstream f(c.axioms);
    if (!f) throw std::invalid_argument("cannot open axioms file " + c.axioms);
    in.options.axioms = axioms_from_json(nlohmann::json::parse(f));
  }
  return in;
}

void write_file(const RunConfig& c, const std::string& name, const std::string& body) {
  if (c.out.empty()) return;
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / name);
  if (!f) throw std::runtime_error("cannot write " + (fs::path(c.out) / name).string());
  f << body;
  std::cout << "wrote " << (fs::path(c.out) / name).string() << "\n";
}

void print_polytope(const Polytope& P) {
  std::cout << "newton polytope: dim " << P.dim() << ", " << P.vertices().size() << " vertices, "
            << P.facet_records().size() << " facets\n";
  std::cout << "vertices:";
  for (const auto& v : P.vertices()) std::cout << " " << point_str(v);
  std::cout << "\n";
  for (const auto& py : pyramids(P)) {
    std::cout << "pyramid: apex " << point_str(P.vertices()[py.apex]) << ", base " << py.base.size()
              << " vertices, height " << py.height << "\n";
  }
  if (auto A = cross_polytope_dilation(P)) std::cout << "cross-polytope dilation A = " << vec_str(*A) << "\n";
}

nlohmann::json poly_report(const LaurentPoly& f) {
  nlohmann::json sup = nlohmann::json::array();
  for (const auto& p : f.support()) sup.push_back(p);
  Polytope P = Polytope::newton(f);
  nlohmann::json pyr = nlohmann::json::array();
  for (const auto& py : pyramids(P))
    pyr.push_back({{"apex", P.vertices()[py.apex]}, {"height", py.height}});
  return {{"text", f.to_string()}, {"polynomial", f.to_json()}, {"support", sup}, {"newton", P.to_json()},
          {"pyramids", pyr}};
}

int cmd_dispersion(RunConfig c) {
  c.Q.clear();
  auto in = make_input(c);
  LaurentPoly D = in.base.with_potential(in.potential_Q).dispersion(c.max_size);
  if (in.lambda0) D = D.specialize_lambda(*in.lambda0);
  std::cout << "graph: " << in.base.name() << " (d=" << in.base.d() << ", m=" << in.base.size() << ")\n";
  std::cout << "D = " << D.to_string() << "\n";
  std::cout << "support (" << D.size() << " points):";
  for (const auto& p : D.support()) std::cout << " " << point_str(p);
  std::cout << "\n";
  print_polytope(Polytope::newton(D));
  auto rep = poly_report(D);
  rep["graph"] = graph_to_json(in.base);
  write_file(c, "dispersion.json", rep.dump(2) + "\n");
  return kOk;
}

int cmd_expand(const RunConfig& c) {
  auto in = make_input(c);
  auto qe = q_expand(in.base, in.Q, in.potential_Q);
  qe.expanded.require_valid();
  std::cout << "graph: " << in.base.name() << ", Q = " << vec_str(in.Q) << ", |Q| = " << order_of(in.Q) << "\n";
  std::cout << "expanded fundamental domain: " << qe.expanded.size() << " vertices, " << qe.expanded.edges().size()
            << " edge orbits\n";
  std::cout << "potential: " << (qe.potential_zd_periodic() ? "Z^d-periodic" : "Q-periodic only") << "\n";
  LaurentPoly DQ = qe.dispersion(c.max_size);
  if (in.lambda0) DQ = DQ.specialize_lambda(*in.lambda0);
  std::cout << "D_Q: " << DQ.size() << " terms, lambda degree " << DQ.lambda_degree() << "\n";
  if (DQ.size() <= 60) std::cout << "D_Q = " << DQ.to_string() << "\n";
  Polytope PQ = Polytope::newton(DQ);
  print_polytope(PQ);
  if (qe.potential_zd_periodic()) {
    LaurentPoly D = qe.base_with_periodic_potential().dispersion(c.max_size);
    if (in.lambda0) D = D.specialize_lambda(*in.lambda0);
    bool same = contracted_dilation(Polytope::newton(D), in.Q) == PQ;
    std::cout << "newt(D_Q) equals the contracted |Q|-dilation of newt(D): " << (same ? "yes" : "no") << "\n";
  }
  auto rep = poly_report(DQ);
  rep["graph"] = graph_to_json(qe.expanded);
  rep["Q"] = in.Q;
  write_file(c, "expansion.json", rep.dump(2) + "\n");
  return kOk;
}

int cmd_analyze(const RunConfig& c) {
  auto in = make_input(c);
  Verdict v = analyze(in);
  std::cout << "seed: " << c.seed << "\n";
  for (const auto& l : v.log) std::cout << l << "\n";
  for (const auto& b : v.factors) std::cout << "flat band: lambda = " << rational_string(b.r) << " (multiplicity " << b.multiplicity << ")\n";
  std::cout << "rules:\n";
  std::set<std::string> rules;
  for (const auto& f : v.certificate.at("facts")) rules.insert(f.at("rule").get<std::string>());
  for (const auto& r : rules) std::cout << "  " << r << ": " << rule_anchor(r) << "\n";
  write_file(c, "certificate.json", v.certificate.dump(2) + "\n");
  return v.kind == VerdictKind::Inconclusive ? kInconclusive : kOk;
}

int cmd_replay(const RunConfig& c) {
  std::ifstream f(c.certificate);
  if (!f) throw std::invalid_argument("cannot open certificate " + c.certificate);
  auto cert = nlohmann::json::parse(f);
  auto rep = replay(cert);
  std::cout << "certificate: " << cert.at("facts").size() << " facts, verdict " << cert.at("verdict").get<std::string>()
            << "\n";
  for (const auto& s : rep.failures) std::cout << "FAIL " << s << "\n";
  std::cout << "replay: " << (rep.ok ? "ok" : "failed") << "\n";
  return rep.ok ? kOk : kFail;
}

int cmd_verify(RunConfig c) {
  if (c.labels.empty()) c.labels = "random-rational";
  if (c.potential.empty()) c.potential = "random-zd";
  auto in = make_input(c);
  auto qe = q_expand(in.base, in.Q, in.potential_Q);
  if (!qe.expanded.labels_numeric() || !qe.expanded.potential_symbols().empty())
    throw std::invalid_argument("verify needs numeric labels and potential");
  std::cout << "seed: " << c.seed << "\n";
  std::cout << "tolerance: " << c.tol << " (relative)\n";
  bool ok = true;
  auto row = [&](const std::string& name, bool applicable, double err, const std::string& note) {
    bool pass = !applicable || err < c.tol;
    ok = ok && pass;
    std::cout << std::left << std::setw(20) << name << " ";
    if (!applicable)
      std::cout << "n/a   " << note << "\n";
    else
      std::cout << (pass ? "PASS  " : "FAIL  ") << "err=" << std::scientific << std::setprecision(3) << err
                << std::defaultfloat << "  " << note << "\n";
  };
  auto pi = product_identity(qe, {}, c.points, c.seed, c.max_size);
  row("product_identity", pi.applicable, pi.max_rel_err, pi.note);
  auto hi = hat_identity(qe, {}, c.points, c.seed);
  row("hat_identity", hi.applicable, hi.max_rel_err, hi.note);
  row("hermitian", true, hermitian_defect(qe.expanded, {}, c.points, c.seed), "L_Q(z) on the torus");
  if (qe.potential_zd_periodic()) {
    Polytope PQ = Polytope::newton(qe.dispersion(c.max_size));
    Polytope P = Polytope::newton(qe.base_with_periodic_potential().dispersion(c.max_size));
    bool same = contracted_dilation(P, in.Q) == PQ;
    std::cout << std::left << std::setw(20) << "dilation_vertices" << " " << (same ? "PASS" : "FAIL")
              << "  newt(D_Q) vs contracted |Q|-dilation (exact)\n";
    ok = ok && same;
  } else {
    std::cout << std::left << std::setw(20) << "dilation_vertices" << " n/a   potential not Z^d-periodic\n";
  }
  std::cout << "verify: " << (ok ? "ok" : "failed") << "\n";
  return ok ? kOk : kFail;
}

int cmd_export(const RunConfig& c) {
  if (c.out.empty()) throw std::invalid_argument("export needs --out");
  auto in = make_input(c);
  auto qe = q_expand(in.base, in.Q, in.potential_Q);
  const bool zd = qe.potential_zd_periodic();
  PeriodicGraph base = zd ? qe.base_with_periodic_potential() : in.base;
  if (c.grid > 0) {
    if (!zd) throw std::invalid_argument("spectrum export needs a Z^d-periodic potential");
    if (!base.labels_numeric() || !base.potential_symbols().empty())
      throw std::invalid_argument("spectrum export needs numeric labels and potential");
  }
  LaurentPoly D = base.dispersion(c.max_size);
  if (in.lambda0) D = D.specialize_lambda(*in.lambda0);
  Polytope P = Polytope::newton(D);
  write_file(c, "newton.json", P.to_json().dump(2) + "\n");
  write_file(c, "newton.off", P.to_off());
  if (in.Q != std::vector<long>(in.Q.size(), 1)) {
    LaurentPoly DQ = qe.dispersion(c.max_size);
    if (in.lambda0) DQ = DQ.specialize_lambda(*in.lambda0);
    Polytope PQ = Polytope::newton(DQ);
    write_file(c, "newton_Q.json", PQ.to_json().dump(2) + "\n");
    write_file(c, "newton_Q.off", PQ.to_off());
  }
  if (c.grid > 0) {
    std::ostringstream csv;
    csv << "grid_index,k,lambda\n" << std::setprecision(15);
    for (const auto& s : sample_spectrum(base, {}, c.grid))
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) csv << s.grid_index << "," << k << "," << s.eigenvalues[k] << "\n";
    write_file(c, "spectrum.csv", csv.str());
  }
  return kOk;
}

void add_common(CLI::App* s, RunConfig& c) {
  s->add_option("--graph", c.graph, "builtin name (honeycomb, dice, dense_2d, ..., cross:a1,..,ad, line:a) or JSON path");
  s->add_option("--d", c.d, "rank for builders that take one")->check(CLI::PositiveNumber);
  s->add_option("--Q", c.Q, "period multipliers q1,...,qd");
  s->add_option("--potential", c.potential,
                "symbolic | symbolic-zd | zero | random-rational[(seed)] | random-zd[(seed)] | vertex=p/q,...");
  s->add_option("--labels", c.labels, "symbolic | random-rational[(seed)] | random-int[(seed)] | name=p/q,...");
  s->add_option("--lambda0", c.lambda0, "Fermi level p/q");
  s->add_option("--axioms", c.axioms, "axiom JSON file");
  s->add_option("--out", c.out, "output directory");
  s->add_option("--seed", c.seed, "seed for random specs and sample points");
  s->add_option("--tol", c.tol, "relative tolerance for numeric checks");
  s->add_flag("--div-zero-as-q", c.div_zero_as_q, "treat gcd(q_i, 0) as q_i in coprimality rules");
  s->add_option("--max-size", c.max_size, "determinant size cap")->check(CLI::PositiveNumber);
  s->add_option("--grid", c.grid, "spectrum grid points per axis")->check(CLI::NonNegativeNumber);
  s->add_option("--points", c.points, "numeric sample points")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blochcert: dispersion polynomials of periodic graph operators and irreducibility certificates"};
  app.require_subcommand(1);
  RunConfig c;
  struct Sub {
    const char* name;
    const char* help;
    std::function<int()> run;
  };
  std::vector<Sub> subs{
      {"dispersion", "print D(z,lambda), its support and Newton polytope", [&] { return cmd_dispersion(c); }},
      {"expand", "Q-expansion and D_Q", [&] { return cmd_expand(c); }},
      {"analyze", "certify irreducibility of D_Q", [&] { return cmd_analyze(c); }},
      {"verify", "numeric identity checks", [&] { return cmd_verify(c); }},
      {"replay", "re-check a certificate", [&] { return cmd_replay(c); }},
      {"export", "polytope JSON/OFF and spectrum CSV", [&] { return cmd_export(c); }},
  };
  std::vector<CLI::App*> apps;
  for (auto& s : subs) {
    auto* a = app.add_subcommand(s.name, s.help);
    if (std::string(s.name) == "replay")
      a->add_option("certificate", c.certificate, "certificate JSON")->required();
    else
      add_common(a, c);
    apps.push_back(a);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }
  try {
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (apps[i]->parsed()) return subs[i].run();
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kOk;
}

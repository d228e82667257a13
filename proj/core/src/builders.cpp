#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "bloch/periodic_graph.hpp"

namespace bloch {

namespace {

IVec unit(int d, int i, long s = 1) {
  IVec e(d, 0);
  e[i] = s;
  return e;
}

ParamPoly sym(const std::string& s) { return ParamPoly::symbol(s); }

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Parses "name(seed)" returning the seed when the prefix matches.
std::optional<std::uint64_t> seeded(const std::string& item, const std::string& name) {
  if (item.rfind(name + "(", 0) != 0 || item.back() != ')') return std::nullopt;
  return std::stoull(item.substr(name.size() + 1, item.size() - name.size() - 2));
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  for (const auto& t : split(s, ',')) out.push_back(std::stol(t));
  return out;
}

}  // namespace

mpq_class random_rational(std::uint64_t& state) {
  static const long primes[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061};
  long num = 1 + static_cast<long>(splitmix(state) % 9973);
  long den = primes[splitmix(state) % 10];
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

namespace {

mpq_class signed_random(std::uint64_t& st) {
  bool neg = splitmix(st) & 1;
  mpq_class v = random_rational(st);
  return neg ? mpq_class(-v) : v;
}

}  // namespace

PeriodicGraph one_vertex(int d, const std::vector<std::pair<IVec, ParamPoly>>& loops) {
  PeriodicGraph g("one_vertex", d);
  g.add_vertex("u", sym("V_u"));
  for (const auto& [a, c] : loops) g.add_edge(0, 0, a, c);
  return g;
}

PeriodicGraph honeycomb_diamond(int d) {
  if (d < 1) throw std::invalid_argument("honeycomb_diamond needs d >= 1");
  PeriodicGraph g(d == 2 ? "honeycomb" : "diamond" + std::to_string(d), d);
  g.add_vertex("u", sym("V_u"));
  g.add_vertex("v", sym("V_v"));
  g.add_edge(0, 1, IVec(d, 0), sym("alpha"));
  for (int i = 0; i < d; ++i) {
    std::string label = d == 2 ? (i == 0 ? "beta" : "gamma") : "gamma" + std::to_string(i + 1);
    g.add_edge(0, 1, unit(d, i, -1), sym(label));
  }
  return g;
}

PeriodicGraph dice(int d) {
  if (d < 2) throw std::invalid_argument("dice needs d >= 2");
  PeriodicGraph g("dice", d);
  g.add_vertex("u1", sym("V_u1"));
  g.add_vertex("u2", sym("V_u2"));
  g.add_vertex("u3", sym("V_u3"));
  g.add_edge(0, 1, IVec(d, 0), sym("gamma0"));
  for (int i = 0; i < d; ++i) g.add_edge(0, 1, unit(d, i, -1), sym("gamma" + std::to_string(i + 1)));
  g.add_edge(1, 2, IVec(d, 0), sym("beta0"));
  for (int i = 0; i < d; ++i) g.add_edge(1, 2, unit(d, i, -1), sym("beta" + std::to_string(i + 1)));
  return g;
}

namespace {

PeriodicGraph dense(int d) {
  PeriodicGraph g(d == 2 ? "dense_2d" : "dense_3d", d);
  g.add_vertex("1", sym("V_1"));
  g.add_vertex("2", sym("V_2"));
  const char* names[] = {"beta", "gamma", "epsilon"};
  g.add_edge(0, 1, IVec(d, 0), sym("alpha"));
  for (int i = 0; i < d; ++i) {
    std::string n = names[i];
    g.add_edge(0, 0, unit(d, i), sym(n + "1"));
    g.add_edge(1, 1, unit(d, i), sym(n + "4"));
    g.add_edge(0, 1, unit(d, i), sym(n + "2"));
    g.add_edge(0, 1, unit(d, i, -1), sym(n + "3"));
  }
  return g;
}

}  // namespace

PeriodicGraph dense_2d() { return dense(2); }
PeriodicGraph dense_3d() { return dense(3); }

PeriodicGraph square_lattice(int d) {
  PeriodicGraph g("square", d);
  g.add_vertex("u", sym("V_u"));
  for (int i = 0; i < d; ++i) g.add_edge(0, 0, unit(d, i), sym("a" + std::to_string(i + 1)));
  return g;
}

PeriodicGraph cross_graph(const std::vector<long>& A) {
  const int d = static_cast<int>(A.size());
  PeriodicGraph g("cross", d);
  g.add_vertex("u", sym("V_u"));
  for (int i = 0; i < d; ++i) {
    if (A[i] <= 0) throw std::invalid_argument("cross dilation entries must be positive");
    g.add_edge(0, 0, unit(d, i, A[i]), sym("c" + std::to_string(i + 1)));
  }
  return g;
}

PeriodicGraph line_graph(long a) {
  if (a <= 0) throw std::invalid_argument("line offset must be positive");
  PeriodicGraph g("line", 1);
  g.add_vertex("u", sym("V_u"));
  g.add_edge(0, 0, IVec{a}, sym("c"));
  return g;
}

PeriodicGraph isolated_vertex(int d, const std::string& name) {
  PeriodicGraph g("isolated", d);
  g.add_vertex(name, sym("V_" + name));
  return g;
}

PeriodicGraph disjoint_union(const PeriodicGraph& a, const PeriodicGraph& b) {
  if (a.d() != b.d()) throw std::invalid_argument("disjoint union of graphs of different rank");
  PeriodicGraph g(a.name() + "+" + b.name(), a.d());
  for (std::size_t i = 0; i < a.size(); ++i) g.add_vertex(a.vertices()[i], a.potential()[i]);
  for (std::size_t i = 0; i < b.size(); ++i) g.add_vertex(b.vertices()[i], b.potential()[i]);
  for (const auto& e : a.edges()) g.add_edge(e.u, e.v, e.offset, e.label);
  for (const auto& e : b.edges()) g.add_edge(a.size() + e.u, a.size() + e.v, e.offset, e.label);
  return g;
}

PeriodicGraph omega_honeycomb() {
  PeriodicGraph g = disjoint_union(honeycomb_diamond(2), isolated_vertex(2, "Omega"));
  g.set_name("omega_honeycomb");
  return g;
}

std::vector<std::string> builtin_names() {
  return {"honeycomb", "honeycomb_diamond", "dice",      "dense_2d", "dense_3d",
          "square",    "cross:a1,..,ad",    "line:a",    "isolated", "omega_honeycomb"};
}

PeriodicGraph builtin(const std::string& spec, int d) {
  std::string name = spec, args;
  if (auto c = spec.find(':'); c != std::string::npos) {
    name = spec.substr(0, c);
    args = spec.substr(c + 1);
  }
  if (name == "honeycomb") return honeycomb_diamond(2);
  if (name == "honeycomb_diamond" || name == "diamond") return honeycomb_diamond(d);
  if (name == "dice") return dice(d);
  if (name == "dense_2d") return dense_2d();
  if (name == "dense_3d") return dense_3d();
  if (name == "square") return square_lattice(d);
  if (name == "cross") return cross_graph(parse_longs(args));
  if (name == "line") return line_graph(args.empty() ? 1 : std::stol(args));
  if (name == "isolated" || name == "one_vertex") return isolated_vertex(d);
  if (name == "omega_honeycomb") return omega_honeycomb();
  throw std::invalid_argument("unknown builtin graph '" + spec + "'");
}

std::vector<ParamPoly> potential_from_spec(const PeriodicGraph& base, const std::vector<long>& Q,
                                           const std::string& spec) {
  const auto ks = cells(Q);
  const std::size_t m = base.size();
  std::vector<ParamPoly> out(ks.size() * m);
  auto name_of = [&](std::size_t c, std::size_t r) { return base.vertices()[r] + cell_suffix(ks[c]); };
  for (std::size_t c = 0; c < ks.size(); ++c)
    for (std::size_t r = 0; r < m; ++r) {
      if (!base.potential()[r]) throw std::invalid_argument("base graph lacks a potential");
      out[c * m + r] = *base.potential()[r];
    }
  auto items = split(spec.empty() ? "default" : spec, ',');
  for (auto item : items) {
    item = trim(item);
    if (item.empty() || item == "default") continue;
    if (item == "zero") {
      std::fill(out.begin(), out.end(), ParamPoly());
    } else if (item == "symbolic") {
      for (std::size_t c = 0; c < ks.size(); ++c)
        for (std::size_t r = 0; r < m; ++r) out[c * m + r] = ParamPoly::symbol("V_" + name_of(c, r));
    } else if (item == "symbolic-zd") {
      for (std::size_t c = 0; c < ks.size(); ++c)
        for (std::size_t r = 0; r < m; ++r)
          out[c * m + r] = ParamPoly::symbol("V_" + base.vertices()[r]);
    } else if (auto s = seeded(item, "random-rational")) {
      std::uint64_t st = *s;
      for (auto& v : out) v = ParamPoly(signed_random(st));
    } else if (auto si = seeded(item, "random-int")) {
      std::uint64_t st = *si;
      for (auto& v : out) v = ParamPoly(static_cast<long>(splitmix(st) % 41) - 20);
    } else if (auto sz = seeded(item, "random-int-zd")) {
      std::uint64_t st = *sz;
      for (std::size_t r = 0; r < m; ++r) {
        ParamPoly val(static_cast<long>(splitmix(st) % 41) - 20);
        for (std::size_t c = 0; c < ks.size(); ++c) out[c * m + r] = val;
      }
    } else if (auto s2 = seeded(item, "random-zd")) {
      std::uint64_t st = *s2;
      for (std::size_t r = 0; r < m; ++r) {
        mpq_class val = signed_random(st);
        for (std::size_t c = 0; c < ks.size(); ++c) out[c * m + r] = val;
      }
    } else if (auto eq = item.find('='); eq != std::string::npos) {
      std::string who = trim(item.substr(0, eq));
      ParamPoly val = ParamPoly::parse_atom(trim(item.substr(eq + 1)));
      bool hit = false;
      for (std::size_t c = 0; c < ks.size(); ++c)
        for (std::size_t r = 0; r < m; ++r)
          if (base.vertices()[r] == who || name_of(c, r) == who) {
            out[c * m + r] = val;
            hit = true;
          }
      if (!hit) throw std::invalid_argument("potential names unknown vertex '" + who + "'");
    } else {
      throw std::invalid_argument("unrecognised potential spec '" + item + "'");
    }
  }
  return out;
}

std::map<std::string, ParamPoly> labels_from_spec(const PeriodicGraph& g, const std::string& spec) {
  std::set<std::string> names;
  for (const auto& e : g.edges())
    if (e.label) {
      auto s = e.label->symbols();
      names.insert(s.begin(), s.end());
    }
  std::map<std::string, ParamPoly> out;
  for (auto item : split(spec.empty() ? "symbolic" : spec, ',')) {
    item = trim(item);
    if (item.empty() || item == "symbolic") continue;
    if (auto s = seeded(item, "random-rational")) {
      std::uint64_t st = *s;
      for (const auto& n : names) out[n] = ParamPoly(random_rational(st));
    } else if (auto si = seeded(item, "random-int")) {
      std::uint64_t st = *si;
      for (const auto& n : names) out[n] = ParamPoly(static_cast<long>(1 + splitmix(st) % 30));
    } else if (auto eq = item.find('='); eq != std::string::npos) {
      std::string who = trim(item.substr(0, eq));
      if (!names.count(who)) throw std::invalid_argument("no edge label named '" + who + "'");
      out[who] = ParamPoly::parse_atom(trim(item.substr(eq + 1)));
    } else {
      throw std::invalid_argument("unrecognised label spec '" + item + "'");
    }
  }
  return out;
}

}  // namespace bloch

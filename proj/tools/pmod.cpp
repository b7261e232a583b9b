// pmod -- command line for poset-module resolutions, transport bounds,
// bottleneck brackets and kernel persistence diagrams.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "pmod/io.hpp"

using namespace pmod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOpenBracket = 3;

struct Session {
  Workspace ws;
  std::vector<std::string> inputs;
  int slack = 3;

  void load_all() {
    for (auto& path : inputs) load_file(ws, path);
    ws.slack = slack;
  }
};

MonotoneMap parse_sigma(const PosetPtr& p, const std::string& spec) {
  auto is_total_order = [&] {
    for (int a = 0; a < p->size(); ++a)
      for (int b = 0; b < p->size(); ++b)
        if (!p->leq(a, b) && !p->leq(b, a)) return false;
    return true;
  };
  if (spec.rfind("shift+", 0) == 0) {
    if (!is_total_order()) throw std::runtime_error("shift+K needs a totally ordered poset");
    int k = std::stoi(spec.substr(6));
    std::vector<int> order(size_t(p->size()));
    for (int i = 0; i < p->size(); ++i) order[size_t(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p->lt(a, b); });
    std::vector<int> pos(size_t(p->size()));
    for (int i = 0; i < p->size(); ++i) pos[size_t(order[size_t(i)])] = i;
    MonotoneMap s{p, p, std::vector<int>(size_t(p->size()), 0)};
    for (int x = 0; x < p->size(); ++x)
      s.values[size_t(x)] = order[size_t(std::min(pos[size_t(x)] + k, p->size() - 1))];
    return s;
  }
  if (spec.rfind("diag+", 0) == 0) {
    int k = std::stoi(spec.substr(5));
    // digit-string coordinates, capped per coordinate at the maximum seen
    std::vector<std::vector<std::int64_t>> coords;
    for (auto& nm : p->names) {
      coords.emplace_back();
      for (char ch : nm) {
        if (ch < '0' || ch > '9') throw std::runtime_error("diag+K needs digit-string element names");
        coords.back().push_back(ch - '0');
      }
    }
    std::vector<std::int64_t> cap(coords[0].size(), 0);
    for (auto& c : coords)
      for (size_t i = 0; i < c.size(); ++i) cap[i] = std::max(cap[i], c[i]);
    MonotoneMap s{p, p, std::vector<int>(size_t(p->size()), 0)};
    for (int x = 0; x < p->size(); ++x) {
      std::string target;
      for (size_t i = 0; i < coords[size_t(x)].size(); ++i)
        target += char('0' + std::min(coords[size_t(x)][i] + k, cap[i]));
      s.values[size_t(x)] = p->index_of(target);
    }
    return s;
  }
  // explicit a:b,c:d list
  MonotoneMap s{p, p, std::vector<int>(size_t(p->size()), -1)};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad sigma entry: " + item);
    s.values[size_t(p->index_of(item.substr(0, colon)))] = p->index_of(item.substr(colon + 1));
  }
  for (int v : s.values)
    if (v < 0) throw std::runtime_error("sigma is not total");
  if (!s.is_monotone()) throw std::runtime_error("sigma is not monotone");
  for (int x = 0; x < p->size(); ++x)
    if (!p->leq(x, s(x))) throw std::runtime_error("sigma is not a translation");
  return s;
}

std::vector<TranslationMode> parse_modes(const std::vector<std::string>& specs) {
  if (specs.empty())
    return {TranslationMode::Intervals, TranslationMode::Kan, TranslationMode::PullTarget};
  std::vector<TranslationMode> out;
  for (auto& s : specs) {
    if (s == "intervals")
      out.push_back(TranslationMode::Intervals);
    else if (s == "kan")
      out.push_back(TranslationMode::Kan);
    else if (s == "pulln" || s == "pull-target")
      out.push_back(TranslationMode::PullTarget);
    else
      throw std::runtime_error("unknown mode: " + s);
  }
  return out;
}

void print_complex(std::ostream& os, const ProjComplex& c, const std::string& label) {
  os << label << " size vector (";
  auto sv = size_vector(c);
  for (size_t i = 0; i < sv.size(); ++i) os << (i ? "," : "") << sv[i];
  os << ")\n";
  for (int i = 0; i < c.degrees(); ++i) {
    os << "  degree " << i << ":";
    for (int pt : c.points[size_t(i)]) os << " " << c.poset->names[size_t(pt)];
    os << "\n";
    if (i + 1 < c.degrees() && c.summands(i) > 0 && c.summands(i + 1) > 0) {
      os << "  d" << i << " =";
      const Mat& d = c.diffs[size_t(i)];
      for (Eigen::Index r = 0; r < d.rows(); ++r) {
        if (r > 0) os << " /";
        for (Eigen::Index cc = 0; cc < d.cols(); ++cc) os << " " << d(r, cc).lifted();
      }
      os << "\n";
    }
  }
}

void print_witness(std::ostream& os, const MatchingWitness& w) {
  const Poset& p = *w.complex_e.poset;
  os << "witness cost " << w.cost << "\n";
  os << "source padding:";
  if (w.padding_e.empty()) os << " (none)";
  for (auto& c : w.padding_e) os << " " << p.names[size_t(c.point)] << "@" << c.degree;
  os << "\n";
  os << "target padding:";
  if (w.padding_f.empty()) os << " (none)";
  for (auto& c : w.padding_f) os << " " << p.names[size_t(c.point)] << "@" << c.degree;
  os << "\n";
  for (int i = w.complex_e.degrees() - 1; i >= 0; --i) {
    os << "  degree " << i << ":";
    for (size_t k = 0; k < w.complex_e.points[size_t(i)].size(); ++k)
      os << " " << p.names[size_t(w.complex_e.points[size_t(i)][k])] << "->"
         << p.names[size_t(w.assignment[size_t(i)][k])];
    os << "\n";
  }
}

void print_bracket(std::ostream& os, const DistBracket& b) {
  os << "bracket [" << b.lower << ", " << b.upper << "]"
     << (b.exact() ? " (exact)" : " (open)") << "\n";
  if (!b.search_complete) os << "note: the search hit its work budget before finishing\n";
  switch (b.lower_reason) {
    case LowerReason::IsoTest: os << "lower bound via the isomorphism test\n"; break;
    case LowerReason::AlphaHat: os << "lower bound via the projective class invariant\n"; break;
    case LowerReason::ThresholdExhaustion: os << "search exhausted its slack budget\n"; break;
  }
  if (b.witness) print_witness(os, *b.witness);
}

int cmd_verify_examples(const std::string& corpus_dir, int slack);

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("P_FIELD_PRIME")) {
    try {
      Fp::set_modulus(std::stoll(env));
    } catch (const std::exception& e) {
      std::cerr << "P_FIELD_PRIME: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"poset module resolutions, transport bounds and kernel persistence"};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  app.add_option("--in", s.inputs, "input file (repeatable)")->expected(-1)->take_all();
  app.add_option("--slack", s.slack, "cone budget per side for the bracket searches");
  std::int64_t prime = 0;
  app.add_option("--prime", prime, "field prime for this run");

  std::string arg_a, arg_b, arg_elt, corpus_dir = "data/corpus";
  std::vector<std::string> arg_sigmas, arg_modes;

  auto* c_resolve = app.add_subcommand("resolve", "minimal projective resolution of a module");
  c_resolve->add_option("module", arg_a)->required();

  auto* c_distb = app.add_subcommand("distb", "bottleneck bracket between two modules");
  c_distb->add_option("moduleA", arg_a)->required();
  c_distb->add_option("moduleB", arg_b)->required();

  auto* c_distbpre = app.add_subcommand("distb-pre", "pre-matching distance between two modules");
  c_distbpre->add_option("moduleA", arg_a)->required();
  c_distbpre->add_option("moduleB", arg_b)->required();

  auto* c_gtu = app.add_subcommand("gt-upper", "transport upper bound over supplied translations");
  c_gtu->add_option("moduleA", arg_a)->required();
  c_gtu->add_option("moduleB", arg_b)->required();
  c_gtu->add_option("--sigma", arg_sigmas, "translation (shift+K, diag+K or a:b,c:d)")->take_all();
  c_gtu->add_option("--mode", arg_modes, "construction modes (intervals, kan, pulln)")->take_all();

  auto* c_gtz = app.add_subcommand("gt-zero", "exact zero test for the transport distance");
  c_gtz->add_option("moduleA", arg_a)->required();
  c_gtz->add_option("moduleB", arg_b)->required();

  auto* c_kernel = app.add_subcommand("kernel", "kernel module over the interval poset");
  c_kernel->add_option("module", arg_a)->required();

  auto* c_diagram = app.add_subcommand("diagram", "resolution-valued persistence diagram");
  c_diagram->add_option("module", arg_a)->required();

  auto* c_ext = app.add_subcommand("ext", "Ext dimensions from the simple at an element");
  c_ext->add_option("module", arg_a)->required();
  c_ext->add_option("element", arg_elt)->required();

  auto* c_stab = app.add_subcommand("stability", "stability chain report for a pair of modules");
  c_stab->add_option("moduleA", arg_a)->required();
  c_stab->add_option("moduleB", arg_b)->required();
  c_stab->add_option("--sigma", arg_sigmas, "translation (repeatable)")->take_all();
  c_stab->add_option("--mode", arg_modes, "construction modes")->take_all();

  auto* c_verify = app.add_subcommand("verify-examples", "run the bundled golden corpus");
  c_verify->add_option("--corpus", corpus_dir, "corpus directory");

  auto* c_save = app.add_subcommand("save", "canonical dump of the loaded workspace");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prime != 0) Fp::set_modulus(prime);
    if (c_verify->parsed()) return cmd_verify_examples(corpus_dir, s.slack);
    s.load_all();

    if (c_save->parsed()) {
      save(std::cout, s.ws);
      return kExitOk;
    }
    if (c_resolve->parsed()) {
      const NamedModule& m = s.ws.module_named(arg_a);
      ProjComplex c = minimal_resolution(m.module);
      std::cout << "prime " << Fp::modulus << "\n";
      print_complex(std::cout, c, "resolution of " + arg_a + ",");
      auto cls = alternating_class(c);
      std::cout << "class invariant:";
      for (int x = 0; x < c.poset->size(); ++x)
        if (cls[size_t(x)] != 0)
          std::cout << " " << (cls[size_t(x)] > 0 ? "+" : "") << cls[size_t(x)] << "["
                    << c.poset->names[size_t(x)] << "]";
      std::cout << "\n";
      return kExitOk;
    }
    if (c_distb->parsed() || c_distbpre->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      const NamedModule& b = s.ws.module_named(arg_b);
      if (!same_poset(*a.module.poset, *b.module.poset))
        throw std::runtime_error("modules live over different posets");
      ProjComplex ca = minimal_resolution(a.module);
      ProjComplex cb = minimal_resolution(b.module);
      std::cout << "slack " << s.slack << " per side\n";
      DistBracket br = c_distb->parsed() ? bottleneck_distance(ca, cb, b.module, s.slack)
                                         : prematch_distance(ca, cb, s.slack);
      print_bracket(std::cout, br);
      return br.exact() ? kExitOk : kExitOpenBracket;
    }
    if (c_gtu->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      const NamedModule& b = s.ws.module_named(arg_b);
      PosetPtr p = a.module.poset;
      std::vector<MonotoneMap> sigmas;
      for (auto& sp : arg_sigmas) sigmas.push_back(parse_sigma(p, sp));
      GtUpper u = gt_upper(p, a.module, b.module, sigmas, parse_modes(arg_modes),
                           a.parts ? &*a.parts : nullptr, b.parts ? &*b.parts : nullptr);
      for (auto& line : u.attempts) std::cout << line << "\n";
      std::cout << "transport upper bound: " << u.bound << "\n";
      if (u.best) std::cout << "best construction: " << u.best->provenance << "\n";
      bool zero = gt_zero(a.module, b.module);
      std::cout << "zero test (isomorphism): " << (zero ? "true" : "false") << "\n";
      if (!zero && !u.bound.inf) {
        auto mp = p->min_positive_distance();
        if (mp && u.bound == *mp)
          std::cout << "bracket closed at " << u.bound << " by the zero test\n";
      }
      return u.bound.inf ? kExitOpenBracket : kExitOk;
    }
    if (c_gtz->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      const NamedModule& b = s.ws.module_named(arg_b);
      std::cout << (gt_zero(a.module, b.module) ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (c_kernel->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      KernelModule km = kernel_module(a.module);
      std::cout << "kernel module of " << arg_a << " over the interval poset ("
                << km.interval->size() << " elements)\n";
      for (int i = 0; i < km.interval->size(); ++i)
        if (km.module.dim(i) > 0)
          std::cout << "  " << km.interval->names[size_t(i)] << " : " << km.module.dim(i) << "\n";
      return kExitOk;
    }
    if (c_diagram->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      PersistenceDiagram d = persistence_diagram(a.module);
      std::cout << "persistence diagram of " << arg_a << "\n";
      for (size_t i = 0; i < d.diagram.multiplicities.size(); ++i) {
        std::cout << "  degree " << i << " (sign " << (i % 2 == 0 ? "+" : "-") << "):";
        for (auto& [pt, mult] : d.diagram.multiplicities[i])
          std::cout << " " << d.diagram.interval->names[size_t(pt)] << "x" << mult;
        std::cout << "\n";
      }
      return kExitOk;
    }
    if (c_ext->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      int b = a.module.poset->index_of(arg_elt);
      auto dims = ext_dims(b, a.module);
      std::cout << "ext dimensions from the simple at " << arg_elt << ":";
      for (size_t d = 0; d < dims.size(); ++d) std::cout << " " << dims[d];
      std::cout << "\n";
      return kExitOk;
    }
    if (c_stab->parsed()) {
      const NamedModule& a = s.ws.module_named(arg_a);
      const NamedModule& b = s.ws.module_named(arg_b);
      PosetPtr p = a.module.poset;
      std::vector<MonotoneMap> sigmas;
      for (auto& sp : arg_sigmas) sigmas.push_back(parse_sigma(p, sp));
      StabilityReport rep =
          stability_report(p, a.module, b.module, sigmas, parse_modes(arg_modes), s.slack,
                           a.parts ? &*a.parts : nullptr, b.parts ? &*b.parts : nullptr);
      for (auto& line : rep.lines) std::cout << line << "\n";
      std::cout << "diagram bottleneck ";
      print_bracket(std::cout, rep.bracket);
      std::cout << "lifted coupling cost: " << rep.lifted_cost << "\n";
      std::cout << "base transport bound: " << rep.base.bound << "\n";
      std::cout << "stability chain " << rep.bracket.upper << " <= " << rep.lifted_cost
                << " <= " << rep.base.bound << " : " << (rep.chain_holds ? "holds" : "VIOLATED")
                << "\n";
      if (!rep.chain_holds) return kExitMismatch;
      return rep.bracket.exact() ? kExitOk : kExitOpenBracket;
    }
  } catch (const IoError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

namespace {

struct Check {
  int passed = 0, failed = 0;
  void expect(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok  " : " FAIL ") << what << "\n";
    (ok ? passed : failed)++;
  }
};

int cmd_verify_examples(const std::string& corpus_dir, int slack) {
  Workspace ws;
  ws.slack = slack;
  std::vector<std::string> files;
  for (auto& entry : std::filesystem::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".txt") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  for (auto& f : files) {
    std::cout << "loading " << f << "\n";
    load_file(ws, f);
  }
  Check ck;

  {  // one-parameter transport example
    PosetPtr p = ws.poset("P4");
    const NamedModule& m = ws.module_named("M");
    const NamedModule& n = ws.module_named("N");
    const NamedCoupling& c = ws.coupling_named("C");
    ck.expect(coupling_cost(c.coupling) == ExtDist(1), "chain coupling has cost 1");
    auto g = right_adjoint(c.coupling.left.f);
    ck.expect(g.has_value() && *g == c.coupling.left.g, "g is the right adjoint of f");
    MonotoneMap sigma = parse_sigma(p, "shift+1");
    GtUpper u = gt_upper(p, m.module, n.module, {sigma}, {TranslationMode::Intervals}, &*m.parts,
                         &*n.parts);
    ck.expect(u.bound == ExtDist(1), "transport upper bound 1 on the four-chain");
    ck.expect(!gt_zero(m.module, n.module), "the chain pair is not isomorphic");

    ProjComplex cm = minimal_resolution(m.module);
    ProjComplex cn = minimal_resolution(n.module);
    ck.expect(size_vector(cm) == std::vector<int>{2, 2}, "size vector (2,2)");
    DistBracket b = bottleneck_distance(cm, cn, n.module, ws.slack);
    ck.expect(b.exact() && b.upper == ExtDist(1), "bottleneck bracket [1,1] on the four-chain");
    bool table = b.witness && b.witness->padding_f.size() == 1 &&
                 b.witness->padding_f[0].point == p->index_of("1") &&
                 b.witness->padding_f[0].degree == 0;
    ck.expect(table, "winning witness pads the target with a cone at 1");
  }
  {  // two-parameter transport example
    PosetPtr g2 = ws.poset("G33");
    const NamedModule& m = ws.module_named("M2");
    const NamedModule& n = ws.module_named("N2");
    MonotoneMap sigma = parse_sigma(g2, "diag+1");
    GtUpper u = gt_upper(g2, m.module, n.module, {sigma}, {TranslationMode::Intervals}, &*m.parts,
                         &*n.parts);
    ck.expect(u.bound == ExtDist(1), "transport upper bound 1 on the grid");
    ProjComplex cm = minimal_resolution(m.module);
    ProjComplex cn = minimal_resolution(n.module);
    ck.expect(
        size_vector(cm) == std::vector<int>{2, 3, 1} && size_vector(cn) == std::vector<int>{1, 1},
        "grid size vectors (2,3,1) and (1,1)");
    DistBracket b = bottleneck_distance(cm, cn, n.module, ws.slack);
    ck.expect(b.exact() && b.upper == ExtDist(1), "bottleneck bracket [1,1] on the grid");
    bool transported_ok = false;
    if (b.witness) {
      const ProjComplex& t = b.witness->transported;
      transported_ok =
          t.degrees() == 3 && t.points[2] == std::vector<int>{g2->index_of("22")} &&
          t.points[1] ==
              std::vector<int>{g2->index_of("12"), g2->index_of("22"), g2->index_of("33")} &&
          t.points[0] == std::vector<int>{g2->index_of("12"), g2->index_of("22")};
    }
    ck.expect(transported_ok, "winning witness transports onto the displayed complex");
  }
  {  // two-point stability example
    PosetPtr p = ws.poset("P2");
    const NamedModule& m = ws.module_named("MS");
    const NamedModule& n = ws.module_named("NS");
    MonotoneMap sigma = parse_sigma(p, "shift+1");
    auto c = coupling_from_translation(p, sigma, m.module, n.module, TranslationMode::Kan);
    ck.expect(c.has_value() && coupling_cost(*c) == ExtDist(1), "kan coupling of cost 1");
    if (c) {
      auto w = pullback_matching(*c, minimal_resolution(c->gamma));
      ck.expect(w.has_value() && w->cost == ExtDist(1), "pulled-back witness of cost 1");
    }
    DistBracket b = bottleneck_distance(minimal_resolution(m.module),
                                        minimal_resolution(n.module), n.module, ws.slack);
    ck.expect(b.exact() && b.upper == ExtDist(1), "bottleneck bracket [1,1] on the two-chain");
  }
  {  // five-chain bar against the zero module
    PosetPtr p = ws.poset("C5");
    const NamedModule& m = ws.module_named("BAR");
    const NamedModule& z = ws.module_named("zero");
    ProjComplex cm = minimal_resolution(m.module);
    ProjComplex cz = minimal_resolution(z.module);
    DistBracket pre = prematch_distance(cm, cz, ws.slack);
    ck.expect(pre.exact() && pre.upper == ExtDist(1), "pre-matching distance 1");
    ProjComplex e = pad(cm, {ConeSpec{p->index_of("3"), 0}, ConeSpec{p->index_of("4"), 0}});
    Assignment jump{{p->index_of("2"), p->index_of("3"), p->index_of("4")},
                    {p->index_of("3"), p->index_of("4"), p->index_of("2")}};
    auto w3 = verify_witness(e, jump, z.module);
    ck.expect(w3.has_value() && w3->cost == ExtDist(3), "cost-3 matching witness verifies");
    DistBracket b = bottleneck_distance(cm, cz, z.module, ws.slack);
    ck.expect(b.lower == ExtDist(1) && b.upper == ExtDist(2),
              "bottleneck bracket [1,2]; a midpoint witness beats the cost-3 table");
    ck.expect(b.witness.has_value() &&
                  b.witness->assignment == Assignment{{p->index_of("3")}, {p->index_of("3")}},
              "winning witness matches the bar to the diagonal at 3");
  }
  {  // class invariant can vanish on non-isomorphic modules
    const NamedModule& a = ws.module_named("A2");
    const NamedModule& b = ws.module_named("B2");
    ProjComplex ca = minimal_resolution(a.module);
    ProjComplex cb = minimal_resolution(b.module);
    DistBracket pre = prematch_distance(ca, cb, ws.slack);
    ck.expect(pre.exact() && pre.upper == ExtDist::zero(), "pre-matching distance 0");
    ck.expect(!is_isomorphic(a.module, b.module), "modules are not isomorphic");
    ck.expect(!(strip(ca) == strip(cb)), "stripping distinguishes the resolutions");
  }
  {  // persistence of the one-parameter pair
    PosetPtr p = ws.poset("P4");
    const NamedModule& m = ws.module_named("M");
    const NamedModule& n = ws.module_named("N");
    MonotoneMap sigma = parse_sigma(p, "shift+1");
    StabilityReport rep = stability_report(p, m.module, n.module, {sigma},
                                           {TranslationMode::Intervals}, ws.slack, &*m.parts,
                                           &*n.parts);
    ck.expect(rep.bracket.exact() && rep.bracket.upper == ExtDist(1),
              "kernel diagram bottleneck [1,1] on the four-chain");
    ck.expect(rep.chain_holds && rep.base.bound == ExtDist(1) && rep.lifted_cost == ExtDist(1),
              "stability chain 1 <= 1 <= 1");
  }
  {  // persistence of the two-parameter pair
    PosetPtr g2 = ws.poset("G33");
    const NamedModule& m = ws.module_named("M2");
    const NamedModule& n = ws.module_named("N2");
    MonotoneMap sigma = parse_sigma(g2, "diag+1");
    StabilityReport rep = stability_report(g2, m.module, n.module, {sigma},
                                           {TranslationMode::Intervals}, ws.slack, &*m.parts,
                                           &*n.parts);
    ck.expect(rep.bracket.exact() && rep.bracket.upper == ExtDist(1),
              "kernel diagram bottleneck [1,1] on the grid");
    ck.expect(rep.chain_holds, "grid stability chain holds with equality");
    PersistenceDiagram d1 = persistence_diagram(ws.module_named("M2a").module);
    auto at = [&](const std::string& x, const std::string& y) {
      return interval_index(*d1.kernel.interval, *d1.kernel.base_bar,
                            d1.kernel.base_bar->index_of(x), d1.kernel.base_bar->index_of(y));
    };
    bool deg_ok = d1.resolution.degrees() == 3 &&
                  d1.resolution.points[0] == std::vector<int>{at("12", "22"), at("12", "13")} &&
                  d1.resolution.points[1] ==
                      std::vector<int>{at("12", "23"), at("22", "22"), at("13", "13")} &&
                  d1.resolution.points[2] == std::vector<int>{at("23", "23")};
    ck.expect(deg_ok, "corner kernel diagram has the verified summand multisets");
  }

  std::cout << ck.passed << " checks passed, " << ck.failed << " failed\n";
  return ck.failed == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

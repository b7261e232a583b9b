// io.hpp -- line-oriented text format for posets, modules and couplings,
// and the named workspace the command line operates on.

#pragma once

#include <fstream>
#include <sstream>

#include "pmod/persistence.hpp"

namespace pmod {

/// Parse or validation failure with the offending line.
struct IoError : std::runtime_error {
  int line;
  IoError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct NamedModule {
  std::string name;
  std::string poset_name;
  PModule module;
  std::optional<IntervalDecomposition> parts;  // present for interval sums
};

struct NamedCoupling {
  std::string name;
  std::string m_name, n_name, apex_name;
  GaloisCoupling coupling;
};

/// Named posets, modules and couplings plus the session search parameters.
struct Workspace {
  std::vector<std::string> poset_order, module_order, coupling_order;
  std::map<std::string, PosetPtr> posets;
  std::map<std::string, NamedModule> modules;
  std::map<std::string, NamedCoupling> couplings;
  int slack = 3;

  PosetPtr poset(const std::string& name) const {
    auto it = posets.find(name);
    if (it == posets.end()) throw std::out_of_range("unknown poset: " + name);
    return it->second;
  }
  const NamedModule& module_named(const std::string& name) const {
    auto it = modules.find(name);
    if (it == modules.end()) throw std::out_of_range("unknown module: " + name);
    return it->second;
  }
  const NamedCoupling& coupling_named(const std::string& name) const {
    auto it = couplings.find(name);
    if (it == couplings.end()) throw std::out_of_range("unknown coupling: " + name);
    return it->second;
  }
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline ExtDist parse_dist(const std::string& s, int line) {
  if (s == "inf") return ExtDist::infinity();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return ExtDist(std::stoll(s));
    return ExtDist(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw IoError(line, "bad distance value: " + s);
  }
}

inline Fp parse_scalar(const std::string& s, int line) {
  try {
    return Fp(std::stoll(s));
  } catch (const std::exception&) {
    throw IoError(line, "bad matrix entry: " + s);
  }
}

}  // namespace detail

/// Loads every section of a file into the workspace. Throws IoError with a
/// line number on parse failures; validation failures name the culprit.
inline void load(Workspace& ws, std::istream& in, const std::string& source = "<stream>") {
  std::vector<std::pair<int, std::string>> lines;
  {
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
        raw.pop_back();
      if (!raw.empty()) lines.emplace_back(no, raw);
    }
  }

  size_t i = 0;
  while (i < lines.size()) {
    auto [no, line] = lines[i];
    auto tok = detail::tokens(line);
    if (tok[0] == "[poset]") {
      if (tok.size() != 2) throw IoError(no, "expected: [poset] NAME");
      std::string name = tok[1];
      std::vector<std::string> elements;
      std::vector<std::pair<std::string, std::string>> covers;
      MetricSpec metric = MetricSpec::hasse_path();
      bool explicit_metric = false;
      ++i;
      while (i < lines.size() && lines[i].second[0] != '[') {
        auto [lno, l] = lines[i];
        auto t = detail::tokens(l);
        if (t[0] == "elements") {
          elements.assign(t.begin() + 1, t.end());
          for (auto& e : elements)
            if (e.find_first_of(",():/") != std::string::npos || e[0] == '[')
              throw IoError(lno, "element names may not contain , ( ) : / or start with [");
        } else if (t[0] == "cover") {
          if (t.size() != 3) throw IoError(lno, "expected: cover A B");
          covers.emplace_back(t[1], t[2]);
        } else if (t[0] == "metric") {
          if (t.size() != 2) throw IoError(lno, "expected: metric KIND");
          if (t[1] == "hasse_path")
            metric = MetricSpec::hasse_path();
          else if (t[1] == "linf_product")
            metric = MetricSpec::linf_product();
          else if (t[1] == "explicit") {
            metric.kind = MetricSpec::Explicit;
            explicit_metric = true;
          } else
            throw IoError(lno, "unknown metric kind: " + t[1]);
        } else if (t[0] == "d" && explicit_metric) {
          if (t.size() != 4) throw IoError(lno, "expected: d A B VALUE");
          metric.entries.emplace_back(t[1], t[2], detail::parse_dist(t[3], lno));
        } else {
          throw IoError(lno, "unexpected line in poset section: " + l);
        }
        ++i;
      }
      try {
        PosetPtr p = from_covers(elements, covers, metric);
        if (!ws.posets.count(name)) ws.poset_order.push_back(name);
        ws.posets[name] = p;
      } catch (const std::invalid_argument& e) {
        throw IoError(no, std::string("poset ") + name + ": " + e.what());
      }
    } else if (tok[0] == "[module]") {
      if (tok.size() != 4 || tok[2] != "@") throw IoError(no, "expected: [module] NAME @ POSET");
      std::string name = tok[1], pname = tok[3];
      if (!ws.posets.count(pname)) throw IoError(no, "unknown poset: " + pname);
      PosetPtr p = ws.posets[pname];
      NamedModule nm{name, pname, PModule::zero(p), std::nullopt};
      bool any_interval = false, any_explicit = false;
      std::vector<std::pair<int, int>> explicit_dim_lines;
      ++i;
      while (i < lines.size() && lines[i].second[0] != '[') {
        auto [lno, l] = lines[i];
        auto t = detail::tokens(l);
        if (t[0] == "interval") {
          any_interval = true;
          auto colon = std::find(t.begin(), t.end(), ":");
          if (colon == t.end()) throw IoError(lno, "expected: interval A... : B...");
          std::vector<int> lo, hi;
          try {
            for (auto it = t.begin() + 1; it != colon; ++it) lo.push_back(p->index_of(*it));
            for (auto it = colon + 1; it != t.end(); ++it) hi.push_back(p->index_of(*it));
          } catch (const std::out_of_range& e) {
            throw IoError(lno, e.what());
          }
          auto gi = as_gen_interval(*p, interval_span(*p, lo, hi));
          if (!gi) throw IoError(lno, "span is not convex and connected");
          if (gi->min_antichain != lo || gi->max_antichain != hi) {
            std::sort(lo.begin(), lo.end());
            std::sort(hi.begin(), hi.end());
            if (gi->min_antichain != lo || gi->max_antichain != hi)
              throw IoError(lno, "antichains do not present the spanned interval");
          }
          if (!nm.parts) nm.parts = IntervalDecomposition{};
          nm.parts->push_back(*gi);
          nm.module = direct_sum(nm.module, interval_module(p, *gi));
        } else if (t[0] == "dim") {
          any_explicit = true;
          if (t.size() != 3) throw IoError(lno, "expected: dim ELEMENT N");
          try {
            nm.module.dims[size_t(p->index_of(t[1]))] = std::stoi(t[2]);
          } catch (const std::out_of_range& e) {
            throw IoError(lno, e.what());
          }
          explicit_dim_lines.emplace_back(lno, 0);
        } else if (t[0] == "map") {
          any_explicit = true;
          auto colon = std::find(t.begin(), t.end(), ":");
          if (t.size() < 4 || colon != t.begin() + 3) throw IoError(lno, "expected: map A B : entries");
          int a, b;
          try {
            a = p->index_of(t[1]);
            b = p->index_of(t[2]);
          } catch (const std::out_of_range& e) {
            throw IoError(lno, e.what());
          }
          size_t ai = 0;
          bool found = false;
          for (; ai < p->covers.size(); ++ai)
            if (p->covers[ai] == std::make_pair(a, b)) {
              found = true;
              break;
            }
          if (!found) throw IoError(lno, "map must follow a cover arrow: " + t[1] + " " + t[2]);
          std::vector<std::vector<Fp>> rows(1);
          for (auto it = colon + 1; it != t.end(); ++it) {
            if (*it == "/")
              rows.emplace_back();
            else
              rows.back().push_back(detail::parse_scalar(*it, lno));
          }
          Mat m = mat_zero(int(rows.size()), int(rows[0].size()));
          for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != rows[0].size()) throw IoError(lno, "ragged matrix");
            for (size_t c = 0; c < rows[r].size(); ++c) m(int(r), int(c)) = rows[r][c];
          }
          nm.module.arrow_maps[ai] = m;
        } else {
          throw IoError(lno, "unexpected line in module section: " + l);
        }
        ++i;
      }
      if (any_interval && any_explicit)
        throw IoError(no, "module " + name + " mixes interval and explicit form");
      if (any_explicit) {
        // resize omitted maps to the declared dimensions
        for (size_t ai = 0; ai < p->covers.size(); ++ai) {
          auto [a, b] = p->covers[ai];
          Mat& m = nm.module.arrow_maps[ai];
          if (m.rows() == 0 && m.cols() == 0) m = mat_zero(nm.module.dim(b), nm.module.dim(a));
        }
      }
      std::string why;
      if (!validate(nm.module, &why)) throw IoError(no, "module " + name + ": " + why);
      if (!ws.modules.count(name)) ws.module_order.push_back(name);
      ws.modules[name] = std::move(nm);
    } else if (tok[0] == "[coupling]") {
      if (tok.size() != 5 || tok[2] != ":")
        throw IoError(no, "expected: [coupling] NAME : M N");
      std::string name = tok[1], mn = tok[3], nn = tok[4];
      ++i;
      std::string apex_name, gamma_name;
      std::map<std::string, std::vector<std::pair<std::string, std::string>>> maps;
      int section_line = no;
      while (i < lines.size() && lines[i].second[0] != '[') {
        auto [lno, l] = lines[i];
        auto t = detail::tokens(l);
        if (t[0] == "apex") {
          if (t.size() != 2) throw IoError(lno, "expected: apex POSET");
          apex_name = t[1];
        } else if (t[0] == "gamma") {
          if (t.size() != 2) throw IoError(lno, "expected: gamma MODULE");
          gamma_name = t[1];
        } else if (t[0] == "f" || t[0] == "g" || t[0] == "h" || t[0] == "i") {
          for (size_t k = 1; k < t.size(); ++k) {
            auto colon = t[k].find(':');
            if (colon == std::string::npos) throw IoError(lno, "expected SRC:DST pairs");
            maps[t[0]].emplace_back(t[k].substr(0, colon), t[k].substr(colon + 1));
          }
        } else {
          throw IoError(lno, "unexpected line in coupling section: " + l);
        }
        ++i;
      }
      if (apex_name.empty() || gamma_name.empty())
        throw IoError(section_line, "coupling needs apex and gamma lines");
      if (!ws.posets.count(apex_name)) throw IoError(section_line, "unknown poset: " + apex_name);
      if (!ws.modules.count(gamma_name) || !ws.modules.count(mn) || !ws.modules.count(nn))
        throw IoError(section_line, "coupling references an unknown module");
      PosetPtr apex = ws.posets[apex_name];
      const NamedModule& gm = ws.modules[gamma_name];
      const NamedModule& mm = ws.modules[mn];
      const NamedModule& nm2 = ws.modules[nn];
      PosetPtr base = mm.module.poset;
      auto build_map = [&](const std::string& key, PosetPtr src, PosetPtr dst) {
        MonotoneMap f{src, dst, std::vector<int>(size_t(src->size()), -1)};
        for (auto& [a, b] : maps[key]) {
          auto sa = src->find(a);
          auto sb = dst->find(b);
          if (!sa || !sb) throw IoError(section_line, "bad element in map " + key);
          f.values[size_t(*sa)] = *sb;
        }
        for (int v : f.values)
          if (v < 0) throw IoError(section_line, "map " + key + " is not total");
        if (!f.is_monotone()) throw IoError(section_line, "map " + key + " is not monotone");
        return f;
      };
      MonotoneMap f = build_map("f", apex, base);
      MonotoneMap g = build_map("g", base, apex);
      MonotoneMap h = build_map("h", apex, base);
      MonotoneMap ii = build_map("i", base, apex);
      auto gl = make_galois_pair(f, g);
      auto gr = make_galois_pair(h, ii);
      if (!gl || !gl->insertion) throw IoError(section_line, "(f,g) is not a Galois insertion");
      if (!gr || !gr->insertion) throw IoError(section_line, "(h,i) is not a Galois insertion");
      std::string why;
      auto c = make_coupling(apex, *gl, *gr, gm.module, mm.module, nm2.module,
                             "loaded coupling " + name, &why);
      if (!c) throw IoError(section_line, "coupling " + name + ": " + why);
      if (!ws.couplings.count(name)) ws.coupling_order.push_back(name);
      ws.couplings[name] = NamedCoupling{name, mn, nn, apex_name, *c};
    } else {
      throw IoError(no, "expected a [poset], [module] or [coupling] section in " + source);
    }
  }
}

inline void load_file(Workspace& ws, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  load(ws, in, path);
}

inline void save_poset(std::ostream& os, const std::string& name, const Poset& p,
                       const MetricSpec::Kind kind) {
  os << "[poset] " << name << "\n";
  os << "elements";
  for (auto& nm : p.names) os << " " << nm;
  os << "\n";
  for (auto& [a, b] : p.covers) os << "cover " << p.names[size_t(a)] << " " << p.names[size_t(b)] << "\n";
  switch (kind) {
    case MetricSpec::HassePath: os << "metric hasse_path\n"; break;
    case MetricSpec::LinfProduct: os << "metric linf_product\n"; break;
    case MetricSpec::Explicit:
      os << "metric explicit\n";
      for (int a = 0; a < p.size(); ++a)
        for (int b = a + 1; b < p.size(); ++b)
          if (!p.dist(a, b).inf)
            os << "d " << p.names[size_t(a)] << " " << p.names[size_t(b)] << " "
               << p.dist(a, b).str() << "\n";
      break;
  }
}

inline void save_module(std::ostream& os, const NamedModule& nm) {
  os << "[module] " << nm.name << " @ " << nm.poset_name << "\n";
  const Poset& p = *nm.module.poset;
  if (nm.parts) {
    for (auto& gi : *nm.parts) {
      os << "interval";
      for (int x : gi.min_antichain) os << " " << p.names[size_t(x)];
      os << " :";
      for (int x : gi.max_antichain) os << " " << p.names[size_t(x)];
      os << "\n";
    }
    return;
  }
  for (int x = 0; x < p.size(); ++x)
    if (nm.module.dim(x) > 0) os << "dim " << p.names[size_t(x)] << " " << nm.module.dim(x) << "\n";
  for (size_t ai = 0; ai < p.covers.size(); ++ai) {
    const Mat& m = nm.module.arrow_maps[ai];
    if (m.rows() == 0 || m.cols() == 0 || mat_is_zero(m)) continue;
    auto [a, b] = p.covers[ai];
    os << "map " << p.names[size_t(a)] << " " << p.names[size_t(b)] << " :";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r > 0) os << " /";
      for (Eigen::Index c = 0; c < m.cols(); ++c) os << " " << m(r, c).lifted();
    }
    os << "\n";
  }
}

inline void save_coupling(std::ostream& os, const Workspace& ws, const NamedCoupling& nc) {
  os << "[coupling] " << nc.name << " : " << nc.m_name << " " << nc.n_name << "\n";
  os << "apex " << nc.apex_name << "\n";
  const Poset& apex = *nc.coupling.apex;
  const Poset& base = *nc.coupling.left.f.dst;
  auto emit_map = [&](const char* key, const MonotoneMap& f) {
    os << key;
    for (int x = 0; x < f.src->size(); ++x)
      os << " " << f.src->names[size_t(x)] << ":" << f.dst->names[size_t(f(x))];
    os << "\n";
  };
  emit_map("f", nc.coupling.left.f);
  emit_map("g", nc.coupling.left.g);
  emit_map("h", nc.coupling.right.f);
  emit_map("i", nc.coupling.right.g);
  // gamma is saved as a named module elsewhere; find its name
  for (auto& [name, nm] : ws.modules)
    if (nm.poset_name == nc.apex_name && nm.module == nc.coupling.gamma) {
      os << "gamma " << name << "\n";
      return;
    }
  (void)apex;
  (void)base;
  throw std::logic_error("apex module of coupling " + nc.name + " is not a named module");
}

/// Canonical dump of the whole workspace, in load order.
inline void save(std::ostream& os, const Workspace& ws) {
  bool first = true;
  // metric kinds are not stored; re-derive the closest declaration
  auto metric_kind = [&](const Poset& p) {
    // try hasse_path first, then linf_product, else explicit
    for (auto probe : {MetricSpec::HassePath, MetricSpec::LinfProduct}) {
      try {
        std::vector<std::pair<std::string, std::string>> cov;
        for (auto& [a, b] : p.covers) cov.emplace_back(p.names[size_t(a)], p.names[size_t(b)]);
        MetricSpec ms;
        ms.kind = probe;
        PosetPtr q = from_covers(p.names, cov, ms);
        if (same_poset(p, *q)) return probe;
      } catch (const std::exception&) {
      }
    }
    return MetricSpec::Explicit;
  };
  for (auto& name : ws.poset_order) {
    if (!first) os << "\n";
    first = false;
    save_poset(os, name, *ws.posets.at(name), metric_kind(*ws.posets.at(name)));
  }
  for (auto& name : ws.module_order) {
    if (!first) os << "\n";
    first = false;
    save_module(os, ws.modules.at(name));
  }
  for (auto& name : ws.coupling_order) {
    if (!first) os << "\n";
    first = false;
    save_coupling(os, ws, ws.couplings.at(name));
  }
}

}  // namespace pmod

#ifndef TABULAR_IO_HPP
#define TABULAR_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tabular/cellmods.hpp"
#include "tabular/cells.hpp"
#include "tabular/coxeter.hpp"
#include "tabular/hecke.hpp"
#include "tabular/structure_table.hpp"
#include "tabular/table_algebra.hpp"
#include "tabular/tabular.hpp"

namespace tabular {
namespace io {

using nlohmann::json;

// Canonical emission: keys sorted (json objects are map-backed), two-space
// indentation, trailing newline.  Emitting, parsing and emitting again is
// byte-stable.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw validation_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write file: " + path);
  out << canonical_dump(j);
}

// --- Laurent polynomials: sorted [exponent, coefficient] pairs ------------

inline json poly_to_json(const LaurentPoly& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) {
    json pair = json::array();
    pair.push_back(e);
    // numbers up to 2^53 stay numeric; larger coefficients use strings
    if (c <= Int(9007199254740991ll) && c >= Int(-9007199254740991ll))
      pair.push_back(static_cast<std::int64_t>(c));
    else
      pair.push_back(c.str());
    arr.push_back(std::move(pair));
  }
  return arr;
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw validation_error("expected an integer or integer string");
}

inline LaurentPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw validation_error("polynomial must be an array");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw validation_error("polynomial term must be [exponent, coefficient]");
    terms.emplace_back(pair[0].get<int>(), int_from_json(pair[1]));
  }
  return LaurentPoly::from_terms(std::move(terms));
}

// --- Structure tables ------------------------------------------------------

inline json table_to_json(const StructureTable& t) {
  json j;
  j["kind"] = "constants";
  j["basis"] = t.labels;
  j["complete"] = t.complete;
  json unit = json::array();
  for (int e : t.unit) unit.push_back(t.labels[e]);
  j["unit"] = unit;
  if (!t.star.empty()) {
    json star;
    for (int i = 0; i < t.size(); ++i) star[t.labels[i]] = t.labels[t.star[i]];
    j["star"] = star;
  }
  if (!t.tau.empty()) {
    json tau;
    for (int i = 0; i < t.size(); ++i) tau[t.labels[i]] = poly_to_json(t.tau[i]);
    j["tau"] = tau;
  }
  if (!t.weight.empty()) {
    json w;
    for (int i = 0; i < t.size(); ++i) w[t.labels[i]] = t.weight[i];
    j["weight"] = w;
  }
  if (t.horizon_bound >= 0) j["horizon"] = t.horizon_bound;
  // known pairs sorted by (x label, y label)
  std::vector<std::pair<std::pair<std::string, std::string>, const StructureTable::Row*>> rows;
  t.for_each_known_pair([&](int x, int y, const StructureTable::Row& r) {
    rows.push_back({{t.labels[x], t.labels[y]}, &r});
  });
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  json constants = json::array();
  for (const auto& [key, row] : rows) {
    json entry;
    entry["x"] = key.first;
    entry["y"] = key.second;
    std::vector<std::pair<std::string, const LaurentPoly*>> terms;
    for (const auto& [z, pi] : *row)
      terms.push_back({t.labels[z], &t.pool[pi]});
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json jterms = json::array();
    for (const auto& [zl, p] : terms) {
      json term = json::array();
      term.push_back(zl);
      term.push_back(poly_to_json(*p));
      jterms.push_back(std::move(term));
    }
    entry["terms"] = std::move(jterms);
    constants.push_back(std::move(entry));
  }
  j["constants"] = std::move(constants);
  return j;
}

inline StructureTable table_from_json(const json& j) {
  StructureTable t;
  if (!j.contains("basis") || !j["basis"].is_array())
    throw validation_error("constants file needs a basis array");
  t.set_labels(j["basis"].get<std::vector<std::string>>());
  t.complete = j.value("complete", true);
  if (j.contains("unit"))
    for (const auto& l : j["unit"])
      t.unit.push_back(t.label_index(l.get<std::string>()));
  if (j.contains("star")) {
    t.star.assign(t.size(), -1);
    for (auto it = j["star"].begin(); it != j["star"].end(); ++it)
      t.star[t.label_index(it.key())] =
          t.label_index(it.value().get<std::string>());
    for (int i = 0; i < t.size(); ++i)
      if (t.star[i] < 0 || t.star[t.star[i]] != i)
        throw validation_error("star permutation is not an involution");
  }
  if (j.contains("tau")) {
    t.tau.assign(t.size(), LaurentPoly());
    for (auto it = j["tau"].begin(); it != j["tau"].end(); ++it)
      t.tau[t.label_index(it.key())] = poly_from_json(it.value());
  }
  if (j.contains("weight")) {
    t.weight.assign(t.size(), 0);
    for (auto it = j["weight"].begin(); it != j["weight"].end(); ++it)
      t.weight[t.label_index(it.key())] = it.value().get<int>();
  }
  t.horizon_bound = j.value("horizon", -1);
  for (const auto& entry : j.value("constants", json::array())) {
    int x = t.label_index(entry.at("x").get<std::string>());
    int y = t.label_index(entry.at("y").get<std::string>());
    std::map<int, LaurentPoly> row;
    for (const auto& term : entry.at("terms"))
      row[t.label_index(term.at(0).get<std::string>())] =
          poly_from_json(term.at(1));
    t.set_row_from_map(x, y, row);
  }
  t.release_intern_cache();
  return t;
}

// --- Hecke descriptors ------------------------------------------------------

struct HeckeDescriptor {
  std::string family;  // "A", "affA", "matrix"
  int n = 0;
  bool extended = false;
  int horizon = -1;
  std::optional<CoxeterMatrix> matrix;
};

inline json hecke_to_json(const HeckeDescriptor& h) {
  json j;
  j["kind"] = "hecke";
  j["family"] = h.family;
  j["n"] = h.n;
  j["extended"] = h.extended;
  j["horizon"] = h.horizon;
  if (h.matrix) {
    json m = json::array();
    for (int i = 0; i < h.matrix->rank; ++i) {
      json row = json::array();
      for (int k = 0; k < h.matrix->rank; ++k) row.push_back((*h.matrix)(i, k));
      m.push_back(std::move(row));
    }
    j["matrix"] = std::move(m);
  }
  return j;
}

inline HeckeDescriptor hecke_from_json(const json& j) {
  HeckeDescriptor h;
  h.family = j.at("family").get<std::string>();
  h.n = j.value("n", 0);
  h.extended = j.value("extended", false);
  h.horizon = j.value("horizon", -1);
  if (j.contains("matrix")) {
    CoxeterMatrix m;
    auto rows = j["matrix"];
    m.rank = static_cast<int>(rows.size());
    for (const auto& row : rows)
      for (const auto& e : row) m.entries.push_back(e.get<int>());
    m.validate();
    h.matrix = std::move(m);
  }
  if (h.family != "A" && h.family != "affA" && h.family != "matrix")
    throw validation_error("unknown family: " + h.family);
  if (h.family == "matrix" && !h.matrix)
    throw validation_error("family \"matrix\" needs a Coxeter matrix");
  return h;
}

/// A loaded algebra: the table, plus the Hecke context when it was built
/// from a descriptor.
struct LoadedAlgebra {
  StructureTable table;
  std::optional<HeckeDescriptor> descriptor;
  std::shared_ptr<GroupHorizon> horizon;
  std::shared_ptr<HeckeAlgebra> algebra;
};

inline LoadedAlgebra build_hecke(const HeckeDescriptor& h, std::size_t cap) {
  LoadedAlgebra out;
  out.descriptor = h;
  CoxeterPresentation p;
  if (h.family == "A") {
    if (h.extended) throw validation_error("finite A has no omega extension");
    p = CoxeterPresentation::finite_a(h.n);
  } else if (h.family == "affA") {
    p = CoxeterPresentation::affine_a(h.n, h.extended);
    if (h.horizon < 0)
      throw validation_error("affine families need a horizon bound");
  } else {
    p = CoxeterPresentation::from_matrix(*h.matrix, cap);
  }
  out.horizon = std::make_shared<GroupHorizon>(p, h.horizon, cap);
  out.algebra = std::make_shared<HeckeAlgebra>(out.horizon);
  out.table = out.algebra->kl_structure_constants();
  return out;
}

inline LoadedAlgebra load_algebra(const json& j, std::size_t cap) {
  std::string kind = j.value("kind", "constants");
  if (kind == "hecke") return build_hecke(hecke_from_json(j), cap);
  if (kind != "constants")
    throw validation_error("unknown algebra kind: " + kind);
  LoadedAlgebra out;
  out.table = table_from_json(j);
  return out;
}

// --- Table algebras (Gamma blocks in datum files) ---------------------------

inline json table_algebra_to_json(const TableAlgebra& g) {
  json j;
  j["basis"] = g.labels;
  j["complete"] = g.complete;
  if (g.unit >= 0) j["unit"] = g.labels[g.unit];
  if (g.bar) {
    json bar;
    for (int i = 0; i < g.size(); ++i) bar[g.labels[i]] = g.labels[(*g.bar)[i]];
    j["bar"] = bar;
  }
  std::vector<std::pair<std::pair<std::string, std::string>, const TableAlgebra::Row*>> rows;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      if (const auto* r = g.row_if_known(x, y); r && g.state(x, y) == TableAlgebra::PairState::Known)
        rows.push_back({{g.labels[x], g.labels[y]}, r});
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  json constants = json::array();
  for (const auto& [key, row] : rows) {
    json entry;
    entry["x"] = key.first;
    entry["y"] = key.second;
    std::vector<std::pair<std::string, const Int*>> terms;
    for (const auto& [z, c] : *row) terms.push_back({g.labels[z], &c});
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json jterms = json::array();
    for (const auto& [zl, c] : terms) {
      json term = json::array();
      term.push_back(zl);
      if (*c <= Int(9007199254740991ll) && *c >= Int(-9007199254740991ll))
        term.push_back(static_cast<std::int64_t>(*c));
      else
        term.push_back(c->str());
      jterms.push_back(std::move(term));
    }
    entry["terms"] = std::move(jterms);
    constants.push_back(std::move(entry));
  }
  j["constants"] = std::move(constants);
  return j;
}

inline TableAlgebra table_algebra_from_json(const json& j) {
  TableAlgebra g;
  g.set_labels(j.at("basis").get<std::vector<std::string>>());
  g.complete = j.value("complete", true);
  if (j.contains("unit")) g.unit = g.label_index(j["unit"].get<std::string>());
  if (j.contains("bar")) {
    std::vector<int> bar(g.size(), -1);
    for (auto it = j["bar"].begin(); it != j["bar"].end(); ++it)
      bar[g.label_index(it.key())] = g.label_index(it.value().get<std::string>());
    g.bar = bar;
  }
  for (const auto& entry : j.value("constants", json::array())) {
    int x = g.label_index(entry.at("x").get<std::string>());
    int y = g.label_index(entry.at("y").get<std::string>());
    TableAlgebra::Row row;
    for (const auto& term : entry.at("terms")) {
      Int c = int_from_json(term.at(1));
      if (c != 0) row.emplace_back(g.label_index(term.at(0).get<std::string>()), c);
    }
    std::sort(row.begin(), row.end());
    g.set_row(x, y, std::move(row));
  }
  return g;
}

// --- Table datum files -------------------------------------------------------

inline json datum_to_json(const StructureTable& t, const TableDatum& d) {
  json j;
  json lambdas = json::array();
  for (const auto& le : d.lambdas) {
    json l;
    l["name"] = le.name;
    l["gamma"] = table_algebra_to_json(le.gamma);
    l["M"] = le.m_labels;
    json cmap = json::array();
    for (const auto& [coord, x] : le.c_map) {
      json c = json::array();
      c.push_back(le.m_labels[coord[0]]);
      c.push_back(le.gamma.labels[coord[1]]);
      c.push_back(le.m_labels[coord[2]]);
      c.push_back(t.labels[x]);
      cmap.push_back(std::move(c));
    }
    l["C"] = std::move(cmap);
    lambdas.push_back(std::move(l));
  }
  j["lambdas"] = std::move(lambdas);
  json covers = json::array();
  for (auto [lo, hi] : d.covers) {
    json c = json::array();
    c.push_back(d.lambdas[lo].name);
    c.push_back(d.lambdas[hi].name);
    covers.push_back(std::move(c));
  }
  j["covers"] = std::move(covers);
  json star;
  for (int i = 0; i < t.size(); ++i) star[t.labels[i]] = t.labels[d.star[i]];
  j["star"] = star;
  return j;
}

inline TableDatum datum_from_json(const json& j, const StructureTable& t) {
  TableDatum d;
  for (const auto& l : j.at("lambdas")) {
    TableDatum::LambdaEntry le;
    le.name = l.at("name").get<std::string>();
    le.gamma = table_algebra_from_json(l.at("gamma"));
    le.m_labels = l.at("M").get<std::vector<std::string>>();
    auto m_index = [&](const std::string& s) {
      for (std::size_t i = 0; i < le.m_labels.size(); ++i)
        if (le.m_labels[i] == s) return static_cast<int>(i);
      throw validation_error("unknown M label " + s + " in lambda " + le.name);
    };
    for (const auto& c : l.value("C", json::array())) {
      int S = m_index(c.at(0).get<std::string>());
      int b = le.gamma.label_index(c.at(1).get<std::string>());
      int T = m_index(c.at(2).get<std::string>());
      int x = t.label_index(c.at(3).get<std::string>());
      if (!le.c_map.emplace(std::array<int, 3>{S, b, T}, x).second)
        throw validation_error("duplicate C triple in lambda " + le.name);
    }
    d.lambdas.push_back(std::move(le));
  }
  for (const auto& c : j.value("covers", json::array()))
    d.covers.emplace_back(d.lambda_index(c.at(0).get<std::string>()),
                          d.lambda_index(c.at(1).get<std::string>()));
  if (j.contains("star")) {
    d.star.assign(t.size(), -1);
    for (auto it = j["star"].begin(); it != j["star"].end(); ++it)
      d.star[t.label_index(it.key())] =
          t.label_index(it.value().get<std::string>());
  }
  d.finalize(t);
  return d;
}

// --- Cell reports ------------------------------------------------------------

inline json cells_to_json(const StructureTable& t, const CellDecomposition& c,
                          const AFunctionTable& a) {
  json j;
  auto flavor = [&](const CellDecomposition::Flavor& f) {
    json out;
    json cell_of;
    for (int i = 0; i < t.size(); ++i) cell_of[t.labels[i]] = f.cell_of[i];
    out["cell_of"] = cell_of;
    out["cell_count"] = f.cell_count();
    json edges = json::array();
    for (auto [u, l] : f.dag_edges) {
      json e = json::array();
      e.push_back(u);
      e.push_back(l);
      edges.push_back(std::move(e));
    }
    out["dag_edges"] = std::move(edges);
    return out;
  };
  j["left"] = flavor(c.left);
  j["right"] = flavor(c.right);
  j["two_sided"] = flavor(c.two_sided);
  j["exact"] = c.exact;
  json af;
  for (int i = 0; i < t.size(); ++i) {
    json e;
    e["certified"] = a.entries[i].certified;
    if (a.entries[i].has_value) e["a"] = a.entries[i].a;
    af[t.labels[i]] = std::move(e);
  }
  j["a_function"] = std::move(af);
  return j;
}

// --- Gamma representation files -----------------------------------------------

inline json representation_to_json(const TableAlgebra& g,
                                   const GammaRepresentation& rep) {
  json j;
  j["field"] = rep.field.name();
  j["dim"] = rep.dim;
  json act;
  for (int b = 0; b < g.size(); ++b) {
    json m = json::array();
    for (int i = 0; i < rep.dim; ++i) {
      json row = json::array();
      for (int k = 0; k < rep.dim; ++k)
        row.push_back(rep.action[b].at(i, k).to_string());
      m.push_back(std::move(row));
    }
    act[g.labels[b]] = std::move(m);
  }
  j["action"] = std::move(act);
  return j;
}

inline FieldScalar scalar_from_json(const Field& f, const json& j) {
  if (j.is_number_integer())
    return FieldScalar::from_int(f, Int(j.get<std::int64_t>()));
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return FieldScalar(f, Rational(Int(s)));
  return FieldScalar(f, Rational(Int(s.substr(0, slash)),
                                 Int(s.substr(slash + 1))));
}

inline GammaRepresentation representation_from_json(const TableAlgebra& g,
                                                    const json& j) {
  GammaRepresentation rep;
  std::string fname = j.at("field").get<std::string>();
  rep.field = fname == "Q" ? Field::rationals()
                           : Field::prime(std::stoll(fname.substr(1)));
  rep.dim = j.at("dim").get<int>();
  rep.action.assign(g.size(),
                    FieldMatrix(rep.dim, rep.dim, FieldScalar::zero(rep.field)));
  for (auto it = j.at("action").begin(); it != j.at("action").end(); ++it) {
    int b = g.label_index(it.key());
    const auto& rows = it.value();
    for (int i = 0; i < rep.dim; ++i)
      for (int k = 0; k < rep.dim; ++k)
        rep.action[b].at(i, k) = scalar_from_json(rep.field, rows.at(i).at(k));
  }
  return rep;
}

}  // namespace io
}  // namespace tabular

#endif

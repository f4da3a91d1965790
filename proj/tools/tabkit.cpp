// tabkit: exact computations with based algebras carrying distinguished
// bases: Kazhdan-Lusztig structure tables, cells, asymptotic blocks, table
// datum verification, cell-ideal quotients and standard modules.

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tabular/io.hpp"

using namespace tabular;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAxiomFailure = 2;
constexpr int kExitValidation = 3;
constexpr int kExitHorizon = 4;
constexpr int kExitPartialWithoutFlag = 5;

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("TABKIT_ENUM_CAP")) {
    long long v = std::atoll(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return detail::kDefaultEnumerationCap;
}

struct Pipeline {
  io::LoadedAlgebra loaded;
  PreorderGraphs graphs;
  CellDecomposition cells;
  AFunctionTable a;
  GammaTable gamma;
  std::vector<int> d_set;
};

Pipeline run_pipeline(const io::json& alg_json, int safety_margin = 0) {
  Pipeline p;
  p.loaded = io::load_algebra(alg_json, enumeration_cap());
  p.graphs = preorder_graphs(p.loaded.table);
  p.cells = cell_decomposition(p.loaded.table, p.graphs);
  p.a = a_function(p.loaded.table, p.cells, safety_margin);
  p.gamma = gamma_table(p.loaded.table, p.a);
  if (p.loaded.algebra)
    p.d_set = distinguished_involutions(*p.loaded.algebra, p.a).members;
  else if (!p.loaded.table.star.empty()) {
    // generic tables: star-fixed elements whose trace attains v^{-a}
    const auto& t = p.loaded.table;
    if (!t.tau.empty())
      for (int i = 0; i < t.size(); ++i)
        if (t.star[i] == i && p.a.certified(i) && !t.tau[i].is_zero() &&
            t.tau[i].degree() == -p.a.value(i) &&
            t.tau[i].coeff(-p.a.value(i)) == 1)
          p.d_set.push_back(i);
  }
  return p;
}

std::string cells_summary(const Pipeline& p) {
  std::ostringstream os;
  os << "basis: " << p.loaded.table.labels.size()
     << (p.loaded.table.complete ? " (complete)" : " (horizon-bounded)")
     << "\n";
  os << "two-sided cells: " << p.cells.two_sided.cell_count()
     << ", left cells: " << p.cells.left.cell_count()
     << ", right cells: " << p.cells.right.cell_count() << "\n";
  int cert = 0;
  std::set<int> values;
  for (int i = 0; i < p.loaded.table.size(); ++i)
    if (p.a.certified(i)) {
      ++cert;
      values.insert(p.a.value(i));
    }
  os << "a-function: " << cert << "/" << p.loaded.table.size()
     << " certified, values {";
  bool first = true;
  for (int v : values) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  os << "}";
  return os.str();
}

// in-horizon product coverage: pairs with weight(x)+weight(y) <= bound must
// all be certified; extra certified pairs are a bonus
struct Coverage {
  long in_horizon = 0, in_horizon_known = 0, total_known = 0, total = 0;
  double in_horizon_share() const {
    return in_horizon == 0 ? 1.0
                           : static_cast<double>(in_horizon_known) / in_horizon;
  }
};

Coverage product_coverage(const StructureTable& t) {
  Coverage c;
  const bool weighted = !t.weight.empty() && t.horizon_bound >= 0;
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      ++c.total;
      bool known = t.known(x, y);
      if (known) ++c.total_known;
      if (!weighted || t.weight[x] + t.weight[y] <= t.horizon_bound) {
        ++c.in_horizon;
        if (known) ++c.in_horizon_known;
      }
    }
  return c;
}

int cmd_kl(const std::string& family, int n, bool extended, int horizon,
           const std::string& matrix_file, const std::string& out,
           const std::string& datum_out, const std::string& cells_out) {
  io::HeckeDescriptor desc;
  desc.family = family;
  desc.n = n;
  desc.extended = extended;
  desc.horizon = horizon;
  if (!matrix_file.empty()) {
    io::json mj = io::parse_file(matrix_file);
    io::json wrapper;
    wrapper["family"] = "matrix";
    wrapper["matrix"] = mj;
    wrapper["horizon"] = horizon;
    desc = io::hecke_from_json(wrapper);
    desc.horizon = horizon;
  }
  Pipeline p = run_pipeline(io::hecke_to_json(desc));
  if (!out.empty()) io::write_file(out, io::table_to_json(p.loaded.table));
  if (!cells_out.empty())
    io::write_file(cells_out, io::cells_to_json(p.loaded.table, p.cells, p.a));
  if (!datum_out.empty()) {
    auto nat = build_natural_datum(p.loaded.table, p.cells, p.gamma, p.d_set);
    io::write_file(datum_out, io::datum_to_json(p.loaded.table, nat.datum));
    std::cout << "datum coverage: " << nat.datum.coverage() << "\n";
  }
  std::cout << cells_summary(p) << "\n";
  auto cov = product_coverage(p.loaded.table);
  std::cout << "products: " << cov.total_known << "/" << cov.total
            << " known; in-horizon coverage " << cov.in_horizon_share() * 100
            << "%\n";
  return kExitOk;
}

int cmd_cells(const std::string& alg, const std::string& out) {
  Pipeline p = run_pipeline(io::parse_file(alg));
  if (!out.empty())
    io::write_file(out, io::cells_to_json(p.loaded.table, p.cells, p.a));
  std::cout << cells_summary(p) << "\n";
  return kExitOk;
}

int cmd_asymptotic(const std::string& alg, const std::string& out,
                   const std::string& report_out) {
  Pipeline p = run_pipeline(io::parse_file(alg));
  AsymptoticAlgebra J =
      build_asymptotic(p.loaded.table, p.cells, p.gamma, p.d_set);
  auto rep = verify_based_ring(p.loaded.table, p.cells, p.gamma, J);

  // export the certified blocks as one integer-constants table
  StructureTable jt;
  std::vector<std::string> labels;
  std::vector<int> amb;
  for (const auto& b : J.blocks)
    for (int x : b.members) {
      labels.push_back(p.loaded.table.labels[x]);
      amb.push_back(x);
    }
  std::vector<int> pos(p.loaded.table.size(), -1);
  for (std::size_t k = 0; k < amb.size(); ++k) pos[amb[k]] = static_cast<int>(k);
  jt.set_labels(std::move(labels));
  jt.complete = p.loaded.table.complete;
  for (int d : p.d_set)
    if (pos[d] >= 0) jt.unit.push_back(pos[d]);
  if (!p.loaded.table.star.empty()) {
    jt.star.assign(amb.size(), -1);
    bool star_ok = true;
    for (std::size_t k = 0; k < amb.size(); ++k) {
      int s = p.loaded.table.star[amb[k]];
      if (pos[s] < 0) { star_ok = false; break; }
      jt.star[k] = pos[s];
    }
    if (!star_ok) jt.star.clear();
  }
  for (const auto& b : J.blocks)
    for (int x : b.members)
      for (int y : b.members) {
        const auto* row =
            b.algebra.row_if_known(b.position.at(x), b.position.at(y));
        if (!row) continue;
        if (!b.algebra.complete &&
            b.algebra.state(b.position.at(x), b.position.at(y)) !=
                TableAlgebra::PairState::Known)
          continue;
        std::map<int, LaurentPoly> r;
        for (const auto& [zp, g] : *row)
          r.emplace(pos[b.members[zp]], LaurentPoly(g));
        jt.set_row_from_map(pos[x], pos[y], r);
      }
  // cross-block products of certified members are zero
  for (std::size_t bi = 0; bi < J.blocks.size(); ++bi)
    for (std::size_t bj = 0; bj < J.blocks.size(); ++bj) {
      if (bi == bj) continue;
      for (int x : J.blocks[bi].members)
        for (int y : J.blocks[bj].members)
          if (p.loaded.table.known(x, y))
            jt.set_row(pos[x], pos[y], {});
    }
  jt.release_intern_cache();
  if (!out.empty()) io::write_file(out, io::table_to_json(jt));

  std::ostringstream os;
  os << "blocks: " << J.blocks.size() << ", excluded (uncertified) elements: "
     << J.excluded.size() << "\n";
  os << "nonnegativity: " << (rep.nonnegative ? "pass" : "FAIL") << "\n";
  os << "unit identity: verified " << rep.unit_verified << ", failed "
     << rep.unit_failed << ", unknown " << rep.unit_unknown << "\n";
  os << "gamma symmetries: " << rep.symmetry_checked << " checked, "
     << rep.symmetry_failed << " failed\n";
  os << "block diagonality violations: " << rep.diagonality_violations.size();
  std::cout << os.str() << "\n";
  if (!report_out.empty()) {
    io::json rj;
    rj["blocks"] = J.blocks.size();
    rj["excluded"] = J.excluded.size();
    rj["nonnegative"] = rep.nonnegative;
    rj["unit_verified"] = rep.unit_verified;
    rj["unit_failed"] = rep.unit_failed;
    rj["unit_unknown"] = rep.unit_unknown;
    rj["symmetry_checked"] = rep.symmetry_checked;
    rj["symmetry_failed"] = rep.symmetry_failed;
    rj["diagonality_violations"] = rep.diagonality_violations;
    io::write_file(report_out, rj);
  }
  return rep.ok() ? kExitOk : kExitAxiomFailure;
}

int cmd_verify_tabular(const std::string& alg, const std::string& datum,
                       bool allow_partial, const std::string& report_out) {
  Pipeline p = run_pipeline(io::parse_file(alg));
  TableDatum d = io::datum_from_json(io::parse_file(datum), p.loaded.table);
  auto rep = verify_tabular_axioms(p.loaded.table, d, p.cells, p.a);
  std::cout << rep.summary() << "\n";
  if (!report_out.empty()) {
    io::json rj;
    auto ax = [&](const char* name, const TabularAxiomReport::Axiom& a) {
      io::json x;
      x["status"] = a.status_name();
      x["tested"] = a.tested;
      x["untested"] = a.untested;
      if (!a.witness.empty()) x["witness"] = a.witness;
      rj[name] = std::move(x);
    };
    ax("A1", rep.a1);
    ax("A2", rep.a2);
    ax("A3", rep.a3);
    ax("A4", rep.a4);
    ax("A5", rep.a5);
    rj["datum_coverage"] = rep.datum_coverage;
    auto cov = product_coverage(p.loaded.table);
    rj["product_coverage_in_horizon"] = cov.in_horizon_share();
    rj["products_known"] = cov.total_known;
    rj["products_total"] = cov.total;
    io::write_file(report_out, rj);
  }
  if (rep.all_pass()) {
    std::cout << "verdict: all axioms pass\n";
    return kExitOk;
  }
  if (rep.pass_on_certified_region()) {
    std::cout << "verdict: PARTIAL (pass on certified region)\n";
    return allow_partial ? kExitOk : kExitPartialWithoutFlag;
  }
  std::cout << "verdict: axiom FAILURE\n";
  return kExitAxiomFailure;
}

int cmd_quotient(const std::string& alg, const std::string& datum,
                 const std::string& drop, const std::string& out_alg,
                 const std::string& out_datum) {
  Pipeline p = run_pipeline(io::parse_file(alg));
  TableDatum d = io::datum_from_json(io::parse_file(datum), p.loaded.table);
  std::set<int> down;
  std::stringstream ss(drop);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) down.insert(d.lambda_index(name));
  auto q = cell_ideal_and_quotient(p.loaded.table, d, down);
  std::cout << "dropped " << q.dropped.size() << " basis elements, "
            << q.survivors.size() << " survive\n";
  std::cout << "ideal closure: "
            << (q.ideal_closed ? "pass" : ("FAIL [" + q.closure_witness + "]"))
            << " (" << q.closure_checked << " products checked, "
            << q.closure_untested << " untested)\n";
  if (!q.ideal_closed) return kExitAxiomFailure;
  if (!out_alg.empty()) io::write_file(out_alg, io::table_to_json(q.table));
  if (!out_datum.empty())
    io::write_file(out_datum, io::datum_to_json(q.table, q.datum));
  return kExitOk;
}

int cmd_standard(const std::string& alg, const std::string& datum,
                 const std::string& lambda_name, const std::string& field_name,
                 const std::string& r_text, const std::string& rep_file,
                 const std::string& out) {
  Pipeline p = run_pipeline(io::parse_file(alg));
  TableDatum d = io::datum_from_json(io::parse_file(datum), p.loaded.table);
  int lambda = d.lambda_index(lambda_name);

  Field k = field_name == "Q" ? Field::rationals()
                              : Field::prime(std::stoll(field_name.substr(1)));
  Rational r_value;
  auto slash = r_text.find('/');
  if (slash == std::string::npos) r_value = Rational(Int(r_text));
  else
    r_value = Rational(Int(r_text.substr(0, slash)),
                       Int(r_text.substr(slash + 1)));

  AsymptoticAlgebra J =
      build_asymptotic(p.loaded.table, p.cells, p.gamma, p.d_set);
  const auto& block = J.block_for_cell(lambda);

  std::vector<GammaRepresentation> reps;
  if (!rep_file.empty()) {
    reps.push_back(io::representation_from_json(d.lambdas[lambda].gamma,
                                                io::parse_file(rep_file)));
    std::string err =
        check_gamma_representation(d.lambdas[lambda].gamma, reps.back());
    if (!err.empty())
      throw validation_error("supplied N fails the Gamma relations: " + err);
  } else {
    reps = gamma_simples(d.lambdas[lambda].gamma, k);
  }

  // generators: the length-one KL elements (plus omega) for Hecke input,
  // every basis element otherwise
  std::vector<int> gens;
  if (p.loaded.horizon) {
    for (int i = 0; i < p.loaded.table.size(); ++i)
      if (p.loaded.horizon->length(i) <= 1) gens.push_back(i);
  } else {
    for (int i = 0; i < p.loaded.table.size(); ++i) gens.push_back(i);
  }

  bool all_ok = true;
  io::json modules = io::json::array();
  for (const auto& N : reps) {
    StandardModule sm = standard_module(p.loaded.table, d, block, lambda, N, k,
                                        r_value, gens);
    std::cout << "lambda " << lambda_name << ", N(" << N.name
              << "): dim " << sm.dim() << ", constructions "
              << (sm.constructions_agree ? "agree" : "DISAGREE")
              << (sm.partial ? " (partial)" : "") << "\n";
    all_ok = all_ok && sm.constructions_agree;
    io::json m;
    m["N"] = N.name;
    m["dim"] = sm.dim();
    m["constructions_agree"] = sm.constructions_agree;
    m["partial"] = sm.partial;
    io::json act;
    for (const auto& [a, mat] : sm.action) {
      io::json rows = io::json::array();
      for (int i = 0; i < mat.rows(); ++i) {
        io::json row = io::json::array();
        for (int j = 0; j < mat.cols(); ++j) row.push_back(mat.at(i, j).to_string());
        rows.push_back(std::move(row));
      }
      act[p.loaded.table.labels[a]] = std::move(rows);
    }
    m["action"] = std::move(act);
    modules.push_back(std::move(m));
  }
  if (!out.empty()) {
    io::json rj;
    rj["lambda"] = lambda_name;
    rj["field"] = k.name();
    rj["r"] = r_text;
    rj["modules"] = std::move(modules);
    io::write_file(out, rj);
  }
  return all_ok ? kExitOk : kExitAxiomFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tabkit: exact cell theory for based algebras"};
  app.require_subcommand(1);

  // kl
  auto* kl = app.add_subcommand("kl", "build a Kazhdan-Lusztig structure table");
  std::string family = "A", matrix_file, out, datum_out, cells_out;
  int n = 2, horizon = -1;
  bool extended = false;
  kl->add_option("--family", family, "A | affA | matrix");
  kl->add_option("--n", n, "rank (A) or strand count (affA)");
  kl->add_flag("--extended", extended, "extend by the rotation group (affA)");
  kl->add_option("--horizon", horizon, "length bound (required for affA)");
  kl->add_option("--matrix-file", matrix_file, "JSON Coxeter matrix");
  kl->add_option("--out", out, "structure table output");
  kl->add_option("--datum-out", datum_out, "natural table datum output");
  kl->add_option("--cells-out", cells_out, "cell report output");

  // cells
  auto* cells = app.add_subcommand("cells", "cell decomposition of a table");
  std::string c_alg, c_out;
  cells->add_option("--alg", c_alg, "algebra spec file")->required();
  cells->add_option("--out", c_out, "cell report output");

  // asymptotic
  auto* asym = app.add_subcommand("asymptotic", "asymptotic algebra blocks");
  std::string a_alg, a_out, a_report;
  asym->add_option("--alg", a_alg, "algebra spec file")->required();
  asym->add_option("--out", a_out, "asymptotic table output");
  asym->add_option("--report", a_report, "verification report output");

  // verify-tabular
  auto* ver = app.add_subcommand("verify-tabular", "check axioms (A1)-(A5)");
  std::string v_alg, v_datum, v_report;
  bool allow_partial = false;
  ver->add_option("--alg", v_alg, "algebra spec file")->required();
  ver->add_option("--datum", v_datum, "table datum file")->required();
  ver->add_flag("--allow-partial", allow_partial,
                "exit 0 when the certified region passes");
  ver->add_option("--report", v_report, "verification report output");

  // quotient
  auto* quo = app.add_subcommand("quotient", "quotient by a cell ideal");
  std::string q_alg, q_datum, q_drop, q_out_alg, q_out_datum;
  quo->add_option("--alg", q_alg, "algebra spec file")->required();
  quo->add_option("--datum", q_datum, "table datum file")->required();
  quo->add_option("--drop", q_drop, "comma-separated lambda names")->required();
  quo->add_option("--out-alg", q_out_alg, "quotient table output");
  quo->add_option("--out-datum", q_out_datum, "quotient datum output");

  // standard
  auto* stp = app.add_subcommand("standard", "standard modules");
  std::string s_alg, s_datum, s_lambda, s_field = "Q", s_r = "1", s_rep, s_out;
  stp->add_option("--alg", s_alg, "algebra spec file")->required();
  stp->add_option("--datum", s_datum, "table datum file")->required();
  stp->add_option("--lambda", s_lambda, "lambda name")->required();
  stp->add_option("--field", s_field, "Q or F<p>");
  stp->add_option("--r", s_r, "specialization point, e.g. 2 or 3/2");
  stp->add_option("--rep", s_rep, "Gamma representation file for N");
  stp->add_option("--out", s_out, "module report output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (kl->parsed())
      return cmd_kl(family, n, extended, horizon, matrix_file, out, datum_out,
                    cells_out);
    if (cells->parsed()) return cmd_cells(c_alg, c_out);
    if (asym->parsed()) return cmd_asymptotic(a_alg, a_out, a_report);
    if (ver->parsed())
      return cmd_verify_tabular(v_alg, v_datum, allow_partial, v_report);
    if (quo->parsed())
      return cmd_quotient(q_alg, q_datum, q_drop, q_out_alg, q_out_datum);
    if (stp->parsed())
      return cmd_standard(s_alg, s_datum, s_lambda, s_field, s_r, s_rep, s_out);
  } catch (const horizon_error& e) {
    std::cerr << "horizon overflow: " << e.what() << "\n";
    return kExitHorizon;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "s3_oracle.hpp"
#include "tabular/hecke.hpp"
#include "tabular/tabular.hpp"

using namespace tabular;

namespace {

struct Setup {
  std::shared_ptr<GroupHorizon> horizon;
  std::unique_ptr<HeckeAlgebra> algebra;
  StructureTable table;
  CellDecomposition cells;
  AFunctionTable a;
  GammaTable gamma;
  std::vector<int> d_set;
  NaturalDatumResult nat;
};

Setup make_setup(CoxeterPresentation p, int bound) {
  Setup s;
  s.horizon = std::make_shared<GroupHorizon>(p, bound);
  s.algebra = std::make_unique<HeckeAlgebra>(s.horizon);
  s.table = s.algebra->kl_structure_constants();
  auto graphs = preorder_graphs(s.table);
  s.cells = cell_decomposition(s.table, graphs);
  s.a = a_function(s.table, s.cells);
  s.gamma = gamma_table(s.table, s.a);
  s.d_set = distinguished_involutions(*s.algebra, s.a).members;
  s.nat = build_natural_datum(s.table, s.cells, s.gamma, s.d_set);
  return s;
}

const Setup& s3d() {
  static Setup s = make_setup(CoxeterPresentation::finite_a(2), -1);
  return s;
}

std::map<int, LaurentPoly> unit_vec(int i) {
  return {{i, LaurentPoly(1)}};
}

}  // namespace

TEST_CASE("natural datum for S3") {
  const auto& s = s3d();
  const auto& d = s.nat.datum;
  CHECK(s.nat.unmapped.empty());
  CHECK(d.coverage() == 1.0);
  REQUIRE(d.lambdas.size() == 3);
  std::multiset<std::size_t> m_sizes;
  for (const auto& le : d.lambdas) {
    m_sizes.insert(le.m_labels.size());
    CHECK(le.gamma.size() == 1);  // every corner ring of S3 is Z
  }
  CHECK(m_sizes == std::multiset<std::size_t>{1, 2, 1});

  // datum left/right/two-sided classes match the computed cells
  for (int x = 0; x < s.table.size(); ++x)
    for (int y = 0; y < s.table.size(); ++y) {
      bool same_lambda = d.lambda_of[x] == d.lambda_of[y];
      CHECK((s.cells.two_sided.cell_of[x] == s.cells.two_sided.cell_of[y]) ==
            same_lambda);
      bool same_left = same_lambda && d.coord_of[x][2] == d.coord_of[y][2];
      CHECK((s.cells.left.cell_of[x] == s.cells.left.cell_of[y]) == same_left);
      bool same_right = same_lambda && d.coord_of[x][0] == d.coord_of[y][0];
      CHECK((s.cells.right.cell_of[x] == s.cells.right.cell_of[y]) ==
            same_right);
    }
}

TEST_CASE("reduction modulo lower cells") {
  const auto& s = s3d();
  const auto& d = s.nat.datum;
  int w0 = s.table.label_index("1.2.1");
  int s1 = s.table.label_index("1");
  int middle = d.lambda_of[s1];
  int bottom = d.lambda_of[w0];
  // the w0 cell lies below the middle cell
  CHECK(reduce_mod_lower(d, unit_vec(w0), middle).empty());
  // reduction at the minimum lambda drops nothing
  auto vec = unit_vec(s1);
  vec.emplace(w0, LaurentPoly::v(2));
  CHECK(reduce_mod_lower(d, vec, bottom) == vec);
  // elements of the same cell survive
  CHECK(reduce_mod_lower(d, unit_vec(s1), middle) == unit_vec(s1));
}

TEST_CASE("r-coefficients on S3") {
  const auto& s = s3d();
  const auto& d = s.nat.datum;
  int s1 = s.table.label_index("1");
  int middle = d.lambda_of[s1];

  // unit: identity matrix over Gamma
  auto re = r_coefficients(s.table, d, s.table.label_index("e"), middle);
  CHECK_FALSE(re.partial);
  CHECK(re.consistent);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == j) {
        REQUIRE(re.r[i][j].size() == 1);
        CHECK(re.r[i][j].begin()->second.is_one());
      } else {
        CHECK(re.r[i][j].empty());
      }
    }

  // a = C_{s1}: the [[v+v^{-1}, 1], [0, 0]] pattern up to line numbering
  auto rs = r_coefficients(s.table, d, s1, middle);
  CHECK(rs.consistent);
  CHECK_FALSE(rs.partial);
  CHECK(rs.verified_instances > 0);
  const LaurentPoly vpv = LaurentPoly::v(1) + LaurentPoly::v(-1);
  // the line carrying s1 acts on itself by v+v^{-1}
  int line_s1 = d.coord_of[s1][0];
  REQUIRE(rs.r[line_s1][line_s1].size() == 1);
  CHECK(rs.r[line_s1][line_s1].begin()->second == vpv);
  int other = 1 - line_s1;
  REQUIRE(rs.r[line_s1][other].size() == 1);
  CHECK(rs.r[line_s1][other].begin()->second.is_one());
  CHECK(rs.r[other][line_s1].empty());
  CHECK(rs.r[other][other].empty());

  // a spanning a lower cell acts as zero
  auto rw = r_coefficients(s.table, d, s.table.label_index("1.2.1"), middle);
  CHECK(rw.consistent);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(rw.r[i][j].empty());
}

TEST_CASE("pairing on the S3 middle cell") {
  const auto& s = s3d();
  const auto& d = s.nat.datum;
  int s1 = s.table.label_index("1");
  int middle = d.lambda_of[s1];
  const LaurentPoly vpv = LaurentPoly::v(1) + LaurentPoly::v(-1);

  auto p11 = pairing(s.table, d, middle, 0, 0);
  REQUIRE(p11.known);
  CHECK(p11.consistent);
  REQUIRE(p11.coords.size() == 1);
  CHECK(p11.coords.begin()->second == vpv);

  // <T,T> has a v^{a} term on the unit coordinate
  for (int T = 0; T < 2; ++T) {
    auto p = pairing(s.table, d, middle, T, T);
    REQUIRE(p.known);
    auto it = p.coords.find(d.lambdas[middle].gamma.unit);
    REQUIRE(it != p.coords.end());
    CHECK(it->second.coeff(1) != 0);  // a(middle) = 1
  }

  auto p12 = pairing(s.table, d, middle, 0, 1);
  REQUIRE(p12.known);
  CHECK(p12.consistent);
}

TEST_CASE("tabular axioms pass on S3 with the natural datum") {
  const auto& s = s3d();
  auto rep = verify_tabular_axioms(s.table, s.nat.datum, s.cells, s.a);
  INFO(rep.summary());
  CHECK(rep.all_pass());
  CHECK(rep.a1.untested == 0);
  CHECK(rep.a3.untested == 0);
  CHECK(rep.datum_coverage == 1.0);
}

TEST_CASE("broken star fails (A2) with a witness") {
  Setup s = make_setup(CoxeterPresentation::finite_a(2), -1);
  auto d = s.nat.datum;
  int s1 = s.table.label_index("1");
  int s2 = s.table.label_index("2");
  d.star[s1] = s2;
  d.star[s2] = s1;
  auto rep = verify_tabular_axioms(s.table, d, s.cells, s.a);
  CHECK_FALSE(rep.a2.pass());
  CHECK_FALSE(rep.a2.witness.empty());
}

TEST_CASE("quotients by cell ideals") {
  const auto& s = s3d();
  const auto& d = s.nat.datum;
  int w0 = s.table.label_index("1.2.1");
  int bottom = d.lambda_of[w0];

  // empty down-set: quotient = original
  auto q0 = cell_ideal_and_quotient(s.table, d, {});
  CHECK(q0.table.size() == s.table.size());
  CHECK(q0.ideal_closed);
  CHECK(q0.datum.lambdas.size() == 3);

  // full Lambda: zero algebra
  auto qfull = cell_ideal_and_quotient(s.table, d, {0, 1, 2});
  CHECK(qfull.table.size() == 0);

  // dropping the minimum cell gives the 5-dimensional quotient
  auto q = cell_ideal_and_quotient(s.table, d, {bottom});
  CHECK(q.ideal_closed);
  CHECK(q.table.size() == 5);
  CHECK(q.dropped == std::vector<int>{w0});
  CHECK(q.table.complete);
  // the quotient table is associative and still has its unit
  auto [checked, failed] = q.table.check_associativity(100, 7);
  CHECK(checked == 100);
  CHECK(failed == 0);
  CHECK(q.table.check_unit_decomposition().empty());
  // quotient datum restricts Lambda
  CHECK(q.datum.lambdas.size() == 2);

  // axioms (A1)-(A4) still hold on the quotient with recomputed cells
  auto graphs = preorder_graphs(q.table);
  auto cells = cell_decomposition(q.table, graphs);
  auto a = a_function(q.table, cells);
  auto rep = verify_tabular_axioms(q.table, q.datum, cells, a);
  INFO(rep.summary());
  CHECK(rep.a1.pass());
  CHECK(rep.a2.pass());
  CHECK(rep.a3.pass());
  CHECK(rep.a4.pass());
  // the trace does not descend to the quotient; (A5) is skipped
  CHECK(rep.a5.status == TabularAxiomReport::Axiom::Status::Skipped);

  // a non-downward-closed set is rejected
  int ce = d.lambda_of[s.table.label_index("e")];
  CHECK_THROWS_AS(cell_ideal_and_quotient(s.table, d, {ce}), validation_error);
}

TEST_CASE("the two phi formulas agree through the datum") {
  const auto& s = s3d();
  const auto& d = s.nat.datum;
  AsymptoticAlgebra J = build_asymptotic(s.table, s.cells, s.gamma, s.d_set);
  for (std::size_t li = 0; li < d.lambdas.size(); ++li) {
    const auto& le = d.lambdas[li];
    const auto& block = J.block_for_cell(static_cast<int>(li));
    for (int x = 0; x < s.table.size(); ++x) {
      auto g_form = phi_lambda(s.table, block, x);
      REQUIRE_FALSE(g_form.partial);
      auto rc = r_coefficients(s.table, d, x, static_cast<int>(li));
      REQUIRE(rc.consistent);
      REQUIRE_FALSE(rc.partial);
      AsymptoticElement r_form;
      int m = static_cast<int>(le.m_labels.size());
      for (int Sp = 0; Sp < m; ++Sp)
        for (int S = 0; S < m; ++S)
          for (const auto& [b, poly] : rc.r[Sp][S]) {
            auto it = le.c_map.find({Sp, b, S});
            REQUIRE(it != le.c_map.end());
            auto& acc = r_form[block.position.at(it->second)];
            acc += poly;
            if (acc.is_zero()) r_form.erase(block.position.at(it->second));
          }
      CHECK(g_form.value == r_form);
    }
  }
}

TEST_CASE("affine natural datum at a short horizon") {
  Setup s = make_setup(CoxeterPresentation::affine_a(3, true), 6);
  const auto& d = s.nat.datum;
  CHECK(d.coverage() > 0.0);
  CHECK(d.coverage() < 1.0);
  CHECK_FALSE(s.nat.unmapped.empty());

  auto rep = verify_tabular_axioms(s.table, d, s.cells, s.a);
  INFO(rep.summary());
  CHECK(rep.pass_on_certified_region());
  CHECK(rep.a2.untested + rep.a3.untested + rep.a4.untested + rep.a5.untested >
        0);

  // mapped elements: datum classes match computed cells (Prop 4.1.1 shape)
  for (int x = 0; x < s.table.size(); ++x) {
    if (d.coord_of[x][0] < 0) continue;
    for (int y = 0; y < s.table.size(); ++y) {
      if (d.coord_of[y][0] < 0) continue;
      bool same_lambda = d.lambda_of[x] == d.lambda_of[y];
      CHECK((s.cells.two_sided.cell_of[x] == s.cells.two_sided.cell_of[y]) ==
            same_lambda);
      bool same_left = same_lambda && d.coord_of[x][2] == d.coord_of[y][2];
      CHECK((s.cells.left.cell_of[x] == s.cells.left.cell_of[y]) == same_left);
    }
  }
}

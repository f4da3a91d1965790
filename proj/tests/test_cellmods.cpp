#include <catch2/catch_amalgamated.hpp>

#include "s3_oracle.hpp"
#include "tabular/cellmods.hpp"
#include "tabular/hecke.hpp"

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
  AsymptoticAlgebra J;
  NaturalDatumResult nat;
  std::vector<int> all_gens;

  int middle_lambda() const {
    return nat.datum.lambda_of[table.label_index("1")];
  }
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
  s.J = build_asymptotic(s.table, s.cells, s.gamma, s.d_set);
  s.nat = build_natural_datum(s.table, s.cells, s.gamma, s.d_set);
  for (int i = 0; i < s.table.size(); ++i) s.all_gens.push_back(i);
  return s;
}

const Setup& s3m() {
  static Setup s = make_setup(CoxeterPresentation::finite_a(2), -1);
  return s;
}

const LaurentPoly vpv = LaurentPoly::v(1) + LaurentPoly::v(-1);

}  // namespace

TEST_CASE("cell modules of S3") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  int middle = s.middle_lambda();
  CellModule w = cell_module(s.table, d, middle, s.all_gens);
  CHECK_FALSE(w.partial);
  CHECK(w.dim() == 2);

  int s1 = s.table.label_index("1");
  const auto& m = w.action.at(s1);
  int line = d.coord_of[s1][0];
  CHECK(m.at(line, line) == vpv);
  CHECK(m.at(line, 1 - line).is_one());
  CHECK(m.at(1 - line, line).is_zero());
  CHECK(m.at(1 - line, 1 - line).is_zero());

  // unit acts as identity; lower-cell elements act as zero
  const auto& me = w.action.at(s.table.label_index("e"));
  CHECK(me.at(0, 0).is_one());
  CHECK(me.at(1, 1).is_one());
  CHECK(me.at(0, 1).is_zero());
  const auto& mw0 = w.action.at(s.table.label_index("1.2.1"));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(mw0.at(i, j).is_zero());

  // trivial cells give 1-dimensional modules
  int top = d.lambda_of[s.table.label_index("e")];
  CellModule we = cell_module(s.table, d, top, s.all_gens);
  CHECK(we.dim() == 1);
  CHECK(we.action.at(s.table.label_index("e")).at(0, 0).is_one());

  // module action is multiplicative against the structure constants
  for (int x = 0; x < s.table.size(); ++x)
    for (int y = 0; y < s.table.size(); ++y) {
      LaurentMatrix prod = w.action.at(x) * w.action.at(y);
      LaurentMatrix expect(w.dim(), w.dim());
      for (const auto& [z, pi] : s.table.row(x, y)) {
        const auto& mz = w.action.at(z);
        for (int i = 0; i < w.dim(); ++i)
          for (int j = 0; j < w.dim(); ++j)
            expect.at(i, j) += s.table.pool[pi] * mz.at(i, j);
      }
      CHECK(prod == expect);
    }
}

TEST_CASE("cell module from a left-cell basis matches") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  int middle = s.middle_lambda();
  CellModule w = cell_module(s.table, d, middle, s.all_gens);

  int s1 = s.table.label_index("1");
  BasisCellModule wb =
      cell_module_from_basis(s.table, s.cells, s1, s.all_gens);
  CHECK_FALSE(wb.partial);
  CHECK(wb.basis.size() == 2);
  CHECK(compare_cell_modules(s.table, d, w, wb).empty());

  // the trivial cells
  BasisCellModule we = cell_module_from_basis(
      s.table, s.cells, s.table.label_index("e"), s.all_gens);
  CHECK(we.basis.size() == 1);
  int w0 = s.table.label_index("1.2.1");
  BasisCellModule ww0 = cell_module_from_basis(s.table, s.cells, w0, s.all_gens);
  CHECK(ww0.basis.size() == 1);
  CHECK(ww0.action.at(w0).at(0, 0) == s.table.entry(w0, w0, w0));
}

TEST_CASE("the bimodule E(lambda) on the S3 middle cell") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  int middle = s.middle_lambda();
  const auto& block = s.J.block_for_cell(middle);
  CellBimodule e = e_bimodule(s.table, d, block, s.all_gens);
  CHECK_FALSE(e.partial);
  CHECK(e.basis.size() == 4);

  auto [checked, failed] = check_bimodule_commutation(e);
  CHECK(checked == 6 * 4);
  CHECK(failed == 0);

  // right action formula: t_x . t_y = delta_{V,S} t_{C(U, b'b, T)}
  const auto& le = d.lambdas[middle];
  for (int x : e.basis)
    for (int y : e.basis) {
      auto cx = d.coord_of[x], cy = d.coord_of[y];
      const auto* row = block.algebra.row_if_known(block.position.at(x),
                                                   block.position.at(y));
      REQUIRE(row != nullptr);
      std::map<int, Int> got;
      for (const auto& [zpos, g] : *row) got[block.members[zpos]] = g;
      std::map<int, Int> expect;
      if (cx[2] == cy[0]) {
        const auto* grow = le.gamma.row_if_known(cx[1], cy[1]);
        REQUIRE(grow != nullptr);
        for (const auto& [b2, kap] : *grow)
          expect[le.c_map.at({cx[0], b2, cy[2]})] = kap;
      }
      CHECK(got == expect);
    }

  // left module decomposes into |M| copies of W(lambda), one per column
  CellModule w = cell_module(s.table, d, middle, s.all_gens);
  for (int a : s.all_gens) {
    const auto& m = e.left_action.at(a);
    for (std::size_t i = 0; i < e.basis.size(); ++i)
      for (std::size_t j = 0; j < e.basis.size(); ++j) {
        auto ci = d.coord_of[e.basis[i]], cj = d.coord_of[e.basis[j]];
        if (ci[2] != cj[2]) {
          CHECK(m.at(static_cast<int>(i), static_cast<int>(j)).is_zero());
        } else {
          CHECK(m.at(static_cast<int>(i), static_cast<int>(j)) ==
                w.action.at(a).at(w.index(ci[0], ci[1]),
                                  w.index(cj[0], cj[1])));
        }
      }
  }
}

TEST_CASE("W' and theta") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  for (std::size_t li = 0; li < d.lambdas.size(); ++li) {
    const auto& block = s.J.block_for_cell(static_cast<int>(li));
    CellModule w = cell_module(s.table, d, static_cast<int>(li), s.all_gens);
    WPrimeModule wp =
        w_prime_module(s.table, d, block, static_cast<int>(li), s.all_gens);
    CHECK_FALSE(wp.partial);
    CHECK(check_theta(w, wp).empty());
  }
}

TEST_CASE("specialization of the middle cell module") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  int middle = s.middle_lambda();
  CellModule w = cell_module(s.table, d, middle, s.all_gens);
  int s1 = s.table.label_index("1");
  int line = d.coord_of[s1][0];

  auto sq = specialize_module(w, Field::rationals(), Rational(1));
  CHECK(sq.action.at(s1).at(line, line) ==
        FieldScalar(Field::rationals(), Rational(2)));

  auto sf = specialize_module(w, Field::prime(5), Rational(2));
  CHECK(sf.action.at(s1).at(line, line).is_zero());  // 2 + 2^{-1} = 0 in F_5

  // identity generator specializes to the identity matrix
  CHECK(sq.action.at(s.table.label_index("e")) ==
        field_identity(Field::rationals(), 2));
}

TEST_CASE("gamma simples") {
  // Gamma = Z: the single trivial character
  TableAlgebra z;
  z.set_labels({"1"});
  z.unit = 0;
  z.set_row(0, 0, {{0, Int(1)}});
  auto chars = gamma_simples(z, Field::rationals());
  REQUIRE(chars.size() == 1);
  CHECK(chars[0].action[0].at(0, 0).is_one());

  // Z[Z_2] over Q: two characters g -> +-1
  auto z2 = cyclic_group_algebra(2);
  auto c2 = gamma_simples(z2, Field::rationals());
  REQUIRE(c2.size() == 2);
  std::set<std::string> values;
  for (const auto& c : c2) values.insert(c.action[1].at(0, 0).to_string());
  CHECK(values == std::set<std::string>{"-1", "1"});

  // Z[Z_3] over F_7: the three cube roots of 1 are {1, 2, 4}
  auto z3 = cyclic_group_algebra(3);
  auto c3 = gamma_simples(z3, Field::prime(7));
  REQUIRE(c3.size() == 3);
  std::set<std::string> roots;
  for (const auto& c : c3) roots.insert(c.action[1].at(0, 0).to_string());
  CHECK(roots == std::set<std::string>{"1", "2", "4"});
  // brute-force oracle: cube roots of unity in F_7
  std::set<std::string> oracle;
  for (int x = 1; x < 7; ++x)
    if (x * x * x % 7 == 1) oracle.insert(std::to_string(x));
  CHECK(roots == oracle);

  // Z[Z_3] over Q does not split
  CHECK_THROWS_WITH(gamma_simples(z3, Field::rationals()),
                    Catch::Matchers::ContainsSubstring("supply N manually"));

  // a noncommutative algebra is rejected: the group algebra of S_3
  auto h = std::make_shared<GroupHorizon>(CoxeterPresentation::finite_a(2), -1);
  TableAlgebra zs3;
  std::vector<std::string> labels;
  for (int i = 0; i < 6; ++i) labels.push_back(h->label(i));
  zs3.set_labels(labels);
  zs3.unit = h->identity_index();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      GroupElement prod = h->element(i) * h->element(j);
      zs3.set_row(i, j, {{*h->index_of(prod), Int(1)}});
    }
  CHECK_THROWS_WITH(gamma_simples(zs3, Field::rationals()),
                    Catch::Matchers::ContainsSubstring("noncommutative"));
}

TEST_CASE("standard modules of S3") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  struct Spec { Field k; Rational r; };
  std::vector<Spec> specs{{Field::rationals(), Rational(1)},
                          {Field::rationals(), Rational(2)},
                          {Field::prime(5), Rational(2)}};
  for (std::size_t li = 0; li < d.lambdas.size(); ++li) {
    const auto& block = s.J.block_for_cell(static_cast<int>(li));
    for (const auto& spec : specs) {
      auto chars = gamma_simples(d.lambdas[li].gamma, spec.k);
      REQUIRE(chars.size() == 1);  // every Gamma of S3 is Z
      StandardModule sm =
          standard_module(s.table, d, block, static_cast<int>(li), chars[0],
                          spec.k, spec.r, s.all_gens);
      CHECK_FALSE(sm.partial);
      CHECK(sm.constructions_agree);
      CHECK(sm.dim() ==
            static_cast<int>(d.lambdas[li].m_labels.size()) * chars[0].dim);
      // with Gamma = Z and trivial N, the standard module is the specialized
      // cell module
      CellModule w = cell_module(s.table, d, static_cast<int>(li), s.all_gens);
      auto sw = specialize_module(w, spec.k, spec.r);
      for (int a : s.all_gens) CHECK(sm.action.at(a) == sw.action.at(a));
    }
  }
}

TEST_CASE("specialized modules satisfy the Hecke relations") {
  const auto& s = s3m();
  const auto& d = s.nat.datum;
  auto p = s.horizon->presentation();
  int g0 = *s.horizon->index_of(p.generator(0));
  int g1 = *s.horizon->index_of(p.generator(1));
  struct Spec { Field k; Rational r; };
  std::vector<Spec> specs{{Field::rationals(), Rational(1)},
                          {Field::rationals(), Rational(2)},
                          {Field::prime(5), Rational(2)}};
  for (std::size_t li = 0; li < d.lambdas.size(); ++li) {
    CellModule w = cell_module(s.table, d, static_cast<int>(li), s.all_gens);
    for (const auto& spec : specs) {
      auto sw = specialize_module(w, spec.k, spec.r);
      std::vector<FieldMatrix> gens{sw.action.at(g0), sw.action.at(g1)};
      FieldScalar r(spec.k, spec.r);
      CHECK(check_hecke_relations(p.matrix(), gens, std::nullopt, 1, r).empty());
    }
  }
  // corrupted generators fail
  CellModule w = cell_module(s.table, d, s.middle_lambda(), s.all_gens);
  auto sw = specialize_module(w, Field::rationals(), Rational(2));
  auto bad = sw.action.at(g0);
  bad.at(0, 0) = bad.at(0, 0) + FieldScalar::one(Field::rationals());
  FieldScalar r(Field::rationals(), Rational(2));
  CHECK_FALSE(check_hecke_relations(p.matrix(), {bad, sw.action.at(g1)},
                                    std::nullopt, 1, r)
                  .empty());
}

TEST_CASE("affine omega cell: Gamma = Z[Z_3]") {
  Setup s = make_setup(CoxeterPresentation::affine_a(3, true), 5);
  const auto& d = s.nat.datum;
  int e = s.table.label_index("e");
  int lam = d.lambda_of[e];
  const auto& le = d.lambdas[lam];
  REQUIRE(le.gamma.size() == 3);
  REQUIRE(le.m_labels.size() == 1);

  // its characters over F_7 are the cube roots of unity
  auto chars = gamma_simples(le.gamma, Field::prime(7));
  CHECK(chars.size() == 3);

  // standard modules over the omega cell: 1-dimensional, both routes agree
  const auto& block = s.J.block_for_cell(lam);
  std::vector<int> gens;
  for (int i = 0; i < s.table.size(); ++i)
    if (s.horizon->length(i) <= 1) gens.push_back(i);
  for (const auto& chi : chars) {
    StandardModule sm = standard_module(s.table, d, block, lam, chi,
                                        Field::prime(7), Rational(2), gens);
    CHECK(sm.constructions_agree);
    CHECK(sm.dim() == 1);
  }
}

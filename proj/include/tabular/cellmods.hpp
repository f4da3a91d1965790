#ifndef TABULAR_CELLMODS_HPP
#define TABULAR_CELLMODS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabular/coxeter.hpp"
#include "tabular/matrix.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// ---------------------------------------------------------------------------
// Cell modules W(lambda)
// ---------------------------------------------------------------------------

/// Left cell module on the basis {(S, b) : S in M(lambda), b in B(lambda)},
/// with the action of each requested ambient element as a Laurent matrix.
/// Basis index = S * |B| + b.
struct CellModule {
  int lambda = -1;
  int m = 0, bsize = 0;
  bool partial = false;                  // some generator action incomplete
  std::map<int, LaurentMatrix> action;   // ambient index -> matrix
  int dim() const { return m * bsize; }
  int index(int S, int b) const { return S * bsize + b; }
};

inline CellModule cell_module(const StructureTable& t, const TableDatum& d,
                              int lambda, const std::vector<int>& generators) {
  const auto& le = d.lambdas[lambda];
  CellModule w;
  w.lambda = lambda;
  w.m = static_cast<int>(le.m_labels.size());
  w.bsize = le.gamma.size();
  for (int a : generators) {
    RCoefficients rc = r_coefficients(t, d, a, lambda);
    if (!rc.consistent)
      throw validation_error("axiom (A3) fails for generator " + t.labels[a] +
                             ": " + rc.witness);
    if (rc.partial) { w.partial = true; continue; }
    LaurentMatrix m(w.dim(), w.dim());
    bool ok = true;
    for (int S = 0; S < w.m && ok; ++S)
      for (int b = 0; b < w.bsize && ok; ++b)
        for (int Sp = 0; Sp < w.m && ok; ++Sp) {
          auto prod = detail::gamma_poly_times_basis(le.gamma, rc.r[Sp][S], b);
          if (!prod) { ok = false; break; }
          for (const auto& [bp, poly] : *prod)
            m.at(w.index(Sp, bp), w.index(S, b)) += poly;
        }
    if (!ok) { w.partial = true; continue; }
    w.action.emplace(a, std::move(m));
  }
  return w;
}

/// The same module built directly on a left-cell basis {l + A(<lambda)}.
struct BasisCellModule {
  std::vector<int> basis;  // ambient indices of the left cell, sorted
  bool partial = false;
  std::map<int, LaurentMatrix> action;
};

inline BasisCellModule cell_module_from_basis(const StructureTable& t,
                                              const CellDecomposition& cells,
                                              int seed,
                                              const std::vector<int>& generators) {
  BasisCellModule w;
  int lc = cells.left.cell_of[seed];
  int tc = cells.two_sided.cell_of[seed];
  w.basis = cells.left.members[lc];
  std::map<int, int> pos;
  for (std::size_t k = 0; k < w.basis.size(); ++k)
    pos[w.basis[k]] = static_cast<int>(k);
  const int n = static_cast<int>(w.basis.size());
  for (int a : generators) {
    LaurentMatrix m(n, n);
    bool ok = true;
    for (int col = 0; col < n && ok; ++col) {
      const auto* row = t.row_if_known(a, w.basis[col]);
      if (!row) { ok = false; break; }
      for (const auto& [z, pi] : *row) {
        if (cells.two_sided.cell_of[z] != tc) continue;  // lower cell terms die
        auto it = pos.find(z);
        if (it == pos.end())
          throw validation_error(
              "left-cell module is not closed: " + t.labels[a] + " * " +
              t.labels[w.basis[col]] + " hits " + t.labels[z]);
        m.at(it->second, col) += t.pool[pi];
      }
    }
    if (!ok) { w.partial = true; continue; }
    w.action.emplace(a, std::move(m));
  }
  return w;
}

/// Entrywise comparison of cell_module with cell_module_from_basis under
/// the correspondence C_{S,T0}^b <-> C_S^b for the column T0 the left cell
/// sits in.  Empty string on success.
inline std::string compare_cell_modules(const StructureTable& t,
                                        const TableDatum& d,
                                        const CellModule& w,
                                        const BasisCellModule& wb) {
  if (static_cast<int>(wb.basis.size()) != w.dim())
    return "dimension mismatch between the two constructions";
  // bijection via datum coordinates
  std::vector<int> to_w(wb.basis.size());
  for (std::size_t k = 0; k < wb.basis.size(); ++k) {
    int x = wb.basis[k];
    if (d.lambda_of[x] != w.lambda || d.coord_of[x][0] < 0)
      return "left-cell element " + t.labels[x] + " is not mapped by the datum";
    to_w[k] = w.index(d.coord_of[x][0], d.coord_of[x][1]);
  }
  for (const auto& [a, mw] : w.action) {
    auto it = wb.action.find(a);
    if (it == wb.action.end()) continue;
    const auto& mb = it->second;
    for (int i = 0; i < mb.rows(); ++i)
      for (int j = 0; j < mb.cols(); ++j)
        if (mb.at(i, j) != mw.at(to_w[i], to_w[j]))
          return "matrices of " + t.labels[a] + " differ at (" +
                 std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// The bimodule E(lambda)
// ---------------------------------------------------------------------------

/// E(lambda): free module on c_lambda with the quotient left A-action and
/// the right regular action of the asymptotic block.
struct CellBimodule {
  int lambda = -1;
  std::vector<int> basis;  // ambient indices (block members)
  bool partial = false;
  std::map<int, LaurentMatrix> left_action;   // per requested ambient element
  std::map<int, LaurentMatrix> right_action;  // per block member (gamma action)
};

inline CellBimodule e_bimodule(const StructureTable& t, const TableDatum& d,
                               const AsymptoticBlock& block,
                               const std::vector<int>& generators) {
  CellBimodule e;
  e.basis = block.members;
  const int n = static_cast<int>(e.basis.size());
  std::map<int, int> pos;
  for (int k = 0; k < n; ++k) pos[e.basis[k]] = k;
  int lambda = n > 0 ? d.lambda_of[e.basis[0]] : -1;
  e.lambda = lambda;

  for (int a : generators) {
    LaurentMatrix m(n, n);
    bool ok = true;
    for (int col = 0; col < n && ok; ++col) {
      const auto* row = t.row_if_known(a, e.basis[col]);
      if (!row) { ok = false; break; }
      for (const auto& [z, pi] : *row) {
        auto it = pos.find(z);
        if (it == pos.end()) continue;  // lower-cell terms vanish in E
        m.at(it->second, col) += t.pool[pi];
      }
    }
    if (!ok) { e.partial = true; continue; }
    e.left_action.emplace(a, std::move(m));
  }

  for (int y : e.basis) {
    LaurentMatrix m(n, n);
    bool ok = true;
    for (int col = 0; col < n && ok; ++col) {
      const auto* row =
          block.algebra.row_if_known(block.position.at(e.basis[col]),
                                     block.position.at(y));
      if (!row) { ok = false; break; }
      for (const auto& [zpos, g] : *row)
        m.at(pos.at(block.members[zpos]), col) += LaurentPoly(g);
    }
    if (!ok) { e.partial = true; continue; }
    e.right_action.emplace(y, std::move(m));
  }
  return e;
}

/// Check that the two actions commute on every available triple.
/// Returns (checked, failed).
inline std::pair<long, long> check_bimodule_commutation(const CellBimodule& e) {
  long checked = 0, failed = 0;
  for (const auto& [a, left] : e.left_action)
    for (const auto& [y, right] : e.right_action) {
      ++checked;
      if (left * right != right * left) ++failed;
    }
  return {checked, failed};
}

// ---------------------------------------------------------------------------
// W'(lambda) and theta
// ---------------------------------------------------------------------------

/// W'(lambda) = V(lambda) (x) Gamma(lambda) with the A-action through
/// Phi_lambda and the matrix-ring identification.  Shares the basis
/// indexing of CellModule, so theta: C_T^b -> v_T (x) b is the identity on
/// coordinates and the intertwining check is matrix equality.
struct WPrimeModule {
  int lambda = -1;
  int m = 0, bsize = 0;
  bool partial = false;
  std::map<int, LaurentMatrix> action;
  int dim() const { return m * bsize; }
  int index(int S, int b) const { return S * bsize + b; }
};

inline WPrimeModule w_prime_module(const StructureTable& t, const TableDatum& d,
                                   const AsymptoticBlock& block, int lambda,
                                   const std::vector<int>& generators) {
  const auto& le = d.lambdas[lambda];
  WPrimeModule w;
  w.lambda = lambda;
  w.m = static_cast<int>(le.m_labels.size());
  w.bsize = le.gamma.size();
  for (int a : generators) {
    PhiResult phi = phi_lambda(t, block, a);
    if (phi.partial) { w.partial = true; continue; }
    LaurentMatrix mat(w.dim(), w.dim());
    bool ok = true;
    for (const auto& [zpos, poly] : phi.value) {
      int amb = block.members[zpos];
      if (d.lambda_of[amb] != lambda || d.coord_of[amb][0] < 0) {
        ok = false;
        break;
      }
      auto c = d.coord_of[amb];  // t_Z = e_{c0, c2} (x) b_{c1}
      // (e_{S',S} (x) b).(v_U (x) g) = delta_{S,U} v_{S'} (x) b g
      for (int g = 0; g < w.bsize && ok; ++g) {
        const auto* grow = le.gamma.row_if_known(c[1], g);
        if (!grow) { ok = false; break; }
        for (const auto& [gp, kap] : *grow)
          mat.at(w.index(c[0], gp), w.index(c[2], g)) +=
              poly * LaurentPoly(kap);
      }
    }
    if (!ok) { w.partial = true; continue; }
    w.action.emplace(a, std::move(mat));
  }
  return w;
}

/// theta intertwines the left actions iff the matrices agree; the right
/// Gamma-action is the same formula (S, b) -> (S, bg) on both sides by
/// construction.  Empty string on success.
inline std::string check_theta(const CellModule& w, const WPrimeModule& wp) {
  if (w.dim() != wp.dim()) return "dimension mismatch";
  for (const auto& [a, mw] : w.action) {
    auto it = wp.action.find(a);
    if (it == wp.action.end()) continue;
    if (mw != it->second)
      return "theta fails to intertwine generator index " + std::to_string(a);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Specialization and Gamma representations
// ---------------------------------------------------------------------------

struct SpecializedModule {
  Field field;
  FieldScalar r;
  std::map<int, FieldMatrix> action;
};

template <typename ModuleWithAction>
SpecializedModule specialize_module(const ModuleWithAction& mod,
                                    const Field& k, const Rational& r_value) {
  FieldScalar r(k, r_value);
  if (r.is_zero()) throw validation_error("specialization point r must be nonzero");
  SpecializedModule s{k, r, {}};
  for (const auto& [a, m] : mod.action)
    s.action.emplace(a, specialize_matrix(m, r));
  return s;
}

/// A Gamma(lambda)_{(k,r)}-module: one action matrix per basis label.
struct GammaRepresentation {
  Field field;
  int dim = 0;
  std::vector<FieldMatrix> action;  // indexed by Gamma basis position
  std::string name;                 // e.g. the character values
};

/// Empty string when the matrices satisfy every known Gamma relation.
inline std::string check_gamma_representation(const TableAlgebra& g,
                                              const GammaRepresentation& rep) {
  if (static_cast<int>(rep.action.size()) != g.size())
    return "wrong number of action matrices";
  if (g.unit >= 0 && rep.action[g.unit] != field_identity(rep.field, rep.dim))
    return "unit does not act as the identity";
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      const auto* row = g.row_if_known(i, j);
      if (!row) continue;
      FieldMatrix expect(rep.dim, rep.dim, FieldScalar::zero(rep.field));
      for (const auto& [z, c] : *row) {
        FieldScalar fc = FieldScalar::from_int(rep.field, c);
        for (int r0 = 0; r0 < rep.dim; ++r0)
          for (int c0 = 0; c0 < rep.dim; ++c0)
            expect.at(r0, c0) =
                expect.at(r0, c0) + fc * rep.action[z].at(r0, c0);
      }
      if (rep.action[i] * rep.action[j] != expect)
        return "relation fails at (" + g.labels[i] + "," + g.labels[j] + ")";
    }
  return {};
}

namespace detail {

// Integer roots of the characteristic polynomial of an integer matrix,
// computed exactly (Faddeev-LeVerrier over rationals).
inline std::vector<Int> integer_eigenvalue_candidates(
    const std::vector<std::vector<Int>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<Rational> coeff(n + 1);  // coeff[k] of x^k
  coeff[n] = 1;
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) b[i][i] = 1;
  for (int k = 1; k <= n; ++k) {
    // b <- m * b
    std::vector<std::vector<Rational>> mb(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (m[i][l] == 0) continue;
        Rational f(m[i][l]);
        for (int j = 0; j < n; ++j) mb[i][j] += f * b[l][j];
      }
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += mb[i][i];
    coeff[n - k] = -tr / k;
    b = std::move(mb);
    for (int i = 0; i < n; ++i) b[i][i] += coeff[n - k];
  }
  // strip zero roots, then trial-divide the trailing coefficient
  int low = 0;
  while (low <= n && coeff[low] == 0) ++low;
  std::vector<Int> candidates{0};
  if (low > n) return candidates;
  Int trailing = numerator(coeff[low]);  // integer matrix: denominators are 1
  if (trailing < 0) trailing = -trailing;
  auto is_root = [&](const Int& x) {
    Rational acc = 0, p = 1;
    for (int k = low; k <= n; ++k) {
      acc += coeff[k] * p;
      p *= Rational(x);
    }
    return acc == 0;
  };
  for (Int d = 1; d * d <= trailing; ++d) {
    if (trailing % d != 0) continue;
    for (const Int& cand : {d, Int(trailing / d)})
      for (const Int& signed_cand : {cand, Int(-cand)})
        if (is_root(signed_cand)) candidates.push_back(signed_cand);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  return candidates;
}

}  // namespace detail

/// All one-dimensional representations (characters) of a finite-dimensional
/// commutative split Gamma over k, found as common eigenvectors of the
/// commuting regular-representation matrices.  Errors demand a manual N.
inline std::vector<GammaRepresentation> gamma_simples(const TableAlgebra& g,
                                                      const Field& k) {
  const int n = g.size();
  if (n == 0 || g.unit < 0)
    throw validation_error("gamma_simples: Gamma has no unit");
  if (!g.complete)
    throw validation_error(
        "gamma_simples: Gamma is horizon-bounded; supply N manually");
  if (!k.rational && k.p > 10000)
    throw validation_error(
        "gamma_simples: prime field too large for the exhaustive eigenvalue "
        "search; supply N manually");

  // regular representation: column j of M_b is b * b_j
  std::vector<FieldMatrix> reg(n, FieldMatrix(n, n, FieldScalar::zero(k)));
  std::vector<std::vector<Int>> reg_int(n);
  for (int b = 0; b < n; ++b) {
    std::vector<std::vector<Int>> mi(n, std::vector<Int>(n, 0));
    for (int j = 0; j < n; ++j) {
      const auto* row = g.row_if_known(b, j);
      for (const auto& [z, c] : *row) {
        mi[z][j] = c;
        reg[b].at(z, j) = FieldScalar::from_int(k, c);
      }
    }
    reg_int[b].resize(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) reg_int[b][i * n + j] = mi[i][j];
  }
  for (int b1 = 0; b1 < n; ++b1)
    for (int b2 = b1 + 1; b2 < n; ++b2)
      if (reg[b1] * reg[b2] != reg[b2] * reg[b1])
        throw validation_error(
            "gamma_simples: Gamma is noncommutative; supply N manually");

  // eigenvalue candidates per basis element
  auto candidates_for = [&](int b) {
    std::vector<FieldScalar> out;
    if (k.rational) {
      std::vector<std::vector<Int>> mi(n, std::vector<Int>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mi[i][j] = reg_int[b][i * n + j];
      for (const Int& c : detail::integer_eigenvalue_candidates(mi))
        out.push_back(FieldScalar::from_int(k, c));
    } else {
      for (std::int64_t x = 0; x < k.p; ++x)
        out.push_back(FieldScalar::from_int(k, Int(x)));
    }
    return out;
  };

  // iterated joint-eigenspace refinement
  using Space = std::vector<std::vector<FieldScalar>>;  // rows = basis vectors
  Space full;
  for (int i = 0; i < n; ++i) {
    std::vector<FieldScalar> v(n, FieldScalar::zero(k));
    v[i] = FieldScalar::one(k);
    full.push_back(std::move(v));
  }
  std::vector<Space> spaces{full};
  for (int b = 0; b < n; ++b) {
    if (b == g.unit) continue;
    auto candidates = candidates_for(b);
    std::vector<Space> next;
    for (const auto& V : spaces) {
      const int kdim = static_cast<int>(V.size());
      if (kdim == 1) { next.push_back(V); continue; }
      int found = 0;
      for (const auto& lam : candidates) {
        // kernel of (M_b - lam) restricted to span(V): solve on coefficients
        FieldMatrix sys(n, kdim, FieldScalar::zero(k));
        for (int col = 0; col < kdim; ++col) {
          // (M_b - lam) * V[col]
          for (int i = 0; i < n; ++i) {
            FieldScalar acc = FieldScalar::zero(k);
            for (int j = 0; j < n; ++j) acc = acc + reg[b].at(i, j) * V[col][j];
            acc = acc - lam * V[col][i];
            sys.at(i, col) = acc;
          }
        }
        auto ker = kernel_basis(k, sys);
        if (ker.empty()) continue;
        Space W;
        for (const auto& x : ker) {
          std::vector<FieldScalar> w(n, FieldScalar::zero(k));
          for (int col = 0; col < kdim; ++col)
            for (int i = 0; i < n; ++i)
              w[i] = w[i] + x[col] * V[col][i];
          W.push_back(std::move(w));
        }
        found += static_cast<int>(W.size());
        next.push_back(std::move(W));
      }
      if (found != kdim)
        throw validation_error(
            "gamma_simples: Gamma does not split over " + k.name() +
            "; supply N manually");
    }
    spaces = std::move(next);
  }
  for (const auto& V : spaces)
    if (V.size() != 1)
      throw validation_error("gamma_simples: Gamma does not split over " +
                             k.name() + "; supply N manually");

  std::vector<GammaRepresentation> out;
  for (const auto& V : spaces) {
    GammaRepresentation rep;
    rep.field = k;
    rep.dim = 1;
    const auto& v = V[0];
    // pivot coordinate for eigenvalue extraction
    int pivot = 0;
    while (pivot < n && v[pivot].is_zero()) ++pivot;
    for (int b = 0; b < n; ++b) {
      FieldScalar acc = FieldScalar::zero(k);
      for (int j = 0; j < n; ++j) acc = acc + reg[b].at(pivot, j) * v[j];
      FieldScalar chi = acc * v[pivot].inverse();
      rep.action.emplace_back(1, 1, chi);
      if (b) rep.name += ",";
      rep.name += g.labels[b] + "->" + chi.to_string();
    }
    std::string err = check_gamma_representation(g, rep);
    if (!err.empty())
      throw std::logic_error("character fails verification: " + err);
    out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(),
            [](const GammaRepresentation& a, const GammaRepresentation& b) {
              return a.name < b.name;
            });
  return out;
}

// ---------------------------------------------------------------------------
// Standard modules
// ---------------------------------------------------------------------------

/// W(lambda)_{(k,r)} (x)_Gamma N realized on V(lambda) (x) N, built two
/// ways: from the r-coefficients (tensor route) and through Phi_lambda
/// (asymptotic route).  Basis index = S * dim(N) + j.
struct StandardModule {
  int lambda = -1;
  Field field;
  FieldScalar r;
  int m = 0, nu = 0;  // |M(lambda)|, dim N
  std::map<int, FieldMatrix> action;      // tensor construction
  std::map<int, FieldMatrix> phi_action;  // Phi-pullback construction
  bool constructions_agree = true;
  bool partial = false;
  int dim() const { return m * nu; }
  int index(int S, int j) const { return S * nu + j; }
};

inline StandardModule standard_module(const StructureTable& t,
                                      const TableDatum& d,
                                      const AsymptoticBlock& block, int lambda,
                                      const GammaRepresentation& N,
                                      const Field& k, const Rational& r_value,
                                      const std::vector<int>& generators) {
  const auto& le = d.lambdas[lambda];
  std::string nerr = check_gamma_representation(le.gamma, N);
  if (!nerr.empty())
    throw validation_error("N fails the Gamma relations: " + nerr);
  if (N.field != k) throw validation_error("N lives over a different field");
  FieldScalar r(k, r_value);
  if (r.is_zero()) throw validation_error("r must be nonzero");

  StandardModule s;
  s.lambda = lambda;
  s.field = k;
  s.r = r;
  s.m = static_cast<int>(le.m_labels.size());
  s.nu = N.dim;

  for (int a : generators) {
    // tensor route through the r-coefficients
    RCoefficients rc = r_coefficients(t, d, a, lambda);
    if (!rc.consistent)
      throw validation_error("axiom (A3) fails for " + t.labels[a]);
    bool ok = !rc.partial;
    FieldMatrix tensor(s.dim(), s.dim(), FieldScalar::zero(k));
    for (int S = 0; S < s.m && ok; ++S)
      for (int Sp = 0; Sp < s.m && ok; ++Sp)
        for (const auto& [b, poly] : rc.r[Sp][S]) {
          FieldScalar c = specialize(poly, r);
          for (int i = 0; i < s.nu; ++i)
            for (int j = 0; j < s.nu; ++j)
              tensor.at(s.index(Sp, i), s.index(S, j)) =
                  tensor.at(s.index(Sp, i), s.index(S, j)) +
                  c * N.action[b].at(i, j);
        }
    // asymptotic route through Phi_lambda
    PhiResult phi = phi_lambda(t, block, a);
    ok = ok && !phi.partial;
    FieldMatrix pullback(s.dim(), s.dim(), FieldScalar::zero(k));
    if (ok)
      for (const auto& [zpos, poly] : phi.value) {
        int amb = block.members[zpos];
        if (d.lambda_of[amb] != lambda || d.coord_of[amb][0] < 0) {
          ok = false;
          break;
        }
        auto c = d.coord_of[amb];
        FieldScalar fc = specialize(poly, r);
        for (int i = 0; i < s.nu; ++i)
          for (int j = 0; j < s.nu; ++j)
            pullback.at(s.index(c[0], i), s.index(c[2], j)) =
                pullback.at(s.index(c[0], i), s.index(c[2], j)) +
                fc * N.action[c[1]].at(i, j);
      }
    if (!ok) { s.partial = true; continue; }
    if (tensor != pullback) s.constructions_agree = false;
    s.action.emplace(a, std::move(tensor));
    s.phi_action.emplace(a, std::move(pullback));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Defining-relation checks for Hecke-derived modules
// ---------------------------------------------------------------------------

/// Verify the Hecke relations as matrix identities for generator matrices of
/// the KL generators C_s (and optionally the omega generator): with
/// T_s = r * M(C_s) - I, checks (T_s - r^2)(T_s + 1) = 0 and the braid
/// relations of the Coxeter matrix; omega must have the right order and
/// permute the T_s by rotation.  Empty string on success.
inline std::string check_hecke_relations(
    const CoxeterMatrix& cm, const std::vector<FieldMatrix>& c_gen,
    const std::optional<FieldMatrix>& omega, int omega_order,
    const FieldScalar& r) {
  const Field& k = r.field();
  const int rank = cm.rank;
  if (static_cast<int>(c_gen.size()) != rank) return "wrong generator count";
  const int dim = c_gen[0].rows();
  FieldMatrix id = field_identity(k, dim);
  std::vector<FieldMatrix> ts;
  for (int i = 0; i < rank; ++i) {
    FieldMatrix t(dim, dim, FieldScalar::zero(k));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        t.at(a, b) = r * c_gen[i].at(a, b);
        if (a == b) t.at(a, b) = t.at(a, b) - FieldScalar::one(k);
      }
    ts.push_back(std::move(t));
  }
  FieldScalar r2 = r * r;
  for (int i = 0; i < rank; ++i) {
    FieldMatrix lhs = ts[i] * ts[i];
    // (T - r^2)(T + 1) = 0  <=>  T^2 = (r^2 - 1) T + r^2
    FieldMatrix rhs(dim, dim, FieldScalar::zero(k));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        rhs.at(a, b) = (r2 - FieldScalar::one(k)) * ts[i].at(a, b);
        if (a == b) rhs.at(a, b) = rhs.at(a, b) + r2;
      }
    if (lhs != rhs) return "quadratic relation fails for generator " +
                           std::to_string(i);
  }
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      int m = cm(i, j);
      if (m == 0) continue;
      FieldMatrix lhs = id, rhs = id;
      for (int kk = 0; kk < m; ++kk) {
        lhs = lhs * (kk % 2 == 0 ? ts[i] : ts[j]);
        rhs = rhs * (kk % 2 == 0 ? ts[j] : ts[i]);
      }
      if (lhs != rhs)
        return "braid relation fails for generators " + std::to_string(i) +
               "," + std::to_string(j);
    }
  if (omega) {
    FieldMatrix p = id;
    for (int kk = 0; kk < omega_order; ++kk) p = p * *omega;
    if (p != id) return "omega does not have the required order";
    for (int i = 0; i < rank; ++i) {
      // omega T_i omega^{-1} = T_{i+1 mod rank}
      if (*omega * ts[i] != ts[(i + 1) % rank] * *omega)
        return "omega conjugation fails for generator " + std::to_string(i);
    }
  }
  return {};
}

}  // namespace tabular

#endif

#ifndef TABULAR_HECKE_HPP
#define TABULAR_HECKE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tabular/cells.hpp"
#include "tabular/coxeter.hpp"
#include "tabular/structure_table.hpp"

namespace tabular {

/// Sparse Hecke algebra element in the T-basis; keys are horizon indices,
/// coefficients never zero.
using HeckeElement = std::map<int, LaurentPoly>;

inline void he_add_term(HeckeElement& h, int i, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto& acc = h[i];
  acc += c;
  if (acc.is_zero()) h.erase(i);
}

inline HeckeElement he_add(const HeckeElement& a, const HeckeElement& b) {
  HeckeElement out = a;
  for (const auto& [i, c] : b) he_add_term(out, i, c);
  return out;
}

inline HeckeElement he_sub(const HeckeElement& a, const HeckeElement& b) {
  HeckeElement out = a;
  for (const auto& [i, c] : b) he_add_term(out, i, -c);
  return out;
}

inline HeckeElement he_scale(const HeckeElement& a, const LaurentPoly& p) {
  HeckeElement out;
  if (p.is_zero()) return out;
  for (const auto& [i, c] : a) out.emplace(i, c * p);
  return out;
}

/// Hecke algebra of an (extended) Coxeter group restricted to a horizon,
/// with parameter v^2: (T_s - v^2)(T_s + 1) = 0.  Kazhdan-Lusztig elements
/// are computed once per horizon and cached; everything is immutable
/// afterwards.
class HeckeAlgebra {
public:
  explicit HeckeAlgebra(std::shared_ptr<const GroupHorizon> h)
      : h_(std::move(h)) {
    compute_kl();
  }

  const GroupHorizon& horizon() const { return *h_; }

  HeckeElement t_basis(int i) const { return {{i, LaurentPoly(1)}}; }
  HeckeElement unit() const { return t_basis(h_->identity_index()); }

  /// Right product by T_{s_g}; throws horizon_error if the support leaves
  /// the horizon.
  HeckeElement times_ts(const HeckeElement& a, int g) const {
    static const LaurentPoly v2 = LaurentPoly::v(2);
    static const LaurentPoly v2m1 = LaurentPoly::v(2) - LaurentPoly(1);
    HeckeElement out;
    for (const auto& [x, c] : a) {
      int xg = h_->right(x, g);
      if (xg == GroupHorizon::kEscape)
        throw horizon_error("product support escapes the horizon at " +
                            h_->label(x));
      if (h_->length(xg) > h_->length(x)) {
        he_add_term(out, xg, c);
      } else {
        he_add_term(out, x, c * v2m1);
        he_add_term(out, xg, c * v2);
      }
    }
    return out;
  }

  HeckeElement times_omega(const HeckeElement& a, int k) const {
    if (detail::pos_mod(k, h_->presentation().omega_order()) == 0) return a;
    HeckeElement out;
    for (const auto& [x, c] : a) out.emplace(h_->omega_right(x, k), c);
    return out;
  }

  /// Exact product in the T-basis.
  HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const {
    HeckeElement out;
    for (const auto& [y, cb] : b) {
      HeckeElement cur = times_omega(a, h_->omega_of(y));
      for (int g : h_->word(y)) cur = times_ts(cur, g);
      for (const auto& [x, c] : cur) he_add_term(out, x, c * cb);
    }
    return out;
  }

  /// T_w^{-1} as a T-basis expansion.
  HeckeElement t_inverse(int i) const {
    static const LaurentPoly vm2 = LaurentPoly::v(-2);
    static const LaurentPoly vm2m1 = LaurentPoly::v(-2) - LaurentPoly(1);
    HeckeElement cur = unit();
    const auto& w = h_->word(i);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      // cur * T_s^{-1} with T_s^{-1} = v^{-2} T_s + (v^{-2}-1) T_e
      HeckeElement ts = times_ts(cur, *it);
      cur = he_add(he_scale(ts, vm2), he_scale(cur, vm2m1));
    }
    return times_omega(cur, -h_->omega_of(i));
  }

  /// bar(sum a_w T_w) = sum bar(a_w) T_{w^{-1}}^{-1}.
  HeckeElement bar(const HeckeElement& a) const {
    HeckeElement out;
    for (const auto& [x, c] : a) {
      HeckeElement inv = t_inverse(h_->inverse(x));
      LaurentPoly cb = c.bar();
      for (const auto& [y, d] : inv) he_add_term(out, y, d * cb);
    }
    return out;
  }

  /// The anti-automorphism T_w -> T_{w^{-1}}.
  HeckeElement star(const HeckeElement& a) const {
    HeckeElement out;
    for (const auto& [x, c] : a) out.emplace(h_->inverse(x), c);
    return out;
  }

  /// Coefficient of T_e.
  LaurentPoly tau(const HeckeElement& a) const {
    auto it = a.find(h_->identity_index());
    return it == a.end() ? LaurentPoly() : it->second;
  }

  /// T-basis expansion of the Kazhdan-Lusztig element C_i.
  HeckeElement kl_element(int i) const {
    int k = h_->omega_of(i);
    if (k == 0) return kl_[i];
    int base = h_->omega_left(i, -k);
    HeckeElement out;
    for (const auto& [y, c] : kl_[base]) out.emplace(h_->omega_left(y, k), c);
    return out;
  }

  /// Nonzero mu-values of C_i (leading coefficients of the lower terms);
  /// only stored for the omega-trivial fibre.
  const std::vector<std::pair<int, Int>>& mu_list(int i) const { return mu_[i]; }

  /// Rewrite a T-basis element in the KL basis.
  std::map<int, LaurentPoly> t_to_c(HeckeElement rem) const {
    std::map<int, LaurentPoly> out;
    while (!rem.empty()) {
      auto top = rem.begin();
      for (auto it = rem.begin(); it != rem.end(); ++it)
        if (h_->length(it->first) > h_->length(top->first)) top = it;
      int x = top->first;
      LaurentPoly c = top->second * LaurentPoly::v(h_->length(x));
      out.emplace(x, c);
      HeckeElement cw = kl_element(x);
      for (const auto& [y, d] : cw) he_add_term(rem, y, -(d * c));
    }
    return out;
  }

  HeckeElement c_to_t(const std::map<int, LaurentPoly>& expr) const {
    HeckeElement out;
    for (const auto& [x, c] : expr) {
      HeckeElement cw = kl_element(x);
      for (const auto& [y, d] : cw) he_add_term(out, y, d * c);
    }
    return out;
  }

  struct CheckReport {
    bool ok = true;
    std::string detail;
  };

  /// The defining invariants of C_w: bar-invariance, normalized leading
  /// coefficient, degree bounds and Bruhat support.  This is the oracle for
  /// the KL construction, independent of the recursion that built it.
  CheckReport check_kl_invariants(int i) const {
    CheckReport rep;
    HeckeElement cw = kl_element(i);
    const int lw = h_->length(i);
    auto self = cw.find(i);
    if (self == cw.end() || self->second != LaurentPoly::v(-lw)) {
      rep.ok = false;
      rep.detail = "leading coefficient of C_" + h_->label(i) +
                   " is not v^{-l(w)}";
      return rep;
    }
    for (const auto& [y, c] : cw) {
      if (y == i) continue;
      if (c.degree() > -h_->length(y) - 1) {
        rep.ok = false;
        rep.detail = "degree bound violated at T_" + h_->label(y) + " in C_" +
                     h_->label(i);
        return rep;
      }
      if (!h_->bruhat_leq_idx(y, i)) {
        rep.ok = false;
        rep.detail = "support of C_" + h_->label(i) +
                     " contains T_" + h_->label(y) + " not below w";
        return rep;
      }
    }
    if (bar(cw) != cw) {
      rep.ok = false;
      rep.detail = "C_" + h_->label(i) + " is not bar-invariant";
      return rep;
    }
    return rep;
  }

  /// Structure constants of the KL basis over the horizon.  Pairs whose
  /// computation would leave the horizon are left unknown.  Labels follow
  /// the horizon order; star is inversion; tau is the T_e coefficient.
  StructureTable kl_structure_constants() const {
    const int n = static_cast<int>(h_->size());
    const int m = h_->presentation().omega_order();
    StructureTable t;
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = h_->label(i);
    t.set_labels(std::move(labels));
    t.complete = h_->complete_group();
    t.unit = {h_->identity_index()};
    t.star.resize(n);
    for (int i = 0; i < n; ++i) t.star[i] = h_->inverse(i);
    t.weight = std::vector<int>();
    for (int i = 0; i < n; ++i) t.weight.push_back(h_->length(i));
    if (!t.complete) t.horizon_bound = h_->length_bound();
    t.tau.resize(n);
    for (int i = 0; i < n; ++i) {
      HeckeElement cw = kl_element(i);
      auto it = cw.find(h_->identity_index());
      t.tau[i] = it == cw.end() ? LaurentPoly() : it->second;
    }

    std::vector<int> wprime;
    for (int i = 0; i < n; ++i)
      if (h_->omega_of(i) == 0) wprime.push_back(i);  // already length-sorted

    static const LaurentPoly vpv = LaurentPoly::v(1) + LaurentPoly::v(-1);
    for (int y : wprime) {
      // column of products C_x C_y in the KL basis, by increasing l(x)
      std::unordered_map<int, std::map<int, LaurentPoly>> col;
      col.emplace(h_->identity_index(), std::map<int, LaurentPoly>{{y, LaurentPoly(1)}});
      for (int x : wprime) {
        if (h_->length(x) == 0) continue;
        int g = -1;
        for (int cand = 0; cand < h_->presentation().rank(); ++cand)
          if (h_->element(x).left_descent(cand)) { g = cand; break; }
        int xp = h_->left(x, g);
        auto pit = col.find(xp);
        if (pit == col.end()) continue;  // parent unknown
        std::map<int, LaurentPoly> acc;
        bool ok = true;
        for (const auto& [w, c] : pit->second) {
          int sw = h_->left(w, g);
          if (sw == GroupHorizon::kEscape) { ok = false; break; }
          if (h_->length(sw) < h_->length(w)) {
            auto& t0 = acc[w];
            t0 += c * vpv;
            if (t0.is_zero()) acc.erase(w);
          } else {
            auto& t0 = acc[sw];
            t0 += c;
            if (t0.is_zero()) acc.erase(sw);
            for (const auto& [z, mu] : mu_[w]) {
              if (!left_descends(z, g)) continue;
              auto& t1 = acc[z];
              t1 += Int(mu) * c;
              if (t1.is_zero()) acc.erase(z);
            }
          }
        }
        if (!ok) continue;
        for (const auto& [z, mu] : mu_[xp]) {
          if (!left_descends(z, g)) continue;
          auto zit = col.find(z);
          if (zit == col.end()) { ok = false; break; }
          for (const auto& [w, c] : zit->second) {
            auto& t0 = acc[w];
            t0 -= Int(mu) * c;
            if (t0.is_zero()) acc.erase(w);
          }
        }
        if (!ok) continue;
        col.emplace(x, std::move(acc));
      }
      // materialize all omega translates of this column
      for (const auto& [x, row] : col) {
        StructureTable::Row base;
        base.reserve(row.size());
        for (const auto& [z, p] : row) base.emplace_back(z, t.intern(p));
        for (int b = 0; b < m; ++b) {
          int j = h_->omega_left(y, b);
          int xt = h_->omega_right(h_->omega_left(x, b), -b);
          for (int a = 0; a < m; ++a) {
            int ii = h_->omega_left(xt, a);
            StructureTable::Row r;
            r.reserve(base.size());
            for (const auto& [z, pi] : base)
              r.emplace_back(h_->omega_left(z, a + b), pi);
            std::sort(r.begin(), r.end());
            t.set_row(ii, j, std::move(r));
          }
        }
      }
    }
    t.release_intern_cache();
    return t;
  }

private:
  bool left_descends(int z, int g) const {
    int sz = h_->left(z, g);
    return sz != GroupHorizon::kEscape && h_->length(sz) < h_->length(z);
  }

  void compute_kl() {
    const int n = static_cast<int>(h_->size());
    kl_.resize(n);
    mu_.resize(n);
    static const LaurentPoly vp = LaurentPoly::v(1);
    static const LaurentPoly vm = LaurentPoly::v(-1);
    for (int i = 0; i < n; ++i) {  // horizon order is sorted by length
      if (h_->omega_of(i) != 0) continue;
      if (h_->length(i) == 0) {
        kl_[i] = {{i, LaurentPoly(1)}};
        continue;
      }
      int g = -1;
      for (int cand = 0; cand < h_->presentation().rank(); ++cand)
        if (h_->element(i).left_descent(cand)) { g = cand; break; }
      int ip = h_->left(i, g);
      HeckeElement r;
      for (const auto& [y, c] : kl_[ip]) {
        int sy = h_->left(y, g);
        if (sy == GroupHorizon::kEscape)
          throw std::logic_error("KL recursion escaped the horizon");
        if (h_->length(sy) < h_->length(y)) {
          // C_s T_y = v T_y + v T_{sy}
          he_add_term(r, y, c * vp);
          he_add_term(r, sy, c * vp);
        } else {
          he_add_term(r, y, c * vm);
          he_add_term(r, sy, c * vm);
        }
      }
      for (const auto& [z, mu] : mu_[ip]) {
        if (!left_descends(z, g)) continue;
        for (const auto& [y, c] : kl_[z]) he_add_term(r, y, -(Int(mu) * c));
      }
      kl_[i] = std::move(r);
      for (const auto& [y, c] : kl_[i]) {
        if (y == i) continue;
        Int mu = c.coeff(-h_->length(y) - 1);
        if (mu != 0) mu_[i].emplace_back(y, std::move(mu));
      }
    }
  }

  std::shared_ptr<const GroupHorizon> h_;
  std::vector<HeckeElement> kl_;
  std::vector<std::vector<std::pair<int, Int>>> mu_;
};

/// Distinguished involutions: omega-trivial z with deg tau(C_z) = -a(z).
/// Elements with uncertified a-values are reported undecidable, and two
/// cross-checks run on every member: the trace value is exactly 1 mod
/// v^{-1}Z[v^{-1}] after scaling by v^{a}, and d = d^{-1}.
struct DistinguishedInvolutionReport {
  std::vector<int> members;
  std::vector<int> undecidable;
  std::vector<std::string> cross_check_failures;
};

inline DistinguishedInvolutionReport distinguished_involutions(
    const HeckeAlgebra& alg, const AFunctionTable& a) {
  const GroupHorizon& h = alg.horizon();
  DistinguishedInvolutionReport rep;
  for (int i = 0; i < static_cast<int>(h.size()); ++i) {
    if (h.omega_of(i) != 0) continue;
    if (!a.certified(i)) {
      rep.undecidable.push_back(i);
      continue;
    }
    LaurentPoly p = alg.tau(alg.kl_element(i));
    if (p.is_zero() || p.degree() != -a.value(i)) continue;
    rep.members.push_back(i);
    if (p.coeff(-a.value(i)) != 1)
      rep.cross_check_failures.push_back(
          "trace of C_" + h.label(i) + " is not monic at v^{-a}");
    if (h.inverse(i) != i)
      rep.cross_check_failures.push_back("element " + h.label(i) +
                                         " in D is not an involution");
  }
  return rep;
}

}  // namespace tabular

#endif

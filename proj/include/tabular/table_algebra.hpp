#ifndef TABULAR_TABLE_ALGEBRA_HPP
#define TABULAR_TABLE_ALGEBRA_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/structure_table.hpp"

namespace tabular {

/// A based Z-algebra candidate for the normalized-table-algebra axioms:
/// basis with a distinguished unit, integer structure constants, and an
/// optional basis permutation playing the anti-automorphism role.  Possibly
/// horizon-bounded: pairs absent from `rows` are zero when `complete`,
/// unknown otherwise.
class TableAlgebra {
public:
  using Row = std::vector<std::pair<int, Int>>;
  enum class PairState { Known, KnownZero, Unknown };

  std::vector<std::string> labels;
  int unit = -1;
  std::optional<std::vector<int>> bar;
  bool complete = true;

  int size() const { return static_cast<int>(labels.size()); }

  int label_index(const std::string& l) const {
    auto it = label_index_.find(l);
    if (it == label_index_.end())
      throw validation_error("unknown table-algebra label: " + l);
    return it->second;
  }

  void set_labels(std::vector<std::string> ls) {
    labels = std::move(ls);
    label_index_.clear();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (!label_index_.emplace(labels[i], static_cast<int>(i)).second)
        throw validation_error("duplicate table-algebra label: " + labels[i]);
  }

  void set_row(int i, int j, Row r) {
    rows_[StructureTable::pair_key(i, j)] = std::move(r);
  }

  PairState state(int i, int j) const {
    if (rows_.count(StructureTable::pair_key(i, j))) return PairState::Known;
    return complete ? PairState::KnownZero : PairState::Unknown;
  }
  bool known(int i, int j) const { return state(i, j) != PairState::Unknown; }

  const Row* row_if_known(int i, int j) const {
    auto it = rows_.find(StructureTable::pair_key(i, j));
    if (it != rows_.end()) return &it->second;
    if (complete) { static const Row empty; return &empty; }
    return nullptr;
  }

  /// Structure constant kappa(b_m, b_i b_j); requires the pair to be known.
  Int kappa_product(int m, int i, int j) const {
    const Row* r = row_if_known(i, j);
    if (!r)
      throw horizon_error("product " + labels[i] + " * " + labels[j] +
                          " is unknown");
    for (const auto& [z, c] : *r)
      if (z == m) return c;
    return Int(0);
  }

  /// Coefficient of b_m in an arbitrary element of the algebra.
  Int kappa(const std::string& m, const std::map<int, Int>& element) const {
    int mi = label_index(m);
    auto it = element.find(mi);
    return it == element.end() ? Int(0) : it->second;
  }

  std::map<int, Int> multiply(const std::map<int, Int>& a,
                              const std::map<int, Int>& b) const {
    std::map<int, Int> out;
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b) {
        const Row* r = row_if_known(i, j);
        if (!r)
          throw horizon_error("product " + labels[i] + " * " + labels[j] +
                              " is unknown");
        for (const auto& [z, c] : *r) {
          auto& acc = out[z];
          acc += ci * cj * c;
          if (acc == 0) out.erase(z);
        }
      }
    return out;
  }

  std::size_t known_pair_count() const { return rows_.size(); }

private:
  std::unordered_map<std::uint64_t, Row> rows_;
  std::unordered_map<std::string, int> label_index_;
};

/// The unique candidate anti-automorphism: b_ibar is the one basis element
/// such that 1 occurs in b_i b_ibar.  Fails loudly when zero or several
/// candidates exist (the input is then not a table algebra), or when the
/// probe products are unknown at this horizon.
inline std::vector<int> derive_bar(const TableAlgebra& t) {
  std::vector<int> out(t.size(), -1);
  for (int i = 0; i < t.size(); ++i) {
    int found = -1;
    bool unknown_probe = false;
    for (int j = 0; j < t.size(); ++j) {
      const auto* r = t.row_if_known(i, j);
      if (!r) { unknown_probe = true; continue; }
      bool hits_unit = false;
      for (const auto& [z, c] : *r)
        if (z == t.unit && c != 0) hits_unit = true;
      if (!hits_unit) continue;
      if (found >= 0)
        throw validation_error(
            "not a table algebra: " + t.labels[i] +
            " pairs with both " + t.labels[found] + " and " + t.labels[j]);
      found = j;
    }
    if (found < 0) {
      if (unknown_probe)
        throw horizon_error("cannot derive bar for " + t.labels[i] +
                            ": probe products unknown at this horizon");
      throw validation_error("not a table algebra: no basis element pairs with " +
                             t.labels[i]);
    }
    out[i] = found;
  }
  return out;
}

/// Per-axiom verification report; partial tables report coverage (the share
/// of triple instances whose products were known).
struct TableAxiomReport {
  struct Axiom {
    bool checked_any = false;
    bool failed = false;
    std::string witness;
    long instances = 0, untested = 0;
    bool pass() const { return checked_any && !failed; }
    double coverage() const {
      long total = instances + untested;
      return total == 0 ? 0.0 : static_cast<double>(instances) / total;
    }
  };
  Axiom t1, t2, t3;
  std::vector<int> bar;  // the permutation actually used
  bool all_pass() const { return t1.pass() && t2.pass() && t3.pass(); }
  std::string summary() const {
    auto line = [](const char* name, const Axiom& a) {
      std::ostringstream os;
      os << name << ": " << (a.pass() ? "pass" : "FAIL");
      if (a.untested > 0)
        os << " (coverage " << a.instances << "/" << (a.instances + a.untested)
           << ")";
      if (a.failed) os << " [" << a.witness << "]";
      return os.str();
    };
    return line("T1", t1) + "; " + line("T2", t2) + "; " + line("T3", t3);
  }
};

inline TableAxiomReport verify_table_axioms(const TableAlgebra& t) {
  TableAxiomReport rep;
  const int n = t.size();
  if (n == 0 || t.unit < 0 || t.unit >= n) {
    rep.t1.checked_any = rep.t2.checked_any = rep.t3.checked_any = true;
    rep.t1.failed = rep.t2.failed = rep.t3.failed = true;
    rep.t1.witness = rep.t2.witness = rep.t3.witness =
        "basis has no unit element";
    return rep;
  }

  // T1: nonnegative integer structure constants
  rep.t1.checked_any = true;
  for (int i = 0; i < n && !rep.t1.failed; ++i)
    for (int j = 0; j < n && !rep.t1.failed; ++j) {
      const auto* r = t.row_if_known(i, j);
      if (!r) { ++rep.t1.untested; continue; }
      ++rep.t1.instances;
      for (const auto& [z, c] : *r)
        if (c < 0) {
          rep.t1.failed = true;
          rep.t1.witness = "(" + t.labels[i] + "," + t.labels[j] + "," +
                           t.labels[z] + "," + c.str() + ")";
          break;
        }
    }

  // T2: bar permutes the basis and is an involutive anti-automorphism
  std::vector<int> bar;
  try {
    bar = t.bar ? *t.bar : derive_bar(t);
  } catch (const std::runtime_error& err) {
    rep.t2.checked_any = true;
    rep.t2.failed = true;
    rep.t2.witness = err.what();
    return rep;
  }
  rep.bar = bar;
  rep.t2.checked_any = true;
  for (int i = 0; i < n; ++i)
    if (bar[i] < 0 || bar[i] >= n || bar[bar[i]] != i) {
      rep.t2.failed = true;
      rep.t2.witness = "bar is not an involution at " + t.labels[i];
      break;
    }
  if (!rep.t2.failed && bar[t.unit] != t.unit) {
    rep.t2.failed = true;
    rep.t2.witness = "bar does not fix the unit";
  }
  if (!rep.t2.failed) {
    // kappa(b_m, b_i b_j) = kappa(bar b_m, bar b_j bar b_i)
    for (int i = 0; i < n && !rep.t2.failed; ++i)
      for (int j = 0; j < n && !rep.t2.failed; ++j) {
        const auto* r = t.row_if_known(i, j);
        const auto* rb = t.row_if_known(bar[j], bar[i]);
        if (!r || !rb) { ++rep.t2.untested; continue; }
        ++rep.t2.instances;
        for (int m = 0; m < n; ++m) {
          Int lhs = t.kappa_product(m, i, j);
          Int rhs = t.kappa_product(bar[m], bar[j], bar[i]);
          if (lhs != rhs) {
            rep.t2.failed = true;
            rep.t2.witness = "anti-automorphism fails at (" + t.labels[i] +
                             "," + t.labels[j] + "," + t.labels[m] + ")";
            break;
          }
        }
      }
  }

  // T3: kappa(b_m, b_i b_j) = kappa(b_i, b_m bar(b_j))
  rep.t3.checked_any = true;
  if (!rep.t2.failed) {
    for (int i = 0; i < n && !rep.t3.failed; ++i)
      for (int j = 0; j < n && !rep.t3.failed; ++j)
        for (int m = 0; m < n && !rep.t3.failed; ++m) {
          const auto* r1 = t.row_if_known(i, j);
          const auto* r2 = t.row_if_known(m, bar[j]);
          if (!r1 || !r2) { ++rep.t3.untested; continue; }
          ++rep.t3.instances;
          if (t.kappa_product(m, i, j) != t.kappa_product(i, m, bar[j])) {
            rep.t3.failed = true;
            rep.t3.witness = "(" + t.labels[m] + "; " + t.labels[i] + "*" +
                             t.labels[j] + ")";
          }
        }
  } else {
    rep.t3.failed = true;
    rep.t3.witness = "skipped: no valid bar";
  }
  return rep;
}

/// Z[Z_k] group algebra, a handy stock example.
inline TableAlgebra cyclic_group_algebra(int k) {
  TableAlgebra t;
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i)
    labels.push_back(i == 0 ? "1" : "g" + std::to_string(i));
  t.set_labels(std::move(labels));
  t.unit = 0;
  t.complete = true;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      t.set_row(i, j, {{(i + j) % k, Int(1)}});
  return t;
}

}  // namespace tabular

#endif

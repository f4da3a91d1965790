#ifndef TABULAR_STRUCTURE_TABLE_HPP
#define TABULAR_STRUCTURE_TABLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "tabular/laurent.hpp"

namespace tabular {

/// Sparse structure-constant table of a based algebra over Z[v,v^{-1}].
///
/// Pairs are tri-state: a pair present in `rows` is fully known (possibly
/// with an empty row, i.e. the product is zero); an absent pair is
/// known-zero when `complete` is set and unknown otherwise.  Coefficient
/// polynomials are interned in `pool` so rows related by symmetry share
/// storage.
class StructureTable {
public:
  using Row = std::vector<std::pair<int, int>>;  // (z index, pool index)

  std::vector<std::string> labels;
  std::vector<LaurentPoly> pool;
  bool complete = false;
  std::vector<int> unit;           // unit decomposition, basis indices
  std::vector<int> star;           // optional involution on indices
  std::vector<LaurentPoly> tau;    // optional trace of each basis element
  std::vector<int> weight;         // optional length metadata
  int horizon_bound = -1;          // escape-depth metadata, -1 when exact

  enum class PairState { Known, KnownZero, Unknown };

  static std::uint64_t pair_key(int x, int y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  }

  int size() const { return static_cast<int>(labels.size()); }

  int label_index(const std::string& l) const {
    auto it = label_index_.find(l);
    if (it == label_index_.end())
      throw validation_error("unknown basis label: " + l);
    return it->second;
  }
  std::optional<int> try_label_index(const std::string& l) const {
    auto it = label_index_.find(l);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  PairState state(int x, int y) const {
    if (rows_.count(pair_key(x, y))) return PairState::Known;
    return complete ? PairState::KnownZero : PairState::Unknown;
  }
  bool known(int x, int y) const { return state(x, y) != PairState::Unknown; }

  /// Row of the product x*y; empty row for known-zero.  Throws on unknown.
  const Row& row(int x, int y) const {
    auto it = rows_.find(pair_key(x, y));
    if (it != rows_.end()) return it->second;
    if (!complete)
      throw horizon_error("product " + labels[x] + " * " + labels[y] +
                          " is not certified at this horizon");
    static const Row empty;
    return empty;
  }
  const Row* row_if_known(int x, int y) const {
    auto it = rows_.find(pair_key(x, y));
    if (it != rows_.end()) return &it->second;
    if (complete) { static const Row empty; return &empty; }
    return nullptr;
  }

  /// g_{x,y,z}; zero polynomial when z is absent from a known row.
  LaurentPoly entry(int x, int y, int z) const {
    const Row& r = row(x, y);
    for (const auto& [zi, pi] : r)
      if (zi == z) return pool[pi];
    return LaurentPoly();
  }

  const LaurentPoly& pool_poly(int i) const { return pool[i]; }

  std::size_t known_pair_count() const { return rows_.size(); }

  void for_each_known_pair(
      const std::function<void(int, int, const Row&)>& f) const {
    for (const auto& [key, r] : rows_)
      f(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), r);
  }

  // --- construction -------------------------------------------------------

  void set_labels(std::vector<std::string> ls) {
    labels = std::move(ls);
    label_index_.clear();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!label_index_.emplace(labels[i], static_cast<int>(i)).second)
        throw validation_error("duplicate basis label: " + labels[i]);
    }
  }

  int intern(const LaurentPoly& p) {
    auto it = intern_.find(p);
    if (it != intern_.end()) return it->second;
    pool.push_back(p);
    int idx = static_cast<int>(pool.size()) - 1;
    intern_.emplace(p, idx);
    return idx;
  }

  void set_row(int x, int y, Row r) { rows_[pair_key(x, y)] = std::move(r); }
  void set_row_from_map(int x, int y, const std::map<int, LaurentPoly>& m) {
    Row r;
    r.reserve(m.size());
    for (const auto& [z, p] : m)
      if (!p.is_zero()) r.emplace_back(z, intern(p));
    set_row(x, y, std::move(r));
  }

  void release_intern_cache() { intern_.clear(); }

  // --- checks -------------------------------------------------------------

  /// Multiply a sparse vector (index -> poly) by the basis element y on the
  /// right; nullopt when a needed pair is unknown.
  std::optional<std::map<int, LaurentPoly>> right_multiply(
      const std::map<int, LaurentPoly>& vec, int y) const {
    std::map<int, LaurentPoly> out;
    for (const auto& [x, c] : vec) {
      const Row* r = row_if_known(x, y);
      if (!r) return std::nullopt;
      for (const auto& [z, pi] : *r) {
        auto& acc = out[z];
        acc += c * pool[pi];
        if (acc.is_zero()) out.erase(z);
      }
    }
    return out;
  }

  std::optional<std::map<int, LaurentPoly>> multiply_basis(int x, int y) const {
    const Row* r = row_if_known(x, y);
    if (!r) return std::nullopt;
    std::map<int, LaurentPoly> out;
    for (const auto& [z, pi] : *r) out.emplace(z, pool[pi]);
    return out;
  }

  /// Associativity on sampled triples over the known region.
  /// Returns (checked, failed) counts.
  std::pair<int, int> check_associativity(int samples, unsigned seed) const {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, size() - 1);
    int checked = 0, failed = 0, attempts = 0;
    while (checked < samples && attempts < samples * 50) {
      ++attempts;
      int x = pick(rng), y = pick(rng), z = pick(rng);
      auto xy = multiply_basis(x, y);
      if (!xy) continue;
      auto xy_z = right_multiply(*xy, z);
      if (!xy_z) continue;
      auto yz = multiply_basis(y, z);
      if (!yz) continue;
      // x * (yz) needs rows (x, w); compute via left multiplication
      std::map<int, LaurentPoly> x_yz;
      bool ok = true;
      for (const auto& [w, c] : *yz) {
        const Row* r = row_if_known(x, w);
        if (!r) { ok = false; break; }
        for (const auto& [t, pi] : *r) {
          auto& acc = x_yz[t];
          acc += c * pool[pi];
          if (acc.is_zero()) x_yz.erase(t);
        }
      }
      if (!ok) continue;
      ++checked;
      if (*xy_z != x_yz) ++failed;
    }
    return {checked, failed};
  }

  /// Unit decomposition: mutually orthogonal idempotents whose sum acts as
  /// the identity on every known row.  Returns an error string or empty.
  std::string check_unit_decomposition() const {
    if (unit.empty()) return "empty unit decomposition";
    for (int e : unit)
      for (int f : unit) {
        const Row* r = row_if_known(e, f);
        if (!r) return "unit product " + labels[e] + "*" + labels[f] + " unknown";
        if (e == f) {
          if (r->size() != 1 || (*r)[0].first != e || !pool[(*r)[0].second].is_one())
            return labels[e] + " is not idempotent";
        } else if (!r->empty()) {
          return labels[e] + "*" + labels[f] + " is not zero";
        }
      }
    for (int x = 0; x < size(); ++x) {
      std::map<int, LaurentPoly> left_sum, right_sum;
      bool known_all = true;
      for (int e : unit) {
        const Row* le = row_if_known(e, x);
        const Row* ri = row_if_known(x, e);
        if (!le || !ri) { known_all = false; break; }
        for (const auto& [z, pi] : *le) {
          auto& a = left_sum[z]; a += pool[pi]; if (a.is_zero()) left_sum.erase(z);
        }
        for (const auto& [z, pi] : *ri) {
          auto& a = right_sum[z]; a += pool[pi]; if (a.is_zero()) right_sum.erase(z);
        }
      }
      if (!known_all) continue;
      std::map<int, LaurentPoly> expect;
      expect.emplace(x, LaurentPoly(1));
      if (left_sum != expect || right_sum != expect)
        return "unit decomposition does not act as identity on " + labels[x];
    }
    return {};
  }

private:
  std::unordered_map<std::uint64_t, Row> rows_;
  std::unordered_map<std::string, int> label_index_;
  std::map<LaurentPoly, int> intern_;
};

}  // namespace tabular

#endif

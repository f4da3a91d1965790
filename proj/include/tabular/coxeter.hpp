#ifndef TABULAR_COXETER_HPP
#define TABULAR_COXETER_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tabular/laurent.hpp"

namespace tabular {

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

/// Symmetric Coxeter matrix; 0 encodes an infinite bond order.
struct CoxeterMatrix {
  int rank = 0;
  std::vector<int> entries;  // rank*rank, row-major

  int operator()(int i, int j) const { return entries[i * rank + j]; }
  int& at(int i, int j) { return entries[i * rank + j]; }

  static CoxeterMatrix make(int rank, int off_diagonal_default = 2) {
    CoxeterMatrix m;
    m.rank = rank;
    m.entries.assign(static_cast<std::size_t>(rank) * rank,
                     off_diagonal_default);
    for (int i = 0; i < rank; ++i) m.at(i, i) = 1;
    return m;
  }

  void validate() const {
    if (rank <= 0) throw validation_error("Coxeter matrix: rank must be >= 1");
    for (int i = 0; i < rank; ++i) {
      if ((*this)(i, i) != 1)
        throw validation_error("Coxeter matrix: diagonal entries must be 1");
      for (int j = 0; j < rank; ++j) {
        if ((*this)(i, j) != (*this)(j, i))
          throw validation_error("Coxeter matrix must be symmetric");
        if (i != j && (*this)(i, j) != 0 && (*this)(i, j) < 2)
          throw validation_error(
              "Coxeter matrix: off-diagonal orders must be >= 2 (0 = infinity)");
      }
    }
  }

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
    return a.rank == b.rank && a.entries == b.entries;
  }
};

enum class CoxeterFamily { FiniteA, AffineA, Matrix };

class GroupElement;
class GroupHorizon;

namespace detail {

constexpr std::size_t kDefaultEnumerationCap = 1000000;

inline int floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return static_cast<int>(q);
}

inline int pos_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Coset-table enumeration over the trivial subgroup.  Generators are
// involutions, so Cayley edges are symmetric and the s^2 relators are
// implicit in the table layout.  Scanning passes repeat until the table is
// stable; throws horizon_error when the coset budget runs out.
class CosetEnumerator {
public:
  CosetEnumerator(const CoxeterMatrix& m, std::size_t cap)
      : rank_(m.rank), cap_(cap) {
    for (int i = 0; i < rank_; ++i)
      for (int j = i + 1; j < rank_; ++j) {
        int ord = m(i, j);
        if (ord == 0) continue;  // infinite bond: no relator
        std::vector<int> rel;
        rel.reserve(2 * ord);
        for (int k = 0; k < ord; ++k) { rel.push_back(i); rel.push_back(j); }
        relators_.push_back(std::move(rel));
      }
  }

  std::vector<std::vector<int>> run() {
    new_coset();  // identity coset
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < table_.size(); ++c) {
        if (!alive(c)) continue;
        for (const auto& rel : relators_) {
          if (!alive(c)) break;
          changed = scan_and_fill(find(static_cast<int>(c)), rel) || changed;
        }
        if (!alive(c)) continue;
        for (int g = 0; g < rank_; ++g) {
          int cc = find(static_cast<int>(c));
          if (entry(cc, g) < 0) {
            int d = new_coset();
            link(cc, g, d);
            changed = true;
          }
        }
      }
    }
    return compact();
  }

private:
  int rank_;
  std::size_t cap_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> table_;  // -1 = undefined
  std::vector<int> parent_;              // union-find
  std::deque<std::pair<int, int>> pending_;

  bool alive(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int find(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  int new_coset() {
    if (table_.size() >= cap_)
      throw horizon_error(
          "enumeration cap exceeded during coset enumeration (cap " +
          std::to_string(cap_) + ")");
    table_.emplace_back(rank_, -1);
    parent_.push_back(static_cast<int>(table_.size()) - 1);
    return static_cast<int>(table_.size()) - 1;
  }

  int entry(int c, int g) {
    int d = table_[c][g];
    return d < 0 ? -1 : find(d);
  }

  void link(int c, int g, int d) {
    c = find(c); d = find(d);
    int cd = entry(c, g);
    if (cd >= 0) {
      if (cd != d) coincide(cd, d);
      return;
    }
    int dc = entry(d, g);
    if (dc >= 0) {
      if (dc != c) coincide(dc, c);
      return;
    }
    table_[c][g] = d;
    table_[d][g] = c;
  }

  void coincide(int a, int b) {
    pending_.emplace_back(a, b);
    while (!pending_.empty()) {
      auto [x, y] = pending_.front();
      pending_.pop_front();
      x = find(x); y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      parent_[y] = x;
      for (int g = 0; g < rank_; ++g) {
        int img = table_[y][g];
        if (img < 0) continue;
        img = find(img);
        table_[y][g] = -1;
        int ximg = entry(x, g);
        if (ximg < 0) {
          table_[x][g] = img;
          table_[img][g] = x;
        } else if (ximg != img) {
          pending_.emplace_back(ximg, img);
        }
      }
    }
  }

  // Returns true if it changed the table (deduction, definition, merge).
  bool scan_and_fill(int c, const std::vector<int>& rel) {
    bool changed = false;
    int front = find(c);
    std::size_t i = 0;
    for (;;) {
      while (i < rel.size()) {
        int next = entry(front, rel[i]);
        if (next < 0) break;
        front = next;
        ++i;
      }
      if (i == rel.size()) {
        int cc = find(c);
        if (front != cc) { coincide(front, cc); changed = true; }
        return changed;
      }
      int back = find(c);
      std::size_t j = rel.size();
      while (j > i + 1) {
        int prev = entry(back, rel[j - 1]);
        if (prev < 0) break;
        back = prev;
        --j;
      }
      if (j == i + 1) {
        link(front, rel[i], back);
        return true;
      }
      int d = new_coset();
      link(front, rel[i], d);
      changed = true;
      front = find(front);
      int next = entry(front, rel[i]);
      if (next < 0) return changed;  // wiped by a merge; later pass rescans
      front = next;
      ++i;
    }
  }

  std::vector<std::vector<int>> compact() {
    std::vector<int> remap(table_.size(), -1);
    int live = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (alive(c)) remap[c] = live++;
    std::vector<std::vector<int>> out(live, std::vector<int>(rank_, -1));
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(c)) continue;
      for (int g = 0; g < rank_; ++g) {
        int d = entry(static_cast<int>(c), g);
        if (d < 0)
          throw std::logic_error("coset table incomplete after enumeration");
        out[remap[c]][g] = remap[d];
      }
    }
    return out;
  }
};

struct PresentationImpl {
  CoxeterFamily family = CoxeterFamily::FiniteA;
  int rank = 0;          // number of Coxeter generators
  int window_size = 0;   // strands for the permutation models
  int omega_order = 1;
  CoxeterMatrix matrix;

  // Cayley data for the Matrix family (full finite group).
  std::vector<std::vector<int>> right_table;
  std::vector<int> lengths;
  std::vector<int> inverses;
  std::vector<std::vector<int>> words;  // shortlex normal forms

  std::string fingerprint() const {
    std::ostringstream os;
    os << static_cast<int>(family) << ":" << rank << ":" << omega_order << ":";
    for (int e : matrix.entries) os << e << ",";
    return os.str();
  }
};

}  // namespace detail

/// A finite or (extended) affine Coxeter presentation.  Cheap to copy; the
/// underlying tables are shared and immutable.
class CoxeterPresentation {
public:
  CoxeterPresentation() = default;  // empty handle

  /// Finite type A_rank, the symmetric group on rank+1 letters.
  static CoxeterPresentation finite_a(int rank) {
    if (rank < 1) throw validation_error("finite A requires rank >= 1");
    auto impl = std::make_shared<detail::PresentationImpl>();
    impl->family = CoxeterFamily::FiniteA;
    impl->rank = rank;
    impl->window_size = rank + 1;
    impl->omega_order = 1;
    impl->matrix = CoxeterMatrix::make(rank);
    for (int i = 0; i + 1 < rank; ++i) {
      impl->matrix.at(i, i + 1) = 3;
      impl->matrix.at(i + 1, i) = 3;
    }
    return CoxeterPresentation(std::move(impl));
  }

  /// Affine type A-hat_{n-1} on n strands, optionally extended by the
  /// graph-rotation group of order n.
  static CoxeterPresentation affine_a(int n, bool extended) {
    if (n < 3) throw validation_error("affine A-hat requires n >= 3");
    auto impl = std::make_shared<detail::PresentationImpl>();
    impl->family = CoxeterFamily::AffineA;
    impl->rank = n;
    impl->window_size = n;
    impl->omega_order = extended ? n : 1;
    impl->matrix = CoxeterMatrix::make(n);
    for (int i = 0; i < n; ++i) {
      int j = (i + 1) % n;
      impl->matrix.at(i, j) = 3;
      impl->matrix.at(j, i) = 3;
    }
    return CoxeterPresentation(std::move(impl));
  }

  /// A presentation given by an arbitrary Coxeter matrix.  The whole group
  /// is enumerated up front, so it must be finite and below the cap.
  static CoxeterPresentation from_matrix(
      CoxeterMatrix m, std::size_t cap = detail::kDefaultEnumerationCap) {
    m.validate();
    auto impl = std::make_shared<detail::PresentationImpl>();
    impl->family = CoxeterFamily::Matrix;
    impl->rank = m.rank;
    impl->omega_order = 1;
    impl->matrix = m;
    detail::CosetEnumerator tc(m, cap);
    impl->right_table = tc.run();
    build_cayley_metadata(*impl);
    return CoxeterPresentation(std::move(impl));
  }

  bool empty() const { return impl_ == nullptr; }
  CoxeterFamily family() const { return impl().family; }
  int rank() const { return impl().rank; }
  int omega_order() const { return impl().omega_order; }
  bool extended() const { return impl().omega_order > 1; }
  const CoxeterMatrix& matrix() const { return impl().matrix; }
  int window_size() const { return impl().window_size; }

  /// Group order for the Matrix family (fully enumerated).
  std::size_t table_size() const { return impl().right_table.size(); }

  bool same_as(const CoxeterPresentation& o) const {
    if (impl_ == o.impl_) return true;
    if (!impl_ || !o.impl_) return false;
    return impl_->fingerprint() == o.impl_->fingerprint();
  }

  std::string generator_name(int g) const {
    // affine generators carry their standard 0-based names
    return std::to_string(impl().family == CoxeterFamily::AffineA ? g : g + 1);
  }

  GroupElement identity() const;
  GroupElement generator(int g) const;
  GroupElement omega(int power = 1) const;

  const detail::PresentationImpl& impl() const {
    if (!impl_) throw std::logic_error("empty presentation handle");
    return *impl_;
  }

private:
  explicit CoxeterPresentation(std::shared_ptr<detail::PresentationImpl> impl)
      : impl_(std::move(impl)) {}

  static void build_cayley_metadata(detail::PresentationImpl& impl) {
    const auto& right = impl.right_table;
    std::size_t n = right.size();
    impl.lengths.assign(n, -1);
    impl.words.assign(n, {});
    impl.lengths[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int g = 0; g < impl.rank; ++g) {
        int y = right[x][g];
        if (impl.lengths[y] < 0) {
          impl.lengths[y] = impl.lengths[x] + 1;
          impl.words[y] = impl.words[x];
          impl.words[y].push_back(g);
          queue.push_back(y);
        }
      }
    }
    impl.inverses.assign(n, -1);
    for (std::size_t x = 0; x < n; ++x) {
      const auto& w = impl.words[x];
      int inv = 0;
      for (auto it = w.rbegin(); it != w.rend(); ++it) inv = right[inv][*it];
      impl.inverses[x] = inv;
    }
    // shortlex normal forms: greedily peel the smallest left descent
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<int> word;
      int cur = static_cast<int>(x);
      while (impl.lengths[cur] > 0) {
        for (int g = 0; g < impl.rank; ++g) {
          int left = impl.inverses[right[impl.inverses[cur]][g]];
          if (impl.lengths[left] < impl.lengths[cur]) {
            word.push_back(g);
            cur = left;
            break;
          }
        }
      }
      impl.words[x] = std::move(word);
    }
  }

  std::shared_ptr<const detail::PresentationImpl> impl_;
};

/// An element of an (extended) Coxeter group, written as omega^k * w.  The
/// permutation families keep w as an affine window [f(1),...,f(n)] with
/// f(i+n) = f(i)+n and zero shift sum; Matrix-family elements index the
/// enumerated Cayley table.
class GroupElement {
public:
  GroupElement() = default;

  const CoxeterPresentation& presentation() const { return pres_; }
  int omega_part() const { return omega_; }

  bool is_identity() const { return omega_ == 0 && length() == 0; }

  int length() const {
    const auto& impl = pres_.impl();
    if (impl.family == CoxeterFamily::Matrix) return impl.lengths[index_];
    int n = impl.window_size;
    int len = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        len += std::abs(detail::floor_div(window_[j] - window_[i], n));
    return len;
  }

  GroupElement inverse() const {
    const auto& impl = pres_.impl();
    GroupElement r(*this);
    if (impl.family == CoxeterFamily::Matrix) {
      r.index_ = impl.inverses[index_];
      return r;
    }
    int n = impl.window_size;
    r.omega_ = detail::pos_mod(-omega_, impl.omega_order);
    std::vector<std::int64_t> inv(n);
    for (int i = 0; i < n; ++i) {
      std::int64_t v = window_[i];
      int r0 = detail::pos_mod(v - 1, n);  // v = (r0+1) + q*n
      std::int64_t q = (v - (r0 + 1)) / n;
      inv[r0] = (i + 1) - q * n;
    }
    r.window_ = rotate_conj(inv, omega_, n);
    return r;
  }

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    if (!x.pres_.same_as(y.pres_))
      throw validation_error("group elements from different presentations");
    const auto& impl = x.pres_.impl();
    GroupElement r(x);
    if (impl.family == CoxeterFamily::Matrix) {
      int cur = x.index_;
      for (int g : impl.words[y.index_]) cur = impl.right_table[cur][g];
      r.index_ = cur;
      return r;
    }
    int n = impl.window_size;
    r.omega_ = detail::pos_mod(x.omega_ + y.omega_, impl.omega_order);
    // (om^a w1)(om^b w2) = om^{a+b} (rho^{-b} w1 rho^b) w2
    std::vector<std::int64_t> left = rotate_conj(x.window_, -y.omega_, n);
    std::vector<std::int64_t> out(n);
    for (int j = 0; j < n; ++j) {
      std::int64_t u = y.window_[j];
      int r0 = detail::pos_mod(u - 1, n);
      std::int64_t q = (u - (r0 + 1)) / n;
      out[j] = left[r0] + q * n;
    }
    r.window_ = std::move(out);
    return r;
  }

  /// Right product with generator g.
  GroupElement right(int g) const {
    const auto& impl = pres_.impl();
    GroupElement r(*this);
    if (impl.family == CoxeterFamily::Matrix) {
      r.index_ = impl.right_table[index_][g];
      return r;
    }
    int n = impl.window_size;
    r.window_ = window_;
    if (impl.family == CoxeterFamily::FiniteA) {
      std::swap(r.window_[g], r.window_[g + 1]);
    } else if (g == 0) {
      std::int64_t first = window_[0], last = window_[n - 1];
      r.window_[0] = last - n;
      r.window_[n - 1] = first + n;
    } else {
      std::swap(r.window_[g - 1], r.window_[g]);
    }
    return r;
  }

  /// Left product s_g * x.  For omega^k w the generator twists through the
  /// omega part: s_g * om^k w = om^k * s_{g-k} w in affine type.
  GroupElement left(int g) const {
    const auto& impl = pres_.impl();
    if (impl.family == CoxeterFamily::Matrix) {
      GroupElement r(*this);
      r.index_ = impl.inverses[impl.right_table[impl.inverses[index_]][g]];
      return r;
    }
    GroupElement r(*this);
    int n = impl.window_size;
    r.window_ = window_;
    if (impl.family == CoxeterFamily::FiniteA) {
      std::int64_t a = g + 1;
      for (int j = 0; j < n; ++j) {
        if (r.window_[j] == a) r.window_[j] = a + 1;
        else if (r.window_[j] == a + 1) r.window_[j] = a;
      }
    } else {
      int a = detail::pos_mod(g - omega_, n);
      int b = detail::pos_mod(a + 1, n);
      for (int j = 0; j < n; ++j) {
        int res = detail::pos_mod(r.window_[j], n);
        if (res == a) r.window_[j] += 1;
        else if (res == b) r.window_[j] -= 1;
      }
    }
    return r;
  }

  bool right_descent(int g) const {
    const auto& impl = pres_.impl();
    if (impl.family == CoxeterFamily::Matrix)
      return impl.lengths[impl.right_table[index_][g]] < impl.lengths[index_];
    int n = impl.window_size;
    if (impl.family == CoxeterFamily::FiniteA)
      return window_[g] > window_[g + 1];
    if (g == 0) return window_[n - 1] > window_[0] + n;
    return window_[g - 1] > window_[g];
  }

  bool left_descent(int g) const {
    const auto& impl = pres_.impl();
    if (impl.family == CoxeterFamily::Matrix) {
      int li = impl.inverses[impl.right_table[impl.inverses[index_]][g]];
      return impl.lengths[li] < impl.lengths[index_];
    }
    int n = impl.window_size;
    std::int64_t a;
    if (impl.family == CoxeterFamily::FiniteA) a = g + 1;
    else a = detail::pos_mod(g - omega_, n);
    // s_a x < x  iff  the value a sits at a later position than a+1
    return position_of(a) > position_of(a + 1);
  }

  /// Shortlex-minimal reduced word of the Coxeter part (generator ids).
  std::vector<int> canonical_word() const {
    const auto& impl = pres_.impl();
    if (impl.family == CoxeterFamily::Matrix) return impl.words[index_];
    std::vector<int> word;
    GroupElement cur(*this);
    cur.omega_ = 0;
    int len = cur.length();
    while (len > 0) {
      for (int g = 0; g < impl.rank; ++g) {
        if (cur.left_descent(g)) {
          word.push_back(g);
          cur = cur.left(g);
          --len;
          break;
        }
      }
    }
    return word;
  }

  std::string label() const {
    std::ostringstream os;
    if (omega_ != 0) os << "o" << omega_;
    std::vector<int> w = canonical_word();
    if (w.empty()) {
      if (omega_ == 0) os << "e";
      return os.str();
    }
    if (omega_ != 0) os << "*";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) os << ".";
      os << pres_.generator_name(w[i]);
    }
    return os.str();
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.omega_ == b.omega_ && a.index_ == b.index_ &&
           a.window_ == b.window_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.omega_ != b.omega_) return a.omega_ < b.omega_;
    if (a.index_ != b.index_) return a.index_ < b.index_;
    return a.window_ < b.window_;
  }

  const std::vector<std::int64_t>& window() const { return window_; }
  int table_index() const { return index_; }

private:
  friend class CoxeterPresentation;
  friend class GroupHorizon;

  // rho^power(w) = rho^power w rho^{-power}, rho the shift i -> i+1
  static std::vector<std::int64_t> rotate_conj(
      const std::vector<std::int64_t>& w, int power, int n) {
    int p = detail::pos_mod(power, n);
    if (p == 0) return w;
    std::vector<std::int64_t> out(n);
    for (int j = 1; j <= n; ++j) {
      std::int64_t arg = j - p;
      int r0 = detail::pos_mod(arg - 1, n);
      std::int64_t q = (arg - (r0 + 1)) / n;
      out[j - 1] = w[r0] + q * n + p;
    }
    return out;
  }

  // position i with w(i) = v, using the periodic extension of the window
  std::int64_t position_of(std::int64_t v) const {
    const auto& impl = pres_.impl();
    int n = impl.window_size;
    int r0 = detail::pos_mod(v - 1, n);
    for (int i = 0; i < n; ++i)
      if (detail::pos_mod(window_[i] - 1, n) == r0)
        return static_cast<std::int64_t>(i + 1) + (v - window_[i]);
    throw std::logic_error("window misses a residue class");
  }

  CoxeterPresentation pres_;
  int omega_ = 0;
  int index_ = 0;                     // Matrix family
  std::vector<std::int64_t> window_;  // permutation models
};

inline GroupElement CoxeterPresentation::identity() const {
  GroupElement e;
  e.pres_ = *this;
  if (impl().family != CoxeterFamily::Matrix) {
    e.window_.resize(impl().window_size);
    std::iota(e.window_.begin(), e.window_.end(), 1);
  }
  return e;
}

inline GroupElement CoxeterPresentation::generator(int g) const {
  if (g < 0 || g >= impl().rank)
    throw validation_error("generator index out of range");
  return identity().right(g);
}

inline GroupElement CoxeterPresentation::omega(int power) const {
  if (power != 0 && !extended())
    throw validation_error("presentation has trivial omega group");
  GroupElement e = identity();
  e.omega_ = detail::pos_mod(power, impl().omega_order);
  return e;
}

/// Bruhat-Chevalley order via the lifting property, memoised per query.
/// Elements in distinct omega fibres are incomparable.
inline bool bruhat_leq(const GroupElement& x, const GroupElement& y) {
  if (!x.presentation().same_as(y.presentation()))
    throw validation_error("bruhat_leq: mismatched presentations");
  if (x.omega_part() != y.omega_part()) return false;
  GroupElement u = x, w = y;
  if (x.omega_part() != 0) {
    u = x.presentation().omega(-x.omega_part()) * x;
    w = y.presentation().omega(-y.omega_part()) * y;
  }
  struct Rec {
    int rank;
    std::map<std::pair<GroupElement, GroupElement>, bool> memo;
    bool leq(const GroupElement& a, const GroupElement& b, int la, int lb) {
      if (la > lb) return false;
      if (la == 0) return true;
      auto key = std::make_pair(a, b);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      bool r = false;
      for (int g = 0; g < rank; ++g) {
        if (!b.right_descent(g)) continue;
        GroupElement bs = b.right(g);
        if (a.right_descent(g))
          r = leq(a.right(g), bs, la - 1, lb - 1);
        else
          r = leq(a, bs, la, lb - 1);
        break;
      }
      memo.emplace(key, r);
      return r;
    }
  } rec{x.presentation().rank(), {}};
  return rec.leq(u, w, u.length(), w.length());
}

inline std::pair<int, GroupElement> length_and_inverse(const GroupElement& x) {
  return {x.length(), x.inverse()};
}

/// Complete list of group elements with length <= bound, closed under
/// inverse and omega translation, with generator multiplication tables.
/// Immutable after construction.
class GroupHorizon {
public:
  static constexpr int kEscape = -1;

  GroupHorizon(const CoxeterPresentation& pres, int length_bound,
               std::size_t cap = detail::kDefaultEnumerationCap)
      : pres_(pres), bound_(length_bound) {
    if (length_bound < 0) {
      if (pres.family() == CoxeterFamily::AffineA)
        throw validation_error(
            "full enumeration of an affine group is not possible; "
            "give a length bound");
      bound_ = std::numeric_limits<int>::max();
    }
    enumerate(cap);
    index_tables();
  }

  const CoxeterPresentation& presentation() const { return pres_; }
  int length_bound() const { return bound_; }
  /// True when the whole group was enumerated (finite groups only).
  bool complete_group() const { return complete_; }
  std::size_t size() const { return elems_.size(); }

  const GroupElement& element(int i) const { return elems_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  int length(int i) const { return lengths_[i]; }
  int inverse(int i) const { return inverses_[i]; }
  int omega_of(int i) const { return elems_[i].omega_part(); }
  int max_length() const { return max_length_; }
  /// Shortlex reduced word of the Coxeter part.
  const std::vector<int>& word(int i) const { return words_[i]; }

  /// Index of x*s_g, or kEscape when it leaves the horizon.
  int right(int i, int g) const { return right_[i][g]; }
  /// Index of s_g*x, or kEscape.
  int left(int i, int g) const { return left_[i][g]; }
  /// Index of x * omega^k (never escapes).
  int omega_right(int i, int k) const {
    return omega_right_[i][detail::pos_mod(k, pres_.omega_order())];
  }
  /// Index of omega^k * x (never escapes).
  int omega_left(int i, int k) const {
    return omega_left_[i][detail::pos_mod(k, pres_.omega_order())];
  }

  std::optional<int> index_of(const GroupElement& e) const {
    auto it = index_.find(element_key(e));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int identity_index() const { return id_index_; }

  std::vector<int> right_descents(int i) const {
    std::vector<int> out;
    for (int g = 0; g < pres_.rank(); ++g)
      if (elems_[i].right_descent(g)) out.push_back(g);
    return out;
  }
  std::vector<int> left_descents(int i) const {
    std::vector<int> out;
    for (int g = 0; g < pres_.rank(); ++g)
      if (elems_[i].left_descent(g)) out.push_back(g);
    return out;
  }

  bool bruhat_leq_idx(int i, int j) const { return bruhat_leq(elems_[i], elems_[j]); }

private:
  static std::string element_key(const GroupElement& e) {
    std::ostringstream os;
    os << e.omega_part() << "|" << e.table_index();
    for (auto v : e.window()) os << "," << v;
    return os.str();
  }

  void enumerate(std::size_t cap) {
    const int omega_n = pres_.omega_order();
    std::vector<GroupElement> coxeter_part;
    std::unordered_map<std::string, int> seen;
    GroupElement e = pres_.identity();
    coxeter_part.push_back(e);
    seen.emplace(element_key(e), 0);
    std::deque<int> frontier{0};
    complete_ = true;
    while (!frontier.empty()) {
      int i = frontier.front();
      frontier.pop_front();
      const GroupElement cur = coxeter_part[i];
      int len = cur.length();
      if (len >= bound_) {
        for (int g = 0; g < pres_.rank(); ++g)
          if (!cur.right_descent(g)) { complete_ = false; break; }
        continue;
      }
      for (int g = 0; g < pres_.rank(); ++g) {
        GroupElement next = cur.right(g);
        if (next.length() != len + 1) continue;
        auto key = element_key(next);
        if (seen.count(key)) continue;
        if ((coxeter_part.size() + 1) * static_cast<std::size_t>(omega_n) > cap)
          throw horizon_error("enumeration cap exceeded (cap " +
                              std::to_string(cap) + " elements)");
        seen.emplace(key, static_cast<int>(coxeter_part.size()));
        frontier.push_back(static_cast<int>(coxeter_part.size()));
        coxeter_part.push_back(std::move(next));
      }
    }

    elems_.clear();
    for (int k = 0; k < omega_n; ++k) {
      GroupElement om = k == 0 ? pres_.identity() : pres_.omega(k);
      for (const auto& w : coxeter_part) elems_.push_back(om * w);
    }
    std::sort(elems_.begin(), elems_.end(),
              [](const GroupElement& a, const GroupElement& b) {
                int la = a.length(), lb = b.length();
                if (la != lb) return la < lb;
                if (a.omega_part() != b.omega_part())
                  return a.omega_part() < b.omega_part();
                auto wa = a.canonical_word(), wb = b.canonical_word();
                if (wa != wb) return wa < wb;
                return a < b;
              });
  }

  void index_tables() {
    const int rank = pres_.rank();
    const int omega_n = pres_.omega_order();
    index_.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i)
      index_.emplace(element_key(elems_[i]), static_cast<int>(i));
    lengths_.resize(elems_.size());
    labels_.resize(elems_.size());
    words_.resize(elems_.size());
    inverses_.resize(elems_.size());
    right_.assign(elems_.size(), std::vector<int>(rank, kEscape));
    left_.assign(elems_.size(), std::vector<int>(rank, kEscape));
    omega_right_.assign(elems_.size(), std::vector<int>(omega_n, kEscape));
    omega_left_.assign(elems_.size(), std::vector<int>(omega_n, kEscape));
    max_length_ = 0;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      lengths_[i] = elems_[i].length();
      max_length_ = std::max(max_length_, lengths_[i]);
      labels_[i] = elems_[i].label();
      words_[i] = elems_[i].canonical_word();
      auto inv = index_.find(element_key(elems_[i].inverse()));
      if (inv == index_.end())
        throw std::logic_error("horizon not closed under inverse");
      inverses_[i] = inv->second;
      for (int g = 0; g < rank; ++g) {
        auto r = index_.find(element_key(elems_[i].right(g)));
        right_[i][g] = r == index_.end() ? kEscape : r->second;
        auto l = index_.find(element_key(elems_[i].left(g)));
        left_[i][g] = l == index_.end() ? kEscape : l->second;
      }
      for (int k = 0; k < omega_n; ++k) {
        GroupElement om = k == 0 ? pres_.identity() : pres_.omega(k);
        auto r = index_.find(element_key(elems_[i] * om));
        omega_right_[i][k] = r == index_.end() ? kEscape : r->second;
        auto l = index_.find(element_key(om * elems_[i]));
        omega_left_[i][k] = l == index_.end() ? kEscape : l->second;
      }
      if (lengths_[i] == 0 && elems_[i].omega_part() == 0)
        id_index_ = static_cast<int>(i);
    }
  }

  CoxeterPresentation pres_;
  int bound_;
  bool complete_ = false;
  int id_index_ = 0;
  int max_length_ = 0;
  std::vector<GroupElement> elems_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> lengths_, inverses_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<int>> right_, left_, omega_right_, omega_left_;
};

inline GroupHorizon enumerate_horizon(
    const CoxeterPresentation& p, int length_bound,
    std::size_t cap = detail::kDefaultEnumerationCap) {
  return GroupHorizon(p, length_bound, cap);
}

}  // namespace tabular

#endif

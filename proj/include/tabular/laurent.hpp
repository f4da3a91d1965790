#ifndef TABULAR_LAURENT_HPP
#define TABULAR_LAURENT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tabular {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

class horizon_error : public std::runtime_error {
public:
  explicit horizon_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exact Laurent polynomial in one variable v with arbitrary-precision
/// integer coefficients.  Terms are kept sorted by exponent and never
/// store a zero coefficient; the zero polynomial is the empty term list.
class LaurentPoly {
public:
  using Term = std::pair<int, Int>;

  /// Degree of the zero polynomial; sorts below every attainable exponent.
  static constexpr int neg_infinity = std::numeric_limits<int>::min();

  LaurentPoly() = default;
  LaurentPoly(long c) { if (c != 0) terms_.emplace_back(0, Int(c)); }
  explicit LaurentPoly(Int c) {
    if (c != 0) terms_.emplace_back(0, std::move(c));
  }

  static LaurentPoly monomial(int exponent, Int coeff = Int(1)) {
    LaurentPoly p;
    if (coeff != 0) p.terms_.emplace_back(exponent, std::move(coeff));
    return p;
  }
  static LaurentPoly v(int exponent = 1) { return monomial(exponent); }

  /// Build from arbitrary (exponent, coefficient) pairs; merges duplicates.
  static LaurentPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
    }
    p.strip_zeros();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
  }

  /// Highest exponent with nonzero coefficient, neg_infinity if zero.
  int degree() const { return terms_.empty() ? neg_infinity : terms_.back().first; }
  /// Lowest exponent with nonzero coefficient; only valid on nonzero input.
  int low_degree() const {
    if (terms_.empty()) throw std::logic_error("low_degree of zero polynomial");
    return terms_.front().first;
  }

  Int coeff(int exponent) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exponent,
        [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return Int(0);
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    *this = merge(*this, o, false);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    *this = merge(*this, o, true);
    return *this;
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    return merge(a, b, false);
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return merge(a, b, true);
  }
  LaurentPoly operator-() const {
    LaurentPoly p(*this);
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly();
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        out.emplace_back(ta.first + tb.first, ta.second * tb.second);
    return from_terms(std::move(out));
  }
  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  LaurentPoly& scale(const Int& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }
  /// Multiply by c * v^e in place.
  LaurentPoly& shift_scale(int e, const Int& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& t : terms_) { t.first += e; t.second *= c; }
    return *this;
  }

  void add_term(int exponent, const Int& c) {
    if (c == 0) return;
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exponent,
        [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, Term(exponent, c));
    }
  }

  /// The ring automorphism v -> v^{-1}.
  LaurentPoly bar() const {
    LaurentPoly p;
    p.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      p.terms_.emplace_back(-it->first, it->second);
    return p;
  }

  /// True when every exponent is <= 0 and the exponent-0 coefficient is c,
  /// i.e. the polynomial is congruent to c modulo v^{-1} Z[v^{-1}].
  bool congruent_mod_vinv(const Int& c) const {
    if (degree() > 0) return false;
    return coeff(0) == c;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ < b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Int& c = it->second;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      Int a = abs(c);
      if (a != 1 || it->first == 0) os << a.str();
      if (it->first != 0) {
        if (a != 1) os << "*";
        os << "v";
        if (it->first != 1) os << "^" << it->first;
      }
      first = false;
    }
    return os.str();
  }

private:
  void strip_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.second == 0; }),
                 terms_.end());
  }

  static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b,
                           bool subtract) {
    LaurentPoly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() ||
          (ia != a.terms_.end() && ia->first < ib->first)) {
        out.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        out.terms_.emplace_back(ib->first,
                                subtract ? Int(-ib->second) : ib->second);
        ++ib;
      } else {
        Int c = subtract ? Int(ia->second - ib->second)
                         : Int(ia->second + ib->second);
        if (c != 0) out.terms_.emplace_back(ia->first, std::move(c));
        ++ia; ++ib;
      }
    }
    return out;
  }

  std::vector<Term> terms_;
};

inline LaurentPoly operator*(const Int& c, const LaurentPoly& p) {
  LaurentPoly q(p);
  q.scale(c);
  return q;
}

/// Coefficient field for specialization: the rationals or a prime field F_p.
struct Field {
  bool rational = true;
  std::int64_t p = 0;

  static Field rationals() { return Field{true, 0}; }
  static Field prime(std::int64_t p) {
    if (p < 2 || !is_prime(p))
      throw validation_error("prime field characteristic must be prime, got " +
                             std::to_string(p));
    return Field{false, p};
  }

  static bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.rational == b.rational && a.p == b.p;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  std::string name() const {
    return rational ? "Q" : ("F" + std::to_string(p));
  }
};

/// A value in a Field; rationals are exact, prime-field values reduced mod p.
class FieldScalar {
public:
  FieldScalar() : field_(Field::rationals()), q_(0) {}
  FieldScalar(Field f, Rational q) : field_(f) {
    if (f.rational) {
      q_ = std::move(q);
    } else {
      // reduce numerator * denominator^{-1} mod p
      Int num = numerator(q) % f.p;
      Int den = denominator(q) % f.p;
      if (den == 0) throw validation_error("denominator divisible by p");
      r_ = mod_pos(static_cast<std::int64_t>(num), f.p);
      r_ = mul_mod(r_, inv_mod(mod_pos(static_cast<std::int64_t>(den), f.p), f.p), f.p);
    }
  }
  static FieldScalar from_int(const Field& f, const Int& n) {
    if (f.rational) return FieldScalar(f, Rational(n));
    FieldScalar s;
    s.field_ = f;
    s.r_ = mod_pos(static_cast<std::int64_t>(n % f.p), f.p);
    return s;
  }
  static FieldScalar zero(const Field& f) { return from_int(f, Int(0)); }
  static FieldScalar one(const Field& f) { return from_int(f, Int(1)); }

  const Field& field() const { return field_; }
  bool is_zero() const { return field_.rational ? q_ == 0 : r_ == 0; }
  bool is_one() const { return field_.rational ? q_ == 1 : r_ == 1; }

  const Rational& rational_value() const {
    if (!field_.rational) throw std::logic_error("not a rational value");
    return q_;
  }
  std::int64_t prime_value() const {
    if (field_.rational) throw std::logic_error("not a prime-field value");
    return r_;
  }

  friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
    a.check(b);
    FieldScalar s(a);
    if (a.field_.rational) s.q_ += b.q_;
    else s.r_ = mod_pos(a.r_ + b.r_, a.field_.p);
    return s;
  }
  friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
    a.check(b);
    FieldScalar s(a);
    if (a.field_.rational) s.q_ -= b.q_;
    else s.r_ = mod_pos(a.r_ - b.r_, a.field_.p);
    return s;
  }
  friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    a.check(b);
    FieldScalar s(a);
    if (a.field_.rational) s.q_ *= b.q_;
    else s.r_ = mul_mod(a.r_, b.r_, a.field_.p);
    return s;
  }
  FieldScalar operator-() const {
    FieldScalar s(*this);
    if (field_.rational) s.q_ = -s.q_;
    else s.r_ = mod_pos(-s.r_, field_.p);
    return s;
  }
  FieldScalar inverse() const {
    if (is_zero()) throw validation_error("inverse of zero field element");
    FieldScalar s(*this);
    if (field_.rational) s.q_ = 1 / s.q_;
    else s.r_ = inv_mod(s.r_, field_.p);
    return s;
  }
  FieldScalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldScalar acc = one(field_), base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
    if (a.field_ != b.field_) return false;
    return a.field_.rational ? a.q_ == b.q_ : a.r_ == b.r_;
  }
  friend bool operator!=(const FieldScalar& a, const FieldScalar& b) {
    return !(a == b);
  }

  std::string to_string() const {
    if (field_.rational) {
      std::ostringstream os;
      os << q_;
      return os.str();
    }
    return std::to_string(r_);
  }

private:
  void check(const FieldScalar& o) const {
    if (field_ != o.field_)
      throw validation_error("field mismatch: " + field_.name() + " vs " +
                             o.field_.name());
  }
  static std::int64_t mod_pos(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
  }
  static std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(
        (static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b)) %
        static_cast<unsigned __int128>(p));
  }
  static std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    // extended Euclid; a nonzero mod p
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t; t = new_t; new_t = tmp;
      tmp = r - q * new_r; r = new_r; new_r = tmp;
    }
    if (r != 1) throw validation_error("element not invertible mod p");
    return mod_pos(t, p);
  }

  Field field_;
  Rational q_;
  std::int64_t r_ = 0;
};

/// Evaluate a Laurent polynomial at v = r in the given field.  r must be
/// nonzero since negative exponents require its inverse.
inline FieldScalar specialize(const LaurentPoly& a, const FieldScalar& r) {
  if (r.is_zero())
    throw validation_error("specialization point r must be nonzero");
  FieldScalar acc = FieldScalar::zero(r.field());
  for (const auto& [e, c] : a.terms())
    acc = acc + FieldScalar::from_int(r.field(), c) * r.pow(e);
  return acc;
}

}  // namespace tabular

#endif

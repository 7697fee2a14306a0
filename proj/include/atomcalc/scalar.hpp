#pragma once

// Exact scalar types for the engine.
//
// Two fields are supported: prime fields F_p (p < 2^31, runtime modulus) and
// the rationals.  Rational wraps boost cpp_int with a normalized
// numerator/denominator pair; the big-int constructors are explicit so that
// Eigen's overload-resolution probes (is_convertible<Matrix, Scalar>) fail
// cleanly instead of instantiating boost internals on matrix types.  Every
// algorithm in the library is templated on the scalar and uses only field
// operations, so both share one code path.

#include <cassert>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <ostream>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace atomcalc {

// Which field a model lives over.  p == 0 means the rationals.
struct FieldSpec {
  std::uint32_t p = 0;
  bool is_rational() const { return p == 0; }
  bool operator==(const FieldSpec&) const = default;
};

class Rational {
public:
  using Int = boost::multiprecision::cpp_int;

  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit for literals
  Rational(int n) : num_(n), den_(1) {}        // NOLINT
  explicit Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    assert(b.num_ != 0);
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  std::string str() const {
    return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& a) {
    return os << a.str();
  }

private:
  void normalize() {
    assert(den_ != 0);
    if (num_ == 0) { den_ = 1; return; }
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Int num_, den_;
};

// Element of F_p with the modulus carried at runtime.
//
// Generic code (Eigen's setZero, setIdentity, ...) creates scalars as
// Fp(0) / Fp(1) with no way to pass a modulus.  Such values are "unattached"
// (p == 0): they behave as integer literals and adopt the modulus of the
// first attached operand they meet.  Invariant once attached: 0 <= v < p.
class Fp {
public:
  Fp() : v_(0), p_(0) {}
  Fp(long long n) : v_(n), p_(0) {}  // NOLINT: implicit for Eigen literals
  Fp(long long n, std::uint32_t p) : v_(n), p_(p) { reduce(); }

  std::int64_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool attached() const { return p_ != 0; }

  // Attach an unattached literal to a modulus (no-op if already attached to p).
  Fp attach(std::uint32_t p) const {
    if (p_ != 0) { assert(p_ == p); return *this; }
    return Fp(v_, p);
  }

  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) { unify(a, b); return make(a.v_ + b.v_, a.p_); }
  friend Fp operator-(Fp a, Fp b) { unify(a, b); return make(a.v_ - b.v_, a.p_); }
  friend Fp operator*(Fp a, Fp b) { unify(a, b); return make(a.v_ * b.v_, a.p_); }
  friend Fp operator/(Fp a, Fp b) { unify(a, b); return a * b.inverse(); }
  Fp operator-() const { return p_ ? Fp(p_ - v_, p_) : Fp(-v_); }

  Fp& operator+=(Fp o) { *this = *this + o; return *this; }
  Fp& operator-=(Fp o) { *this = *this - o; return *this; }
  Fp& operator*=(Fp o) { *this = *this * o; return *this; }
  Fp& operator/=(Fp o) { *this = *this / o; return *this; }

  // Extended Euclid; requires an attached prime modulus and a unit argument.
  Fp inverse() const {
    assert(p_ != 0 && v_ != 0);
    std::int64_t t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    assert(r == 1);
    return Fp(t, p_);
  }

  friend bool operator==(Fp a, Fp b) { unify(a, b); return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

private:
  static Fp make(std::int64_t raw, std::uint32_t p) {
    Fp r; r.v_ = raw; r.p_ = p; r.reduce(); return r;
  }
  void reduce() {
    if (p_ == 0) return;
    v_ %= static_cast<std::int64_t>(p_);
    if (v_ < 0) v_ += p_;
  }
  // Mixed attached/unattached operands: the literal adopts the modulus.
  static void unify(Fp& a, Fp& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0) { a.p_ = b.p_; a.reduce(); return; }
    if (b.p_ == 0) { b.p_ = a.p_; b.reduce(); return; }
    assert(false && "mixed moduli");
  }

  std::int64_t v_;
  std::uint32_t p_;
};

// Field-generic helpers used by templated code.

inline Fp scalar_from_int(long long n, const FieldSpec& f, Fp /*tag*/) {
  return Fp(n, f.p);
}
inline Rational scalar_from_int(long long n, const FieldSpec& /*f*/, Rational /*tag*/) {
  return Rational(n);
}

template <typename Scalar>
Scalar scalar_from(long long n, const FieldSpec& f) {
  return scalar_from_int(n, f, Scalar());
}

inline bool is_zero(const Fp& a) { return a.is_zero(); }
inline bool is_zero(const Rational& a) { return a.is_zero(); }

// Stable string form used in reports and in the model hash.
inline std::string scalar_to_string(const Fp& a) { return std::to_string(a.value()); }
inline std::string scalar_to_string(const Rational& a) { return a.str(); }

}  // namespace atomcalc

namespace Eigen {

template <>
struct NumTraits<atomcalc::Fp> {
  using Real = atomcalc::Fp;
  using NonInteger = atomcalc::Fp;
  using Literal = atomcalc::Fp;
  using Nested = atomcalc::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4,
  };
  static inline Real epsilon() { return atomcalc::Fp(0); }
  static inline Real dummy_precision() { return atomcalc::Fp(0); }
  static inline int digits10() { return 10; }
};

template <>
struct NumTraits<atomcalc::Rational> {
  using Real = atomcalc::Rational;
  using NonInteger = atomcalc::Rational;
  using Literal = atomcalc::Rational;
  using Nested = atomcalc::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16,
  };
  static inline Real epsilon() { return atomcalc::Rational(0); }
  static inline Real dummy_precision() { return atomcalc::Rational(0); }
  static inline int digits10() { return 20; }
};

}  // namespace Eigen

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <iosfwd>
#include <string>

namespace crflat {

using Rational = mpq_class;

/// Exact complex number re + im*i with re, im in Q.
///
/// gmpxx keeps every result in lowest terms with a positive denominator, so
/// equality is plain component comparison.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integers
  GaussianRational(int v) : re_(v) {}   // NOLINT
  GaussianRational(Rational re) : re_(std::move(re)) {  // NOLINT
    re_.canonicalize();
  }
  GaussianRational(Rational re, Rational im)
      : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  /// Parses "p/q" style rationals for either part.
  static GaussianRational from_strings(const std::string& re,
                                       const std::string& im);

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |x|^2 = x * conj(x), always real.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
  }

  /// this += a * b without building a temporary product.
  void add_product(const GaussianRational& a, const GaussianRational& b);

  friend GaussianRational operator+(GaussianRational a,
                                    const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a,
                                    const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a,
                                    const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a,
                                    const GaussianRational& b) {
    return a /= b;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  /// Expression-grammar form, e.g. "3/2", "-i", "(1/2 - 3*i)".
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational conj(const GaussianRational& x) { return x.conj(); }
inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

/// Canonical string for a rational: "p" or "p/q".
std::string rational_string(const Rational& q);

}  // namespace crflat

namespace Eigen {

template <>
struct NumTraits<crflat::GaussianRational>
    : GenericNumTraits<crflat::GaussianRational> {
  using Real = crflat::GaussianRational;
  using NonInteger = crflat::GaussianRational;
  using Literal = crflat::GaussianRational;
  using Nested = crflat::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32,
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace crflat {

using GaussianMatrix =
    Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
using GaussianVector = Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1>;

}  // namespace crflat

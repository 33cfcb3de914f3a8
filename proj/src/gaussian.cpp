#include "crflat/gaussian.hpp"

#include <ostream>
#include <stdexcept>

#include "crflat/errors.hpp"

namespace crflat {

GaussianRational GaussianRational::from_strings(const std::string& re,
                                                const std::string& im) {
  Rational r, i;
  if (r.set_str(re, 10) != 0 || i.set_str(im, 10) != 0) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + re + "', '" + im + "'");
  }
  r.canonicalize();
  i.canonicalize();
  return {r, i};
}

GaussianRational GaussianRational::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw Error(ErrorCode::NotAUnit, "division by zero");
  return {Rational(re_ / n), Rational(-im_ / n)};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

void GaussianRational::add_product(const GaussianRational& a,
                                   const GaussianRational& b) {
  thread_local Rational t;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  re_ += t;
  const bool ai = sgn(a.im_) != 0;
  const bool bi = sgn(b.im_) != 0;
  if (ai && bi) {
    mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
    re_ -= t;
  }
  if (bi) {
    mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
    im_ += t;
  }
  if (ai) {
    mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
    im_ += t;
  }
}

std::string rational_string(const Rational& q) { return q.get_str(10); }

std::string GaussianRational::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return rational_string(re_);
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = rational_string(im_) + "*i";
  }
  if (!has_re) return im_part;
  std::string out = "(" + rational_string(re_);
  if (im_part.front() == '-') {
    out += " - " + im_part.substr(1);
  } else {
    out += " + " + im_part;
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) {
  return os << x.to_string();
}

}  // namespace crflat

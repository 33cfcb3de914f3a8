#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crflat/context.hpp"
#include "crflat/gaussian.hpp"
#include "crflat/monomial.hpp"

namespace crflat {

namespace detail {
struct SeriesBuilder;
}

struct Term {
  Monomial exponent;
  GaussianRational coeff;
};

/// Multivariate formal power series over Q(i), truncated at a guaranteed
/// total degree.
///
/// `order()` is the degree up to which every coefficient is known; all
/// stored terms have degree <= order and nonzero coefficients. Terms are
/// kept sorted in graded lexicographic order. An order of kExact marks a
/// polynomial known exactly (constants, coordinate functions).
class Series {
 public:
  static constexpr int kExact = 1 << 20;

  Series(Context ctx, int order);

  static Series constant(Context ctx, const GaussianRational& c,
                         int order = kExact);
  static Series variable(Context ctx, std::string_view name,
                         int order = kExact);
  /// Combines duplicates, drops zeros and terms above `order`.
  static Series from_terms(Context ctx, int order, std::vector<Term> terms);

  const Context& context() const { return ctx_; }
  int order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  GaussianRational coefficient(const Monomial& m) const;
  GaussianRational constant_term() const;
  /// Lowest degree carrying a nonzero coefficient; kExact for the zero series.
  int valuation() const;
  /// Highest stored degree, -1 for zero.
  int degree() const;

  /// Drops everything above `order` (never raises the order).
  Series truncated(int order) const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator*=(const GaussianRational& c);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const GaussianRational& c) {
    return a *= c;
  }
  friend Series operator*(const GaussianRational& c, Series a) {
    return a *= c;
  }

  /// Same context, same order, same coefficients.
  friend bool operator==(const Series& a, const Series& b);

 private:
  Series(Context ctx, int order, std::vector<Term> sorted_terms)
      : ctx_(std::move(ctx)), order_(order), terms_(std::move(sorted_terms)) {}

  friend struct detail::SeriesBuilder;

  Context ctx_;
  int order_;
  std::vector<Term> terms_;
};

inline bool is_zero(const Series& s) { return s.is_zero(); }

Series add(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
Series pow(const Series& a, int exponent);

/// Formal partial derivative; the order drops by one.
Series partial(const Series& a, std::size_t var);
Series partial(const Series& a, std::string_view var);
/// Repeated partial derivative, one entry per differentiation.
Series partial(const Series& a, std::initializer_list<std::string_view> vars);

/// Multiplicative inverse of a series with nonzero constant term.
Series invert_unit(const Series& a);

/// Formal composition. `images[i]` replaces the i-th variable of `f`'s
/// context; all images live in `target`. Images must have zero constant term
/// unless `f` is an exact polynomial.
Series substitute(const Series& f, const Context& target,
                  std::span<const Series> images);
/// Named variant: unassigned variables map to the same-named variable of
/// `target` (which must then contain it).
Series substitute(const Series& f, const Context& target,
                  const std::map<std::string, Series>& assignment);

/// Reinterprets the series over another context of the same arity
/// (positional relabeling).
Series relabel(const Series& a, const Context& target);

/// Coefficientwise agreement for all degrees <= d.
bool equal_to_order(const Series& a, const Series& b, int d);

/// Lowest monomial (graded lex) of degree <= d where a and b differ.
std::optional<Term> first_difference(const Series& a, const Series& b, int d);

/// Expression-grammar rendering, e.g. "-wb + z1*z1b + 3/2*z2^2".
std::string to_string(const Series& s);
std::string monomial_string(const Monomial& m, const VariableContext& ctx);

}  // namespace crflat

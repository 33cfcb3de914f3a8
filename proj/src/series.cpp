#include "crflat/series.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "crflat/errors.hpp"

namespace crflat {

namespace detail {

struct SeriesBuilder {
  static Series make(Context ctx, int order, std::vector<Term> sorted) {
    return Series(std::move(ctx), order, std::move(sorted));
  }
};

}  // namespace detail

namespace {

using Accumulator = std::unordered_map<Monomial, GaussianRational, MonomialHash>;

bool graded_less(const Term& a, const Term& b) { return a.exponent < b.exponent; }

std::vector<Term> drain(Accumulator& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  }
  std::sort(out.begin(), out.end(), graded_less);
  return out;
}

// Product of two graded-sorted term lists, keeping degrees <= cap.
std::vector<Term> mul_terms(const std::vector<Term>& a,
                            const std::vector<Term>& b, int cap) {
  if (a.empty() || b.empty()) return {};
  Accumulator acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1 << 16));
  for (const auto& ta : a) {
    const int room = cap - ta.exponent.degree();
    if (room < 0) break;
    for (const auto& tb : b) {
      if (tb.exponent.degree() > room) break;
      acc[ta.exponent * tb.exponent].add_product(ta.coeff, tb.coeff);
    }
  }
  return drain(acc);
}

// Merge of two graded-sorted lists with an optional sign on the second.
std::vector<Term> add_terms(const std::vector<Term>& a,
                            const std::vector<Term>& b, int cap,
                            bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  auto push = [&](Term t) {
    if (t.exponent.degree() <= cap && !t.coeff.is_zero()) out.push_back(std::move(t));
  };
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->exponent < ib->exponent)) {
      push(*ia++);
    } else if (ia == a.end() || ib->exponent < ia->exponent) {
      push({ib->exponent, subtract ? -ib->coeff : ib->coeff});
      ++ib;
    } else {
      push({ia->exponent, subtract ? ia->coeff - ib->coeff : ia->coeff + ib->coeff});
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::vector<Term> truncate_terms(const std::vector<Term>& t, int cap) {
  auto end = std::find_if(t.begin(), t.end(),
                          [&](const Term& x) { return x.exponent.degree() > cap; });
  return {t.begin(), end};
}

void require_same(const Series& a, const Series& b) {
  if (!same_context(a.context(), b.context())) {
    throw Error(ErrorCode::ContextMismatch, "series live in different variable contexts");
  }
}

}  // namespace

Series::Series(Context ctx, int order) : ctx_(std::move(ctx)), order_(order) {
  if (order_ < 0) throw Error(ErrorCode::InsufficientOrder, "negative truncation order");
}

Series Series::constant(Context ctx, const GaussianRational& c, int order) {
  Series s(std::move(ctx), order);
  if (!c.is_zero()) s.terms_.push_back({Monomial(), c});
  return s;
}

Series Series::variable(Context ctx, std::string_view name, int order) {
  const std::size_t i = ctx->index(name);
  Series s(std::move(ctx), order);
  if (order >= 1) s.terms_.push_back({Monomial::unit(i), GaussianRational(1)});
  return s;
}

Series Series::from_terms(Context ctx, int order, std::vector<Term> terms) {
  Accumulator acc;
  for (auto& t : terms) {
    if (t.exponent.degree() <= order) acc[t.exponent] += t.coeff;
  }
  return Series(std::move(ctx), order, drain(acc));
}

GaussianRational Series::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, {}}, graded_less);
  if (it != terms_.end() && it->exponent == m) return it->coeff;
  return {};
}

GaussianRational Series::constant_term() const { return coefficient(Monomial()); }

int Series::valuation() const {
  return terms_.empty() ? kExact : terms_.front().exponent.degree();
}

int Series::degree() const {
  return terms_.empty() ? -1 : terms_.back().exponent.degree();
}

Series Series::truncated(int order) const {
  if (order >= order_) return *this;
  return Series(ctx_, std::max(order, 0), truncate_terms(terms_, order));
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Series& Series::operator+=(const Series& o) {
  require_same(*this, o);
  order_ = std::min(order_, o.order_);
  terms_ = add_terms(terms_, o.terms_, order_, false);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same(*this, o);
  order_ = std::min(order_, o.order_);
  terms_ = add_terms(terms_, o.terms_, order_, true);
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  require_same(a, b);
  const int order = std::min(a.order_, b.order_);
  return Series(a.ctx_, order, mul_terms(a.terms_, b.terms_, order));
}

Series& Series::operator*=(const Series& o) { return *this = *this * o; }

Series& Series::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

bool operator==(const Series& a, const Series& b) {
  if (!same_context(a.ctx_, b.ctx_) || a.order_ != b.order_ ||
      a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (!(a.terms_[k].exponent == b.terms_[k].exponent) ||
        a.terms_[k].coeff != b.terms_[k].coeff) {
      return false;
    }
  }
  return true;
}

Series add(const Series& a, const Series& b) { return a + b; }
Series mul(const Series& a, const Series& b) { return a * b; }

Series pow(const Series& a, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::UsageError, "negative exponent");
  Series result = Series::constant(a.context(), 1, a.order());
  Series base = a;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Series partial(const Series& a, std::size_t var) {
  if (var >= a.context()->arity()) {
    throw Error(ErrorCode::UnknownVariable, "variable index out of range");
  }
  if (a.order() == 0) {
    throw Error(ErrorCode::InsufficientOrder,
                "differentiating a series known only to order 0");
  }
  const int order = a.is_exact() ? Series::kExact : a.order() - 1;
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    const int e = t.exponent[var];
    if (e == 0) continue;
    Monomial m = t.exponent;
    m.set(var, e - 1);
    out.push_back({m, t.coeff * GaussianRational(e)});
  }
  std::sort(out.begin(), out.end(), graded_less);
  return detail::SeriesBuilder::make(a.context(), order, std::move(out));
}

Series partial(const Series& a, std::string_view var) {
  return partial(a, a.context()->index(var));
}

Series partial(const Series& a, std::initializer_list<std::string_view> vars) {
  Series r = a;
  for (auto v : vars) r = partial(r, v);
  return r;
}

Series invert_unit(const Series& a) {
  const GaussianRational c0 = a.constant_term();
  if (c0.is_zero()) {
    throw Error(ErrorCode::NotAUnit, "series with zero constant term is not invertible");
  }
  const GaussianRational c0_inv = c0.inverse();
  if (a.terms().size() == 1) return Series::constant(a.context(), c0_inv, a.order());
  if (a.is_exact()) {
    throw Error(ErrorCode::InsufficientOrder,
                "inverse of a non-constant exact polynomial needs a truncation order");
  }
  // a = c0 (1 + r) with r = O(1); 1/(1+r) = 1 - r + r^2 - ... by Horner.
  Series r = a * c0_inv - Series::constant(a.context(), 1, a.order());
  Series one = Series::constant(a.context(), 1, a.order());
  Series b = one;
  for (int k = 0; k < a.order(); ++k) b = one - r * b;
  return b * c0_inv;
}

namespace {

// Horner-style composition over terms sorted in pure lex order. Images are
// consumed through cached powers; `cap` shrinks with the valuation already
// accumulated by the enclosing factors.
class Composer {
 public:
  Composer(std::span<const Series> images, int order)
      : images_(images), order_(order), powers_(images.size()) {
    for (const auto& img : images) valuations_.push_back(std::min(img.valuation(), order + 1));
  }

  std::vector<Term> eval(std::span<const Term> terms, std::size_t var, int cap) {
    if (cap < 0 || terms.empty()) return {};
    if (var == images_.size()) {
      return {{Monomial(), terms.front().coeff}};
    }
    std::vector<Term> result;
    std::size_t begin = 0;
    while (begin < terms.size()) {
      const int e = terms[begin].exponent[var];
      std::size_t end = begin;
      while (end < terms.size() && terms[end].exponent[var] == e) ++end;
      const int sub_cap = cap - e * valuations_[var];
      if (sub_cap >= 0) {
        auto inner = eval(terms.subspan(begin, end - begin), var + 1, sub_cap);
        if (!inner.empty()) {
          auto part = e == 0 ? std::move(inner) : mul_terms(inner, power(var, e), cap);
          result = add_terms(result, part, cap, false);
        }
      }
      begin = end;
    }
    return result;
  }

 private:
  const std::vector<Term>& power(std::size_t var, int e) {
    auto& cache = powers_[var];
    if (cache.empty()) {
      cache.push_back({{Monomial(), GaussianRational(1)}});
    }
    while (static_cast<int>(cache.size()) <= e) {
      cache.push_back(mul_terms(cache.back(), truncate_terms(images_[var].terms(), order_), order_));
    }
    return cache[e];
  }

  std::span<const Series> images_;
  int order_;
  std::vector<int> valuations_;
  std::vector<std::vector<std::vector<Term>>> powers_;
};

}  // namespace

Series substitute(const Series& f, const Context& target,
                  std::span<const Series> images) {
  const auto& ctx = *f.context();
  if (images.size() != ctx.arity()) {
    throw Error(ErrorCode::DimensionMismatch, "one image per variable required");
  }
  std::vector<bool> used(ctx.arity(), false);
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < ctx.arity(); ++v) {
      if (t.exponent[v] > 0) used[v] = true;
    }
  }
  int order = f.order();
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (!same_context(images[v].context(), target)) {
      throw Error(ErrorCode::ContextMismatch,
                  "image of '" + ctx.name(v) + "' is not in the target context");
    }
    if (!used[v] && f.is_exact()) continue;
    if (!images[v].constant_term().is_zero() && !f.is_exact()) {
      throw Error(ErrorCode::NonAdmissibleComposition,
                  "image of '" + ctx.name(v) +
                      "' has a nonzero constant term; truncated composition is undefined");
    }
    if (used[v]) order = std::min(order, images[v].order());
  }
  std::vector<Term> lex(f.terms().begin(), f.terms().end());
  std::sort(lex.begin(), lex.end(), [](const Term& a, const Term& b) {
    return a.exponent.exponents() < b.exponent.exponents();
  });
  Composer composer(images, order);
  auto terms = composer.eval(lex, 0, order);
  return detail::SeriesBuilder::make(target, order, std::move(terms));
}

Series substitute(const Series& f, const Context& target,
                  const std::map<std::string, Series>& assignment) {
  const auto& ctx = *f.context();
  for (const auto& [name, _] : assignment) {
    if (!ctx.find(name)) {
      throw Error(ErrorCode::UnknownVariable,
                  "assignment to '" + name + "', which the series does not use");
    }
  }
  std::vector<Series> images;
  images.reserve(ctx.arity());
  for (const auto& name : ctx.names()) {
    if (auto it = assignment.find(name); it != assignment.end()) {
      images.push_back(it->second);
    } else if (target->find(name)) {
      images.push_back(Series::variable(target, name));
    } else {
      throw Error(ErrorCode::UnknownVariable,
                  "variable '" + name + "' is neither assigned nor present in the target");
    }
  }
  return substitute(f, target, images);
}

Series relabel(const Series& a, const Context& target) {
  if (target->arity() != a.context()->arity()) {
    throw Error(ErrorCode::DimensionMismatch, "relabeling needs equal arity");
  }
  return detail::SeriesBuilder::make(target, a.order(), a.terms());
}

bool equal_to_order(const Series& a, const Series& b, int d) {
  return !first_difference(a, b, d).has_value();
}

std::optional<Term> first_difference(const Series& a, const Series& b, int d) {
  require_same(a, b);
  auto diff = add_terms(a.terms(), b.terms(), d, true);
  if (diff.empty()) return std::nullopt;
  return diff.front();
}

std::string monomial_string(const Monomial& m, const VariableContext& ctx) {
  std::string out;
  for (std::size_t v = 0; v < ctx.arity(); ++v) {
    const int e = m[v];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += ctx.name(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Series& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : s.terms()) {
    GaussianRational c = t.coeff;
    bool negative = false;
    if (sgn(c.real()) < 0 || (sgn(c.real()) == 0 && sgn(c.imag()) < 0)) {
      negative = true;
      c = -c;
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit_monomial = t.exponent.degree() == 0;
    if (unit_monomial) {
      os << c.to_string();
    } else {
      if (c != GaussianRational(1)) os << c.to_string() << "*";
      os << monomial_string(t.exponent, *s.context());
    }
  }
  return os.str();
}

}  // namespace crflat

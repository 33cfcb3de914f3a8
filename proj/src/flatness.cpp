#include "crflat/flatness.hpp"

#include <algorithm>

#include "crflat/errors.hpp"

namespace crflat {

namespace {

std::size_t pair_slot(int a, int b, int n) {
  if (a > b) std::swap(a, b);
  return static_cast<std::size_t>(a * n - a * (a - 1) / 2 + (b - a));
}

int delta(int a, int b) { return a == b ? 1 : 0; }

}  // namespace

std::size_t FlatnessTensor::slot(int k1, int k2, int l1, int l2, int n) {
  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);
  return pair_slot(k1, k2, n) * pairs + pair_slot(l1, l2, n);
}

FlatnessTensor::FlatnessTensor(int n, std::vector<Series> packed_components)
    : n_(n), certified_order_(Series::kExact), components_(std::move(packed_components)) {
  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);
  if (components_.size() != pairs * pairs) {
    throw Error(ErrorCode::DimensionMismatch, "wrong number of tensor components");
  }
  for (const auto& c : components_) certified_order_ = std::min(certified_order_, c.order());
}

const Series& FlatnessTensor::operator()(int k1, int k2, int l1, int l2) const {
  for (int k : {k1, k2, l1, l2}) {
    if (k < 0 || k >= n_) throw Error(ErrorCode::IndexOutOfRange, "tensor index out of range");
  }
  return components_[slot(k1, k2, l1, l2, n_)];
}

std::optional<Witness> FlatnessTensor::first_nonzero() const {
  for (int k1 = 0; k1 < n_; ++k1) {
    for (int k2 = k1; k2 < n_; ++k2) {
      for (int l1 = 0; l1 < n_; ++l1) {
        for (int l2 = l1; l2 < n_; ++l2) {
          const Series& c = (*this)(k1, k2, l1, l2);
          for (const auto& t : c.terms()) {
            if (t.exponent.degree() > certified_order_) break;
            return Witness{{k1, k2, l1, l2},
                           t.exponent,
                           monomial_string(t.exponent, *c.context()),
                           t.coeff};
          }
        }
      }
    }
  }
  return std::nullopt;
}

FlatnessTensor FlatnessTensor::scaled(const Series& factor) const {
  std::vector<Series> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c * factor);
  return FlatnessTensor(n_, std::move(out));
}

FlatnessTensor trace_adjust(int n, const std::function<const Series&(int, int, int, int)>& s) {
  const Series& probe = s(0, 0, 0, 0);
  const Context ctx = probe.context();

  std::vector<Series> trace(static_cast<std::size_t>(n * n), Series(ctx, Series::kExact));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      Series& t = trace[k * n + l];
      for (int m = 0; m < n; ++m) t += s(m, k, m, l);
    }
  }
  Series full(ctx, Series::kExact);
  for (int m = 0; m < n; ++m) full += trace[m * n + m];

  const GaussianRational w1(Rational(1, n + 2));
  const GaussianRational w2(Rational(1, (n + 1) * (n + 2)));
  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);
  std::vector<Series> out(pairs * pairs, Series(ctx, Series::kExact));
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1; k2 < n; ++k2) {
      for (int l1 = 0; l1 < n; ++l1) {
        for (int l2 = l1; l2 < n; ++l2) {
          Series w = s(k1, k2, l1, l2);
          Series correction(ctx, Series::kExact);
          if (delta(k1, l1)) correction += trace[k2 * n + l2];
          if (delta(k1, l2)) correction += trace[k2 * n + l1];
          if (delta(k2, l1)) correction += trace[k1 * n + l2];
          if (delta(k2, l2)) correction += trace[k1 * n + l1];
          w -= w1 * correction;
          const int dd = delta(k1, l1) * delta(k2, l2) + delta(k2, l1) * delta(k1, l2);
          if (dd != 0) w += (w2 * GaussianRational(dd)) * full;
          out[FlatnessTensor::slot(k1, k2, l1, l2, n)] = std::move(w);
        }
      }
    }
  }
  return FlatnessTensor(n, std::move(out));
}

FlatnessTensor hachtroudi_tensor(const PdeSystem& s) {
  const int n = s.n();
  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);
  std::vector<Series> second(pairs * pairs, Series(s.context(), Series::kExact));
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1; k2 < n; ++k2) {
      const Series& f = s.f(k1, k2);
      for (int l1 = 0; l1 < n; ++l1) {
        const Series f1 = partial(f, static_cast<std::size_t>(n + 1 + l1));
        for (int l2 = l1; l2 < n; ++l2) {
          second[FlatnessTensor::slot(k1, k2, l1, l2, n)] =
              partial(f1, static_cast<std::size_t>(n + 1 + l2));
        }
      }
    }
  }
  return trace_adjust(n, [&](int k1, int k2, int l1, int l2) -> const Series& {
    return second[FlatnessTensor::slot(k1, k2, l1, l2, n)];
  });
}

MinorFamily minors(const HypersurfaceModel& m) {
  MinorFamily family(m.theta(), m.n());
  if (family.delta().constant_term().is_zero()) {
    throw Error(ErrorCode::LeviDegenerate, "Delta vanishes at the origin");
  }
  return family;
}

FlatnessTensor main_theorem_tensor(const HypersurfaceModel& m, int order) {
  const int n = m.n();
  const int d = std::min(order, m.order());
  const int certified = d - 4;
  if (certified < 0) {
    throw Error(ErrorCode::InsufficientOrder,
                "Theta order " + std::to_string(d) + " is below the fourth-order jet");
  }
  const Series theta = m.theta().truncated(d);
  // Every product below is only needed through the certified degree.
  const MinorFamily family(theta, n, certified);
  if (family.delta().constant_term().is_zero()) {
    throw Error(ErrorCode::LeviDegenerate, "Delta vanishes at the origin");
  }
  const Series& big_delta = family.delta();
  const int size = n + 1;
  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);

  std::vector<Series> x(pairs * pairs, Series(theta.context(), certified));
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1; k2 < n; ++k2) {
      const Series theta_kk = partial(theta, {theta.context()->name(k1), theta.context()->name(k2)});
      std::vector<Series> third_full;
      std::vector<Series> third;
      for (int tau = 0; tau < size; ++tau) {
        third_full.push_back(partial(theta_kk, static_cast<std::size_t>(n + tau)));
        third.push_back(third_full.back().truncated(certified));
      }
      // brace(mu, nu) = Delta Theta_{k1 k2 mu nu} - sum_tau V^tau_{mu nu} Theta_{k1 k2 tau}
      std::vector<Series> brace(static_cast<std::size_t>(size * size), Series(theta.context(), 0));
      for (int mu = 0; mu < size; ++mu) {
        for (int nu = mu; nu < size; ++nu) {
          const Series fourth =
              partial(third_full[mu], static_cast<std::size_t>(n + nu)).truncated(certified);
          Series b = big_delta * fourth;
          for (int tau = 0; tau < size; ++tau) b -= family.second(mu, nu, tau) * third[tau];
          brace[mu * size + nu] = b;
          brace[nu * size + mu] = std::move(b);
        }
      }
      // contract nu against U^nu_{l2}, then mu against U^mu_{l1}
      std::vector<Series> half(static_cast<std::size_t>(size * n), Series(theta.context(), certified));
      for (int mu = 0; mu < size; ++mu) {
        for (int l2 = 0; l2 < n; ++l2) {
          Series acc(theta.context(), certified);
          for (int nu = 0; nu < size; ++nu) {
            const Series& u = family.unit(nu, l2);
            if (!u.is_zero()) acc += u * brace[mu * size + nu];
          }
          half[mu * n + l2] = std::move(acc);
        }
      }
      for (int l1 = 0; l1 < n; ++l1) {
        for (int l2 = l1; l2 < n; ++l2) {
          Series acc(theta.context(), certified);
          for (int mu = 0; mu < size; ++mu) {
            const Series& u = family.unit(mu, l1);
            if (!u.is_zero()) acc += u * half[mu * n + l2];
          }
          x[FlatnessTensor::slot(k1, k2, l1, l2, n)] = std::move(acc);
        }
      }
    }
  }
  return trace_adjust(n, [&](int k1, int k2, int l1, int l2) -> const Series& {
    return x[FlatnessTensor::slot(k1, k2, l1, l2, n)];
  });
}

CrossCheckReport cross_check(const HypersurfaceModel& m, int order) {
  const int n = m.n();
  const int d = std::min(order, m.order());
  FlatnessTensor direct = main_theorem_tensor(m, d);
  const int certified = direct.certified_order();

  const Series theta = m.theta().truncated(d);
  const HypersurfaceModel model = d < m.order() ? make_model(n, theta, d) : m;
  const PdeSystem phi = derive_associated_system(model);
  const FlatnessTensor curvature = hachtroudi_tensor(phi);

  // Pull back along x = z, y = Theta, y_x = Theta_z.
  const Context& home = theta.context();
  std::vector<Series> images;
  for (int k = 0; k < n; ++k) images.push_back(Series::variable(home, home->name(k)));
  images.push_back(theta.truncated(certified));
  for (int k = 0; k < n; ++k) {
    images.push_back(partial(theta, static_cast<std::size_t>(k)).truncated(certified));
  }
  const Series delta = determinant(levi_matrix(theta, n)).truncated(certified);
  const Series delta_cubed = delta * delta * delta;

  const std::size_t pairs = static_cast<std::size_t>(n * (n + 1) / 2);
  std::vector<Series> pulled(pairs * pairs, Series(home, certified));
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1; k2 < n; ++k2) {
      for (int l1 = 0; l1 < n; ++l1) {
        for (int l2 = l1; l2 < n; ++l2) {
          const Series& c = curvature(k1, k2, l1, l2);
          pulled[FlatnessTensor::slot(k1, k2, l1, l2, n)] =
              delta_cubed * substitute(c.truncated(certified), home, images);
        }
      }
    }
  }
  FlatnessTensor transferred(n, std::move(pulled));

  const int common = std::min(certified, transferred.certified_order());
  std::optional<Witness> disagreement;
  for (int k1 = 0; k1 < n && !disagreement; ++k1) {
    for (int k2 = k1; k2 < n && !disagreement; ++k2) {
      for (int l1 = 0; l1 < n && !disagreement; ++l1) {
        for (int l2 = l1; l2 < n && !disagreement; ++l2) {
          auto diff = first_difference(direct(k1, k2, l1, l2), transferred(k1, k2, l1, l2), common);
          if (diff) {
            disagreement = Witness{{k1, k2, l1, l2},
                                   diff->exponent,
                                   monomial_string(diff->exponent, *home),
                                   diff->coeff};
          }
        }
      }
    }
  }
  return CrossCheckReport{!disagreement.has_value(), common, std::move(direct),
                          std::move(transferred), disagreement};
}

Verdict is_pseudospherical(const HypersurfaceModel& m, int order) {
  const FlatnessTensor w = main_theorem_tensor(m, order);
  Verdict v;
  v.certified_order = w.certified_order();
  v.witness = w.first_nonzero();
  v.kind = v.witness ? Verdict::Kind::NonVanishing : Verdict::Kind::VanishesToOrder;
  return v;
}

}  // namespace crflat

#include "crflat/pde_system.hpp"

#include <algorithm>

#include "crflat/errors.hpp"
#include "crflat/implicit.hpp"
#include "crflat/minors.hpp"

namespace crflat {

namespace {

std::size_t packed(int k1, int k2, int n) {
  if (k1 > k2) std::swap(k1, k2);
  return static_cast<std::size_t>(k1 * n - k1 * (k1 - 1) / 2 + (k2 - k1));
}

void check_index(int k, int n) {
  if (k < 0 || k >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(k) + " outside [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

PdeSystem::PdeSystem(int n, const std::map<std::pair<int, int>, Series>& entries, int order)
    : n_(n), ctx_(contexts::jet(n)) {
  if (n < 1) throw Error(ErrorCode::UnsupportedDimension, "system needs n >= 1");
  f_.assign(static_cast<std::size_t>(n * (n + 1) / 2), Series(ctx_, order));
  std::vector<bool> seen(f_.size(), false);
  for (const auto& [key, value] : entries) {
    check_index(key.first, n);
    check_index(key.second, n);
    const auto slot = packed(key.first, key.second, n);
    if (seen[slot]) {
      throw Error(ErrorCode::UsageError, "F entry given twice (the system is symmetric)");
    }
    if (!same_context(value.context(), ctx_)) {
      throw Error(ErrorCode::ContextMismatch, "F entries must live in (x, y, yx)");
    }
    seen[slot] = true;
    f_[slot] = value.truncated(order);
  }
}

int PdeSystem::order() const {
  int order = Series::kExact;
  for (const auto& f : f_) order = std::min(order, f.order());
  return order;
}

const Series& PdeSystem::f(int k1, int k2) const {
  check_index(k1, n_);
  check_index(k2, n_);
  return f_[packed(k1, k2, n_)];
}

FundamentalSolution::FundamentalSolution(int n, Series q) : n_(n), q_(std::move(q)) {
  if (!same_context(q_.context(), contexts::fundamental(n))) {
    throw Error(ErrorCode::ContextMismatch, "Q must live in (x1..xn, a1..an, b)");
  }
}

bool FundamentalSolution::normalized() const {
  Series expected = -Series::variable(q_.context(), "b");
  for (int k = 1; k <= n_; ++k) {
    expected += Series::variable(q_.context(), "x" + std::to_string(k)) *
                Series::variable(q_.context(), "a" + std::to_string(k));
  }
  return equal_to_order(q_, expected, std::min(q_.order(), 2));
}

Series total_derivative(const PdeSystem& s, int k, const Series& g) {
  check_index(k, s.n());
  if (!same_context(g.context(), s.context())) {
    throw Error(ErrorCode::ContextMismatch, "G must live in (x, y, yx)");
  }
  const int n = s.n();
  const Context& ctx = s.context();
  Series out = partial(g, static_cast<std::size_t>(k));
  const Series g_y = partial(g, static_cast<std::size_t>(n));
  if (!g_y.is_zero()) {
    out += Series::variable(ctx, "yx" + std::to_string(k + 1)) * g_y;
  } else {
    out = out.truncated(g_y.order());
  }
  for (int l = 0; l < n; ++l) {
    const Series g_l = partial(g, static_cast<std::size_t>(n + 1 + l));
    if (!g_l.is_zero()) {
      out += s.f(k, l) * g_l;
    } else if (!g_l.is_exact()) {
      out = out.truncated(std::min(g_l.order(), s.f(k, l).order()));
    }
  }
  return out;
}

IntegrabilityReport check_complete_integrability(const PdeSystem& s) {
  const int n = s.n();
  IntegrabilityReport report;
  report.checked_order = Series::kExact;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      for (int k3 = k2 + 1; k3 < n; ++k3) {
        const Series lhs = total_derivative(s, k3, s.f(k1, k2));
        const Series rhs = total_derivative(s, k2, s.f(k1, k3));
        const int order = std::min(lhs.order(), rhs.order());
        report.checked_order = std::min(report.checked_order, order);
        if (auto diff = first_difference(lhs, rhs, order)) {
          report.pass = false;
          report.failures.push_back(
              {k1, k2, k3, monomial_string(diff->exponent, *s.context()), diff->coeff});
        }
      }
    }
  }
  if (report.checked_order == Series::kExact) report.checked_order = s.order();
  return report;
}

PdeSystem recover_system_from_solution(const FundamentalSolution& fs) {
  const int n = fs.n();
  const Series& q = fs.q();
  std::vector<Series> system{q};
  for (int k = 0; k < n; ++k) system.push_back(partial(q, static_cast<std::size_t>(k)));
  std::vector<std::string> unknowns, targets{"y"};
  for (int k = 1; k <= n; ++k) unknowns.push_back("a" + std::to_string(k));
  unknowns.push_back("b");
  for (int k = 1; k <= n; ++k) targets.push_back("yx" + std::to_string(k));

  ImplicitSolution sol = [&] {
    try {
      return solve_implicit(system, unknowns, targets);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularJacobian) {
        throw Error(ErrorCode::RankCondition,
                    "(Q, Q_x) has singular Jacobian in (a, b) at the origin");
      }
      throw;
    }
  }();
  const Context jet = contexts::jet(n);
  std::vector<Series> images;
  for (int k = 1; k <= n; ++k) images.push_back(Series::variable(jet, "x" + std::to_string(k)));
  for (const auto& v : sol.values) images.push_back(relabel(v, jet));

  std::map<std::pair<int, int>, Series> entries;
  int order = Series::kExact;
  for (int k1 = 0; k1 < n; ++k1) {
    const Series q1 = partial(q, static_cast<std::size_t>(k1));
    for (int k2 = k1; k2 < n; ++k2) {
      Series f = substitute(partial(q1, static_cast<std::size_t>(k2)), jet, images);
      order = std::min(order, f.order());
      entries.emplace(std::make_pair(k1, k2), std::move(f));
    }
  }
  return PdeSystem(n, entries, order);
}

PdeSystem derive_associated_system(const HypersurfaceModel& m) {
  try {
    return recover_system_from_solution(
        FundamentalSolution(m.n(), relabel(m.theta(), contexts::fundamental(m.n()))));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RankCondition) {
      throw Error(ErrorCode::LeviDegenerate, "Delta vanishes at the origin");
    }
    throw;
  }
}

Series jet_transfer_second(const FundamentalSolution& fs, const Series& t, int l1, int l2) {
  const int n = fs.n();
  check_index(l1, n);
  check_index(l2, n);
  if (!same_context(t.context(), fs.q().context())) {
    throw Error(ErrorCode::ContextMismatch, "T must live in (x, a, b)");
  }
  const MinorFamily minors(fs.q(), n);
  const Series& box = minors.delta();
  if (box.constant_term().is_zero()) {
    throw Error(ErrorCode::RankCondition, "box determinant vanishes at the origin");
  }
  const int size = n + 1;
  std::vector<Series> t1;
  for (int tau = 0; tau < size; ++tau) t1.push_back(partial(t, static_cast<std::size_t>(n + tau)));

  Series sum(t.context(), Series::kExact);
  for (int mu = 0; mu < size; ++mu) {
    for (int nu = 0; nu < size; ++nu) {
      const Series weight = minors.unit(mu, l1) * minors.unit(nu, l2);
      if (weight.is_zero()) {
        sum = sum.truncated(weight.order());
        continue;
      }
      Series brace = box * partial(t1[mu], static_cast<std::size_t>(n + nu));
      for (int tau = 0; tau < size; ++tau) brace -= minors.second(mu, nu, tau) * t1[tau];
      sum += weight * brace;
    }
  }
  const Series inv = invert_unit(box.is_exact() ? box.truncated(sum.order()) : box);
  return sum * inv * inv * inv;
}

}  // namespace crflat

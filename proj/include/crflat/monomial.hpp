#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>

namespace crflat {

inline constexpr std::size_t kMaxVariables = 16;

/// Exponent multi-index over at most kMaxVariables variables.
///
/// The natural ordering is graded lexicographic: total degree first, then the
/// exponent tuple compared position by position.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial unit(std::size_t var) {
    Monomial m;
    m.exps_[var] = 1;
    m.degree_ = 1;
    return m;
  }

  int operator[](std::size_t var) const { return exps_[var]; }
  int degree() const { return degree_; }

  void set(std::size_t var, int e) {
    degree_ = static_cast<std::uint16_t>(degree_ - exps_[var] + e);
    exps_[var] = static_cast<std::uint8_t>(e);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t k = 0; k < kMaxVariables; ++k) {
      r.exps_[k] = static_cast<std::uint8_t>(exps_[k] + o.exps_[k]);
    }
    r.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
    return r;
  }

  const std::array<std::uint8_t, kMaxVariables>& exponents() const {
    return exps_;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }
  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.exps_ <=> b.exps_;
  }

  std::size_t hash() const {
    std::uint64_t w[2];
    std::memcpy(w, exps_.data(), sizeof(w));
    return std::hash<std::uint64_t>{}(w[0] * 0x9E3779B97F4A7C15ULL ^ w[1]);
  }

 private:
  std::array<std::uint8_t, kMaxVariables> exps_;
  std::uint16_t degree_ = 0;
};

static_assert(kMaxVariables == 16, "hash packs exponents into two words");

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace crflat

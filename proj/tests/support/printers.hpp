#pragma once

#include <doctest.h>

#include "crflat/series.hpp"

namespace doctest {

template <>
struct StringMaker<crflat::Series> {
  static String convert(const crflat::Series& s) {
    return (crflat::to_string(s) + " [order " + std::to_string(s.order()) + "]").c_str();
  }
};

}  // namespace doctest

#pragma once

#include <doctest.h>

#include <weylwalk/coxeter.hpp>

namespace doctest {
template <>
struct StringMaker<weylwalk::LatticeVector> {
  static String convert(const weylwalk::LatticeVector& v) { return weylwalk::to_string(v).c_str(); }
};
template <>
struct StringMaker<weylwalk::Rational> {
  static String convert(const weylwalk::Rational& r) { return weylwalk::to_string(r).c_str(); }
};
}  // namespace doctest

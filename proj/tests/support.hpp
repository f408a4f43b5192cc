#pragma once

#include <doctest.h>

#include "whitney/rational.hpp"

inline whitney::Rational Q(const char* text) { return whitney::Rational::parse(text); }

namespace doctest {
template <>
struct StringMaker<whitney::Rational> {
    static String convert(const whitney::Rational& r) { return r.str().c_str(); }
};
}  // namespace doctest

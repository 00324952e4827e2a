#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace seglex {

using Int = boost::multiprecision::cpp_int;

// cpp_int division truncates toward zero; these round toward -inf.
inline Int floorDiv(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceilDiv(const Int& a, const Int& b) { return -floorDiv(-a, b); }

inline Int intGcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int intLcm(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

inline Int intAbs(const Int& a) { return a < 0 ? Int(-a) : a; }

} // namespace seglex

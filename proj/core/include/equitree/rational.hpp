#pragma once

#include <boost/rational.hpp>
#include <string>

namespace equitree {

// Exact fraction type used wherever a threshold like (s+t)/s must not be
// rounded. Comparisons are overflow-safe in boost; keep magnitudes moderate
// (the diagnostics that build big products target instances with n <= ~10^4).
using Frac = boost::rational<long long>;

inline std::string frac_str(const Frac& f) {
    std::string s = std::to_string(f.numerator());
    if (f.denominator() != 1) {
        s += "/";
        s += std::to_string(f.denominator());
    }
    return s;
}

}  // namespace equitree

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mchom {

// Every quantity in this library is an exact rational; there is no floating
// point anywhere.  cpp_rational keeps numerator/denominator in canonical
// reduced form with a positive denominator.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Scalar scalar_pow(const Scalar& q, unsigned n) {
    Scalar r = 1;
    for (unsigned i = 0; i < n; ++i) r *= q;
    return r;
}

inline Scalar factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return Scalar(r);
}

inline std::string scalar_str(const Scalar& q) { return q.str(); }

// Strict "p" or "p/q" syntax; q > 0 after reduction is guaranteed by the
// representation, but a literal zero denominator is rejected here.
inline Scalar parse_scalar(const std::string& text) {
    auto bad = [&]() -> Scalar { throw Error("bad rational literal '" + text + "'"); };
    if (text.empty()) return bad();
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = s[0] == '-' ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int(text)) return bad();
        return Scalar(Integer(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') return bad();
    Integer d(den);
    if (d == 0) return bad();
    return Scalar(Integer(num), d);
}

inline int parity(int degree) { return ((degree % 2) + 2) % 2; }

}  // namespace mchom

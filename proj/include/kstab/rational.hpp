// Exact rational arithmetic. All numeric data in this library is held as
// arbitrary-precision rationals in lowest terms; nothing is ever rounded.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace kstab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Grammar: -?digits(/digits)?  with a nonzero denominator. The sign may only
// prefix the numerator, which is what the serializer emits.
inline Rat parse_rat(std::string_view s) {
    const auto fail = [&] {
        throw std::invalid_argument("malformed rational \"" + std::string(s) + "\"");
    };
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t num_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == num_begin) fail();
    if (i < s.size()) {
        if (s[i] != '/') fail();
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == den_begin || i != s.size()) fail();
    }
    Rat q(std::string(s), 10);
    if (q.get_den() == 0) fail();
    q.canonicalize();
    return q;
}

// "p/q", or just "p" when the denominator is 1.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

}  // namespace kstab

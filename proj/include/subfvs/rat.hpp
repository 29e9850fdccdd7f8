#pragma once

#include "subfvs/errors.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace subfvs {

/// Exact rational on int64, always normalized with positive denominator.
/// Used for the class parameters and the derived exponents, which must be
/// reported exactly (e.g. 1/45) rather than as rounded doubles.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw invariant_error("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw invariant_error("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.num * b.den <= b.num * a.den; }
};

/// Parses "a/b" or "a".
inline Rat parse_rat(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw input_error("cannot parse rational: '" + s + "'");
    }
}

namespace detail {

// Minimal big unsigned, only what pow_geq needs.
using BigU = std::vector<std::uint32_t>; // little endian, base 2^32

inline BigU big_from(std::uint64_t x) {
    BigU b;
    while (x) {
        b.push_back(static_cast<std::uint32_t>(x));
        x >>= 32;
    }
    return b;
}

inline BigU big_mul(const BigU& a, std::uint64_t m) {
    BigU r(a.size() + 2, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * (m & 0xffffffffULL) + carry;
        r[i] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
    }
    std::size_t i = a.size();
    while (carry) {
        r[i++] = static_cast<std::uint32_t>(carry);
        carry >>= 32;
    }
    if (m >> 32) {
        // split 64-bit multiplier: a*m = a*lo + (a*hi << 32)
        BigU hi = big_mul(a, m >> 32);
        hi.insert(hi.begin(), 0);
        BigU sum(std::max(r.size(), hi.size()) + 1, 0);
        std::uint64_t c = 0;
        for (std::size_t j = 0; j < sum.size(); ++j) {
            std::uint64_t cur = c;
            if (j < r.size()) cur += r[j];
            if (j < hi.size()) cur += hi[j];
            sum[j] = static_cast<std::uint32_t>(cur);
            c = cur >> 32;
        }
        r = sum;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

inline int big_cmp(const BigU& a, const BigU& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

inline BigU big_pow(std::uint64_t base, std::uint64_t exp) {
    BigU r = big_from(1);
    for (std::uint64_t i = 0; i < exp; ++i) r = big_mul(r, base);
    return r;
}

} // namespace detail

/// Exact test of a^p >= b^q for nonnegative integers.
inline bool pow_geq(std::uint64_t a, std::uint64_t p, std::uint64_t b, std::uint64_t q) {
    return detail::big_cmp(detail::big_pow(a, p), detail::big_pow(b, q)) >= 0;
}

/// Smallest integer m with m >= x^e, computed exactly (e >= 0, x >= 1).
inline std::uint64_t ceil_pow(std::uint64_t x, const Rat& e) {
    if (e.num < 0) throw invariant_error("ceil_pow: negative exponent");
    if (x <= 1 || e.num == 0) return 1;
    const auto a = static_cast<std::uint64_t>(e.num);
    const auto b = static_cast<std::uint64_t>(e.den);
    std::uint64_t m = 1;
    while (!pow_geq(m, b, x, a)) ++m; // m^b >= x^a  <=>  m >= x^(a/b)
    return m;
}

} // namespace subfvs

#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals
// (GMP via Boost.Multiprecision). No floating point anywhere in the library.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegelcone {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int int_pow(const Int& b, unsigned e) {
    Int r = 1, x = b;
    for (unsigned k = e; k; k >>= 1) {
        if (k & 1) r *= x;
        x *= x;
    }
    return r;
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e >= 0) {
        Rat r = 1, x = b;
        for (long k = e; k; k >>= 1) {
            if (k & 1) r *= x;
            x *= x;
        }
        return r;
    }
    if (b == 0) throw std::domain_error("rat_pow: 0 to negative power");
    return 1 / rat_pow(b, -e);
}

inline int sign(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Canonical "p/q" string (q omitted when 1); used by every serializer so
// reports are byte-identical across runs.
inline std::string rat_to_string(const Rat& q) {
    const Int n = num(q), d = den(q);
    std::string s = n.str();
    if (d != 1) s += "/" + d.str();
    return s;
}

inline Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d <= 0) throw std::invalid_argument("rat_from_string: non-positive denominator");
    return Rat(n) / Rat(d);
}

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

inline Rat norm_sq(const RatVec& a) { return dot(a, a); }

inline bool is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// FNV-1a over a byte stream; enough for cache checksums and basis fingerprints.
struct Fnv1a {
    std::uint64_t h = 1469598103934665603ULL;
    void feed(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    }
    void feed(const std::string& s) { feed(s.data(), s.size()); }
    void feed(const Rat& q) {
        feed(rat_to_string(q));
        feed(";", 1);
    }
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i) out[i] = digits[(h >> (4 * (15 - i))) & 0xf];
        return out;
    }
};

}  // namespace siegelcone

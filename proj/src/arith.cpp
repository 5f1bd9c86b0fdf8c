#include "weilmono/arith.hpp"

#include <limits>

namespace wm {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<u64>::max() / base)
            throw std::overflow_error("ipow overflow");
        r *= base;
    }
    return r;
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    unsigned __int128 r = 1, b = base % m;
    while (exp) {
        if (exp & 1) r = r * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<u64>(r);
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 mult_order(u64 p, u64 n) {
    if (n == 1) return 1;
    if (std::gcd(p, n) != 1) throw std::invalid_argument("mult_order: not coprime");
    u64 f = 1;
    u64 t = p % n;
    while (t != 1) {
        t = static_cast<u64>(static_cast<unsigned __int128>(t) * p % n);
        ++f;
    }
    return f;
}

i64 inverse_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 q = g / a1;
        i64 t = g - q * a1; g = a1; a1 = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return mod(x, m);
}

u64 lcm_u(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

u64 gauss_count(u64 q, unsigned k) { return (ipow(q, k) - 1) / (q - 1); }

QmodZ::QmodZ(i64 n, i64 d) {
    if (d <= 0) throw std::invalid_argument("QmodZ: denominator must be positive");
    n = mod(n, d);
    i64 g = std::gcd(n, d);
    if (g == 0) g = d;
    num = n / g;
    den = d / g;
    if (num == 0) den = 1;
}

QmodZ QmodZ::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return QmodZ(std::stoll(s), 1);
    return QmodZ(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string QmodZ::str() const { return std::to_string(num) + "/" + std::to_string(den); }

QmodZ QmodZ::operator+(const QmodZ& o) const {
    i64 l = static_cast<i64>(lcm_u(den, o.den));
    __int128 n = static_cast<__int128>(num) * (l / den) + static_cast<__int128>(o.num) * (l / o.den);
    return QmodZ(static_cast<i64>(n % l), l);
}

QmodZ QmodZ::operator-() const { return QmodZ(-num, den); }

QmodZ QmodZ::operator-(const QmodZ& o) const { return *this + (-o); }

QmodZ QmodZ::operator*(i64 k) const {
    __int128 n = static_cast<__int128>(num) * k;
    n %= den;
    return QmodZ(static_cast<i64>(n), den);
}

}  // namespace wm

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace wm {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

bool is_prime(u64 n);
std::vector<u64> prime_factors(u64 n);  // distinct, ascending
u64 ipow(u64 base, unsigned exp);       // throws std::overflow_error
u64 powmod(u64 base, u64 exp, u64 mod);
i64 mod(i64 a, i64 m);                  // result in [0, m)
u64 mult_order(u64 p, u64 n);           // order of p in (Z/n)^x, n coprime to p
i64 inverse_mod(i64 a, i64 m);          // throws if not invertible
u64 lcm_u(u64 a, u64 b);

// (q^k - 1)/(q - 1)
u64 gauss_count(u64 q, unsigned k);

// Element of Q/Z stored as a reduced fraction num/den with 0 <= num < den.
struct QmodZ {
    i64 num = 0;
    i64 den = 1;

    QmodZ() = default;
    QmodZ(i64 n, i64 d);

    static QmodZ parse(const std::string& s);  // "a/b" or "a"
    std::string str() const;

    bool is_zero() const { return num == 0; }
    QmodZ operator+(const QmodZ& o) const;
    QmodZ operator-(const QmodZ& o) const;
    QmodZ operator-() const;
    QmodZ operator*(i64 k) const;

    bool operator==(const QmodZ& o) const { return num == o.num && den == o.den; }
    bool operator!=(const QmodZ& o) const { return !(*this == o); }
    // ordering by (den, num), used for canonical sets and human output
    bool operator<(const QmodZ& o) const {
        return den != o.den ? den < o.den : num < o.num;
    }
};

// ordering by numeric value in [0,1)
inline bool value_less(const QmodZ& a, const QmodZ& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

}  // namespace wm

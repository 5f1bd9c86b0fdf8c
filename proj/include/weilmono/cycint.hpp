#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "weilmono/arith.hpp"

namespace wm {

// Coefficients of the M-th cyclotomic polynomial, low degree first (cached).
const std::vector<i64>& cyclotomic_poly(u64 M);
u64 euler_phi(u64 M);

// Element of Z[zeta_M] stored in the power basis 1, zeta, ..., zeta^(phi(M)-1).
class CycInt {
public:
    CycInt() : CycInt(1) {}
    explicit CycInt(u64 level);

    static CycInt integer(i64 v, u64 level = 1);
    static CycInt root(const QmodZ& x);  // exp(2 pi i x)
    // Reduces a length-M vector of coefficients of zeta^k (k mod M).
    static CycInt from_powers(u64 level, const std::vector<i64>& coeff_of_power);

    u64 level() const { return M_; }
    const std::vector<i64>& coeffs() const { return c_; }

    CycInt relevel(u64 new_level) const;  // new_level must be a multiple of level
    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt operator-() const;
    CycInt& operator+=(const CycInt& o) { return *this = *this + o; }

    bool operator==(const CycInt& o) const;
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    bool is_integer() const;
    i64 integer_value() const;  // requires is_integer
    bool is_zero() const;

    std::complex<long double> approx() const;
    std::string str() const;

private:
    u64 M_;
    std::vector<i64> c_;
};

using Spectrum = std::map<QmodZ, i64>;  // exponent -> multiplicity

CycInt cyc_sum(const std::vector<QmodZ>& exps);
CycInt cyc_sum(const Spectrum& spec);

}  // namespace wm

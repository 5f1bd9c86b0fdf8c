#include "weilmono/cycint.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace wm {

u64 euler_phi(u64 M) {
    u64 r = M;
    for (u64 p : prime_factors(M)) r = r / p * (p - 1);
    return r;
}

namespace {

std::vector<i64> exact_div(std::vector<i64> num, const std::vector<i64>& den) {
    // den monic
    const std::size_t dn = den.size() - 1;
    std::vector<i64> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        i64 c = num[i];
        q[i - dn] = c;
        if (c)
            for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
    return q;
}

}  // namespace

const std::vector<i64>& cyclotomic_poly(u64 M) {
    static std::mutex mu;
    static std::map<u64, std::vector<i64>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(M);
        if (it != cache.end()) return it->second;
    }
    std::vector<i64> poly(M + 1, 0);
    poly[0] = -1;
    poly[M] = 1;
    for (u64 d = 1; d < M; ++d)
        if (M % d == 0) poly = exact_div(poly, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(M, std::move(poly)).first->second;
}

CycInt::CycInt(u64 level) : M_(level), c_(euler_phi(level), 0) {
    if (level == 0) throw std::invalid_argument("CycInt: level must be positive");
}

CycInt CycInt::from_powers(u64 level, const std::vector<i64>& v) {
    CycInt r(level);
    const auto& phi = cyclotomic_poly(level);
    const std::size_t deg = phi.size() - 1;
    std::vector<i64> t(level, 0);
    for (std::size_t k = 0; k < v.size(); ++k) t[k % level] += v[k];
    for (std::size_t i = t.size(); i-- > deg;) {
        i64 c = t[i];
        if (!c) continue;
        for (std::size_t k = 0; k <= deg; ++k) t[i - deg + k] -= c * phi[k];
    }
    for (std::size_t i = 0; i < deg; ++i) r.c_[i] = t[i];
    return r;
}

CycInt CycInt::integer(i64 v, u64 level) {
    CycInt r(level);
    r.c_[0] = v;
    return r;
}

CycInt CycInt::root(const QmodZ& x) {
    std::vector<i64> v(static_cast<std::size_t>(x.den), 0);
    v[static_cast<std::size_t>(x.num)] = 1;
    return from_powers(static_cast<u64>(x.den), v);
}

CycInt CycInt::relevel(u64 L) const {
    if (L % M_ != 0) throw std::invalid_argument("relevel: new level must be a multiple");
    if (L == M_) return *this;
    const u64 k = L / M_;
    std::vector<i64> v(L, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] += c_[i];
    return from_powers(L, v);
}

CycInt CycInt::operator+(const CycInt& o) const {
    u64 L = lcm_u(M_, o.M_);
    CycInt a = relevel(L), b = o.relevel(L);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CycInt CycInt::operator-() const {
    CycInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator*(const CycInt& o) const {
    u64 L = lcm_u(M_, o.M_);
    CycInt a = relevel(L), b = o.relevel(L);
    std::vector<i64> v(2 * a.c_.size(), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i])
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return from_powers(L, v);
}

bool CycInt::operator==(const CycInt& o) const {
    u64 L = lcm_u(M_, o.M_);
    return relevel(L).c_ == o.relevel(L).c_;
}

bool CycInt::is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

i64 CycInt::integer_value() const {
    if (!is_integer()) throw std::domain_error("CycInt is not a rational integer");
    return c_[0];
}

bool CycInt::is_zero() const {
    for (i64 x : c_)
        if (x) return false;
    return true;
}

std::complex<long double> CycInt::approx() const {
    std::complex<long double> s = 0;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) s += static_cast<long double>(c_[i]) * std::polar(1.0L, two_pi * i / M_);
    return s;
}

std::string CycInt::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        i64 c = c_[i];
        if (!c) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        i64 a = c < 0 ? -c : c;
        if (i == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "z" << M_;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

CycInt cyc_sum(const std::vector<QmodZ>& exps) {
    Spectrum s;
    for (const auto& x : exps) ++s[x];
    return cyc_sum(s);
}

CycInt cyc_sum(const Spectrum& spec) {
    u64 L = 1;
    for (const auto& [x, m] : spec) L = lcm_u(L, static_cast<u64>(x.den));
    std::vector<i64> v(L, 0);
    for (const auto& [x, m] : spec) v[static_cast<std::size_t>(x.num) * (L / x.den)] += m;
    return CycInt::from_powers(L, v);
}

}  // namespace wm

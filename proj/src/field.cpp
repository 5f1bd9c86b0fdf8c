#include "weilmono/field.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace wm {

namespace {

using Poly = std::vector<u32>;  // coefficients mod p, length e

// a*b mod (x^e + sum c_i x^i)
Poly polymulmod(const Poly& a, const Poly& b, const std::vector<u32>& c, u32 p) {
    const std::size_t e = c.size();
    std::vector<u64> t(2 * e - 1, 0);
    for (std::size_t i = 0; i < e; ++i)
        if (a[i])
            for (std::size_t j = 0; j < e; ++j) t[i + j] = (t[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
    for (std::size_t i = 2 * e - 2; i >= e; --i) {
        u64 top = t[i];
        if (!top) continue;
        t[i] = 0;
        for (std::size_t k = 0; k < e; ++k)
            t[i - e + k] = (t[i - e + k] + (p - c[k]) * top) % p;
    }
    Poly r(e);
    for (std::size_t i = 0; i < e; ++i) r[i] = static_cast<u32>(t[i]);
    return r;
}

Poly x_pow(u64 k, const std::vector<u32>& c, u32 p) {
    const std::size_t e = c.size();
    Poly r(e, 0), b(e, 0);
    r[0] = 1;
    if (e == 1) b[0] = (p - c[0]) % p;
    else b[1] = 1;
    while (k) {
        if (k & 1) r = polymulmod(r, b, c, p);
        b = polymulmod(b, b, c, p);
        k >>= 1;
    }
    return r;
}

bool is_one(const Poly& a) {
    if (a[0] != 1) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i]) return false;
    return true;
}

}  // namespace

u64 field_ceiling() {
    if (const char* s = std::getenv("WEILMONO_CEILING")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 1) return v;
    }
    return u64{1} << 24;
}

FieldTable::FieldTable(u32 p, u32 e, u64 ceiling) : p_(p), e_(e) {
    if (!is_prime(p)) throw std::invalid_argument("build_field: p is not prime");
    if (e < 1) throw std::invalid_argument("build_field: degree must be >= 1");
    try {
        order_ = ipow(p, e);
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("build_field: field size over ceiling");
    }
    if (order_ > ceiling || order_ > (u64{1} << 31))
        throw std::invalid_argument("build_field: field size " + std::to_string(p) + "^" +
                                    std::to_string(e) + " over ceiling " + std::to_string(ceiling));
    units_ = order_ - 1;
    find_modulus();
    build_tables();
}

void FieldTable::find_modulus() {
    const auto factors = prime_factors(units_);
    std::vector<u32> c(e_);
    for (u64 code = 0; code < order_; ++code) {
        u64 t = code;
        for (u32 i = 0; i < e_; ++i) {
            c[i] = static_cast<u32>(t % p_);
            t /= p_;
        }
        if (c[0] == 0) continue;
        if (!is_one(x_pow(units_, c, p_))) continue;
        bool primitive = true;
        for (u64 r : factors)
            if (is_one(x_pow(units_ / r, c, p_))) {
                primitive = false;
                break;
            }
        if (primitive) {
            modulus_ = c;
            return;
        }
    }
    throw std::logic_error("no primitive polynomial found");
}

std::string FieldTable::modulus_str() const {
    std::ostringstream os;
    os << "x^" << e_;
    for (int i = static_cast<int>(e_) - 1; i >= 0; --i) {
        u32 c = modulus_[i];
        if (!c) continue;
        os << " + ";
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

u32 FieldTable::enc_add(u32 a, u32 b) const {
    if (p_ == 2) return a ^ b;
    u32 r = 0, pw = 1;
    for (u32 i = 0; i < e_; ++i) {
        r += ((a % p_ + b % p_) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

void FieldTable::build_tables() {
    exp_.assign(units_, 0);
    log_.assign(order_, Elem::kZero);
    const u64 top_place = order_ / p_;
    u32 low_mask = 0;  // p = 2 fast path: encoding of the reduction x^e = -sum c_i x^i
    for (u32 i = 0; i < e_; ++i) low_mask |= (modulus_[i] & 1u) << i;
    std::vector<u32> digits(e_, 0);
    u64 cur = 1;
    for (u64 i = 0; i < units_; ++i) {
        exp_[i] = static_cast<u32>(cur);
        if (log_[cur] != Elem::kZero) throw std::logic_error("generator is not primitive");
        log_[cur] = static_cast<u32>(i);
        if (p_ == 2) {
            u64 top = cur / top_place;
            cur = ((cur % top_place) << 1) ^ (top ? low_mask : 0u);
        } else {
            u64 t = cur;
            for (u32 d = 0; d < e_; ++d) {
                digits[d] = static_cast<u32>(t % p_);
                t /= p_;
            }
            u32 top = digits[e_ - 1];
            u64 next = 0, pw = 1;
            for (u32 d = 0; d < e_; ++d) {
                u64 prev = d == 0 ? 0 : digits[d - 1];
                u64 v = (prev + static_cast<u64>(p_ - modulus_[d]) * top) % p_;
                next += v * pw;
                pw *= p_;
            }
            cur = next;
        }
    }
    zech_.assign(units_, Elem::kZero);
    for (u64 k = 0; k < units_; ++k) {
        u32 s = enc_add(exp_[k], 1);
        zech_[k] = s == 0 ? Elem::kZero : log_[s];
    }
}

Elem FieldTable::from_enc(u32 enc) const {
    if (enc >= order_) throw std::out_of_range("from_enc: encoding out of range");
    return Elem{enc == 0 ? Elem::kZero : log_[enc]};
}

Elem FieldTable::from_int(i64 c) const {
    return from_enc(static_cast<u32>(mod(c, p_)));
}

Elem FieldTable::mul(Elem a, Elem b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    u64 s = static_cast<u64>(a.idx) + b.idx;
    if (s >= units_) s -= units_;
    return Elem{static_cast<u32>(s)};
}

Elem FieldTable::inv(Elem a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    return Elem{a.idx == 0 ? 0u : static_cast<u32>(units_ - a.idx)};
}

Elem FieldTable::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem FieldTable::pow(Elem a, i64 k) const {
    if (a.is_zero()) {
        if (k == 0) return one();
        if (k < 0) throw std::domain_error("negative power of zero");
        return zero();
    }
    __int128 t = static_cast<__int128>(a.idx) * k;
    i64 r = static_cast<i64>(t % static_cast<__int128>(units_));
    if (r < 0) r += static_cast<i64>(units_);
    return Elem{static_cast<u32>(r)};
}

Elem FieldTable::add(Elem a, Elem b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    u64 d = b.idx >= a.idx ? b.idx - a.idx : b.idx + units_ - a.idx;
    u32 z = zech_[d];
    if (z == Elem::kZero) return zero();
    u64 s = static_cast<u64>(a.idx) + z;
    if (s >= units_) s -= units_;
    return Elem{static_cast<u32>(s)};
}

Elem FieldTable::neg(Elem a) const {
    if (a.is_zero() || p_ == 2) return a;
    u64 s = a.idx + units_ / 2;
    if (s >= units_) s -= units_;
    return Elem{static_cast<u32>(s)};
}

Elem FieldTable::frob(Elem a, u64 k) const {
    if (a.is_zero() || units_ == 1) return a;
    unsigned __int128 t = static_cast<unsigned __int128>(a.idx) * powmod(p_, k, units_);
    return Elem{static_cast<u32>(t % units_)};
}

FieldPtr get_field(u32 p, u32 e) {
    static std::mutex mu;
    static std::map<std::pair<u32, u32>, FieldPtr> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, e});
        if (it != cache.end()) return it->second;
    }
    auto f = std::make_shared<const FieldTable>(p, e);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(p, e), f);
    return it->second;
}

FieldPtr parse_field(const std::string& s) {
    auto caret = s.find('^');
    try {
        if (caret == std::string::npos) return get_field(static_cast<u32>(std::stoul(s)), 1);
        return get_field(static_cast<u32>(std::stoul(s.substr(0, caret))),
                         static_cast<u32>(std::stoul(s.substr(caret + 1))));
    } catch (const std::invalid_argument& ex) {
        std::string what = ex.what();
        if (what.rfind("build_field", 0) == 0) throw;
        throw std::invalid_argument("bad field spec '" + s + "' (expected p^e)");
    }
}

Embedding::Embedding(const FieldTable& sub, const FieldTable& sup)
    : sub_units_(sub.units()), sup_units_(sup.units()) {
    if (sub.p() != sup.p() || sup.e() % sub.e() != 0)
        throw std::invalid_argument("embed: incompatible characteristic or degree");
    k_ = sup_units_ / sub_units_;
    if (sub_units_ == 1) {
        r_ = 1;
        r_inv_ = 0;
        return;
    }
    const auto& c = sub.modulus();
    for (u64 r = 1; r < sub_units_; ++r) {
        if (std::gcd(r, sub_units_) != 1) continue;
        Elem y = sup.from_index(static_cast<i64>((k_ * r) % sup_units_));
        Elem acc = sup.pow(y, sub.e());
        for (u32 i = 0; i < sub.e(); ++i)
            acc = sup.add(acc, sup.mul(sup.from_int(c[i]), sup.pow(y, i)));
        if (acc.is_zero()) {
            r_ = r;
            r_inv_ = static_cast<u64>(inverse_mod(static_cast<i64>(r), static_cast<i64>(sub_units_)));
            return;
        }
    }
    throw std::logic_error("embed: no root of the sub modulus found");
}

Elem Embedding::map(Elem a) const {
    if (a.is_zero()) return a;
    unsigned __int128 t = static_cast<unsigned __int128>(a.idx) * k_ * r_;
    return Elem{static_cast<u32>(t % sup_units_)};
}

bool Embedding::in_image(Elem x) const { return x.is_zero() || x.idx % k_ == 0; }

Elem Embedding::preimage(Elem x) const {
    if (x.is_zero()) return x;
    if (x.idx % k_ != 0) throw std::invalid_argument("preimage: element not in subfield");
    if (sub_units_ == 1) return Elem{0};
    unsigned __int128 t = static_cast<unsigned __int128>(x.idx / k_) * r_inv_;
    return Elem{static_cast<u32>(t % sub_units_)};
}

Elem Embedding::norm(Elem x) const {
    if (x.is_zero()) return x;
    if (sub_units_ == 1) return Elem{0};
    unsigned __int128 t = static_cast<unsigned __int128>(x.idx % sub_units_) * r_inv_;
    return Elem{static_cast<u32>(t % sub_units_)};
}

Embedding embed(const FieldTable& sub, const FieldTable& sup) { return Embedding(sub, sup); }

Elem norm(const FieldTable& K, Elem x, const FieldTable& base) { return Embedding(base, K).norm(x); }

QmodZ mult_char_value(const FieldTable& K, const QmodZ& chi, Elem x) {
    if (x.is_zero()) throw std::domain_error("character value at zero");
    if (K.units() % static_cast<u64>(chi.den) != 0)
        throw std::invalid_argument("character order does not divide #K-1");
    return chi * static_cast<i64>(x.idx);
}

}  // namespace wm

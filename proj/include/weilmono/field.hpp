#pragma once

#include <memory>
#include <string>
#include <vector>

#include "weilmono/arith.hpp"

namespace wm {

// Default ceiling on field size; WEILMONO_CEILING overrides it.
u64 field_ceiling();

// A field element as a discrete-log index into the exponential table.
struct Elem {
    static constexpr u32 kZero = 0xFFFFFFFFu;
    u32 idx = kZero;

    bool is_zero() const { return idx == kZero; }
    bool operator==(const Elem& o) const { return idx == o.idx; }
    bool operator!=(const Elem& o) const { return idx != o.idx; }
};

// F_{p^e} with exp/log tables over a primitive modulus and a Zech table for addition.
// Encodings are base-p integers sum a_i p^i of the coefficient vector in the power basis.
class FieldTable {
public:
    FieldTable(u32 p, u32 e, u64 ceiling = field_ceiling());

    u32 p() const { return p_; }
    u32 e() const { return e_; }
    u64 order() const { return order_; }
    u64 units() const { return units_; }
    const std::vector<u32>& modulus() const { return modulus_; }  // c_0..c_{e-1}, monic
    std::string modulus_str() const;
    std::string spec() const { return std::to_string(p_) + "^" + std::to_string(e_); }

    u32 exp_enc(u64 i) const { return exp_[i % units_]; }
    Elem from_enc(u32 enc) const;
    u32 to_enc(Elem a) const { return a.is_zero() ? 0u : exp_[a.idx]; }

    Elem zero() const { return Elem{}; }
    Elem one() const { return Elem{0}; }
    Elem gen() const { return Elem{units_ == 1 ? 0u : 1u}; }
    Elem from_index(i64 i) const { return Elem{static_cast<u32>(mod(i, static_cast<i64>(units_)))}; }
    Elem from_int(i64 c) const;  // prime field constant

    Elem mul(Elem a, Elem b) const;
    Elem div(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, i64 k) const;
    Elem add(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem frob(Elem a, u64 k) const;  // a^(p^k)

    // Digitwise addition of encodings, independent of the tables.
    u32 enc_add(u32 a, u32 b) const;

private:
    u32 p_, e_;
    u64 order_, units_;
    std::vector<u32> modulus_;
    std::vector<u32> exp_;
    std::vector<u32> log_;   // indexed by encoding; log_[0] unused
    std::vector<u32> zech_;  // zech_[k] = log(1 + g^k), or kZero

    void find_modulus();
    void build_tables();
};

using FieldPtr = std::shared_ptr<const FieldTable>;

// Thread-safe cache of built fields keyed by (p, e).
FieldPtr get_field(u32 p, u32 e);
// Parses "p^e".
FieldPtr parse_field(const std::string& s);

// Embedding of F_{p^e} into F_{p^E}: sub generator maps to sup generator^(k*r),
// k = (p^E-1)/(p^e-1), r the smallest unit residue making the sub modulus vanish.
class Embedding {
public:
    Embedding(const FieldTable& sub, const FieldTable& sup);

    Elem map(Elem a) const;
    Elem norm(Elem x) const;  // norm from sup down to sub
    bool in_image(Elem x) const;
    Elem preimage(Elem x) const;  // requires in_image
    u64 k() const { return k_; }
    u64 r() const { return r_; }

private:
    u64 sub_units_, sup_units_, k_, r_, r_inv_;
};

Embedding embed(const FieldTable& sub, const FieldTable& sup);
Elem norm(const FieldTable& K, Elem x, const FieldTable& base);

// Value of the character with exponent chi at x: chi * log(x) in Q/Z.
QmodZ mult_char_value(const FieldTable& K, const QmodZ& chi, Elem x);

}  // namespace wm

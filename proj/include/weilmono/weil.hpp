#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weilmono/cycint.hpp"
#include "weilmono/field.hpp"

namespace wm {

// Indexing of F_q^n: a vector is the mixed-radix integer sum enc(v_i) q^i.
class VecSpace {
public:
    VecSpace(FieldPtr F, u32 n);

    const FieldTable& field() const { return *F_; }
    u32 n() const { return n_; }
    u64 q() const { return q_; }
    u64 size() const { return size_; }

    std::vector<Elem> decode(u64 idx) const;
    u64 encode(const std::vector<Elem>& v) const;

    // Each nonzero v equals alpha^scal(v) * rep(line(v)); rep is the smallest index on the line.
    u32 line_of(u64 idx) const { return line_of_[idx]; }
    u32 scal_of(u64 idx) const { return scal_of_[idx]; }
    u64 line_rep(u32 line) const { return reps_[line]; }
    u32 line_count() const { return static_cast<u32>(reps_.size()); }

private:
    FieldPtr F_;
    u32 n_;
    u64 q_, size_;
    std::vector<u32> line_of_, scal_of_;
    std::vector<u64> reps_;
};

class GLElement {
public:
    GLElement(FieldPtr F, u32 n);  // zero matrix
    static GLElement identity(FieldPtr F, u32 n);
    static GLElement scalar(FieldPtr F, u32 n, Elem s);
    static GLElement diag(FieldPtr F, const std::vector<Elem>& d);
    static GLElement from_index(FieldPtr F, u32 n, u64 idx);

    u32 n() const { return n_; }
    const FieldTable& field() const { return *F_; }
    FieldPtr field_ptr() const { return F_; }
    Elem at(u32 i, u32 j) const { return a_[i * n_ + j]; }
    void set(u32 i, u32 j, Elem x) { a_[i * n_ + j] = x; }
    u64 index() const;  // mixed radix over entries, row-major

    GLElement operator*(const GLElement& o) const;
    bool operator==(const GLElement& o) const { return a_ == o.a_; }
    GLElement pow(i64 k) const;  // k >= 0, or negative for invertible
    GLElement inverse() const;
    Elem det() const;
    bool invertible() const { return !det().is_zero(); }
    u64 order() const;  // multiplicative order

    std::vector<Elem> apply(const std::vector<Elem>& v) const;
    std::vector<u64> permutation(const VecSpace& V) const;  // action on vector indices

    std::string str() const;

private:
    FieldPtr F_;
    u32 n_;
    std::vector<Elem> a_;
};

struct OrbitData {
    u64 rep = 0;
    u64 s = 0;
    u64 t = 0;
    u64 members = 0;
};

std::vector<OrbitData> orbit_decompose(const GLElement& g);

// Spectrum of g on W_j; with w0_prime and j == 0, one eigenvalue 1 is removed.
Spectrum weil_spectrum(const GLElement& g, i64 j, bool w0_prime = false);
CycInt weil_trace(const GLElement& g, i64 j);
i64 max_multiplicity(const Spectrum& s);

GLElement singer_element(FieldPtr Fq, u32 n, i64 a);
GLElement block_element(FieldPtr Fq, u32 n, u32 m, i64 b, i64 c);

// Side conditions of a type (c) element.
bool block_conditions(u64 q, u32 n, u32 m, i64 b, i64 c);

// Brute-force conjugacy classes of GL_n(F_q) within the element budget q^(n^2) <= limit.
struct GroupClasses {
    FieldPtr F;
    u32 n = 0;
    std::vector<u64> elements;        // indices of invertible matrices, ascending
    std::vector<int> class_of;        // by matrix index, -1 if singular
    std::vector<u64> reps;            // smallest index in each class
    std::vector<u64> sizes;
    int class_id(const GLElement& g) const { return class_of[g.index()]; }
};

u64 group_budget();
const GroupClasses& group_classes(FieldPtr F, u32 n);  // cached
u64 gl_order(u64 q, u32 n);

struct ClassEntry {
    GLElement rep;
    u64 class_size = 0;
    u64 order = 0;
    i64 max_mult = 0;
    std::string type;  // "a", "b", "c" or "UNEXPECTED"
};

struct ClassifyReport {
    u32 n = 0;
    u64 q = 0;
    i64 j = 0;
    std::vector<ClassEntry> entries;
    std::vector<std::string> missing;  // listed-type classes that exceeded multiplicity 2
    u64 unexpected = 0;
    bool matches() const { return unexpected == 0 && missing.empty(); }
};

ClassifyReport classify_m2(u32 n, u64 q, i64 j);

struct CycleReport {
    u64 expected_length = 0;
    u64 span_count = 0;
    std::vector<u64> cycle_lengths;
    bool closed = true;
    bool single_cycle() const {
        return closed && cycle_lengths.size() == 1 && cycle_lengths[0] == expected_length &&
               span_count == expected_length;
    }
};

CycleReport cycle_check(u64 q, u32 n, u32 m, i64 b, i64 c, i64 j);

// Field F_q for q a prime power.
FieldPtr field_for_q(u64 q);

}  // namespace wm

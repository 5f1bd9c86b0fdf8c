#include "weilmono/weil.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "weilmono/parallel.hpp"

namespace wm {

FieldPtr field_for_q(u64 q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    auto f = prime_factors(q);
    if (f.size() != 1) throw std::invalid_argument("q must be a prime power");
    u32 e = 0;
    for (u64 t = q; t > 1; t /= f[0]) ++e;
    return get_field(static_cast<u32>(f[0]), e);
}

// ---------------------------------------------------------------- VecSpace

VecSpace::VecSpace(FieldPtr F, u32 n) : F_(std::move(F)), n_(n), q_(F_->order()) {
    size_ = ipow(q_, n);
    line_of_.assign(size_, 0);
    scal_of_.assign(size_, 0);
    std::vector<bool> seen(size_, false);
    for (u64 idx = 1; idx < size_; ++idx) {
        if (seen[idx]) continue;
        const u32 line = static_cast<u32>(reps_.size());
        reps_.push_back(idx);
        auto v = decode(idx);
        for (u64 t = 0; t < F_->units(); ++t) {
            std::vector<Elem> w(n_);
            for (u32 i = 0; i < n_; ++i) w[i] = F_->mul(v[i], F_->from_index(static_cast<i64>(t)));
            u64 widx = encode(w);
            seen[widx] = true;
            line_of_[widx] = line;
            scal_of_[widx] = static_cast<u32>(t);
        }
    }
}

std::vector<Elem> VecSpace::decode(u64 idx) const {
    std::vector<Elem> v(n_);
    for (u32 i = 0; i < n_; ++i) {
        v[i] = F_->from_enc(static_cast<u32>(idx % q_));
        idx /= q_;
    }
    return v;
}

u64 VecSpace::encode(const std::vector<Elem>& v) const {
    u64 idx = 0;
    for (u32 i = n_; i-- > 0;) idx = idx * q_ + F_->to_enc(v[i]);
    return idx;
}

// ---------------------------------------------------------------- GLElement

GLElement::GLElement(FieldPtr F, u32 n) : F_(std::move(F)), n_(n), a_(static_cast<std::size_t>(n) * n) {}

GLElement GLElement::identity(FieldPtr F, u32 n) { return scalar(std::move(F), n, Elem{0}); }

GLElement GLElement::scalar(FieldPtr F, u32 n, Elem s) {
    GLElement g(std::move(F), n);
    for (u32 i = 0; i < n; ++i) g.set(i, i, s);
    return g;
}

GLElement GLElement::diag(FieldPtr F, const std::vector<Elem>& d) {
    GLElement g(std::move(F), static_cast<u32>(d.size()));
    for (u32 i = 0; i < d.size(); ++i) g.set(i, i, d[i]);
    return g;
}

GLElement GLElement::from_index(FieldPtr F, u32 n, u64 idx) {
    GLElement g(F, n);
    const u64 q = F->order();
    for (auto& x : g.a_) {
        x = F->from_enc(static_cast<u32>(idx % q));
        idx /= q;
    }
    return g;
}

u64 GLElement::index() const {
    u64 idx = 0;
    const u64 q = F_->order();
    for (std::size_t k = a_.size(); k-- > 0;) idx = idx * q + F_->to_enc(a_[k]);
    return idx;
}

GLElement GLElement::operator*(const GLElement& o) const {
    GLElement r(F_, n_);
    const FieldTable& F = *F_;
    for (u32 i = 0; i < n_; ++i)
        for (u32 j = 0; j < n_; ++j) {
            Elem s = F.zero();
            for (u32 k = 0; k < n_; ++k) s = F.add(s, F.mul(at(i, k), o.at(k, j)));
            r.set(i, j, s);
        }
    return r;
}

GLElement GLElement::pow(i64 k) const {
    if (k < 0) return inverse().pow(-k);
    GLElement r = identity(F_, n_), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

Elem GLElement::det() const {
    const FieldTable& F = *F_;
    std::vector<Elem> m = a_;
    Elem d = F.one();
    for (u32 c = 0; c < n_; ++c) {
        u32 piv = n_;
        for (u32 r = c; r < n_; ++r)
            if (!m[r * n_ + c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == n_) return F.zero();
        if (piv != c) {
            for (u32 k = 0; k < n_; ++k) std::swap(m[piv * n_ + k], m[c * n_ + k]);
            d = F.neg(d);
        }
        Elem pv = m[c * n_ + c];
        d = F.mul(d, pv);
        Elem pinv = F.inv(pv);
        for (u32 r = c + 1; r < n_; ++r) {
            Elem f = F.mul(m[r * n_ + c], pinv);
            if (f.is_zero()) continue;
            for (u32 k = c; k < n_; ++k) m[r * n_ + k] = F.sub(m[r * n_ + k], F.mul(f, m[c * n_ + k]));
        }
    }
    return d;
}

GLElement GLElement::inverse() const {
    const FieldTable& F = *F_;
    const u32 w = 2 * n_;
    std::vector<Elem> m(static_cast<std::size_t>(n_) * w);
    for (u32 i = 0; i < n_; ++i) {
        for (u32 j = 0; j < n_; ++j) m[i * w + j] = at(i, j);
        m[i * w + n_ + i] = F.one();
    }
    for (u32 c = 0; c < n_; ++c) {
        u32 piv = n_;
        for (u32 r = c; r < n_; ++r)
            if (!m[r * w + c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == n_) throw std::domain_error("singular matrix");
        if (piv != c)
            for (u32 k = 0; k < w; ++k) std::swap(m[piv * w + k], m[c * w + k]);
        Elem pinv = F.inv(m[c * w + c]);
        for (u32 k = 0; k < w; ++k) m[c * w + k] = F.mul(m[c * w + k], pinv);
        for (u32 r = 0; r < n_; ++r) {
            if (r == c) continue;
            Elem f = m[r * w + c];
            if (f.is_zero()) continue;
            for (u32 k = 0; k < w; ++k) m[r * w + k] = F.sub(m[r * w + k], F.mul(f, m[c * w + k]));
        }
    }
    GLElement r(F_, n_);
    for (u32 i = 0; i < n_; ++i)
        for (u32 j = 0; j < n_; ++j) r.set(i, j, m[i * w + n_ + j]);
    return r;
}

u64 GLElement::order() const {
    if (!invertible()) throw std::domain_error("order of a singular matrix");
    const GLElement id = identity(F_, n_);
    GLElement x = *this;
    for (u64 k = 1;; ++k) {
        if (x == id) return k;
        x = x * *this;
    }
}

std::vector<Elem> GLElement::apply(const std::vector<Elem>& v) const {
    const FieldTable& F = *F_;
    std::vector<Elem> r(n_, F.zero());
    for (u32 i = 0; i < n_; ++i)
        for (u32 k = 0; k < n_; ++k) r[i] = F.add(r[i], F.mul(at(i, k), v[k]));
    return r;
}

std::vector<u64> GLElement::permutation(const VecSpace& V) const {
    std::vector<u64> perm(V.size());
    // linear: image of idx is the sum of images of its coordinate parts
    const FieldTable& F = *F_;
    for (u64 idx = 0; idx < V.size(); ++idx) perm[idx] = V.encode(apply(V.decode(idx)));
    (void)F;
    return perm;
}

std::string GLElement::str() const {
    std::ostringstream os;
    os << "[";
    for (u32 i = 0; i < n_; ++i) {
        os << (i ? "; " : "");
        for (u32 j = 0; j < n_; ++j) os << (j ? " " : "") << F_->to_enc(at(i, j));
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- orbits and spectra

std::vector<OrbitData> orbit_decompose(const GLElement& g) {
    if (!g.invertible()) throw std::domain_error("orbit_decompose: singular matrix");
    VecSpace V(g.field_ptr(), g.n());
    const auto perm = g.permutation(V);
    const u64 qm1 = g.field().units();
    std::vector<bool> done(V.line_count(), false);
    std::vector<OrbitData> out;
    for (u32 L = 0; L < V.line_count(); ++L) {
        if (done[L]) continue;
        const u64 v = V.line_rep(L);
        u64 w = v;
        u64 s = 0;
        do {
            done[V.line_of(w)] = true;
            w = perm[w];
            ++s;
        } while (V.line_of(w) != L);
        OrbitData od;
        od.rep = v;
        od.s = s;
        od.t = qm1 == 0 ? 0 : V.scal_of(w) % qm1;
        od.members = s * qm1;
        out.push_back(od);
    }
    return out;
}

Spectrum weil_spectrum(const GLElement& g, i64 j, bool w0_prime) {
    const i64 qm1 = static_cast<i64>(g.field().units());
    if (j < 0 || j >= qm1) throw std::invalid_argument("weil_spectrum: j out of range");
    Spectrum sp;
    for (const auto& od : orbit_decompose(g)) {
        const i64 s = static_cast<i64>(od.s);
        for (i64 k = 0; k < s; ++k) ++sp[QmodZ(static_cast<i64>(od.t) * j + k * qm1, s * qm1)];
    }
    if (w0_prime && j == 0) {
        auto it = sp.find(QmodZ(0, 1));
        if (it == sp.end()) throw std::logic_error("W_0 spectrum lacks eigenvalue 1");
        if (--it->second == 0) sp.erase(it);
    }
    return sp;
}

CycInt weil_trace(const GLElement& g, i64 j) {
    const u64 qm1 = g.field().units();
    if (j < 0 || static_cast<u64>(j) >= qm1) throw std::invalid_argument("weil_trace: j out of range");
    std::vector<i64> v(qm1, 0);
    for (const auto& od : orbit_decompose(g))
        if (od.s == 1) ++v[(od.t * static_cast<u64>(j)) % qm1];
    return CycInt::from_powers(qm1, v);
}

i64 max_multiplicity(const Spectrum& s) {
    i64 m = 0;
    for (const auto& [x, k] : s) m = std::max(m, k);
    return m;
}

// ---------------------------------------------------------------- Singer and block elements

GLElement singer_element(FieldPtr Fq, u32 n, i64 a) {
    const u32 p = Fq->p();
    FieldPtr FQ = get_field(p, Fq->e() * n);
    Embedding emb(*Fq, *FQ);
    const u64 qm1 = Fq->units(), Qm1 = FQ->units();
    u64 rn = emb.r() % qm1;
    if (rn == 0) rn = qm1;
    while (std::gcd(rn, Qm1) != 1) rn += qm1;
    const Elem alpha_n = FQ->from_index(static_cast<i64>(rn));
    // minimal polynomial over F_q: product of (X - alpha_n^(q^i))
    std::vector<Elem> poly{FQ->one()};
    for (u32 i = 0; i < n; ++i) {
        Elem root = FQ->frob(alpha_n, static_cast<u64>(Fq->e()) * i);
        std::vector<Elem> next(poly.size() + 1, FQ->zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = FQ->add(next[k + 1], poly[k]);
            next[k] = FQ->sub(next[k], FQ->mul(root, poly[k]));
        }
        poly = std::move(next);
    }
    GLElement C(Fq, n);
    for (u32 i = 0; i + 1 < n; ++i) C.set(i + 1, i, Fq->one());
    for (u32 i = 0; i < n; ++i) C.set(i, n - 1, Fq->neg(emb.preimage(poly[i])));
    return C.pow(mod(a, static_cast<i64>(Qm1)));
}

GLElement block_element(FieldPtr Fq, u32 n, u32 m, i64 b, i64 c) {
    if (m < 1 || m >= n) throw std::invalid_argument("block_element: need 1 <= m < n");
    GLElement g(Fq, n);
    GLElement s1 = singer_element(Fq, m, b), s2 = singer_element(Fq, n - m, c);
    for (u32 i = 0; i < m; ++i)
        for (u32 j = 0; j < m; ++j) g.set(i, j, s1.at(i, j));
    for (u32 i = 0; i < n - m; ++i)
        for (u32 j = 0; j < n - m; ++j) g.set(m + i, m + j, s2.at(i, j));
    return g;
}

bool block_conditions(u64 q, u32 n, u32 m, i64 b, i64 c) {
    if (m < 1 || m >= n || std::gcd(m, n) != 1) return false;
    const i64 B = static_cast<i64>(gauss_count(q, m)), C = static_cast<i64>(gauss_count(q, n - m));
    const i64 qm1 = static_cast<i64>(q - 1);
    return std::gcd(b, B) == 1 && std::gcd(c, C) == 1 &&
           std::gcd(b * static_cast<i64>(n - m) - c * static_cast<i64>(m), qm1) == 1;
}

// ---------------------------------------------------------------- conjugacy classes

u64 group_budget() {
    if (const char* s = std::getenv("WEILMONO_GROUP_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) return v;
    }
    return u64{1} << 24;
}

u64 gl_order(u64 q, u32 n) {
    u64 r = 1;
    const u64 qn = ipow(q, n);
    for (u32 i = 0; i < n; ++i) r *= qn - ipow(q, i);
    return r;
}

namespace {

GroupClasses build_classes(FieldPtr F, u32 n) {
    GroupClasses G;
    G.F = F;
    G.n = n;
    u64 total;
    try {
        total = ipow(F->order(), n * n);
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("group enumeration budget exceeded");
    }
    if (total > group_budget()) throw std::invalid_argument("group enumeration budget exceeded");
    G.class_of.assign(total, -1);
    std::vector<char> inv(total, 0);
    parallel_for(total, [&](std::size_t i) {
        inv[i] = GLElement::from_index(F, n, i).invertible() ? 1 : 0;
    });
    for (u64 i = 0; i < total; ++i)
        if (inv[i]) G.elements.push_back(i);

    std::vector<GLElement> gens, gens_inv;
    {
        std::vector<Elem> d(n, F->one());
        d[0] = F->gen();
        gens.push_back(GLElement::diag(F, d));
        for (u32 i = 0; i < n; ++i)
            for (u32 j = 0; j < n; ++j)
                if (i != j) {
                    GLElement t = GLElement::identity(F, n);
                    t.set(i, j, F->one());
                    gens.push_back(t);
                }
        for (const auto& g : gens) gens_inv.push_back(g.inverse());
    }
    for (u64 idx : G.elements) {
        if (G.class_of[idx] != -1) continue;
        const int id = static_cast<int>(G.reps.size());
        G.reps.push_back(idx);
        std::vector<u64> queue{idx};
        G.class_of[idx] = id;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            GLElement x = GLElement::from_index(F, n, queue[h]);
            for (std::size_t k = 0; k < gens.size(); ++k) {
                u64 y = (gens[k] * x * gens_inv[k]).index();
                if (G.class_of[y] == -1) {
                    G.class_of[y] = id;
                    queue.push_back(y);
                }
            }
        }
        G.sizes.push_back(queue.size());
    }
    return G;
}

}  // namespace

const GroupClasses& group_classes(FieldPtr F, u32 n) {
    static std::mutex mu;
    static std::map<std::tuple<u32, u32, u32>, std::unique_ptr<GroupClasses>> cache;
    const auto key = std::make_tuple(F->p(), F->e(), n);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto G = std::make_unique<GroupClasses>(build_classes(F, n));
    return *cache.emplace(key, std::move(G)).first->second;
}

ClassifyReport classify_m2(u32 n, u64 q, i64 j) {
    if (n < 3) throw std::invalid_argument("classify_m2: n >= 3 required");
    FieldPtr F = field_for_q(q);
    if (j < 0 || static_cast<u64>(j) >= q - 1) throw std::invalid_argument("classify_m2: j out of range");
    const GroupClasses& G = group_classes(F, n);
    const u64 A = gauss_count(q, n), Qm1 = ipow(q, n) - 1;

    std::set<int> typeA, typeB, typeC;
    for (u64 a = 0; a < Qm1; ++a) {
        if (std::gcd(a, A) != 1) continue;
        GLElement s = singer_element(F, n, static_cast<i64>(a));
        typeA.insert(G.class_id(s));
        if (A % 2 == 0) typeB.insert(G.class_id(s * s));
    }
    for (u32 m = 1; m < n; ++m) {
        if (std::gcd(m, n) != 1) continue;
        const i64 bmax = static_cast<i64>(ipow(q, m) - 1), cmax = static_cast<i64>(ipow(q, n - m) - 1);
        for (i64 b = 0; b < bmax; ++b)
            for (i64 c = 0; c < cmax; ++c)
                if (block_conditions(q, n, m, b, c)) typeC.insert(G.class_id(block_element(F, n, m, b, c)));
    }

    ClassifyReport rep;
    rep.n = n;
    rep.q = q;
    rep.j = j;
    std::vector<std::optional<ClassEntry>> slots(G.reps.size());
    parallel_for(G.reps.size(), [&](std::size_t cid) {
        GLElement g = GLElement::from_index(F, n, G.reps[cid]);
        u64 ord = g.order();
        if (ord % F->p() == 0) return;
        Spectrum sp = weil_spectrum(g, j, true);
        i64 mm = max_multiplicity(sp);
        if (mm > 2) return;
        ClassEntry e{g, G.sizes[cid], ord, mm, "UNEXPECTED"};
        const int id = static_cast<int>(cid);
        if (typeA.count(id)) e.type = "a";
        else if (typeB.count(id)) e.type = "b";
        else if (typeC.count(id)) e.type = "c";
        slots[cid] = e;
    });
    std::set<int> present;
    for (std::size_t cid = 0; cid < slots.size(); ++cid)
        if (slots[cid]) {
            present.insert(static_cast<int>(cid));
            if (slots[cid]->type == "UNEXPECTED") ++rep.unexpected;
            rep.entries.push_back(*slots[cid]);
        }
    auto check_missing = [&](const std::set<int>& s, const char* label) {
        for (int id : s)
            if (!present.count(id))
                rep.missing.push_back(std::string(label) + ":" + GLElement::from_index(F, n, G.reps[id]).str());
    };
    check_missing(typeA, "a");
    check_missing(typeB, "b");
    check_missing(typeC, "c");
    return rep;
}

// ---------------------------------------------------------------- cyclic permutation of E-lines

CycleReport cycle_check(u64 q, u32 n, u32 m, i64 b, i64 c, i64 j) {
    if (!block_conditions(q, n, m, b, c)) throw std::invalid_argument("cycle_check: parameters fail type (c) conditions");
    FieldPtr F = field_for_q(q);
    if (j < 0 || static_cast<u64>(j) >= q - 1) throw std::invalid_argument("cycle_check: j out of range");
    if (ipow(q, n) > group_budget()) throw std::invalid_argument("cycle_check: budget exceeded");
    const GLElement h = block_element(F, n, m, b, c);
    const VecSpace V(F, n);
    const auto perm = h.permutation(V);
    const u64 p = F->p(), qm1 = q - 1, qm = ipow(q, m), qnm = ipow(q, n - m);
    const i64 level = static_cast<i64>(p * qm1);
    const u32 digits = F->e() * m;

    using Sparse = std::vector<std::pair<u32, QmodZ>>;  // (line, coefficient exponent)
    auto normalize = [](Sparse v) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        const QmodZ shift = v.front().second;
        for (auto& e : v) e.second = e.second - shift;
        return v;
    };
    auto key_of = [](const Sparse& v) {
        std::vector<i64> k;
        for (const auto& [L, x] : v) {
            k.push_back(L);
            k.push_back(x.num);
            k.push_back(x.den);
        }
        return k;
    };

    std::map<std::vector<i64>, u64> ids;
    std::vector<Sparse> spans;
    for (u64 yk = 1; yk < qnm; ++yk) {
        const u64 y = yk * qm;
        for (u64 a = 1; a < qm; ++a) {  // nonzero functional on F_p^digits
            Sparse v;
            for (u64 x = 0; x < qm; ++x) {
                u64 dot = 0, xa = x, aa = a;
                for (u32 d = 0; d < digits; ++d) {
                    dot += (xa % p) * (aa % p);
                    xa /= p;
                    aa /= p;
                }
                const u64 w = x + y;
                QmodZ ex = QmodZ(static_cast<i64>((dot % p) * qm1), level) +
                           QmodZ(static_cast<i64>(V.scal_of(w) * static_cast<u64>(j) * p), level);
                v.emplace_back(V.line_of(w), ex);
            }
            v = normalize(std::move(v));
            auto k = key_of(v);
            if (!ids.count(k)) {
                ids.emplace(k, spans.size());
                spans.push_back(std::move(v));
            }
        }
    }

    CycleReport rep;
    rep.expected_length = (ipow(q, m) - 1) * (ipow(q, n - m) - 1) / (q - 1);
    rep.span_count = spans.size();
    std::vector<u64> image(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
        Sparse w;
        for (const auto& [L, ex] : spans[i]) {
            const u64 hv = perm[V.line_rep(L)];
            w.emplace_back(V.line_of(hv), ex + QmodZ(static_cast<i64>(V.scal_of(hv) * static_cast<u64>(j) * p), level));
        }
        auto it = ids.find(key_of(normalize(std::move(w))));
        if (it == ids.end()) {
            rep.closed = false;
            return rep;
        }
        image[i] = it->second;
    }
    std::vector<bool> seen(spans.size(), false);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        if (seen[i]) continue;
        u64 len = 0;
        for (u64 k = i; !seen[k]; k = image[k]) {
            seen[k] = true;
            ++len;
        }
        rep.cycle_lengths.push_back(len);
    }
    std::sort(rep.cycle_lengths.rbegin(), rep.cycle_lengths.rend());
    return rep;
}

}  // namespace wm

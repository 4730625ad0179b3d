#include "elemex/forms.hpp"

namespace elemex {

const char* group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::Linear: return "linear";
        case GroupKind::Symplectic: return "symplectic";
        case GroupKind::Orthogonal: return "orthogonal";
    }
    return "?";
}

std::size_t sigma(std::size_t i) {
    if (i < 1) throw Error(ErrKind::Domain, "sigma: index must be >= 1");
    return (i % 2 == 0) ? i - 1 : i + 1;
}

Matrix identity_matrix(const Ring& r, std::size_t n) {
    Matrix m;
    m.ring = r;
    m.n = n;
    m.entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.entries.push_back(i == j ? one(r) : zero(r));
    return m;
}

Matrix zero_matrix(const Ring& r, std::size_t n) {
    Matrix m;
    m.ring = r;
    m.n = n;
    m.entries.assign(n * n, zero(r));
    return m;
}

static void check_compat(const Matrix& a, const Matrix& b) {
    if (a.n != b.n) throw Error(ErrKind::Domain, "matrix size mismatch");
    if (!ring_eq(a.ring, b.ring)) throw Error(ErrKind::RingMismatch, "matrix ring mismatch");
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    check_compat(a, b);
    Matrix out = zero_matrix(a.ring, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            const Elem& aik = a.at(i, k);
            if (is_zero(aik)) continue;
            for (std::size_t j = 0; j < a.n; ++j) {
                const Elem& bkj = b.at(k, j);
                if (is_zero(bkj)) continue;
                out.at(i, j) = add(out.at(i, j), mul(aik, bkj));
            }
        }
    return out;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
    check_compat(a, b);
    Matrix out = a;
    out.inverse_witness.reset();
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        out.entries[i] = add(a.entries[i], b.entries[i]);
    return out;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
    check_compat(a, b);
    Matrix out = a;
    out.inverse_witness.reset();
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        out.entries[i] = sub(a.entries[i], b.entries[i]);
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out = zero_matrix(a.ring, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) out.at(j, i) = a.at(i, j);
    return out;
}

Matrix scalar_mul(const Elem& c, const Matrix& a) {
    Matrix out = a;
    out.inverse_witness.reset();
    for (auto& e : out.entries) e = mul(c, e);
    return out;
}

bool mat_eq(const Matrix& a, const Matrix& b) {
    if (a.n != b.n || !ring_eq(a.ring, b.ring)) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (!eq(a.entries[i], b.entries[i])) return false;
    return true;
}

bool is_identity(const Matrix& a) {
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) {
            if (i == j ? !is_one(a.at(i, j)) : !is_zero(a.at(i, j))) return false;
        }
    return true;
}

Vector mat_vec(const Matrix& a, const Vector& v) {
    if (a.n != v.size()) throw Error(ErrKind::Domain, "matrix/vector size mismatch");
    if (!ring_eq(a.ring, v.ring)) throw Error(ErrKind::RingMismatch, "matrix/vector ring mismatch");
    Vector out;
    out.ring = a.ring;
    out.entries.reserve(a.n);
    bool witnessed = v.witnesses.size() == v.size();
    for (std::size_t i = 0; i < a.n; ++i) {
        Elem acc = zero(a.ring);
        for (std::size_t j = 0; j < a.n; ++j) acc = add(acc, mul(a.at(i, j), v.entries[j]));
        out.entries.push_back(std::move(acc));
    }
    if (witnessed) {
        // witnesses are linear combinations of the input witnesses
        for (std::size_t i = 0; i < a.n; ++i) {
            std::optional<IdealElem> acc;
            bool ok = true;
            for (std::size_t j = 0; j < a.n; ++j) {
                if (is_zero(a.at(i, j)) && is_zero(v.entries[j])) continue;
                if (!v.witnesses[j]) {
                    ok = false;
                    break;
                }
                IdealElem t = ideal_elem_scale(a.at(i, j), *v.witnesses[j]);
                acc = acc ? ideal_elem_add(*acc, t) : t;
            }
            if (ok && acc)
                out.witnesses.push_back(std::move(acc));
            else if (ok)
                out.witnesses.push_back(std::nullopt);
            else
                out.witnesses.push_back(std::nullopt);
        }
    }
    return out;
}

Matrix with_inverse_witness(Matrix m, Matrix inverse) {
    if (!is_identity(mat_mul(m, inverse)) || !is_identity(mat_mul(inverse, m)))
        throw Error(ErrKind::Domain, "claimed inverse fails verification");
    m.inverse_witness = std::make_shared<const Matrix>(std::move(inverse));
    return m;
}

Vector make_vector(const Ring& r, std::vector<Elem> entries) {
    for (const auto& e : entries)
        if (!ring_eq(e.ring, r)) throw Error(ErrKind::RingMismatch, "vector entry in wrong ring");
    Vector v;
    v.ring = r;
    v.entries = std::move(entries);
    return v;
}

Vector basis_vector(const Ring& r, std::size_t n, std::size_t i) {
    if (i < 1 || i > n) throw Error(ErrKind::Domain, "basis index out of range");
    Vector v;
    v.ring = r;
    for (std::size_t j = 1; j <= n; ++j) v.entries.push_back(j == i ? one(r) : zero(r));
    return v;
}

bool vec_eq(const Vector& a, const Vector& b) {
    if (a.size() != b.size() || !ring_eq(a.ring, b.ring)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq(a.entries[i], b.entries[i])) return false;
    return true;
}

// Bareiss fraction-free elimination over a domain; cofactor expansion as a
// fallback for small non-domains.
static std::optional<Elem> det_bareiss(const Matrix& m) {
    std::size_t n = m.n;
    std::vector<Elem> a = m.entries;
    const Ring& r = m.ring;
    Elem prev = one(r);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // pivot
        std::size_t piv = k;
        while (piv < n && is_zero(a[piv * n + k])) ++piv;
        if (piv == n) return zero(r);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Elem num = sub(mul(a[i * n + j], a[k * n + k]), mul(a[i * n + k], a[k * n + j]));
                auto q = try_divide(num, prev);
                if (!q) return std::nullopt;
                a[i * n + j] = *q;
            }
            a[i * n + k] = zero(r);
        }
        prev = a[k * n + k];
    }
    Elem d = a[(n - 1) * n + (n - 1)];
    return sign == 1 ? d : neg(d);
}

static Elem det_cofactor(const Matrix& m) {
    std::size_t n = m.n;
    if (n == 1) return m.at(0, 0);
    Elem acc = zero(m.ring);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(m.at(0, j))) continue;
        Matrix sub_m = zero_matrix(m.ring, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cj = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                sub_m.at(i - 1, cj++) = m.at(i, k);
            }
        }
        Elem term = mul(m.at(0, j), det_cofactor(sub_m));
        acc = (j % 2 == 0) ? add(acc, term) : sub(acc, term);
    }
    return acc;
}

std::optional<Elem> determinant(const Matrix& m) {
    if (m.n == 0) return one(m.ring);
    if (is_domain(m.ring)) {
        auto d = det_bareiss(m);
        if (d) return d;
    }
    if (m.n <= 8) return det_cofactor(m);
    return std::nullopt;
}

Matrix form_matrix(GroupKind kind, std::size_t m, const Ring& ring) {
    if (kind == GroupKind::Linear)
        throw Error(ErrKind::Domain, "form_matrix: linear kind has no form");
    std::size_t n = 2 * m;
    Matrix f = zero_matrix(ring, n);
    for (std::size_t i = 1; i <= m; ++i) {
        f.at(2 * i - 2, 2 * i - 1) = one(ring);
        f.at(2 * i - 1, 2 * i - 2) = kind == GroupKind::Symplectic ? neg(one(ring)) : one(ring);
    }
    return f;
}

Vector tilde(const Vector& v, GroupKind kind) {
    if (kind == GroupKind::Linear) throw Error(ErrKind::Domain, "tilde: linear kind");
    std::size_t n = v.size();
    if (n % 2 != 0) throw Error(ErrKind::Domain, "tilde: odd length");
    Matrix f = form_matrix(kind, n / 2, v.ring);
    // v^t . f as a vector of row entries
    Vector out;
    out.ring = v.ring;
    out.entries.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        Elem acc = zero(v.ring);
        for (std::size_t i = 0; i < n; ++i) acc = add(acc, mul(v.entries[i], f.at(i, j)));
        out.entries.push_back(std::move(acc));
    }
    return out;
}

Elem inner(const Vector& v, const Vector& w, GroupKind kind) {
    if (v.size() != w.size()) throw Error(ErrKind::Domain, "inner: length mismatch");
    if (!ring_eq(v.ring, w.ring)) throw Error(ErrKind::RingMismatch, "inner: ring mismatch");
    const Vector& lhs = (kind == GroupKind::Linear) ? v : tilde(v, kind);
    Elem acc = zero(v.ring);
    for (std::size_t i = 0; i < v.size(); ++i) acc = add(acc, mul(lhs.entries[i], w.entries[i]));
    return acc;
}

Matrix m_update(const Vector& v, const Vector& w, GroupKind kind) {
    if (v.size() != w.size()) throw Error(ErrKind::Domain, "m_update: length mismatch");
    if (!ring_eq(v.ring, w.ring)) throw Error(ErrKind::RingMismatch, "m_update: ring mismatch");
    std::size_t n = v.size();
    Matrix out = zero_matrix(v.ring, n);
    if (kind == GroupKind::Linear) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) = mul(v.entries[i], w.entries[j]);
        return out;
    }
    Vector wt = tilde(w, kind);
    Vector vt = tilde(v, kind);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem a = mul(v.entries[i], wt.entries[j]);
            Elem b = mul(w.entries[i], vt.entries[j]);
            out.at(i, j) = (kind == GroupKind::Symplectic) ? add(a, b) : sub(a, b);
        }
    return out;
}

Check check_group_membership(const Matrix& m, GroupKind kind) {
    if (kind == GroupKind::Linear) {
        if (m.inverse_witness) {
            if (is_identity(mat_mul(m, *m.inverse_witness))) return Check::True;
            return Check::False;
        }
        auto d = determinant(m);
        if (!d) return Check::Undecidable;
        auto u = is_unit(*d);
        if (!u) return Check::Undecidable;
        return *u ? Check::True : Check::False;
    }
    if (m.n % 2 != 0) return Check::False;
    Matrix f = form_matrix(kind, m.n / 2, m.ring);
    Matrix lhs = mat_mul(mat_mul(transpose(m), f), m);
    return mat_eq(lhs, f) ? Check::True : Check::False;
}

RelativeCheck check_relative(const Matrix& m, const IdealPtr& ideal) {
    if (!ring_eq(m.ring, ideal->ring))
        throw Error(ErrKind::RingMismatch, "check_relative: ring mismatch");
    RelativeCheck out;
    out.witnesses.assign(m.n * m.n, std::nullopt);
    bool undecidable = false;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) {
            Elem d = (i == j) ? sub(m.at(i, j), one(m.ring)) : m.at(i, j);
            Membership mem = decide_membership(d, ideal);
            if (std::holds_alternative<NotMember>(mem)) {
                out.status = Check::False;
                out.witnesses.clear();
                return out;
            }
            if (std::holds_alternative<Undecidable>(mem)) {
                undecidable = true;
            } else {
                out.witnesses[i * m.n + j] = std::get<IdealElem>(mem);
            }
        }
    if (undecidable) {
        out.status = Check::Undecidable;
        out.witnesses.clear();
    } else {
        out.status = Check::True;
    }
    return out;
}

// entries generate the unit ideal, over bases with a decision procedure
static Check unimodular(const Vector& v) {
    const Ring& r = v.ring;
    auto whole = make_ideal(r, v.entries);
    Membership m = decide_membership(one(r), whole);
    if (std::holds_alternative<IdealElem>(m)) return Check::True;
    if (std::holds_alternative<NotMember>(m)) return Check::False;
    return Check::Undecidable;
}

Check check_um_rel(const Vector& v, const IdealPtr& ideal,
                   const std::optional<Vector>& unimodularity_witness) {
    if (!ring_eq(v.ring, ideal->ring))
        throw Error(ErrKind::RingMismatch, "check_um_rel: ring mismatch");
    Check uni = Check::Undecidable;
    if (unimodularity_witness) {
        const Vector& u = *unimodularity_witness;
        if (u.size() != v.size()) throw Error(ErrKind::Domain, "witness length mismatch");
        Elem acc = zero(v.ring);
        for (std::size_t i = 0; i < v.size(); ++i)
            acc = add(acc, mul(u.entries[i], v.entries[i]));
        uni = is_one(acc) ? Check::True : Check::False;
    } else {
        uni = unimodular(v);
    }
    if (uni == Check::False) return Check::False;
    // congruence to e_1 modulo I
    Check cong = Check::True;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Elem d = (i == 0) ? sub(v.entries[i], one(v.ring)) : v.entries[i];
        Membership m = decide_membership(d, ideal);
        if (std::holds_alternative<NotMember>(m)) return Check::False;
        if (std::holds_alternative<Undecidable>(m)) cong = Check::Undecidable;
    }
    if (uni == Check::Undecidable || cong == Check::Undecidable) return Check::Undecidable;
    return Check::True;
}

}  // namespace elemex

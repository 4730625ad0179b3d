#include "elemex/words.hpp"

namespace elemex {

static void check_indices(GroupKind kind, std::size_t n, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw Error(ErrKind::Domain, "generator indices out of range");
    if (kind != GroupKind::Linear) {
        if (n % 2 != 0 || n < 4) throw Error(ErrKind::Domain, "non-linear kind needs even n >= 4");
        if (kind == GroupKind::Orthogonal && i == sigma(j))
            throw Error(ErrKind::Domain, "orthogonal generator undefined on (i, sigma(i))");
    } else if (n < 3) {
        throw Error(ErrKind::Domain, "linear kind needs n >= 3");
    }
}

Generator make_absolute(GroupKind kind, std::size_t n, std::size_t i, std::size_t j, Elem z) {
    check_indices(kind, n, i, j);
    Generator g;
    g.kind = kind;
    g.n = n;
    g.i = i;
    g.j = j;
    g.z = std::move(z);
    // two-term generators carry the definition's symmetry
    // se_{sigma(j) sigma(i)}(z') = se_ij(z) with z' = -(-1)^{i+j} z, and
    // likewise oe with z' = -z; store the i < j representative
    if (kind != GroupKind::Linear && i != sigma(j) && i > j) {
        std::size_t ni = sigma(j), nj = sigma(i);
        if (kind == GroupKind::Symplectic && (i + j) % 2 == 0)
            g.z = neg(g.z);  // -(-1)^{i+j} = -1 for even i+j
        else if (kind == GroupKind::Orthogonal)
            g.z = neg(g.z);
        g.i = ni;
        g.j = nj;
    }
    return g;
}

Generator make_relative(GroupKind kind, std::size_t n, std::size_t i, std::size_t j, Elem f,
                        IdealElem h) {
    check_indices(kind, n, i, j);
    if (!ring_eq(f.ring, h.ideal->ring))
        throw Error(ErrKind::RingMismatch, "relative generator: f and h in different rings");
    Generator g;
    g.kind = kind;
    g.shape = GenShape::Relative;
    g.n = n;
    g.i = i;
    g.j = j;
    g.z = std::move(f);
    g.h = std::move(h);
    return g;
}

Word make_word(Ring ring, GroupKind kind, std::size_t n) {
    Word w;
    w.ring = std::move(ring);
    w.kind = kind;
    w.n = n;
    return w;
}

void word_append(Word& w, Generator g, int exponent) {
    if (exponent != 1 && exponent != -1) throw Error(ErrKind::Domain, "exponent must be +-1");
    if (g.kind != w.kind || g.n != w.n || !ring_eq(g.ring(), w.ring))
        throw Error(ErrKind::RingMismatch, "factor does not match word");
    w.factors.emplace_back(std::move(g), exponent);
}

Word word_of(Generator g, int exponent) {
    Word w = make_word(g.ring(), g.kind, g.n);
    word_append(w, std::move(g), exponent);
    return w;
}

Word word_concat(const Word& a, const Word& b) {
    if (a.kind != b.kind || a.n != b.n || !ring_eq(a.ring, b.ring))
        throw Error(ErrKind::RingMismatch, "word concat mismatch");
    Word w = a;
    w.factors.insert(w.factors.end(), b.factors.begin(), b.factors.end());
    return w;
}

namespace testing {
// Fault-injection switch for the mutation-sensitivity suite: flips the sign
// of the mirrored entry of two-term generators. Never set in production.
bool flip_steinberg_sign = false;
}  // namespace testing

static Matrix absolute_matrix(GroupKind kind, std::size_t n, std::size_t i, std::size_t j,
                              const Elem& z) {
    Matrix m = identity_matrix(z.ring, n);
    m.at(i - 1, j - 1) = add(m.at(i - 1, j - 1), z);
    if (kind == GroupKind::Linear) return m;
    if (kind == GroupKind::Symplectic) {
        if (i == sigma(j)) return m;
        Elem t = ((i + j) % 2 == 0) ? neg(z) : z;  // -(-1)^{i+j} z
        if (testing::flip_steinberg_sign) t = neg(t);
        m.at(sigma(j) - 1, sigma(i) - 1) = add(m.at(sigma(j) - 1, sigma(i) - 1), t);
        return m;
    }
    Elem t = testing::flip_steinberg_sign ? z : neg(z);
    m.at(sigma(j) - 1, sigma(i) - 1) = add(m.at(sigma(j) - 1, sigma(i) - 1), t);
    return m;
}

Matrix generator_matrix(const Generator& g) {
    if (g.shape == GenShape::Absolute) return absolute_matrix(g.kind, g.n, g.i, g.j, g.z);
    Matrix a = absolute_matrix(g.kind, g.n, g.i, g.j, g.z);
    Matrix b = absolute_matrix(g.kind, g.n, g.j, g.i, ideal_elem_value(*g.h));
    Matrix c = absolute_matrix(g.kind, g.n, g.i, g.j, neg(g.z));
    return mat_mul(mat_mul(a, b), c);
}

Matrix generator_inverse_matrix(const Generator& g) {
    if (g.shape == GenShape::Absolute) return absolute_matrix(g.kind, g.n, g.i, g.j, neg(g.z));
    Matrix a = absolute_matrix(g.kind, g.n, g.i, g.j, g.z);
    Matrix b = absolute_matrix(g.kind, g.n, g.j, g.i, neg(ideal_elem_value(*g.h)));
    Matrix c = absolute_matrix(g.kind, g.n, g.i, g.j, neg(g.z));
    return mat_mul(mat_mul(a, b), c);
}

Matrix eval_word(const Word& w) {
    Matrix acc = identity_matrix(w.ring, w.n);
    Matrix inv = identity_matrix(w.ring, w.n);
    for (const auto& [g, e] : w.factors) {
        acc = mat_mul(acc, e == 1 ? generator_matrix(g) : generator_inverse_matrix(g));
        inv = mat_mul(e == 1 ? generator_inverse_matrix(g) : generator_matrix(g), inv);
    }
    return with_inverse_witness(std::move(acc), std::move(inv));
}

Word invert_word(const Word& w) {
    Word out = make_word(w.ring, w.kind, w.n);
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
        out.factors.emplace_back(it->first, -it->second);
    return out;
}

Word split_parameter(const Generator& g, const Elem& x, const Elem& y) {
    if (g.shape != GenShape::Absolute)
        throw Error(ErrKind::Domain, "split_parameter: absolute shape only");
    if (!eq(add(x, y), g.z)) throw Error(ErrKind::Domain, "split_parameter: x + y != z");
    Word w = make_word(g.ring(), g.kind, g.n);
    word_append(w, make_absolute(g.kind, g.n, g.i, g.j, x));
    word_append(w, make_absolute(g.kind, g.n, g.i, g.j, y));
    return w;
}

Word merge_adjacent(const Word& w) {
    Word out = make_word(w.ring, w.kind, w.n);
    for (const auto& f : w.factors) {
        const Generator& g = f.first;
        if (g.shape == GenShape::Absolute && is_zero(g.z)) continue;
        if (!out.factors.empty()) {
            auto& [tg, te] = out.factors.back();
            if (tg.shape == GenShape::Absolute && g.shape == GenShape::Absolute && tg.i == g.i &&
                tg.j == g.j && te == f.second) {
                Elem s = add(tg.z, g.z);
                if (is_zero(s))
                    out.factors.pop_back();
                else
                    tg.z = std::move(s);
                continue;
            }
        }
        out.factors.push_back(f);
    }
    return out;
}

Word shuffle(const std::vector<std::pair<Word, Word>>& pairs) {
    if (pairs.empty()) throw Error(ErrKind::Domain, "shuffle: empty input");
    Word conj = make_word(pairs[0].first.ring, pairs[0].first.kind, pairs[0].first.n);
    Word tail = conj;
    Word r = conj;  // running prefix a_1 ... a_i
    for (const auto& [a, b] : pairs) {
        r = word_concat(r, a);
        conj = word_concat(conj, word_concat(word_concat(r, b), invert_word(r)));
        tail = word_concat(tail, a);
    }
    return word_concat(conj, tail);
}

IdealPtr lift_ideal(const Ring& excision, const IdealPtr& ideal) {
    if (excision->kind != RingKind::Excision || !ideal_eq(*excision->ideal, *ideal))
        throw Error(ErrKind::Domain, "lift_ideal: ring is not the excision ring of this ideal");
    std::vector<Elem> gens;
    for (std::size_t k = 0; k < ideal->gens.size(); ++k)
        gens.push_back(make_excision(excision, zero(ideal->ring),
                                     ideal_gen_multiple(ideal, k, one(ideal->ring))));
    return make_ideal(excision, std::move(gens));
}

IdealElem lift_witness(const IdealElem& w, const Ring& excision, const IdealPtr& lifted_ideal) {
    IdealElem out = ideal_zero(lifted_ideal);
    for (const auto& [c, k] : w.terms)
        out = ideal_elem_add(out, ideal_gen_multiple(lifted_ideal, k, embed(c, excision)));
    return out;
}

Generator lift_generator(const Generator& g, const IdealPtr& ideal) {
    Ring e = excision_ring(g.ring(), ideal);
    IdealPtr li = lift_ideal(e, ideal);
    if (g.shape == GenShape::Relative)
        return make_relative(g.kind, g.n, g.i, g.j, embed(g.z, e),
                             lift_witness(*g.h, e, li));
    IdealElem w = require_membership(g.z, ideal);
    Elem zz = make_excision(e, zero(g.ring()), w);
    return make_absolute(g.kind, g.n, g.i, g.j, std::move(zz));
}

Word lift_word(const Word& w, const IdealPtr& ideal) {
    Ring e = excision_ring(w.ring, ideal);
    Word out = make_word(e, w.kind, w.n);
    for (const auto& [g, ex] : w.factors) word_append(out, lift_generator(g, ideal), ex);
    return out;
}

Matrix lift_matrix(const Matrix& alpha, const IdealPtr& ideal) {
    RelativeCheck rc = check_relative(alpha, ideal);
    if (rc.status != Check::True)
        throw Error(ErrKind::NotInIdeal, "lift_matrix: matrix is not relative to the ideal");
    Ring e = excision_ring(alpha.ring, ideal);
    auto lift_entries = [&](const Matrix& m, const RelativeCheck& c) {
        Matrix out = zero_matrix(e, m.n);
        for (std::size_t i = 0; i < m.n; ++i)
            for (std::size_t j = 0; j < m.n; ++j) {
                const auto& w = c.witnesses[i * m.n + j];
                if (!w) throw Error(ErrKind::Undecidable, "lift_matrix: missing entry witness");
                Elem base = (i == j) ? one(alpha.ring) : zero(alpha.ring);
                out.at(i, j) = make_excision(e, base, *w);
            }
        return out;
    };
    Matrix lifted = lift_entries(alpha, rc);
    if (alpha.inverse_witness) {
        RelativeCheck ri = check_relative(*alpha.inverse_witness, ideal);
        if (ri.status == Check::True)
            return with_inverse_witness(std::move(lifted),
                                        lift_entries(*alpha.inverse_witness, ri));
    }
    return lifted;
}

Elem phi_deep(const Elem& e) {
    if (e.ring->kind == RingKind::Excision) return phi(e);
    if (e.ring->kind == RingKind::Polynomial && e.ring->base->kind == RingKind::Excision) {
        Ring target = polynomial_ring(e.ring->base->base, e.ring->vars);
        return map_coefficients(e, target, [](const Elem& c) { return phi(c); });
    }
    throw Error(ErrKind::Domain, "phi_deep: no excision layer");
}

Matrix phi_matrix(const Matrix& m) {
    Matrix out;
    out.n = m.n;
    for (const auto& e : m.entries) out.entries.push_back(phi_deep(e));
    out.ring = out.entries.empty() ? m.ring : out.entries[0].ring;
    if (m.inverse_witness)
        return with_inverse_witness(std::move(out), phi_matrix(*m.inverse_witness));
    return out;
}

Word project_word(const Word& w, const std::optional<IdealPtr>& target_ideal) {
    Elem probe = zero(w.ring);
    Ring target = phi_deep(probe).ring;
    Word out = make_word(target, w.kind, w.n);
    for (const auto& [g, ex] : w.factors) {
        if (g.shape == GenShape::Absolute) {
            word_append(out, make_absolute(g.kind, g.n, g.i, g.j, phi_deep(g.z)), ex);
            continue;
        }
        IdealPtr ti;
        if (target_ideal) {
            ti = *target_ideal;
        } else {
            std::vector<Elem> gens;
            for (const auto& gen : g.h->ideal->gens) gens.push_back(phi_deep(gen));
            ti = make_ideal(target, std::move(gens));
        }
        IdealElem h = ideal_zero(ti);
        for (const auto& [c, k] : g.h->terms)
            h = ideal_elem_add(h, ideal_gen_multiple(ti, k, phi_deep(c)));
        word_append(out, make_relative(g.kind, g.n, g.i, g.j, phi_deep(g.z), std::move(h)), ex);
    }
    return out;
}

}  // namespace elemex

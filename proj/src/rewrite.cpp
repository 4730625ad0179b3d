#include "elemex/rewrite.hpp"

#include <algorithm>

namespace elemex {

Word flatten_word(const Word& w) {
    Word out = make_word(w.ring, w.kind, w.n);
    for (const auto& [g, e] : w.factors) {
        if (g.shape == GenShape::Absolute) {
            word_append(out, e == 1 ? g : make_absolute(g.kind, g.n, g.i, g.j, neg(g.z)));
            continue;
        }
        Elem h = ideal_elem_value(*g.h);
        word_append(out, make_absolute(g.kind, g.n, g.i, g.j, g.z));
        word_append(out, make_absolute(g.kind, g.n, g.j, g.i, e == 1 ? h : neg(h)));
        word_append(out, make_absolute(g.kind, g.n, g.i, g.j, neg(g.z)));
    }
    return out;
}

namespace {

std::size_t term_count(const Elem& e) {
    if (is_zero(e)) return 0;
    if (e.ring->kind == RingKind::Polynomial) return poly_data(e).terms.size();
    return 1;
}

std::size_t complexity(const Matrix& m) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            c += term_count(i == j ? sub(m.at(i, j), one(m.ring)) : m.at(i, j));
    return c;
}

bool valid_position(GroupKind kind, std::size_t i, std::size_t j) {
    if (i == j) return false;
    if (kind == GroupKind::Orthogonal && i == sigma(j)) return false;
    return true;
}

bool peel(const Matrix& m, GroupKind kind, std::size_t depth, std::vector<Generator>& acc) {
    if (is_identity(m)) return true;
    if (depth == 0) return false;
    std::size_t base = complexity(m);
    for (std::size_t i = 1; i <= m.n; ++i)
        for (std::size_t j = 1; j <= m.n; ++j) {
            if (!valid_position(kind, i, j)) continue;
            const Elem& z = m.at(i - 1, j - 1);
            if (is_zero(z)) continue;
            Generator g = make_absolute(kind, m.n, i, j, z);
            Matrix rest = mat_mul(generator_inverse_matrix(g), m);
            if (complexity(rest) >= base) continue;
            acc.push_back(g);
            if (peel(rest, kind, depth - 1, acc)) return true;
            acc.pop_back();
        }
    return false;
}

// weight of basis index (1-based): index 2l-1 carries +e_l, index 2l
// carries -e_l; the root of a generator position is wt(i) - wt(j)
std::vector<int> position_root(GroupKind kind, std::size_t n, std::size_t i, std::size_t j) {
    if (kind == GroupKind::Linear) {
        std::vector<int> r(n, 0);
        r[i - 1] += 1;
        r[j - 1] -= 1;
        return r;
    }
    std::vector<int> r(n / 2, 0);
    auto wt = [&](std::size_t x, int s) { r[(x - 1) / 2] += (x % 2 == 1) ? s : -s; };
    wt(i, 1);
    wt(j, -1);
    return r;
}

std::vector<int> negate_root(std::vector<int> r) {
    for (auto& x : r) x = -x;
    return r;
}

struct OpposedSplit {
    // relation g_ij(kappa * b * c) = [g_rs(b), g_uv(c)] * reverse(residual)^-1
    std::size_t r, s, u, v;
    Int kappa;
    std::vector<Generator> residual;  // over the scratch ring, params in (c)
};

std::optional<Int> scratch_const(const Elem& e) {
    if (e.ring->kind != RingKind::Polynomial) return std::nullopt;
    const auto& t = poly_data(e).terms;
    if (t.size() != 1) return std::nullopt;
    const auto& [m, c] = *t.begin();
    for (auto d : m)
        if (d != 0) return std::nullopt;
    if (c.ring->kind != RingKind::Integers) return std::nullopt;
    return int_value(c);
}

// searches for a Steinberg-style splitting of the target generator as a
// commutator of two generators (times a c-divisible residual), over the
// scratch ring Z[b,c]; deterministic iteration order
std::optional<OpposedSplit> find_split(GroupKind kind, std::size_t n, std::size_t ti,
                                       std::size_t tj) {
    Ring s = polynomial_ring(integers(), {"b", "c"});
    Elem b = variable(s, "b"), c = variable(s, "c");
    Elem bc = mul(b, c);
    std::vector<int> target = position_root(kind, n, ti, tj);
    std::vector<int> ntarget = negate_root(target);

    std::vector<std::size_t> idx;
    auto add_idx = [&](std::size_t x) {
        if (x >= 1 && x <= n && std::find(idx.begin(), idx.end(), x) == idx.end())
            idx.push_back(x);
    };
    add_idx(ti);
    add_idx(tj);
    if (kind != GroupKind::Linear) {
        add_idx(sigma(ti));
        add_idx(sigma(tj));
    }
    for (std::size_t k = 1; k <= n; ++k) {
        bool taken = std::find(idx.begin(), idx.end(), k) != idx.end() ||
                     (kind != GroupKind::Linear &&
                      std::find(idx.begin(), idx.end(), sigma(k)) != idx.end());
        if (!taken) {
            add_idx(k);
            if (kind != GroupKind::Linear) add_idx(sigma(k));
            break;
        }
    }
    std::sort(idx.begin(), idx.end());

    std::vector<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t r : idx)
        for (std::size_t v : idx) {
            if (!valid_position(kind, r, v)) continue;
            std::vector<int> root = position_root(kind, n, r, v);
            if (root == target || root == ntarget) continue;
            pos.emplace_back(r, v);
        }

    for (auto [r1, s1] : pos)
        for (auto [u1, v1] : pos) {
            if (r1 == u1 && s1 == v1) continue;
            Generator ga = make_absolute(kind, n, r1, s1, b);
            Generator gb = make_absolute(kind, n, u1, v1, c);
            Matrix k = mat_mul(mat_mul(generator_matrix(ga), generator_matrix(gb)),
                               mat_mul(generator_inverse_matrix(ga), generator_inverse_matrix(gb)));
            if (is_identity(k)) continue;
            const Elem& t = k.at(ti - 1, tj - 1);
            if (is_zero(t)) continue;
            auto q = try_divide(t, bc);
            if (!q) continue;
            auto kappa = scratch_const(*q);
            if (!kappa || *kappa == 0) continue;
            Generator gt = make_absolute(kind, n, ti, tj, t);
            Matrix rest = mat_mul(generator_inverse_matrix(gt), k);
            std::vector<Generator> residual;
            if (!is_identity(rest)) {
                if (!peel(rest, kind, 4, residual)) continue;
                bool ok = true;
                for (const auto& g : residual) {
                    if (min_var_degree(g.z, 1) < 1) ok = false;  // must carry c
                    std::vector<int> root = position_root(kind, n, g.i, g.j);
                    if (root == target || root == ntarget) ok = false;
                }
                if (!ok) continue;
            }
            return OpposedSplit{r1, s1, u1, v1, *kappa, std::move(residual)};
        }
    return std::nullopt;
}

// substitutes b -> bval, c -> cval into a scratch polynomial
Elem instantiate(const Elem& p, const Ring& target, const Elem& bval, const Elem& cval) {
    Elem acc = zero(target);
    for (const auto& [m, coef] : poly_data(p).terms) {
        Elem term = from_int(target, int_value(coef));
        term = mul(term, pow(bval, m[0]));
        term = mul(term, pow(cval, m[1]));
        acc = add(acc, term);
    }
    return acc;
}

// conjugation with a guaranteed-terminating case analysis: commuting pair
// or a peelable commutator; the opposed case must be handled by the caller
std::vector<Generator> conj_one(const Generator& outer, const Generator& inner) {
    Matrix go = generator_matrix(outer);
    Matrix gi = generator_matrix(inner);
    Matrix k = mat_mul(mat_mul(go, gi),
                       mat_mul(generator_inverse_matrix(outer), generator_inverse_matrix(inner)));
    std::vector<Generator> out;
    if (!is_identity(k)) {
        if (!peel(k, inner.kind, 8, out))
            throw Error(ErrKind::RewriteFailure, "commutator does not peel into generators");
    }
    out.push_back(inner);
    return out;
}

bool is_opposed(const Generator& outer, const Generator& inner) {
    if (outer.kind == GroupKind::Linear) return outer.i == inner.j && outer.j == inner.i;
    return position_root(outer.kind, outer.n, outer.i, outer.j) ==
           negate_root(position_root(inner.kind, inner.n, inner.i, inner.j));
}

std::vector<Generator> rewrite_one(const Generator& outer, const Generator& inner,
                                   std::uint32_t m, const std::string& var) {
    const Ring& ring = inner.ring();
    std::size_t vx = var_index(ring, var);
    if (!divisible_by_var_power(inner.z, vx, 2 * m))
        throw Error(ErrKind::RewriteFailure, "inner parameter not divisible by " + var + "^2m");
    if (is_zero(inner.z)) return {};
    if (!is_opposed(outer, inner)) return conj_one(outer, inner);

    auto split = find_split(inner.kind, inner.n, inner.i, inner.j);
    if (!split)
        throw Error(ErrKind::RewriteFailure,
                    "no auxiliary splitting available for the opposed case at this size");
    Elem xm = pow(variable(ring, var), m);
    Elem t = divide_by_var_power(inner.z, vx, m);  // = var^m * h
    Elem cval = t;
    if (split->kappa != 1) {
        auto q = try_divide(t, from_int(ring, split->kappa));
        if (!q)
            throw Error(ErrKind::RewriteFailure,
                        "structure constant does not divide the parameter exactly");
        cval = *q;
    }
    GroupKind kind = inner.kind;
    std::size_t n = inner.n;
    std::vector<Generator> u;
    u.push_back(make_absolute(kind, n, split->r, split->s, xm));
    u.push_back(make_absolute(kind, n, split->u, split->v, cval));
    u.push_back(make_absolute(kind, n, split->r, split->s, neg(xm)));
    u.push_back(make_absolute(kind, n, split->u, split->v, neg(cval)));
    for (auto it = split->residual.rbegin(); it != split->residual.rend(); ++it)
        u.push_back(make_absolute(kind, n, it->i, it->j,
                                  neg(instantiate(it->z, ring, xm, cval))));
    // self-check the splitting before conjugating
    Matrix prod = identity_matrix(ring, n);
    for (const auto& g : u) prod = mat_mul(prod, generator_matrix(g));
    if (!mat_eq(prod, generator_matrix(inner)))
        throw Error(ErrKind::RewriteFailure, "opposed splitting failed verification");

    std::vector<Generator> out;
    for (const auto& g : u) {
        if (is_zero(g.z)) continue;
        auto part = conj_one(outer, g);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

RewriteCertificate certify(Word output, const Matrix& target, std::uint32_t m,
                           const IdealPtr& ideal, const std::string& var) {
    RewriteCertificate cert;
    std::size_t vx = var_index(output.ring, var);
    bool div_ok = true;
    for (const auto& [g, e] : output.factors)
        if (!divisible_by_var_power(g.z, vx, m)) div_ok = false;
    Matrix got = eval_word(output);
    bool eval_ok = mat_eq(got, target);
    for (const auto& [g, e] : output.factors) {
        Membership mem = decide_membership(g.z, ideal);
        if (std::holds_alternative<IdealElem>(mem)) {
            cert.witnesses.push_back(std::get<IdealElem>(mem));
        } else {
            cert.witnesses.push_back(std::nullopt);
            cert.carriers += 1;
        }
    }
    RelativeCheck rel = check_relative(got, ideal);
    bool rel_ok = rel.status != Check::False;
    bool wit_ok = cert.carriers == 0 || rel_ok;
    cert.output = std::move(output);
    cert.checks = {{"evaluation-equality", eval_ok},
                   {"divisibility-by-" + var + "^" + std::to_string(m), div_ok},
                   {"ideal-witnessing", wit_ok},
                   {"relative-congruence", rel_ok}};
    if (!eval_ok) throw Error(ErrKind::RewriteFailure, "rewrite output failed exact re-evaluation");
    if (!div_ok) throw Error(ErrKind::RewriteFailure, "rewrite output failed divisibility check");
    if (!wit_ok || !rel_ok)
        throw Error(ErrKind::RewriteFailure, "rewrite output failed relative-congruence check");
    return cert;
}

}  // namespace

std::optional<Word> factor_unipotent(const Matrix& m, GroupKind kind, std::size_t depth_limit) {
    std::vector<Generator> acc;
    if (!peel(m, kind, depth_limit, acc)) return std::nullopt;
    Word w = make_word(m.ring, kind, m.n);
    for (auto& g : acc) word_append(w, std::move(g));
    return w;
}

RewriteCertificate conjugate_rewrite(const Generator& outer, const Generator& inner,
                                     std::uint32_t m, const IdealPtr& ideal,
                                     const std::string& var) {
    if (outer.shape != GenShape::Absolute || inner.shape != GenShape::Absolute)
        throw Error(ErrKind::Domain, "conjugate_rewrite: absolute generators only");
    if (outer.kind != inner.kind || outer.n != inner.n || !ring_eq(outer.ring(), inner.ring()))
        throw Error(ErrKind::RingMismatch, "conjugate_rewrite: generator mismatch");
    if (!ring_eq(ideal->ring, inner.ring()))
        throw Error(ErrKind::RingMismatch, "conjugate_rewrite: ideal in wrong ring");
    if (m == 0) throw Error(ErrKind::Domain, "conjugate_rewrite: m must be positive");
    auto factors = rewrite_one(outer, inner, m, var);
    Word out = make_word(inner.ring(), inner.kind, inner.n);
    for (auto& g : factors)
        if (!is_zero(g.z)) word_append(out, std::move(g));
    Matrix target = mat_mul(mat_mul(generator_matrix(outer), generator_matrix(inner)),
                            generator_inverse_matrix(outer));
    return certify(std::move(out), target, m, ideal, var);
}

RewriteCertificate word_conjugate_rewrite(const Word& eps, const Generator& inner,
                                          std::uint32_t m, const IdealPtr& ideal,
                                          const std::string& var) {
    if (m == 0) throw Error(ErrKind::Domain, "word_conjugate_rewrite: m must be positive");
    Word flat = flatten_word(eps);
    std::size_t r = flat.factors.size();
    if (r > 24) throw Error(ErrKind::Domain, "conjugating word too long");
    std::size_t vx = var_index(inner.ring(), var);
    std::uint64_t need = std::uint64_t(m) << r;
    if (need > UINT32_MAX || !divisible_by_var_power(inner.z, vx, std::uint32_t(need)))
        throw Error(ErrKind::RewriteFailure,
                    "insufficient " + var + "-exponent for the conjugating word length");

    // peel conjugating factors outside-in, halving the budget each layer
    std::vector<Generator> cur{inner};
    for (std::size_t layer = r; layer-- > 0;) {
        // at this point cur = rewrite of factors (layer+1 .. r); conjugate by
        // factor `layer` with budget m * 2^layer
        std::uint32_t mm = std::uint32_t(std::uint64_t(m) << layer);
        std::vector<Generator> next;
        for (const auto& g : cur) {
            if (is_zero(g.z)) continue;
            auto part = rewrite_one(flat.factors[layer].first, g, mm, var);
            next.insert(next.end(), part.begin(), part.end());
        }
        cur = std::move(next);
    }
    Word out = make_word(inner.ring(), inner.kind, inner.n);
    for (auto& g : cur)
        if (!is_zero(g.z)) word_append(out, std::move(g));
    Matrix e = eval_word(flat);
    Matrix target = mat_mul(mat_mul(e, generator_matrix(inner)), *e.inverse_witness);
    return certify(std::move(out), target, m, ideal, var);
}

}  // namespace elemex

#include "elemex/factor.hpp"

namespace elemex {

namespace {

// Column 1 of a matrix, as a vector.
Vector first_column(const Matrix& m) {
    std::vector<Elem> ent;
    ent.reserve(m.n);
    for (std::size_t i = 0; i < m.n; ++i) ent.push_back(m.at(i, 0));
    return make_vector(m.ring, std::move(ent));
}

// Fills in missing witnesses on w via the decision procedure.
Vector witness_vector(Vector w, const IdealPtr& ideal) {
    if (w.witnesses.empty()) w.witnesses.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.witnesses[i]) {
            if (!eq(ideal_elem_value(*w.witnesses[i]), w.entries[i]))
                throw Error(ErrKind::NotInIdeal, "vector witness does not match its entry");
            continue;
        }
        w.witnesses[i] = require_membership(w.entries[i], ideal);
    }
    return w;
}

struct CoreOut {
    std::vector<ConjBlock> blocks;
    Word flat;
    Vector v;
};

// The factorization proper, over whichever ring (base or excision) it is
// handed: I + M(v,w) = prod_j eps . ge_1j(z_j) . eps^{-1} with z read off
// the transported vector w1.
CoreOut core_factor(const Word& eps, const Vector& w, const IdealPtr& ideal) {
    const Ring& R = eps.ring;
    GroupKind kind = eps.kind;
    std::size_t n = eps.n;
    if (w.size() != n) throw Error(ErrKind::Domain, "vector length does not match the word size");
    if (!ring_eq(w.ring, R) || !ring_eq(ideal->ring, R))
        throw Error(ErrKind::RingMismatch, "word, vector and ideal must share a ring");

    CoreOut out;
    Matrix E = eval_word(eps);
    out.v = first_column(E);
    if (!is_zero(inner(out.v, w, kind)))
        throw Error(ErrKind::NonzeroInnerProduct, "<v,w> must vanish exactly");
    if (kind == GroupKind::Orthogonal && !is_zero(inner(w, w, kind)))
        throw Error(ErrKind::NonzeroInnerProduct, "orthogonal case requires an isotropic w");

    Word inv_eps = invert_word(eps);
    auto add_block = [&](Generator g, std::optional<IdealElem> wit) {
        if (is_zero(g.z)) return;
        out.blocks.push_back(ConjBlock{eps, std::move(g), std::move(wit)});
    };

    if (kind == GroupKind::Linear) {
        // w1 = E^t.w; component 1 is <v,w> = 0, the rest feed ge_1j directly.
        Vector w1 = mat_vec(transpose(E), w);
        if (!is_zero(w1.entries[0]))
            throw Error(ErrKind::RewriteFailure, "transported vector has nonzero first component");
        for (std::size_t j = 2; j <= n; ++j)
            add_block(make_absolute(kind, n, 1, j, w1.entries[j - 1]), w1.witnesses[j - 1]);
    } else {
        // w1 = E^{-1}.w; component 2 is <v,w> = 0 up to sign. The short
        // factors ge_1j(tilde(w1)_j), j >= 3, reproduce I + M(e1,w1) up to
        // a residual supported at (1,2), which must be a long-root
        // generator (symplectic) or vanish (orthogonal).
        Vector w1 = mat_vec(*E.inverse_witness, w);
        if (!is_zero(w1.entries[1]))
            throw Error(ErrKind::RewriteFailure, "transported vector has nonzero second component");
        std::vector<ConjBlock> shorts;
        Word inner_word = make_word(R, kind, n);
        for (std::size_t j = 3; j <= n; ++j) {
            std::size_t sj = sigma(j);
            Elem z = w1.entries[sj - 1];
            std::optional<IdealElem> wit = w1.witnesses[sj - 1];
            if (kind == GroupKind::Symplectic && j % 2 == 1) {
                z = neg(z);
                if (wit) wit = ideal_elem_neg(*wit);
            }
            if (is_zero(z)) continue;
            Generator g = make_absolute(kind, n, 1, j, z);
            word_append(inner_word, g);
            shorts.push_back(ConjBlock{eps, std::move(g), std::move(wit)});
        }
        Matrix P = eval_word(inner_word);
        Matrix target_inner =
            mat_add(identity_matrix(R, n), m_update(basis_vector(R, n, 1), w1, kind));
        Matrix D = mat_mul(target_inner, *P.inverse_witness);
        if (!is_identity(D)) {
            if (kind == GroupKind::Orthogonal)
                throw Error(ErrKind::RewriteFailure,
                            "orthogonal residual did not vanish (2-torsion obstruction)");
            Elem lam = D.at(0, 1);
            Generator res = make_absolute(kind, n, 1, 2, lam);
            if (!mat_eq(generator_matrix(res), D))
                throw Error(ErrKind::RewriteFailure, "residual is not a long-root generator");
            // lam = 2*w1_1 when the cross terms cancel; otherwise decide.
            std::optional<IdealElem> wit;
            if (w1.witnesses[0] && eq(lam, add(w1.entries[0], w1.entries[0])))
                wit = ideal_elem_scale(from_int(R, 2), *w1.witnesses[0]);
            else {
                Membership mem = decide_membership(lam, ideal);
                if (std::holds_alternative<IdealElem>(mem)) wit = std::get<IdealElem>(mem);
            }
            if (!wit)
                throw Error(ErrKind::RewriteFailure, "long-root residual parameter not witnessed");
            add_block(std::move(res), std::move(wit));
        }
        for (auto& b : shorts) out.blocks.push_back(std::move(b));
    }

    out.flat = make_word(R, kind, n);
    for (const auto& b : out.blocks) {
        out.flat = word_concat(out.flat, b.eps);
        word_append(out.flat, b.g);
        out.flat = word_concat(out.flat, inv_eps);
    }
    return out;
}

bool blocks_agree(const std::vector<ConjBlock>& a, const std::vector<ConjBlock>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const Generator &g = a[t].g, &h = b[t].g;
        if (g.i != h.i || g.j != h.j || !eq(g.z, h.z)) return false;
    }
    return true;
}

}  // namespace

RankOneCertificate factor_rank_one(const Word& eps, const Vector& w, const IdealPtr& ideal) {
    bool all_relative = true;
    for (const auto& [g, e] : eps.factors)
        if (g.shape != GenShape::Relative) all_relative = false;
    Vector ww = witness_vector(w, ideal);
    CoreOut direct = core_factor(eps, ww, ideal);

    RankOneCertificate cert;
    cert.blocks = direct.blocks;
    cert.output = direct.flat;

    Matrix target = mat_add(identity_matrix(eps.ring, eps.n), m_update(direct.v, ww, eps.kind));
    bool eval_ok = mat_eq(eval_word(cert.output), target);

    bool rel_ok = true;
    bool wit_ok = true;
    for (const auto& b : cert.blocks) {
        Word bw = b.eps;
        word_append(bw, b.g);
        bw = word_concat(bw, invert_word(b.eps));
        if (check_relative(eval_word(bw), ideal).status != Check::True) rel_ok = false;
        if (!b.witness || !eq(ideal_elem_value(*b.witness), b.g.z)) wit_ok = false;
    }

    // Second route: lift everything into R (+) I, factor there, project back.
    bool route_ok = true;
    if (all_relative && eps.ring->kind != RingKind::Excision) {
        Ring exc = excision_ring(eps.ring, ideal);
        IdealPtr li = lift_ideal(exc, ideal);
        Word leps = lift_word(eps, ideal);
        std::vector<Elem> lent;
        std::vector<std::optional<IdealElem>> lwit;
        for (std::size_t i = 0; i < ww.size(); ++i) {
            lent.push_back(make_excision(exc, zero(eps.ring), *ww.witnesses[i]));
            lwit.push_back(lift_witness(*ww.witnesses[i], exc, li));
        }
        Vector lw = make_vector(exc, std::move(lent));
        lw.witnesses = std::move(lwit);
        CoreOut lifted = core_factor(leps, lw, li);
        Word proj = project_word(lifted.flat, ideal);
        route_ok = mat_eq(eval_word(proj), target);
        if (route_ok && proj.factors.size() == cert.output.factors.size()) {
            for (std::size_t t = 0; t < proj.factors.size(); ++t) {
                const Generator &g = proj.factors[t].first, &h = cert.output.factors[t].first;
                if (g.i != h.i || g.j != h.j || !eq(g.z, h.z) ||
                    proj.factors[t].second != cert.output.factors[t].second)
                    route_ok = false;
            }
        } else if (proj.factors.size() != cert.output.factors.size())
            route_ok = false;
        // the projected blocks must match the direct ones parameter-for-parameter
        std::vector<ConjBlock> pblocks;
        for (const auto& b : lifted.blocks)
            pblocks.push_back(ConjBlock{Word{},
                                        [&] {
                                            Word one_w = word_of(b.g);
                                            return project_word(one_w, ideal).factors[0].first;
                                        }(),
                                        std::nullopt});
        if (!blocks_agree(cert.blocks, pblocks)) route_ok = false;
    }

    cert.checks = {{"evaluation-equality", eval_ok},
                   {"block-relative-congruence", rel_ok},
                   {"parameter-witnessing", wit_ok},
                   {"two-route-agreement", route_ok}};
    if (!eval_ok)
        throw Error(ErrKind::RewriteFailure, "factorization failed exact re-evaluation");
    if (!rel_ok || !wit_ok)
        throw Error(ErrKind::RewriteFailure, "factorization produced a non-relative factor");
    if (!route_ok)
        throw Error(ErrKind::RewriteFailure, "direct and excision routes disagree");
    return cert;
}

MonomialCertificate monomialize(const Word& eps, const Vector& w, const IdealPtr& ideal,
                                const std::string& var, std::uint32_t d_request) {
    for (Ring r = eps.ring; r; r = r->base)
        if (r->kind == RingKind::Polynomial)
            for (const auto& v : r->vars)
                if (v == var)
                    throw Error(ErrKind::Domain, "monomialization variable collides with the ring");

    Ring RX = polynomial_ring(eps.ring, {var});
    IdealPtr ideal_x = extend_ideal(ideal, RX);
    Elem X = variable(RX, var);

    // Transport eps and w into R[X] and scale w by X.
    Word eps_x = make_word(RX, eps.kind, eps.n);
    for (const auto& [g, e] : eps.factors) {
        if (g.shape == GenShape::Relative)
            word_append(eps_x,
                        make_relative(g.kind, g.n, g.i, g.j, embed(g.z, RX),
                                      embed_witness(*g.h, ideal_x)),
                        e);
        else
            word_append(eps_x, make_absolute(g.kind, g.n, g.i, g.j, embed(g.z, RX)), e);
    }
    Vector ww = witness_vector(w, ideal);
    std::vector<Elem> xent;
    std::vector<std::optional<IdealElem>> xwit;
    for (std::size_t i = 0; i < ww.size(); ++i) {
        xent.push_back(mul(X, embed(ww.entries[i], RX)));
        xwit.push_back(ideal_elem_scale(X, embed_witness(*ww.witnesses[i], ideal_x)));
    }
    Vector wx = make_vector(RX, std::move(xent));
    wx.witnesses = std::move(xwit);

    RankOneCertificate fr = factor_rank_one(eps_x, wx, ideal_x);

    std::size_t r = flatten_word(eps_x).factors.size();
    if (r > 24) throw Error(ErrKind::Domain, "conjugating word too long");
    std::uint32_t d = static_cast<std::uint32_t>(1u) << r;
    if (d_request != 0) {
        if (d_request < d)
            throw Error(ErrKind::Domain, "requested exponent is below the 2^r bound");
        d = d_request;
    }

    MonomialCertificate out;
    out.d = d;
    out.output = make_word(RX, eps.kind, eps.n);
    bool layers_ok = true;
    for (const auto& b : fr.blocks) {
        Generator g = b.g;
        g.z = substitute(g.z, {{var, pow(X, d)}});
        RewriteCertificate rc = word_conjugate_rewrite(b.eps, g, 1, ideal_x, var);
        for (const auto& [name, pass] : rc.checks) layers_ok = layers_ok && pass;
        out.output = word_concat(out.output, rc.output);
        out.witnesses.insert(out.witnesses.end(), rc.witnesses.begin(), rc.witnesses.end());
        out.carriers += rc.carriers;
    }

    // Target: I + X^d M(v,w) over R[X].
    Matrix E = eval_word(eps_x);
    Vector v;
    {
        std::vector<Elem> ent;
        for (std::size_t i = 0; i < E.n; ++i) ent.push_back(E.at(i, 0));
        v = make_vector(RX, std::move(ent));
    }
    std::vector<Elem> base_w;
    for (const auto& e : ww.entries) base_w.push_back(embed(e, RX));
    Vector w_emb = make_vector(RX, std::move(base_w));
    Matrix target = mat_add(identity_matrix(RX, eps.n),
                            scalar_mul(pow(X, d), m_update(v, w_emb, eps.kind)));
    bool eval_ok = mat_eq(eval_word(out.output), target);

    std::size_t vx = var_index(RX, var);
    bool div_ok = true;
    for (const auto& [g, e] : out.output.factors)
        div_ok = div_ok && divisible_by_var_power(g.z, vx, 1);
    bool rel_ok = check_relative(eval_word(out.output), ideal_x).status != Check::False;
    bool wit_ok = out.carriers == 0 || rel_ok;

    out.checks = {{"evaluation-equality", eval_ok},
                  {"divisibility-by-" + var, div_ok},
                  {"layer-certificates", layers_ok},
                  {"ideal-witnessing", wit_ok},
                  {"relative-congruence", rel_ok}};
    if (!eval_ok)
        throw Error(ErrKind::RewriteFailure, "monomialization failed exact re-evaluation");
    if (!div_ok || !layers_ok || !wit_ok || !rel_ok)
        throw Error(ErrKind::RewriteFailure, "monomialization certificate check failed");
    return out;
}

}  // namespace elemex

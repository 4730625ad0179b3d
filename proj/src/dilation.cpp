#include "elemex/dilation.hpp"

namespace elemex {

namespace {

// Poly ring over a localization: returns (poly ring, localized base).
void require_loc_poly(const Ring& r, const char* what) {
    if (r->kind != RingKind::Polynomial || r->base->kind != RingKind::Localized)
        throw Error(ErrKind::Domain,
                    std::string(what) + ": expected a polynomial ring over a localization");
}

void require_injectivity(const Ring& loc, const std::optional<std::uint32_t>& k) {
    if (!is_domain(loc->base) && !k)
        throw Error(ErrKind::Domain,
                    "non-domain base: supply the injectivity exponent explicitly");
}

}  // namespace

std::pair<Word, std::uint32_t> clear_denominators(const Word& w, const std::string& scale_var,
                                                  std::optional<std::uint32_t> k) {
    const Ring& rw = w.ring;
    require_loc_poly(rw, "clear_denominators");
    const Ring& loc = rw->base;
    require_injectivity(loc, k);
    const Ring base = loc->base;
    var_index(rw, scale_var);  // validates the name

    std::uint32_t l = 0;
    for (const auto& [g, e] : w.factors) {
        l = std::max(l, denominator_exponent(g.z));
        if (g.h) l = std::max(l, denominator_exponent(ideal_elem_value(*g.h)));
    }

    Elem sl = pow(embed(embed(*loc->s, loc), rw), l);
    Elem scaled_var = mul(sl, variable(rw, scale_var));
    Ring target = polynomial_ring(base, rw->vars);

    auto lift = [&](const Elem& p) {
        Elem q = substitute(p, {{scale_var, scaled_var}});
        if (denominator_exponent(q) != 0)
            throw Error(ErrKind::RewriteFailure,
                        "a denominator is not carried by the scaling variable");
        Elem lifted = delocalize(q, target);
        // localizing must reproduce the scaled parameter exactly
        Elem back = map_coefficients(lifted, rw, [&](const Elem& c) { return embed(c, loc); });
        if (!eq(back, q))
            throw Error(ErrKind::RewriteFailure, "denominator clearing failed the round trip");
        return lifted;
    };

    Word out = make_word(target, w.kind, w.n);
    for (const auto& [g, e] : w.factors) {
        if (g.shape == GenShape::Absolute) {
            word_append(out, make_absolute(g.kind, g.n, g.i, g.j, lift(g.z)), e);
            continue;
        }
        std::vector<Elem> gens;
        for (const auto& gen : g.h->ideal->gens) gens.push_back(lift(gen));
        IdealPtr ti = make_ideal(target, std::move(gens));
        IdealElem h = ideal_zero(ti);
        for (const auto& [c, gi] : g.h->terms)
            h = ideal_elem_add(h, ideal_gen_multiple(ti, gi, lift(c)));
        word_append(out, make_relative(g.kind, g.n, g.i, g.j, lift(g.z), std::move(h)), e);
    }
    return {std::move(out), l};
}

std::pair<Matrix, std::uint32_t> clear_denominators(const Matrix& m,
                                                    std::optional<std::uint32_t> k) {
    const Ring& loc = m.ring;
    if (loc->kind != RingKind::Localized)
        throw Error(ErrKind::Domain, "clear_denominators: expected a matrix over a localization");
    require_injectivity(loc, k);
    for (const auto& e : m.entries)
        if (denominator_exponent(e) != 0)
            throw Error(ErrKind::Domain,
                        "matrix entries carry denominators and no scaling variable exists");
    Matrix out = zero_matrix(loc->base, m.n);
    for (std::size_t i = 0; i < m.entries.size(); ++i)
        out.entries[i] = delocalize(m.entries[i], loc->base);
    return {std::move(out), 0};
}

DilationResult dilate(const std::vector<ConjBlock>& blocks, const IdealPtr& ideal_s,
                      std::uint32_t d, const std::string& tvar) {
    if (blocks.empty()) throw Error(ErrKind::Domain, "dilate: no factors");
    if (d == 0) throw Error(ErrKind::Domain, "dilate: d must be positive");
    const Ring& rsx = blocks.front().eps.ring;
    require_loc_poly(rsx, "dilate");
    if (rsx->vars.size() != 1)
        throw Error(ErrKind::Domain, "dilate: expected a single polynomial variable");
    const std::string xv = rsx->vars[0];
    if (xv == tvar) throw Error(ErrKind::Domain, "dilate: scaling variable collides");
    const Ring& loc = rsx->base;
    const Ring base = loc->base;
    if (!is_domain(base)) throw Error(ErrKind::Domain, "dilate: base ring must be a domain");
    if (!ring_eq(ideal_s->ring, loc))
        throw Error(ErrKind::RingMismatch, "dilate: ideal must live over the localization");
    GroupKind kind = blocks.front().eps.kind;
    std::size_t n = blocks.front().eps.n;

    IdealPtr ideal_sx = extend_ideal(ideal_s, rsx);
    Ring es = excision_ring(loc, ideal_s);
    Ring esx = polynomial_ring(es, {xv});
    Ring ext = polynomial_ring(es, {xv, tvar});
    IdealPtr li = lift_ideal(es, ideal_s);
    IdealPtr lit = extend_ideal(li, ext);

    Elem tv = variable(ext, tvar);
    Elem x_td = mul(variable(ext, xv), pow(tv, d));  // the map x -> x*t^d

    auto lift_param = [&](const Elem& p) {
        Elem q = map_coefficients(p, esx, [&](const Elem& c) { return embed(c, es); });
        return substitute(transport_poly(q, ext), {{xv, x_td}});
    };
    auto lift_wit = [&](const IdealElem& w) {
        if (!ideal_eq(*w.ideal, *ideal_sx))
            throw Error(ErrKind::NotInIdeal, "dilate: witness is not over the extended ideal");
        IdealElem out = ideal_zero(lit);
        for (const auto& [c, gi] : w.terms)
            out = ideal_elem_add(out, ideal_gen_multiple(lit, gi, lift_param(c)));
        return out;
    };

    Word big = make_word(ext, kind, n);
    std::size_t carriers = 0;
    bool layers_ok = true;
    for (const auto& b : blocks) {
        if (b.g.n != n || b.g.kind != kind || !ring_eq(b.eps.ring, rsx))
            throw Error(ErrKind::RingMismatch, "dilate: inconsistent factor shapes");
        if (!divisible_by_var_power(b.g.z, var_index(rsx, xv), 1))
            throw Error(ErrKind::Domain, "dilate: inner parameter is not divisible by " + xv);
        IdealElem wit = b.witness ? *b.witness : require_membership(b.g.z, ideal_sx);
        if (!eq(ideal_elem_value(wit), b.g.z))
            throw Error(ErrKind::NotInIdeal, "dilate: witness does not match the parameter");

        Word eps_l = make_word(ext, kind, n);
        for (const auto& [g, e] : b.eps.factors) {
            if (g.shape == GenShape::Absolute)
                word_append(eps_l, make_absolute(g.kind, g.n, g.i, g.j, lift_param(g.z)), e);
            else
                word_append(eps_l,
                            make_relative(g.kind, g.n, g.i, g.j, lift_param(g.z),
                                          lift_wit(*g.h)),
                            e);
        }
        IdealElem gw = lift_wit(wit);
        Generator g_l = make_absolute(kind, n, b.g.i, b.g.j, ideal_elem_value(gw));
        RewriteCertificate rc = word_conjugate_rewrite(eps_l, g_l, 1, lit, tvar);
        for (const auto& [name, pass] : rc.checks) layers_ok = layers_ok && pass;
        carriers += rc.carriers;
        big = word_concat(big, rc.output);
    }

    bool rel_ok = check_relative(eval_word(big), lit).status != Check::False;

    // (c) scale t by s^l with l the worst denominator exponent
    std::uint32_t l = 0;
    for (const auto& [g, e] : big.factors) l = std::max(l, denominator_exponent(g.z));
    Elem s_ext = embed(embed(embed(*loc->s, loc), es), ext);
    Elem scaled_t = mul(pow(s_ext, l), tv);
    Word scaled = make_word(ext, kind, n);
    for (const auto& [g, e] : big.factors) {
        Elem z = substitute(g.z, {{tvar, scaled_t}});
        if (denominator_exponent(z) != 0)
            throw Error(ErrKind::RewriteFailure, "dilate: a denominator survived the t-scaling");
        word_append(scaled, make_absolute(g.kind, g.n, g.i, g.j, z), e);
    }

    // (d)-(e) project by phi, strip the localization, set t = 1
    Word projected = project_word(scaled);
    Ring base_xt = polynomial_ring(base, {xv, tvar});
    Ring base_x = polynomial_ring(base, {xv});
    std::size_t ti = var_index(base_xt, tvar);
    std::size_t xi = var_index(base_xt, xv);
    auto drop_t = [&](const Elem& p) {
        std::map<Monomial, Elem> terms;
        for (const auto& [m, c] : poly_data(p).terms) {
            if (m[ti] != 0)
                throw Error(ErrKind::RewriteFailure, "dilate: residual scaling variable");
            terms.emplace(Monomial{m[xi]}, c);
        }
        return make_poly(base_x, std::move(terms));
    };
    Word final_w = make_word(base_x, kind, n);
    for (const auto& [g, e] : projected.factors) {
        Elem z = delocalize(g.z, base_xt);
        z = substitute(z, {{tvar, one(base_xt)}});
        word_append(final_w, make_absolute(g.kind, g.n, g.i, g.j, drop_t(z)), e);
    }

    DilationResult out;
    out.l = l;
    out.b = pow(*loc->s, l * d);  // element of the base ring, lies in (s^l)
    out.word = std::move(final_w);
    out.carriers = carriers;

    // word(0) = identity
    Word at_zero = make_word(base_x, kind, n);
    for (const auto& [g, e] : out.word.factors)
        word_append(at_zero,
                    make_absolute(g.kind, g.n, g.i, g.j,
                                  substitute(g.z, {{xv, zero(base_x)}})),
                    e);
    bool zero_ok = is_identity(eval_word(at_zero));

    // localizing the result and substituting x -> b*x in the input agree
    Word localized = make_word(rsx, kind, n);
    for (const auto& [g, e] : out.word.factors)
        word_append(localized,
                    make_absolute(g.kind, g.n, g.i, g.j,
                                  map_coefficients(g.z, rsx,
                                                   [&](const Elem& c) { return embed(c, loc); })),
                    e);
    Word input_flat = make_word(rsx, kind, n);
    for (const auto& b : blocks) {
        input_flat = word_concat(input_flat, b.eps);
        word_append(input_flat, b.g);
        input_flat = word_concat(input_flat, invert_word(b.eps));
    }
    Elem bx = mul(embed(embed(out.b, loc), rsx), variable(rsx, xv));
    Matrix target = eval_word(input_flat);
    for (auto& e : target.entries) e = substitute(e, {{xv, bx}});
    target.inverse_witness = nullptr;
    bool loc_ok = mat_eq(eval_word(localized), target);

    out.checks = {{"layer-certificates", layers_ok},
                  {"relative-congruence", rel_ok},
                  {"identity-at-zero", zero_ok},
                  {"localization-agreement", loc_ok}};
    if (!layers_ok || !zero_ok || !loc_ok)
        throw Error(ErrKind::RewriteFailure, "dilation failed an exactness check");
    if (carriers > 0 && !rel_ok)
        throw Error(ErrKind::RewriteFailure, "dilation output lost relative congruence");
    return out;
}

}  // namespace elemex

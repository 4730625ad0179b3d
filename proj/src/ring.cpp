#include "elemex/ring.hpp"

#include <algorithm>
#include <sstream>

namespace elemex {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::RingMismatch: return "ring-mismatch";
        case ErrKind::NotInIdeal: return "not-in-ideal";
        case ErrKind::NonzeroInnerProduct: return "nonzero-inner-product";
        case ErrKind::Undecidable: return "undecidable";
        case ErrKind::RewriteFailure: return "rewrite-failure";
        case ErrKind::SchemaError: return "schema-error";
        case ErrKind::Domain: return "domain-error";
    }
    return "unknown";
}

static void check_same_ring(const Elem& a, const Elem& b) {
    if (!ring_eq(a.ring, b.ring))
        throw Error(ErrKind::RingMismatch, "elements belong to different rings: " +
                                               ring_to_string(a.ring) + " vs " +
                                               ring_to_string(b.ring));
}

// ---- ring constructors -------------------------------------------------

Ring integers() {
    static Ring r = [] {
        auto n = std::make_shared<RingNode>();
        n->kind = RingKind::Integers;
        return Ring(n);
    }();
    return r;
}

Ring rationals() {
    static Ring r = [] {
        auto n = std::make_shared<RingNode>();
        n->kind = RingKind::Rationals;
        return Ring(n);
    }();
    return r;
}

Ring integers_mod(const Int& n) {
    if (n < 2) throw Error(ErrKind::Domain, "modulus must be >= 2");
    auto node = std::make_shared<RingNode>();
    node->kind = RingKind::IntegersMod;
    node->modulus = n;
    return node;
}

Ring polynomial_ring(Ring base, std::vector<std::string> vars) {
    if (vars.empty()) throw Error(ErrKind::Domain, "polynomial ring needs at least one variable");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw Error(ErrKind::Domain, "duplicate variable name " + vars[i]);
    auto node = std::make_shared<RingNode>();
    node->kind = RingKind::Polynomial;
    node->base = std::move(base);
    node->vars = std::move(vars);
    return node;
}

static bool mod_zerodivisor_free(const Int& n, const Int& s);

Ring localized_ring(Ring base, const Elem& s) {
    if (!ring_eq(base, s.ring))
        throw Error(ErrKind::RingMismatch, "localization element not in base ring");
    if (is_zero(s)) throw Error(ErrKind::Domain, "cannot localize at zero");
    if (base->kind == RingKind::IntegersMod) {
        if (base->modulus > 4096)
            throw Error(ErrKind::Undecidable,
                        "cannot verify non-zerodivisor over large Z/n");
        if (!mod_zerodivisor_free(base->modulus, int_value(s)))
            throw Error(ErrKind::Domain, "localization element is a zerodivisor in Z/n");
    } else if (!is_domain(base)) {
        throw Error(ErrKind::Undecidable, "cannot verify non-zerodivisor in this base");
    }
    auto node = std::make_shared<RingNode>();
    node->kind = RingKind::Localized;
    node->base = std::move(base);
    node->s = s;
    return node;
}

Ring excision_ring(Ring base, IdealPtr ideal) {
    if (!ring_eq(base, ideal->ring))
        throw Error(ErrKind::RingMismatch, "excision ideal lives in a different ring");
    auto node = std::make_shared<RingNode>();
    node->kind = RingKind::Excision;
    node->base = std::move(base);
    node->ideal = std::move(ideal);
    return node;
}

static bool mod_zerodivisor_free(const Int& n, const Int& s) {
    // s is a non-zerodivisor in Z/n iff gcd(s, n) == 1.
    Int g = gcd(s % n, n);
    return g == 1;
}

bool ring_eq(const Ring& a, const Ring& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::IntegersMod: return a->modulus == b->modulus;
        case RingKind::Polynomial:
            return a->vars == b->vars && ring_eq(a->base, b->base);
        case RingKind::Localized:
            return ring_eq(a->base, b->base) && eq(*a->s, *b->s);
        case RingKind::Excision:
            return ring_eq(a->base, b->base) && ideal_eq(*a->ideal, *b->ideal);
    }
    return false;
}

std::string ring_to_string(const Ring& r) {
    switch (r->kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::IntegersMod: return "Z/" + r->modulus.str();
        case RingKind::Polynomial: {
            std::string s = ring_to_string(r->base) + "[";
            for (std::size_t i = 0; i < r->vars.size(); ++i) {
                if (i) s += ",";
                s += r->vars[i];
            }
            return s + "]";
        }
        case RingKind::Localized:
            return ring_to_string(r->base) + "_(" + to_string(*r->s) + ")";
        case RingKind::Excision:
            return ring_to_string(r->base) + "(+)I";
    }
    return "?";
}

bool is_domain(const Ring& r) {
    switch (r->kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::IntegersMod: {
            // prime modulus => field => domain; otherwise not
            Int n = r->modulus;
            if (n < 2) return false;
            for (Int d = 2; d * d <= n; ++d)
                if (n % d == 0) return false;
            return true;
        }
        case RingKind::Polynomial:
        case RingKind::Localized: return is_domain(r->base);
        case RingKind::Excision: return false;  // (0,i)(0,j) may vanish; never assumed
    }
    return false;
}

bool is_field(const Ring& r) {
    switch (r->kind) {
        case RingKind::Rationals: return true;
        case RingKind::IntegersMod: return is_domain(r);  // prime check
        default: return false;
    }
}

bool two_is_unit(const Ring& r) {
    switch (r->kind) {
        case RingKind::Integers: return false;
        case RingKind::Rationals: return true;
        case RingKind::IntegersMod: return r->modulus % 2 == 1;
        case RingKind::Polynomial:
        case RingKind::Localized:
        case RingKind::Excision: return two_is_unit(r->base);
    }
    return false;
}

// ---- constructors -------------------------------------------------------

static Elem wrap(Ring r, Payload p) {
    return Elem{std::move(r), std::make_shared<const Payload>(std::move(p))};
}

Elem zero(const Ring& r) { return from_int(r, 0); }
Elem one(const Ring& r) { return from_int(r, 1); }

Elem from_int(const Ring& r, const Int& v) {
    switch (r->kind) {
        case RingKind::Integers: return wrap(r, Payload{v});
        case RingKind::IntegersMod: {
            Int m = v % r->modulus;
            if (m < 0) m += r->modulus;
            return wrap(r, Payload{m});
        }
        case RingKind::Rationals: return wrap(r, Payload{Rat(v)});
        case RingKind::Polynomial: {
            PolyData pd;
            Elem c = from_int(r->base, v);
            if (!is_zero(c)) pd.terms.emplace(Monomial(r->vars.size(), 0), c);
            return wrap(r, Payload{std::move(pd)});
        }
        case RingKind::Localized:
            return wrap(r, Payload{LocData{from_int(r->base, v), 0}});
        case RingKind::Excision:
            return wrap(r, Payload{ExcData{from_int(r->base, v), ideal_zero(r->ideal)}});
    }
    throw Error(ErrKind::Domain, "bad ring");
}

Elem make_rational(const Ring& r, const Int& num, const Int& den) {
    if (r->kind != RingKind::Rationals) throw Error(ErrKind::Domain, "not a rational ring");
    if (den == 0) throw Error(ErrKind::Domain, "zero denominator");
    return wrap(r, Payload{Rat(num, den)});
}

Elem make_poly(const Ring& r, std::map<Monomial, Elem> terms) {
    if (r->kind != RingKind::Polynomial) throw Error(ErrKind::Domain, "not a polynomial ring");
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.size() != r->vars.size())
            throw Error(ErrKind::Domain, "exponent vector length mismatch");
        if (!ring_eq(it->second.ring, r->base))
            throw Error(ErrKind::RingMismatch, "coefficient not in base ring");
        if (is_zero(it->second))
            it = terms.erase(it);
        else
            ++it;
    }
    return wrap(r, Payload{PolyData{std::move(terms)}});
}

static Elem canonical_localized(const Ring& r, Elem num, std::uint32_t k) {
    const Elem& s = *r->s;
    while (k > 0) {
        auto q = try_divide(num, s);
        if (!q) break;
        num = *q;
        --k;
    }
    if (is_zero(num)) k = 0;
    return wrap(r, Payload{LocData{std::move(num), k}});
}

Elem make_localized(const Ring& r, Elem num, std::uint32_t k) {
    if (r->kind != RingKind::Localized) throw Error(ErrKind::Domain, "not a localized ring");
    if (!ring_eq(num.ring, r->base))
        throw Error(ErrKind::RingMismatch, "numerator not in base ring");
    return canonical_localized(r, std::move(num), k);
}

Elem make_excision(const Ring& r, Elem base_part, IdealElem ideal_part) {
    if (r->kind != RingKind::Excision) throw Error(ErrKind::Domain, "not an excision ring");
    if (!ring_eq(base_part.ring, r->base))
        throw Error(ErrKind::RingMismatch, "excision base part in wrong ring");
    if (!ideal_eq(*ideal_part.ideal, *r->ideal))
        throw Error(ErrKind::RingMismatch, "excision ideal part witnessed in wrong ideal");
    return wrap(r, Payload{ExcData{std::move(base_part), std::move(ideal_part)}});
}

const Int& int_value(const Elem& e) { return std::get<Int>(e.data->v); }
const Rat& rat_value(const Elem& e) { return std::get<Rat>(e.data->v); }
const PolyData& poly_data(const Elem& e) { return std::get<PolyData>(e.data->v); }
const LocData& loc_data(const Elem& e) { return std::get<LocData>(e.data->v); }
const ExcData& exc_data(const Elem& e) { return std::get<ExcData>(e.data->v); }

// ---- arithmetic ---------------------------------------------------------

Elem add(const Elem& a, const Elem& b) {
    check_same_ring(a, b);
    const Ring& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return wrap(r, Payload{Int(int_value(a) + int_value(b))});
        case RingKind::IntegersMod:
            return from_int(r, int_value(a) + int_value(b));
        case RingKind::Rationals: return wrap(r, Payload{Rat(rat_value(a) + rat_value(b))});
        case RingKind::Polynomial: {
            PolyData out = poly_data(a);
            for (const auto& [m, c] : poly_data(b).terms) {
                auto it = out.terms.find(m);
                if (it == out.terms.end()) {
                    out.terms.emplace(m, c);
                } else {
                    Elem s = add(it->second, c);
                    if (is_zero(s))
                        out.terms.erase(it);
                    else
                        it->second = s;
                }
            }
            return wrap(r, Payload{std::move(out)});
        }
        case RingKind::Localized: {
            const LocData& x = loc_data(a);
            const LocData& y = loc_data(b);
            // x.num/s^x.k + y.num/s^y.k over common denominator s^max
            std::uint32_t k = std::max(x.k, y.k);
            Elem n1 = mul(x.num, pow(embed(*r->s, r->base), k - x.k));
            Elem n2 = mul(y.num, pow(embed(*r->s, r->base), k - y.k));
            return canonical_localized(r, add(n1, n2), k);
        }
        case RingKind::Excision: {
            const ExcData& x = exc_data(a);
            const ExcData& y = exc_data(b);
            return wrap(r, Payload{ExcData{add(x.r, y.r), ideal_elem_add(x.i, y.i)}});
        }
    }
    throw Error(ErrKind::Domain, "bad ring");
}

Elem neg(const Elem& a) {
    const Ring& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return wrap(r, Payload{Int(-int_value(a))});
        case RingKind::IntegersMod: return from_int(r, -int_value(a));
        case RingKind::Rationals: return wrap(r, Payload{Rat(-rat_value(a))});
        case RingKind::Polynomial: {
            PolyData out;
            for (const auto& [m, c] : poly_data(a).terms) out.terms.emplace(m, neg(c));
            return wrap(r, Payload{std::move(out)});
        }
        case RingKind::Localized: {
            const LocData& x = loc_data(a);
            return wrap(r, Payload{LocData{neg(x.num), x.k}});
        }
        case RingKind::Excision: {
            const ExcData& x = exc_data(a);
            return wrap(r, Payload{ExcData{neg(x.r), ideal_elem_neg(x.i)}});
        }
    }
    throw Error(ErrKind::Domain, "bad ring");
}

Elem sub(const Elem& a, const Elem& b) { return add(a, neg(b)); }

Elem mul(const Elem& a, const Elem& b) {
    check_same_ring(a, b);
    const Ring& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return wrap(r, Payload{Int(int_value(a) * int_value(b))});
        case RingKind::IntegersMod: return from_int(r, int_value(a) * int_value(b));
        case RingKind::Rationals: return wrap(r, Payload{Rat(rat_value(a) * rat_value(b))});
        case RingKind::Polynomial: {
            PolyData out;
            for (const auto& [ma, ca] : poly_data(a).terms) {
                for (const auto& [mb, cb] : poly_data(b).terms) {
                    Monomial m(ma.size());
                    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                    Elem c = mul(ca, cb);
                    auto it = out.terms.find(m);
                    if (it == out.terms.end()) {
                        if (!is_zero(c)) out.terms.emplace(std::move(m), std::move(c));
                    } else {
                        Elem s = add(it->second, c);
                        if (is_zero(s))
                            out.terms.erase(it);
                        else
                            it->second = s;
                    }
                }
            }
            return wrap(r, Payload{std::move(out)});
        }
        case RingKind::Localized: {
            const LocData& x = loc_data(a);
            const LocData& y = loc_data(b);
            return canonical_localized(r, mul(x.num, y.num), x.k + y.k);
        }
        case RingKind::Excision: {
            // (r (+) j)(s (+) i) = rs (+) (sj + ri + ij)
            const ExcData& x = exc_data(a);
            const ExcData& y = exc_data(b);
            Elem jv = ideal_elem_value(x.i);
            IdealElem part = ideal_elem_add(ideal_elem_scale(y.r, x.i),
                                            ideal_elem_scale(x.r, y.i));
            part = ideal_elem_add(part, ideal_elem_scale(jv, y.i));
            return wrap(r, Payload{ExcData{mul(x.r, y.r), std::move(part)}});
        }
    }
    throw Error(ErrKind::Domain, "bad ring");
}

Elem pow(const Elem& a, std::uint32_t e) {
    Elem acc = one(a.ring);
    Elem base = a;
    while (e) {
        if (e & 1u) acc = mul(acc, base);
        e >>= 1u;
        if (e) base = mul(base, base);
    }
    return acc;
}

bool is_zero(const Elem& a) {
    switch (a.ring->kind) {
        case RingKind::Integers: return int_value(a) == 0;
        case RingKind::IntegersMod: return int_value(a) == 0;
        case RingKind::Rationals: return rat_value(a) == 0;
        case RingKind::Polynomial: return poly_data(a).terms.empty();
        case RingKind::Localized: return is_zero(loc_data(a).num);
        case RingKind::Excision: {
            const ExcData& x = exc_data(a);
            return is_zero(x.r) && is_zero(ideal_elem_value(x.i));
        }
    }
    return false;
}

bool is_one(const Elem& a) { return eq(a, one(a.ring)); }

bool eq(const Elem& a, const Elem& b) {
    if (!ring_eq(a.ring, b.ring)) return false;
    switch (a.ring->kind) {
        case RingKind::Integers:
        case RingKind::IntegersMod: return int_value(a) == int_value(b);
        case RingKind::Rationals: return rat_value(a) == rat_value(b);
        case RingKind::Polynomial: {
            const auto& ta = poly_data(a).terms;
            const auto& tb = poly_data(b).terms;
            if (ta.size() != tb.size()) return false;
            auto ia = ta.begin();
            auto ib = tb.begin();
            for (; ia != ta.end(); ++ia, ++ib)
                if (ia->first != ib->first || !eq(ia->second, ib->second)) return false;
            return true;
        }
        case RingKind::Localized: {
            // cross multiplication; valid since s is a non-zerodivisor
            const LocData& x = loc_data(a);
            const LocData& y = loc_data(b);
            Elem s = *a.ring->s;
            return eq(mul(x.num, pow(s, y.k)), mul(y.num, pow(s, x.k)));
        }
        case RingKind::Excision: {
            const ExcData& x = exc_data(a);
            const ExcData& y = exc_data(b);
            return eq(x.r, y.r) && eq(ideal_elem_value(x.i), ideal_elem_value(y.i));
        }
    }
    return false;
}

// ---- exact division -----------------------------------------------------

static std::optional<Elem> poly_try_divide(const Elem& a, const Elem& b);

std::optional<Elem> try_divide(const Elem& a, const Elem& b) {
    check_same_ring(a, b);
    const Ring& r = a.ring;
    if (is_zero(b)) {
        if (is_zero(a)) return zero(r);
        return std::nullopt;
    }
    switch (r->kind) {
        case RingKind::Integers: {
            const Int &x = int_value(a), &y = int_value(b);
            if (x % y != 0) return std::nullopt;
            return wrap(r, Payload{Int(x / y)});
        }
        case RingKind::IntegersMod: {
            // solve q*b = a (mod n): solvable iff gcd(b,n) | a
            const Int& n = r->modulus;
            Int x = int_value(a), y = int_value(b);
            Int g, u, v;
            // extended gcd(y, n)
            Int r0 = y, r1 = n, s0 = 1, s1 = 0;
            while (r1 != 0) {
                Int qq = r0 / r1;
                Int tmp = r0 - qq * r1;
                r0 = r1;
                r1 = tmp;
                tmp = s0 - qq * s1;
                s0 = s1;
                s1 = tmp;
            }
            g = r0;
            u = s0;  // u*y == g (mod n)
            if (x % g != 0) return std::nullopt;
            Int q = (x / g) * u;
            return from_int(r, q);
        }
        case RingKind::Rationals:
            return wrap(r, Payload{Rat(rat_value(a) / rat_value(b))});
        case RingKind::Polynomial: return poly_try_divide(a, b);
        case RingKind::Localized: {
            const LocData& x = loc_data(a);
            const LocData& y = loc_data(b);
            // a/b = (x.num / y.num) * s^(y.k - x.k)
            auto q = try_divide(x.num, y.num);
            if (q) return canonical_localized(r, mul(*q, pow(embed(*r->s, r->base), y.k)), x.k);
            // numerator may become divisible after multiplying by a power of s;
            // bounded retry keeps this decidable for the towers we build
            Elem num = x.num;
            Elem s = *r->s;
            for (std::uint32_t extra = 1; extra <= 64; ++extra) {
                num = mul(num, s);
                q = try_divide(num, y.num);
                if (q)
                    return canonical_localized(r, mul(*q, pow(embed(*r->s, r->base), y.k)),
                                               x.k + extra);
            }
            return std::nullopt;
        }
        case RingKind::Excision: {
            // solve (qr (+) qi)(br (+) bi) = (ar (+) ai)
            const ExcData& x = exc_data(a);
            const ExcData& y = exc_data(b);
            auto qr = try_divide(x.r, y.r);
            if (!qr) return std::nullopt;
            Elem bi = ideal_elem_value(y.i);
            Elem ai = ideal_elem_value(x.i);
            // qi * (br + bi) = ai - qr*bi
            Elem rhs = sub(ai, mul(*qr, bi));
            Elem den = add(y.r, bi);
            auto qi_val = try_divide(rhs, den);
            if (!qi_val) return std::nullopt;
            auto wit = decide_membership(*qi_val, r->ideal);
            if (!std::holds_alternative<IdealElem>(wit)) return std::nullopt;
            return wrap(r, Payload{ExcData{*qr, std::get<IdealElem>(wit)}});
        }
    }
    return std::nullopt;
}

// Multivariate trial division under the lex monomial order.
static std::optional<Elem> poly_try_divide(const Elem& a, const Elem& b) {
    const Ring& r = a.ring;
    Elem rem = a;
    PolyData qd;
    const auto& bt = poly_data(b).terms;
    const Monomial& blead = bt.rbegin()->first;  // lex-largest
    const Elem& bc = bt.rbegin()->second;
    std::size_t guard = 0;
    while (!is_zero(rem)) {
        if (++guard > 100000) return std::nullopt;
        const auto& rt = poly_data(rem).terms;
        const Monomial& rlead = rt.rbegin()->first;
        const Elem& rc = rt.rbegin()->second;
        Monomial q(rlead.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (rlead[i] < blead[i]) return std::nullopt;
            q[i] = rlead[i] - blead[i];
        }
        auto qc = try_divide(rc, bc);
        if (!qc) return std::nullopt;
        qd.terms.emplace(q, *qc);
        std::map<Monomial, Elem> single;
        single.emplace(std::move(q), *qc);
        Elem qterm = make_poly(r, std::move(single));
        rem = sub(rem, mul(qterm, b));
    }
    return make_poly(r, std::move(qd.terms));
}

std::optional<bool> is_unit(const Elem& a) {
    const Ring& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: {
            const Int& v = int_value(a);
            return v == 1 || v == -1;
        }
        case RingKind::IntegersMod: return gcd(int_value(a), r->modulus) == 1;
        case RingKind::Rationals: return rat_value(a) != 0;
        case RingKind::Polynomial: {
            if (!is_field(r->base)) return std::nullopt;
            const auto& t = poly_data(a).terms;
            if (t.size() != 1) return is_zero(a) ? std::optional<bool>(false) : std::nullopt;
            const auto& [m, c] = *t.begin();
            for (auto e : m)
                if (e != 0) return false;
            return is_unit(c);
        }
        case RingKind::Localized: {
            // num/s^k is a unit iff num divides some power of s; test a bounded range
            const LocData& x = loc_data(a);
            if (is_zero(x.num)) return false;
            auto u = is_unit(x.num);
            if (u && *u) return true;
            Elem p = one(r->base);
            Elem s = *r->s;
            for (int i = 0; i <= 64; ++i) {
                if (try_divide(p, x.num)) return true;
                p = mul(p, s);
            }
            return std::nullopt;
        }
        case RingKind::Excision: return std::nullopt;
    }
    return std::nullopt;
}

// ---- printing -----------------------------------------------------------

static std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

std::string to_string(const Elem& e) {
    switch (e.ring->kind) {
        case RingKind::Integers:
        case RingKind::IntegersMod: return int_value(e).str();
        case RingKind::Rationals: {
            const Rat& q = rat_value(e);
            if (denominator(q) == 1) return numerator(q).str();
            return numerator(q).str() + "/" + denominator(q).str();
        }
        case RingKind::Polynomial: {
            const auto& t = poly_data(e).terms;
            if (t.empty()) return "0";
            std::string s;
            for (auto it = t.rbegin(); it != t.rend(); ++it) {
                if (!s.empty()) s += " + ";
                std::string ms = monomial_to_string(it->first, e.ring->vars);
                std::string cs = to_string(it->second);
                if (ms.empty())
                    s += cs;
                else if (cs == "1")
                    s += ms;
                else if (cs == "-1")
                    s += "-" + ms;
                else
                    s += "(" + cs + ")*" + ms;
            }
            return s;
        }
        case RingKind::Localized: {
            const LocData& x = loc_data(e);
            if (x.k == 0) return to_string(x.num);
            return "(" + to_string(x.num) + ")/(" + to_string(*e.ring->s) + ")^" +
                   std::to_string(x.k);
        }
        case RingKind::Excision: {
            const ExcData& x = exc_data(e);
            return "(" + to_string(x.r) + " (+) " + to_string(ideal_elem_value(x.i)) + ")";
        }
    }
    return "?";
}

// ---- homomorphisms ------------------------------------------------------

Elem embed(const Elem& e, const Ring& target) {
    if (ring_eq(e.ring, target)) return e;
    switch (target->kind) {
        case RingKind::Polynomial: {
            Elem c = embed(e, target->base);
            std::map<Monomial, Elem> t;
            if (!is_zero(c)) t.emplace(Monomial(target->vars.size(), 0), c);
            return make_poly(target, std::move(t));
        }
        case RingKind::Localized:
            return make_localized(target, embed(e, target->base), 0);
        case RingKind::Excision:
            return make_excision(target, embed(e, target->base), ideal_zero(target->ideal));
        case RingKind::Rationals:
            if (e.ring->kind == RingKind::Integers) return wrap(target, Payload{Rat(int_value(e))});
            break;
        default: break;
    }
    throw Error(ErrKind::RingMismatch,
                "no canonical embedding " + ring_to_string(e.ring) + " -> " + ring_to_string(target));
}

std::size_t var_index(const Ring& poly_ring, const std::string& var) {
    if (poly_ring->kind != RingKind::Polynomial)
        throw Error(ErrKind::Domain, "not a polynomial ring");
    for (std::size_t i = 0; i < poly_ring->vars.size(); ++i)
        if (poly_ring->vars[i] == var) return i;
    throw Error(ErrKind::Domain, "unknown variable " + var);
}

Elem variable(const Ring& poly_ring, const std::string& var) {
    std::size_t i = var_index(poly_ring, var);
    Monomial m(poly_ring->vars.size(), 0);
    m[i] = 1;
    std::map<Monomial, Elem> t;
    t.emplace(std::move(m), one(poly_ring->base));
    return make_poly(poly_ring, std::move(t));
}

Elem substitute(const Elem& p, const std::map<std::string, Elem>& bindings) {
    const Ring& r = p.ring;
    if (r->kind != RingKind::Polynomial)
        throw Error(ErrKind::Domain, "substitute: not a polynomial");
    std::vector<std::optional<Elem>> images(r->vars.size());
    Ring target = r;
    for (const auto& [name, img] : bindings) {
        std::size_t i = var_index(r, name);  // throws on unknown variable
        if (!ring_eq(img.ring, target))
            throw Error(ErrKind::RingMismatch, "substitution image in wrong ring");
        images[i] = img;
    }
    Elem acc = zero(target);
    for (const auto& [m, c] : poly_data(p).terms) {
        Monomial rest(m.size(), 0);
        Elem term = embed(c, target);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (images[i])
                term = mul(term, pow(*images[i], m[i]));
            else
                rest[i] = m[i];
        }
        std::map<Monomial, Elem> t;
        t.emplace(std::move(rest), one(target->base));
        term = mul(term, make_poly(target, std::move(t)));
        acc = add(acc, term);
    }
    return acc;
}

Elem map_coefficients(const Elem& p, const Ring& new_poly_ring,
                      const std::function<Elem(const Elem&)>& f) {
    if (p.ring->kind != RingKind::Polynomial || new_poly_ring->kind != RingKind::Polynomial)
        throw Error(ErrKind::Domain, "map_coefficients: not a polynomial");
    if (p.ring->vars != new_poly_ring->vars)
        throw Error(ErrKind::Domain, "map_coefficients: variable mismatch");
    std::map<Monomial, Elem> t;
    for (const auto& [m, c] : poly_data(p).terms) {
        Elem img = f(c);
        if (!is_zero(img)) t.emplace(m, std::move(img));
    }
    return make_poly(new_poly_ring, std::move(t));
}

Elem transport_poly(const Elem& p, const Ring& target) {
    if (p.ring->kind != RingKind::Polynomial || target->kind != RingKind::Polynomial)
        throw Error(ErrKind::Domain, "transport_poly: not a polynomial ring");
    std::vector<std::size_t> where(p.ring->vars.size());
    for (std::size_t i = 0; i < where.size(); ++i)
        where[i] = var_index(target, p.ring->vars[i]);
    std::map<Monomial, Elem> t;
    for (const auto& [m, c] : poly_data(p).terms) {
        Monomial mm(target->vars.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) mm[where[i]] = m[i];
        Elem cc = embed(c, target->base);
        if (!is_zero(cc)) t.emplace(std::move(mm), std::move(cc));
    }
    return make_poly(target, std::move(t));
}

std::uint32_t min_var_degree(const Elem& p, std::size_t var) {
    std::uint32_t best = UINT32_MAX;
    for (const auto& [m, c] : poly_data(p).terms) best = std::min(best, m[var]);
    return best;
}

bool divisible_by_var_power(const Elem& p, std::size_t var, std::uint32_t k) {
    return min_var_degree(p, var) >= k;  // zero polynomial: trivially divisible
}

Elem divide_by_var_power(const Elem& p, std::size_t var, std::uint32_t k) {
    if (!divisible_by_var_power(p, var, k))
        throw Error(ErrKind::Domain, "not divisible by variable power");
    std::map<Monomial, Elem> t;
    for (const auto& [m, c] : poly_data(p).terms) {
        Monomial mm = m;
        mm[var] -= k;
        t.emplace(std::move(mm), c);
    }
    return make_poly(p.ring, std::move(t));
}

std::uint32_t total_degree(const Elem& p) {
    std::uint32_t d = 0;
    for (const auto& [m, c] : poly_data(p).terms) {
        std::uint32_t s = 0;
        for (auto e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

Elem phi(const Elem& a) {
    if (a.ring->kind != RingKind::Excision) throw Error(ErrKind::Domain, "phi: not an excision element");
    const ExcData& x = exc_data(a);
    return add(x.r, ideal_elem_value(x.i));
}

std::uint32_t denominator_exponent(const Elem& e) {
    switch (e.ring->kind) {
        case RingKind::Localized: {
            const LocData& x = loc_data(e);
            return x.k + denominator_exponent(x.num);
        }
        case RingKind::Polynomial: {
            std::uint32_t k = 0;
            for (const auto& [m, c] : poly_data(e).terms)
                k = std::max(k, denominator_exponent(c));
            return k;
        }
        case RingKind::Excision: {
            const ExcData& x = exc_data(e);
            std::uint32_t k = denominator_exponent(x.r);
            for (const auto& [c, gi] : x.i.terms) k = std::max(k, denominator_exponent(c));
            return k;
        }
        default: return 0;
    }
}

Elem delocalize(const Elem& e, const Ring& target) {
    const Ring& r = e.ring;
    if (r->kind == RingKind::Localized) {
        const LocData& x = loc_data(e);
        if (x.k != 0) throw Error(ErrKind::Domain, "delocalize: nonzero denominator exponent");
        if (!ring_eq(x.num.ring, target))
            throw Error(ErrKind::RingMismatch, "delocalize: target is not the base ring");
        return x.num;
    }
    if (r->kind == RingKind::Polynomial && target->kind == RingKind::Polynomial &&
        r->vars == target->vars) {
        return map_coefficients(e, target,
                                [&](const Elem& c) { return delocalize(c, target->base); });
    }
    throw Error(ErrKind::Domain, "delocalize: unsupported shape");
}

// ---- ideals -------------------------------------------------------------

IdealPtr make_ideal(Ring ring, std::vector<Elem> gens) {
    if (gens.empty()) throw Error(ErrKind::Domain, "ideal needs at least one generator");
    for (const auto& g : gens)
        if (!ring_eq(g.ring, ring))
            throw Error(ErrKind::RingMismatch, "ideal generator in wrong ring");
    auto id = std::make_shared<Ideal>();
    id->ring = std::move(ring);
    id->gens = std::move(gens);
    return id;
}

bool ideal_eq(const Ideal& a, const Ideal& b) {
    if (&a == &b) return true;
    if (!ring_eq(a.ring, b.ring) || a.gens.size() != b.gens.size()) return false;
    for (std::size_t i = 0; i < a.gens.size(); ++i)
        if (!eq(a.gens[i], b.gens[i])) return false;
    return true;
}

IdealElem ideal_zero(IdealPtr ideal) { return IdealElem{std::move(ideal), {}}; }

IdealElem ideal_gen_multiple(IdealPtr ideal, std::size_t gen_index, Elem coeff) {
    if (gen_index >= ideal->gens.size()) throw Error(ErrKind::Domain, "generator index out of range");
    if (!ring_eq(coeff.ring, ideal->ring))
        throw Error(ErrKind::RingMismatch, "witness coefficient in wrong ring");
    IdealElem w{std::move(ideal), {}};
    if (!is_zero(coeff)) w.terms.emplace_back(std::move(coeff), gen_index);
    return w;
}

Elem ideal_elem_value(const IdealElem& w) {
    Elem acc = zero(w.ideal->ring);
    for (const auto& [c, gi] : w.terms) acc = add(acc, mul(c, w.ideal->gens[gi]));
    return acc;
}

static void check_same_ideal(const IdealElem& a, const IdealElem& b) {
    if (!ideal_eq(*a.ideal, *b.ideal))
        throw Error(ErrKind::RingMismatch, "ideal elements from different ideals");
}

IdealElem ideal_elem_scale(const Elem& r, const IdealElem& w) {
    if (!ring_eq(r.ring, w.ideal->ring))
        throw Error(ErrKind::RingMismatch, "scaling factor in wrong ring");
    IdealElem out{w.ideal, {}};
    for (const auto& [c, gi] : w.terms) {
        Elem p = mul(r, c);
        if (!is_zero(p)) out.terms.emplace_back(std::move(p), gi);
    }
    return out;
}

IdealElem ideal_elem_add(const IdealElem& a, const IdealElem& b) {
    check_same_ideal(a, b);
    // merge by generator index, keeping terms compact
    std::map<std::size_t, Elem> acc;
    for (const auto& [c, gi] : a.terms) {
        auto it = acc.find(gi);
        if (it == acc.end())
            acc.emplace(gi, c);
        else
            it->second = add(it->second, c);
    }
    for (const auto& [c, gi] : b.terms) {
        auto it = acc.find(gi);
        if (it == acc.end())
            acc.emplace(gi, c);
        else
            it->second = add(it->second, c);
    }
    IdealElem out{a.ideal, {}};
    for (auto& [gi, c] : acc)
        if (!is_zero(c)) out.terms.emplace_back(std::move(c), gi);
    return out;
}

IdealElem ideal_elem_neg(const IdealElem& a) {
    IdealElem out{a.ideal, {}};
    for (const auto& [c, gi] : a.terms) out.terms.emplace_back(neg(c), gi);
    return out;
}

IdealPtr extend_ideal(const IdealPtr& ideal, const Ring& target) {
    if (ring_eq(ideal->ring, target)) return ideal;
    std::vector<Elem> gens;
    gens.reserve(ideal->gens.size());
    for (const auto& g : ideal->gens) gens.push_back(embed(g, target));
    return make_ideal(target, std::move(gens));
}

IdealElem embed_witness(const IdealElem& w, const IdealPtr& target_ideal) {
    IdealElem out{target_ideal, {}};
    for (const auto& [c, gi] : w.terms)
        out.terms.emplace_back(embed(c, target_ideal->ring), gi);
    return out;
}

// ---- membership ---------------------------------------------------------

// Extended gcd over the integers: returns (g, u) with u*a == g modulo the
// contribution of b-coefficients handled iteratively by the caller.
static void ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    g = r0;
    x = s0;
    y = t0;
}

static Membership membership_integers(const Elem& x, const IdealPtr& ideal) {
    // running gcd with tracked coefficients
    const Ring& r = ideal->ring;
    Int g = 0;
    std::vector<Int> coeffs(ideal->gens.size(), 0);
    for (std::size_t i = 0; i < ideal->gens.size(); ++i) {
        Int gi = int_value(ideal->gens[i]);
        if (gi == 0) continue;
        if (g == 0) {
            g = abs(gi);
            coeffs[i] = gi < 0 ? -1 : 1;
            continue;
        }
        Int ng, u, v;
        ext_gcd(g, gi, ng, u, v);
        if (ng < 0) {
            ng = -ng;
            u = -u;
            v = -v;
        }
        for (auto& c : coeffs) c *= u;
        coeffs[i] += v;
        g = ng;
    }
    const Int& xv = int_value(x);
    if (g == 0) {
        if (xv == 0) return ideal_zero(ideal);
        return NotMember{};
    }
    if (xv % g != 0) return NotMember{};
    Int q = xv / g;
    IdealElem w{ideal, {}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Int c = coeffs[i] * q;
        if (c != 0) w.terms.emplace_back(from_int(r, c), i);
    }
    return w;
}

static Membership membership_mod(const Elem& x, const IdealPtr& ideal) {
    // lift to Z with the modulus as an implicit extra generator
    const Ring& r = ideal->ring;
    const Int& n = r->modulus;
    Int g = n;
    std::vector<Int> coeffs(ideal->gens.size(), 0);
    for (std::size_t i = 0; i < ideal->gens.size(); ++i) {
        Int gi = int_value(ideal->gens[i]);
        if (gi == 0) continue;
        Int ng, u, v;
        ext_gcd(g, gi, ng, u, v);
        if (ng < 0) {
            ng = -ng;
            u = -u;
            v = -v;
        }
        for (auto& c : coeffs) c *= u;
        coeffs[i] += v;
        g = ng;
    }
    const Int& xv = int_value(x);
    if (xv % g != 0) return NotMember{};
    Int q = xv / g;
    IdealElem w{ideal, {}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Int c = (coeffs[i] * q) % n;
        if (c != 0) w.terms.emplace_back(from_int(r, c), i);
    }
    // the modulus contribution vanishes in Z/n, but re-check the value
    if (!eq(ideal_elem_value(w), x)) return Undecidable{};
    return w;
}

static Membership membership_field(const Elem& x, const IdealPtr& ideal) {
    for (std::size_t i = 0; i < ideal->gens.size(); ++i) {
        if (!is_zero(ideal->gens[i])) {
            auto q = try_divide(x, ideal->gens[i]);
            if (q) return ideal_gen_multiple(ideal, i, *q);
        }
    }
    if (is_zero(x)) return ideal_zero(ideal);
    return NotMember{};
}

// Univariate polynomials over a field: extended Euclid across generators.
static Membership membership_univariate_field(const Elem& x, const IdealPtr& ideal) {
    const Ring& r = ideal->ring;
    Elem g = zero(r);
    std::vector<Elem> coeffs(ideal->gens.size(), zero(r));
    auto degree = [&](const Elem& p) -> long {
        if (is_zero(p)) return -1;
        long d = -1;
        for (const auto& [m, c] : poly_data(p).terms) d = std::max<long>(d, m[0]);
        return d;
    };
    auto lead = [&](const Elem& p) {
        long d = degree(p);
        Monomial m{(std::uint32_t)d};
        return std::pair<Monomial, Elem>(m, poly_data(p).terms.at(m));
    };
    // euclidean division over a field base
    auto divmod = [&](const Elem& a, const Elem& b) {
        Elem q = zero(r), rem = a;
        long db = degree(b);
        auto [bm, bc] = lead(b);
        while (!is_zero(rem) && degree(rem) >= db) {
            auto [rm, rc] = lead(rem);
            Monomial qm{(std::uint32_t)(rm[0] - bm[0])};
            Elem qc = *try_divide(rc, bc);
            std::map<Monomial, Elem> t;
            t.emplace(qm, qc);
            Elem qt = make_poly(r, std::move(t));
            q = add(q, qt);
            rem = sub(rem, mul(qt, b));
        }
        return std::pair<Elem, Elem>(q, rem);
    };
    for (std::size_t i = 0; i < ideal->gens.size(); ++i) {
        Elem gi = ideal->gens[i];
        if (is_zero(gi)) continue;
        if (is_zero(g)) {
            g = gi;
            coeffs[i] = one(r);
            continue;
        }
        // extended euclid on (g, gi) with coefficient tracking
        Elem r0 = g, r1 = gi;
        Elem s0 = one(r), s1 = zero(r), t0 = zero(r), t1 = one(r);
        while (!is_zero(r1)) {
            auto [q, rem] = divmod(r0, r1);
            r0 = r1;
            r1 = rem;
            Elem ns = sub(s0, mul(q, s1));
            s0 = s1;
            s1 = ns;
            Elem nt = sub(t0, mul(q, t1));
            t0 = t1;
            t1 = nt;
        }
        // r0 = s0*g + t0*gi
        for (auto& c : coeffs) c = mul(c, s0);
        coeffs[i] = add(coeffs[i], t0);
        g = r0;
    }
    if (is_zero(g)) {
        if (is_zero(x)) return ideal_zero(ideal);
        return NotMember{};
    }
    auto q = poly_try_divide(x, g);
    if (!q) return NotMember{};
    IdealElem w{ideal, {}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Elem c = mul(coeffs[i], *q);
        if (!is_zero(c)) w.terms.emplace_back(std::move(c), i);
    }
    return w;
}

Membership decide_membership(const Elem& x, const IdealPtr& ideal) {
    if (!ring_eq(x.ring, ideal->ring))
        throw Error(ErrKind::RingMismatch, "membership query in wrong ring");
    if (is_zero(x)) return ideal_zero(ideal);
    const Ring& r = ideal->ring;
    switch (r->kind) {
        case RingKind::Integers: return membership_integers(x, ideal);
        case RingKind::IntegersMod: return membership_mod(x, ideal);
        case RingKind::Rationals: return membership_field(x, ideal);
        case RingKind::Polynomial:
            if (r->vars.size() == 1 && is_field(r->base))
                return membership_univariate_field(x, ideal);
            // multivariate (or non-field base): trial division per generator
            for (std::size_t gi = 0; gi < ideal->gens.size(); ++gi) {
                if (is_zero(ideal->gens[gi])) continue;
                auto q = try_divide(x, ideal->gens[gi]);
                if (q) return ideal_gen_multiple(ideal, gi, *q);
            }
            return Undecidable{};
        case RingKind::Excision: {
            // the canonical ideal 0 (+) I inside R (+) I: membership is
            // structural, (r (+) i) lies in it iff r = 0, and the stored
            // witness of i transports directly
            const IdealPtr& base_ideal = r->ideal;
            bool canonical = ideal->gens.size() == base_ideal->gens.size();
            for (std::size_t k = 0; canonical && k < ideal->gens.size(); ++k) {
                const ExcData& g = exc_data(ideal->gens[k]);
                canonical = is_zero(g.r) && eq(ideal_elem_value(g.i), base_ideal->gens[k]);
            }
            if (canonical) {
                const ExcData& xd = exc_data(x);
                if (!is_zero(xd.r)) return NotMember{};
                if (!ideal_eq(*xd.i.ideal, *base_ideal)) return Undecidable{};
                IdealElem w{ideal, {}};
                for (const auto& [c, k] : xd.i.terms)
                    if (!is_zero(c)) w.terms.emplace_back(embed(c, r), k);
                return w;
            }
            for (std::size_t gi = 0; gi < ideal->gens.size(); ++gi) {
                if (is_zero(ideal->gens[gi])) continue;
                auto q = try_divide(x, ideal->gens[gi]);
                if (q) return ideal_gen_multiple(ideal, gi, *q);
            }
            return Undecidable{};
        }
        default:
            // trial division fallback for localized bases
            for (std::size_t gi = 0; gi < ideal->gens.size(); ++gi) {
                if (is_zero(ideal->gens[gi])) continue;
                auto q = try_divide(x, ideal->gens[gi]);
                if (q) return ideal_gen_multiple(ideal, gi, *q);
            }
            return Undecidable{};
    }
}

IdealElem require_membership(const Elem& x, const IdealPtr& ideal) {
    Membership m = decide_membership(x, ideal);
    if (std::holds_alternative<IdealElem>(m)) return std::get<IdealElem>(m);
    if (std::holds_alternative<NotMember>(m))
        throw Error(ErrKind::NotInIdeal, "element not in ideal: " + to_string(x));
    throw Error(ErrKind::Undecidable, "ideal membership undecidable for " + to_string(x));
}

}  // namespace elemex

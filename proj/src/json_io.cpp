#include "elemex/json_io.hpp"

namespace elemex {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrKind::SchemaError, msg); }

const Json& field(const Json& j, const char* k) {
    if (!j.is_object() || !j.contains(k)) bad(std::string("missing field '") + k + "'");
    return j.at(k);
}

std::string str_field(const Json& j, const char* k) {
    const Json& v = field(j, k);
    if (!v.is_string()) bad(std::string("field '") + k + "' must be a string");
    return v.get<std::string>();
}

Int int_from_string(const std::string& s) {
    if (s.empty()) bad("empty integer string");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) bad("malformed integer string");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') bad("malformed integer string: " + s);
    return Int(s);
}

std::size_t size_field(const Json& j, const char* k) {
    const Json& v = field(j, k);
    if (!v.is_number_unsigned()) bad(std::string("field '") + k + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

GroupKind kind_from_string(const std::string& s) {
    if (s == "linear") return GroupKind::Linear;
    if (s == "symplectic") return GroupKind::Symplectic;
    if (s == "orthogonal") return GroupKind::Orthogonal;
    bad("unknown group kind: " + s);
}

Json checks_to_json(const std::vector<CertCheck>& checks) {
    Json out = Json::array();
    for (const auto& [name, pass] : checks) {
        Json c;
        c["name"] = name;
        c["pass"] = pass;
        out.push_back(std::move(c));
    }
    return out;
}

Json witness_list_to_json(const std::vector<std::optional<IdealElem>>& ws) {
    Json out = Json::array();
    for (const auto& w : ws)
        out.push_back(w ? witness_to_json(*w) : Json(nullptr));
    return out;
}

}  // namespace

Json ring_to_json(const Ring& r) {
    Json j;
    switch (r->kind) {
        case RingKind::Integers: j["kind"] = "integers"; break;
        case RingKind::IntegersMod:
            j["kind"] = "integers-mod";
            j["modulus"] = r->modulus.str();
            break;
        case RingKind::Rationals: j["kind"] = "rationals"; break;
        case RingKind::Polynomial:
            j["kind"] = "polynomial";
            j["base"] = ring_to_json(r->base);
            j["vars"] = r->vars;
            break;
        case RingKind::Localized:
            j["kind"] = "localized";
            j["base"] = ring_to_json(r->base);
            j["s"] = elem_to_json(*r->s);
            break;
        case RingKind::Excision:
            j["kind"] = "excision";
            j["base"] = ring_to_json(r->base);
            j["ideal"] = ideal_to_json(r->ideal);
            break;
    }
    return j;
}

Ring ring_from_json(const Json& j) {
    std::string k = str_field(j, "kind");
    if (k == "integers") return integers();
    if (k == "rationals") return rationals();
    if (k == "integers-mod") return integers_mod(int_from_string(str_field(j, "modulus")));
    if (k == "polynomial") {
        Ring base = ring_from_json(field(j, "base"));
        const Json& vars = field(j, "vars");
        if (!vars.is_array() || vars.empty()) bad("polynomial ring needs a variable list");
        std::vector<std::string> vs;
        for (const auto& v : vars) {
            if (!v.is_string()) bad("variable names must be strings");
            vs.push_back(v.get<std::string>());
        }
        return polynomial_ring(std::move(base), std::move(vs));
    }
    if (k == "localized") {
        Ring base = ring_from_json(field(j, "base"));
        return localized_ring(base, elem_from_json(field(j, "s"), base));
    }
    if (k == "excision") {
        Ring base = ring_from_json(field(j, "base"));
        return excision_ring(base, ideal_from_json(field(j, "ideal"), base));
    }
    bad("unknown ring kind: " + k);
}

Json elem_to_json(const Elem& e) {
    switch (e.ring->kind) {
        case RingKind::Integers:
        case RingKind::IntegersMod: return Json(int_value(e).str());
        case RingKind::Rationals: {
            const Rat& q = rat_value(e);
            Int den = boost::multiprecision::denominator(q);
            std::string s = boost::multiprecision::numerator(q).str();
            if (den != 1) s += "/" + den.str();
            return Json(s);
        }
        case RingKind::Polynomial: {
            Json terms = Json::array();
            for (const auto& [m, c] : poly_data(e).terms) {
                Json t;
                t["exps"] = m;
                t["coeff"] = elem_to_json(c);
                terms.push_back(std::move(t));
            }
            return terms;
        }
        case RingKind::Localized: {
            const LocData& d = loc_data(e);
            Json j;
            j["num"] = elem_to_json(d.num);
            j["k"] = d.k;
            return j;
        }
        case RingKind::Excision: {
            const ExcData& d = exc_data(e);
            Json j;
            j["r"] = elem_to_json(d.r);
            j["i"] = witness_to_json(d.i);
            return j;
        }
    }
    bad("unencodable element");
}

Elem elem_from_json(const Json& j, const Ring& r) {
    switch (r->kind) {
        case RingKind::Integers:
        case RingKind::IntegersMod: {
            if (!j.is_string()) bad("integer element must be a decimal string");
            return from_int(r, int_from_string(j.get<std::string>()));
        }
        case RingKind::Rationals: {
            if (!j.is_string()) bad("rational element must be a decimal string");
            std::string s = j.get<std::string>();
            auto slash = s.find('/');
            if (slash == std::string::npos) return from_int(r, int_from_string(s));
            return make_rational(r, int_from_string(s.substr(0, slash)),
                                 int_from_string(s.substr(slash + 1)));
        }
        case RingKind::Polynomial: {
            if (!j.is_array()) bad("polynomial element must be a monomial list");
            std::map<Monomial, Elem> terms;
            for (const auto& t : j) {
                const Json& ex = field(t, "exps");
                if (!ex.is_array() || ex.size() != r->vars.size())
                    bad("monomial exponent vector has the wrong length");
                Monomial m;
                for (const auto& x : ex) {
                    if (!x.is_number_unsigned()) bad("exponents must be non-negative integers");
                    m.push_back(x.get<std::uint32_t>());
                }
                Elem c = elem_from_json(field(t, "coeff"), r->base);
                if (!terms.emplace(std::move(m), std::move(c)).second)
                    bad("duplicate monomial in polynomial");
            }
            return make_poly(r, std::move(terms));
        }
        case RingKind::Localized: {
            Elem num = elem_from_json(field(j, "num"), r->base);
            return make_localized(r, std::move(num),
                                  static_cast<std::uint32_t>(size_field(j, "k")));
        }
        case RingKind::Excision: {
            Elem base_part = elem_from_json(field(j, "r"), r->base);
            IdealElem w = witness_from_json(field(j, "i"), r->ideal);
            return make_excision(r, std::move(base_part), std::move(w));
        }
    }
    bad("undecodable element");
}

Json ideal_to_json(const IdealPtr& i) {
    Json gens = Json::array();
    for (const auto& g : i->gens) gens.push_back(elem_to_json(g));
    Json j;
    j["gens"] = std::move(gens);
    return j;
}

IdealPtr ideal_from_json(const Json& j, const Ring& r) {
    const Json& gens = field(j, "gens");
    if (!gens.is_array() || gens.empty()) bad("ideal needs a non-empty generator list");
    std::vector<Elem> gs;
    for (const auto& g : gens) gs.push_back(elem_from_json(g, r));
    return make_ideal(r, std::move(gs));
}

Json witness_to_json(const IdealElem& w) {
    Json terms = Json::array();
    for (const auto& [c, gi] : w.terms) {
        Json t;
        t["coeff"] = elem_to_json(c);
        t["gen"] = gi;
        terms.push_back(std::move(t));
    }
    Json j;
    j["terms"] = std::move(terms);
    return j;
}

IdealElem witness_from_json(const Json& j, const IdealPtr& ideal) {
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) bad("witness needs a term list");
    IdealElem out = ideal_zero(ideal);
    for (const auto& t : terms) {
        std::size_t gi = size_field(t, "gen");
        if (gi >= ideal->gens.size()) bad("witness references a missing generator");
        out = ideal_elem_add(out,
                             ideal_gen_multiple(ideal, gi,
                                                elem_from_json(field(t, "coeff"), ideal->ring)));
    }
    return out;
}

Json vector_to_json(const Vector& v) {
    Json entries = Json::array();
    for (const auto& e : v.entries) entries.push_back(elem_to_json(e));
    Json j;
    j["entries"] = std::move(entries);
    if (!v.witnesses.empty()) j["witnesses"] = witness_list_to_json(v.witnesses);
    return j;
}

Vector vector_from_json(const Json& j, const Ring& r, const IdealPtr& ideal_for_witnesses) {
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) bad("vector needs an entry list");
    std::vector<Elem> es;
    for (const auto& e : entries) es.push_back(elem_from_json(e, r));
    Vector out = make_vector(r, std::move(es));
    if (j.contains("witnesses") && !j.at("witnesses").is_null()) {
        const Json& ws = j.at("witnesses");
        if (!ws.is_array() || ws.size() != out.size())
            bad("witness list length must match the vector");
        if (!ideal_for_witnesses) bad("vector witnesses supplied without an ideal");
        for (const auto& w : ws)
            out.witnesses.push_back(w.is_null()
                                        ? std::optional<IdealElem>{}
                                        : std::optional<IdealElem>{
                                              witness_from_json(w, ideal_for_witnesses)});
    }
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.n; ++k) row.push_back(elem_to_json(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    Json j;
    j["n"] = m.n;
    j["entries"] = std::move(rows);
    return j;
}

Matrix matrix_from_json(const Json& j, const Ring& r) {
    std::size_t n = size_field(j, "n");
    const Json& rows = field(j, "entries");
    if (!rows.is_array() || rows.size() != n) bad("matrix row count must equal n");
    Matrix out = zero_matrix(r, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Json& row = rows.at(i);
        if (!row.is_array() || row.size() != n) bad("matrix row length must equal n");
        for (std::size_t k = 0; k < n; ++k) out.at(i, k) = elem_from_json(row.at(k), r);
    }
    return out;
}

Json generator_to_json(const Generator& g) {
    Json j;
    j["shape"] = g.shape == GenShape::Absolute ? "absolute" : "relative";
    j["i"] = g.i;
    j["j"] = g.j;
    j["z"] = elem_to_json(g.z);
    if (g.shape == GenShape::Relative) j["h"] = witness_to_json(*g.h);
    return j;
}

Generator generator_from_json(const Json& j, GroupKind kind, std::size_t n, const Ring& r,
                              const IdealPtr& ideal_for_relative) {
    std::size_t i = size_field(j, "i"), jj = size_field(j, "j");
    Elem z = elem_from_json(field(j, "z"), r);
    std::string shape = str_field(j, "shape");
    if (shape == "absolute") return make_absolute(kind, n, i, jj, std::move(z));
    if (shape != "relative") bad("unknown generator shape: " + shape);
    if (!ideal_for_relative) bad("relative generator requires an ideal");
    IdealElem h = witness_from_json(field(j, "h"), ideal_for_relative);
    return make_relative(kind, n, i, jj, std::move(z), std::move(h));
}

Json word_to_json(const Word& w) {
    Json j;
    j["ring"] = ring_to_json(w.ring);
    j["kind"] = group_kind_name(w.kind);
    j["n"] = w.n;
    IdealPtr ideal;
    for (const auto& [g, e] : w.factors)
        if (g.shape == GenShape::Relative) {
            if (ideal && !ideal_eq(*ideal, *g.h->ideal))
                throw Error(ErrKind::Domain, "word mixes witnesses over different ideals");
            ideal = g.h->ideal;
        }
    if (ideal) j["ideal"] = ideal_to_json(ideal);
    Json factors = Json::array();
    for (const auto& [g, e] : w.factors) {
        Json f = generator_to_json(g);
        f["exp"] = e;
        factors.push_back(std::move(f));
    }
    j["factors"] = std::move(factors);
    return j;
}

Word word_from_json(const Json& j) {
    Ring r = ring_from_json(field(j, "ring"));
    GroupKind kind = kind_from_string(str_field(j, "kind"));
    std::size_t n = size_field(j, "n");
    IdealPtr ideal;
    if (j.contains("ideal") && !j.at("ideal").is_null())
        ideal = ideal_from_json(j.at("ideal"), r);
    Word out = make_word(r, kind, n);
    const Json& factors = field(j, "factors");
    if (!factors.is_array()) bad("word needs a factor list");
    for (const auto& f : factors) {
        std::size_t i = size_field(f, "i"), jj = size_field(f, "j");
        Elem z = elem_from_json(field(f, "z"), r);
        int e = 1;
        if (f.contains("exp")) {
            if (!f.at("exp").is_number_integer()) bad("exponent must be an integer");
            e = f.at("exp").get<int>();
            if (e != 1 && e != -1) bad("exponent must be +1 or -1");
        }
        std::string shape = str_field(f, "shape");
        if (shape == "absolute") {
            word_append(out, make_absolute(kind, n, i, jj, std::move(z)), e);
        } else if (shape == "relative") {
            if (!ideal) bad("relative factor without a word-level ideal");
            IdealElem h = witness_from_json(field(f, "h"), ideal);
            word_append(out, make_relative(kind, n, i, jj, std::move(z), std::move(h)), e);
        } else {
            bad("unknown generator shape: " + shape);
        }
    }
    return out;
}

Json rewrite_certificate_to_json(const RewriteCertificate& c) {
    Json j;
    j["word"] = word_to_json(c.output);
    j["witnesses"] = witness_list_to_json(c.witnesses);
    j["carriers"] = c.carriers;
    j["checks"] = checks_to_json(c.checks);
    return j;
}

Json rank_one_certificate_to_json(const RankOneCertificate& c) {
    Json blocks = Json::array();
    for (const auto& b : c.blocks) {
        Json bj;
        bj["eps"] = word_to_json(b.eps);
        bj["g"] = generator_to_json(b.g);
        bj["witness"] = b.witness ? witness_to_json(*b.witness) : Json(nullptr);
        blocks.push_back(std::move(bj));
    }
    Json j;
    j["word"] = word_to_json(c.output);
    j["blocks"] = std::move(blocks);
    j["checks"] = checks_to_json(c.checks);
    return j;
}

Json monomial_certificate_to_json(const MonomialCertificate& c) {
    Json j;
    j["word"] = word_to_json(c.output);
    j["d"] = c.d;
    j["witnesses"] = witness_list_to_json(c.witnesses);
    j["carriers"] = c.carriers;
    j["checks"] = checks_to_json(c.checks);
    return j;
}

Json dilation_result_to_json(const DilationResult& r) {
    Json j;
    j["b"] = elem_to_json(r.b);
    j["l"] = r.l;
    j["word"] = word_to_json(r.word);
    j["carriers"] = r.carriers;
    j["checks"] = checks_to_json(r.checks);
    return j;
}

std::string dump_json(const Json& j, bool pretty) {
    return pretty ? j.dump(2) : j.dump();
}

}  // namespace elemex

#include "elemex/api.hpp"

#include "elemex/rewrite.hpp"

namespace elemex {
namespace {

const Json& field(const Json& j, const char* k) {
    if (!j.is_object() || !j.contains(k))
        throw Error(ErrKind::SchemaError, std::string("missing field '") + k + "'");
    return j.at(k);
}

std::uint32_t uint_field(const Json& j, const char* k, std::uint32_t dflt, bool required = false) {
    if (!j.contains(k)) {
        if (required)
            throw Error(ErrKind::SchemaError, std::string("missing field '") + k + "'");
        return dflt;
    }
    if (!j.at(k).is_number_unsigned())
        throw Error(ErrKind::SchemaError,
                    std::string("field '") + k + "' must be a non-negative integer");
    return j.at(k).get<std::uint32_t>();
}

Json cmd_eval(const Json& p) {
    Word w = word_from_json(field(p, "word"));
    Json out;
    out["matrix"] = matrix_to_json(eval_word(w));
    return out;
}

Json cmd_factor(const Json& p) {
    Word eps = word_from_json(field(p, "eps"));
    IdealPtr ideal = ideal_from_json(field(p, "ideal"), eps.ring);
    Vector w = vector_from_json(field(p, "w"), eps.ring, ideal);
    return rank_one_certificate_to_json(factor_rank_one(eps, w, ideal));
}

Json cmd_rewrite(const Json& p) {
    Word eps = word_from_json(field(p, "eps"));
    IdealPtr ideal = ideal_from_json(field(p, "ideal"), eps.ring);
    Generator inner = generator_from_json(field(p, "inner"), eps.kind, eps.n, eps.ring, ideal);
    std::uint32_t m = uint_field(p, "m", 1);
    std::string var = field(p, "var").get<std::string>();
    return rewrite_certificate_to_json(word_conjugate_rewrite(eps, inner, m, ideal, var));
}

Json cmd_monomialize(const Json& p) {
    Word eps = word_from_json(field(p, "eps"));
    IdealPtr ideal = ideal_from_json(field(p, "ideal"), eps.ring);
    Vector w = vector_from_json(field(p, "w"), eps.ring, ideal);
    std::string var = field(p, "var").get<std::string>();
    std::uint32_t d = uint_field(p, "d", 0);
    return monomial_certificate_to_json(monomialize(eps, w, ideal, var, d));
}

Json cmd_dilate(const Json& p) {
    const Json& bl = field(p, "blocks");
    if (!bl.is_array() || bl.empty())
        throw Error(ErrKind::SchemaError, "dilate needs a block list");
    std::vector<ConjBlock> blocks;
    IdealPtr ideal_s;
    IdealPtr ideal_sx;
    for (const auto& b : bl) {
        Word eps = word_from_json(field(b, "eps"));
        if (!ideal_s) {
            ideal_s = ideal_from_json(field(p, "ideal"), eps.ring->base);
            ideal_sx = extend_ideal(ideal_s, eps.ring);
        }
        Generator g = generator_from_json(field(b, "g"), eps.kind, eps.n, eps.ring, ideal_sx);
        std::optional<IdealElem> wit;
        if (b.contains("witness") && !b.at("witness").is_null())
            wit = witness_from_json(b.at("witness"), ideal_sx);
        blocks.push_back(ConjBlock{std::move(eps), std::move(g), std::move(wit)});
    }
    std::uint32_t d = uint_field(p, "d", 0, true);
    std::string tvar = p.contains("tvar") ? p.at("tvar").get<std::string>() : "T";
    return dilation_result_to_json(dilate(blocks, ideal_s, d, tvar));
}

Json cmd_lift(const Json& p) {
    if (p.contains("word")) {
        Word w = word_from_json(p.at("word"));
        IdealPtr ideal = ideal_from_json(field(p, "ideal"), w.ring);
        Json out;
        out["word"] = word_to_json(lift_word(w, ideal));
        return out;
    }
    Ring r = ring_from_json(field(p, "ring"));
    IdealPtr ideal = ideal_from_json(field(p, "ideal"), r);
    Matrix m = matrix_from_json(field(p, "matrix"), r);
    Matrix inv = matrix_from_json(field(p, "inverse"), r);
    m = with_inverse_witness(std::move(m), std::move(inv));
    Json out;
    out["matrix"] = matrix_to_json(lift_matrix(m, ideal));
    return out;
}

Json cmd_project(const Json& p) {
    Word w = word_from_json(field(p, "word"));
    std::optional<IdealPtr> target;
    if (p.contains("ideal") && !p.at("ideal").is_null()) {
        if (w.ring->kind != RingKind::Excision)
            throw Error(ErrKind::SchemaError, "project expects a word over an excision ring");
        target = ideal_from_json(p.at("ideal"), w.ring->base);
    }
    Json out;
    out["word"] = word_to_json(project_word(w, target));
    return out;
}

Json check_to_json(Check c) {
    switch (c) {
        case Check::True: return Json(true);
        case Check::False: return Json(false);
        case Check::Undecidable: return Json("undecidable");
    }
    return Json("undecidable");
}

Json cmd_check(const Json& p) {
    Ring r = ring_from_json(field(p, "ring"));
    std::string mode = field(p, "mode").get<std::string>();
    Json out;
    if (mode == "group") {
        std::string ks = field(p, "kind").get<std::string>();
        GroupKind kind = ks == "linear"       ? GroupKind::Linear
                         : ks == "symplectic" ? GroupKind::Symplectic
                                              : GroupKind::Orthogonal;
        Matrix m = matrix_from_json(field(p, "matrix"), r);
        out["ok"] = check_to_json(check_group_membership(m, kind));
        return out;
    }
    IdealPtr ideal = ideal_from_json(field(p, "ideal"), r);
    if (mode == "relative") {
        Matrix m = matrix_from_json(field(p, "matrix"), r);
        out["ok"] = check_to_json(check_relative(m, ideal).status);
        return out;
    }
    if (mode == "unimodular") {
        Vector v = vector_from_json(field(p, "vector"), r, ideal);
        std::optional<Vector> u;
        if (p.contains("coefficients")) u = vector_from_json(p.at("coefficients"), r, nullptr);
        out["ok"] = check_to_json(check_um_rel(v, ideal, u));
        return out;
    }
    throw Error(ErrKind::SchemaError, "unknown check mode: " + mode);
}

}  // namespace

Json run_command(const std::string& command, const Json& payload, std::uint64_t seed, int cases) {
    if (command == "eval") return cmd_eval(payload);
    if (command == "factor") return cmd_factor(payload);
    if (command == "rewrite") return cmd_rewrite(payload);
    if (command == "monomialize") return cmd_monomialize(payload);
    if (command == "dilate") return cmd_dilate(payload);
    if (command == "lift") return cmd_lift(payload);
    if (command == "project") return cmd_project(payload);
    if (command == "check") return cmd_check(payload);
    if (command == "selftest") return selftest_report_to_json(run_selftest(seed, cases));
    throw Error(ErrKind::SchemaError, "unknown command: " + command);
}

ApiOutcome run_request(const std::string& command, const Json& payload, std::uint64_t seed,
                       int cases) {
    ApiOutcome out;
    try {
        Json result = run_command(command, payload, seed, cases);
        out.response["status"] = "ok";
        out.response["result"] = std::move(result);
    } catch (const Error& e) {
        out.response["status"] = "error";
        out.response["error"] = Json{{"kind", err_kind_name(e.kind())}, {"message", e.what()}};
        out.exit_code = e.kind() == ErrKind::SchemaError ? 2 : 1;
    } catch (const std::exception& e) {
        out.response["status"] = "error";
        out.response["error"] = Json{{"kind", "domain-error"}, {"message", e.what()}};
        out.exit_code = 1;
    }
    return out;
}

}  // namespace elemex

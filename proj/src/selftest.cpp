#include "elemex/selftest.hpp"

namespace elemex {

namespace {

struct Rng {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    std::uint64_t below(std::uint64_t m) { return next() % m; }
    Int small(int radius = 4) { return Int(static_cast<long>(below(2 * radius + 1))) - radius; }
};

std::uint64_t sub_seed(std::uint64_t master, const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ master;
}

void fail(SuiteReport& rep, int case_no, Json detail) {
    Json f;
    f["case"] = case_no;
    f["detail"] = std::move(detail);
    rep.failures.push_back(f.dump());
}

void guard(SuiteReport& rep, int case_no, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        fail(rep, case_no, Json{{"error", err_kind_name(e.kind())}, {"message", e.what()}});
    } catch (const std::exception& e) {
        fail(rep, case_no, Json{{"error", "exception"}, {"message", e.what()}});
    }
}

std::pair<std::size_t, std::size_t> random_position(Rng& rng, GroupKind kind, std::size_t n) {
    for (;;) {
        std::size_t i = 1 + rng.below(n), j = 1 + rng.below(n);
        if (i == j) continue;
        if (kind == GroupKind::Orthogonal && i == sigma(j)) continue;
        return {i, j};
    }
}

SuiteReport suite_form_preservation(std::uint64_t seed, int cases) {
    SuiteReport rep{"form-preservation", cases, {}};
    Rng rng{seed};
    Ring z5 = integers_mod(5), q = rationals();
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            const Ring& r = rng.below(2) ? z5 : q;
            GroupKind kind = rng.below(2) ? GroupKind::Symplectic : GroupKind::Orthogonal;
            std::size_t n = rng.below(2) ? 4 : 6;
            auto [i, j] = random_position(rng, kind, n);
            Elem z = from_int(r, rng.small());
            Matrix m = generator_matrix(make_absolute(kind, n, i, j, z));
            Matrix psi = form_matrix(kind, n / 2, r);
            if (!mat_eq(mat_mul(mat_mul(transpose(m), psi), m), psi))
                fail(rep, t,
                     Json{{"kind", group_kind_name(kind)},
                          {"n", n},
                          {"i", i},
                          {"j", j},
                          {"z", elem_to_json(z)}});
        });
    return rep;
}

SuiteReport suite_parameter_splitting(std::uint64_t seed, int cases) {
    SuiteReport rep{"parameter-splitting", cases, {}};
    Rng rng{seed};
    Ring z5 = integers_mod(5), q = rationals();
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            const Ring& r = rng.below(2) ? z5 : q;
            GroupKind kind = static_cast<GroupKind>(rng.below(3));
            std::size_t n = kind == GroupKind::Linear ? 3 : 4 + 2 * rng.below(2);
            auto [i, j] = random_position(rng, kind, n);
            // canonicalization may adjust the stored parameter for i > j,
            // so split against the canonical g.z
            Generator g = make_absolute(kind, n, i, j, from_int(r, rng.small()));
            Elem x = from_int(r, rng.small()), y = sub(g.z, x);
            Word w = split_parameter(g, x, y);
            if (!mat_eq(eval_word(w), generator_matrix(g)))
                fail(rep, t,
                     Json{{"kind", group_kind_name(kind)},
                          {"n", n},
                          {"i", i},
                          {"j", j},
                          {"x", elem_to_json(x)},
                          {"y", elem_to_json(y)}});
        });
    return rep;
}

SuiteReport suite_excision_ring(std::uint64_t seed, int cases) {
    SuiteReport rep{"excision-ring", cases, {}};
    Rng rng{seed};
    Ring zz = integers(), z7 = integers_mod(7), zx = polynomial_ring(integers(), {"X"});
    Elem x = variable(zx, "X");
    std::vector<std::pair<Ring, IdealPtr>> bases = {
        {zz, make_ideal(zz, {from_int(zz, 3)})},
        {z7, make_ideal(z7, {from_int(z7, 3)})},
        {zx, make_ideal(zx, {x})},
        {zx, make_ideal(zx, {add(mul(from_int(zx, 2), x), one(zx))})},
    };
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            auto& [base, ideal] = bases[rng.below(bases.size())];
            Ring e = excision_ring(base, ideal);
            auto rand_elem = [&] {
                return make_excision(e, from_int(base, rng.small()),
                                     ideal_gen_multiple(ideal, 0, from_int(base, rng.small())));
            };
            Elem a = rand_elem(), b = rand_elem(), c = rand_elem();
            bool ok = eq(add(a, b), add(b, a)) && eq(mul(a, b), mul(b, a)) &&
                      eq(add(add(a, b), c), add(a, add(b, c))) &&
                      eq(mul(mul(a, b), c), mul(a, mul(b, c))) &&
                      eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c))) &&
                      eq(phi(mul(a, b)), mul(phi(a), phi(b))) &&
                      eq(phi(add(a, b)), add(phi(a), phi(b))) &&
                      eq(add(a, zero(e)), a) && eq(mul(a, one(e)), a);
            if (!ok)
                fail(rep, t, Json{{"a", elem_to_json(a)}, {"b", elem_to_json(b)}});
            // word lift / project round trip
            std::size_t ri = 1 + rng.below(3), rj = 1 + rng.below(3);
            if (ri == rj) rj = 1 + rj % 3;
            Generator rel = make_relative(GroupKind::Linear, 3, ri, rj,
                                          from_int(base, rng.small()),
                                          ideal_gen_multiple(ideal, 0, from_int(base, rng.small())));
            Word w = word_of(rel);
            Word back = project_word(lift_word(w, ideal), ideal);
            if (!mat_eq(eval_word(back), eval_word(w)))
                fail(rep, t, Json{{"round-trip", "word"}, {"f", elem_to_json(rel.z)}});
        });
    return rep;
}

SuiteReport suite_rank_one(std::uint64_t seed, int cases) {
    SuiteReport rep{"rank-one-factorization", cases, {}};
    Rng rng{seed};
    Ring zz = integers();
    Ring qx = polynomial_ring(rationals(), {"X"});
    auto i3 = make_ideal(zz, {from_int(zz, 3)});
    auto ix = make_ideal(qx, {variable(qx, "X")});
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            GroupKind kind = static_cast<GroupKind>(rng.below(3));
            std::size_t n = kind == GroupKind::Linear ? 3 + rng.below(2) : 4 + 2 * rng.below(2);
            bool poly = rng.below(2) == 0;
            const Ring& r = poly ? qx : zz;
            const IdealPtr& ideal = poly ? ix : i3;
            Word eps = make_word(r, kind, n);
            std::size_t nf = rng.below(5);  // up to four relative factors
            for (std::size_t q = 0; q < nf; ++q) {
                auto [i, j] = random_position(rng, kind, n);
                word_append(eps, make_relative(kind, n, i, j, from_int(r, rng.small(2)),
                                               ideal_gen_multiple(ideal, 0,
                                                                  from_int(r, rng.small(1)))));
            }
            Matrix e = eval_word(eps);
            std::vector<Elem> vent;
            for (std::size_t i = 0; i < n; ++i) vent.push_back(e.at(i, 0));
            Vector v = make_vector(r, vent);
            Vector u = kind == GroupKind::Linear ? v : tilde(v, kind);
            std::size_t j = 1 + rng.below(n), k = 1 + rng.below(n);
            if (j == k || (kind == GroupKind::Orthogonal && k == sigma(j))) return;
            Elem c = from_int(r, rng.small(2));
            std::vector<Elem> went(n, zero(r));
            went[k - 1] = mul(mul(c, u.entries[j - 1]), ideal->gens[0]);
            went[j - 1] = neg(mul(mul(c, u.entries[k - 1]), ideal->gens[0]));
            Vector w = make_vector(r, std::move(went));
            auto cert = factor_rank_one(eps, w, ideal);
            for (const auto& [name, pass] : cert.checks)
                if (!pass) fail(rep, t, Json{{"check", name}});
            Matrix target = mat_add(identity_matrix(r, n), m_update(v, w, kind));
            if (!mat_eq(eval_word(cert.output), target))
                fail(rep, t, Json{{"check", "oracle-evaluation"}});
        });
    return rep;
}

SuiteReport suite_conjugation(std::uint64_t seed, int cases) {
    SuiteReport rep{"conjugation-rewrite", cases, {}};
    Rng rng{seed};
    Ring r = polynomial_ring(rationals(), {"X", "Y", "Z"});
    Elem X = variable(r, "X"), Y = variable(r, "Y"), Z = variable(r, "Z");
    auto iy = make_ideal(r, {Y});
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            GroupKind kind = static_cast<GroupKind>(rng.below(3));
            std::size_t n = kind == GroupKind::Linear     ? 3 + rng.below(2)
                            : kind == GroupKind::Symplectic ? 4 + 2 * rng.below(2)
                                                            : 6;
            std::uint32_t depth = static_cast<std::uint32_t>(rng.below(3));  // r in {0,1,2}
            auto [ii, jj] = random_position(rng, kind, n);
            Elem a = mul(mul(pow(X, 1u << depth), Y), from_int(r, 1 + rng.below(3)));
            Generator inner = make_absolute(kind, n, ii, jj, a);
            Word eps = make_word(r, kind, n);
            for (std::uint32_t q = 0; q < depth; ++q) {
                auto [p, s] = random_position(rng, kind, n);
                Elem par = from_int(r, rng.small(2));
                if (rng.below(2)) par = mul(par, Z);
                word_append(eps, make_absolute(kind, n, p, s, par));
            }
            // budget: inner divisible by X^{2^depth}, m = ... use m such that
            // 2^depth * m <= 2^depth, i.e. m = 1 requires X^{2^depth}
            auto cert = word_conjugate_rewrite(eps, inner, 1, iy, "X");
            for (const auto& [name, pass] : cert.checks)
                if (!pass) fail(rep, t, Json{{"check", name}});
            Matrix em = eval_word(eps);
            Matrix target = mat_mul(mat_mul(em, generator_matrix(inner)), *em.inverse_witness);
            if (!mat_eq(eval_word(cert.output), target))
                fail(rep, t, Json{{"check", "oracle-evaluation"}});
            std::size_t vx = var_index(r, "X");
            for (const auto& [g, e] : cert.output.factors)
                if (!divisible_by_var_power(g.z, vx, 1))
                    fail(rep, t, Json{{"check", "divisibility"}});
        });
    return rep;
}

SuiteReport suite_monomialization(std::uint64_t seed, int cases) {
    SuiteReport rep{"monomialization", cases, {}};
    Rng rng{seed};
    Ring zz = integers();
    auto i3 = make_ideal(zz, {from_int(zz, 3)});
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            GroupKind kind = rng.below(2) ? GroupKind::Linear : GroupKind::Symplectic;
            std::size_t n = kind == GroupKind::Linear ? 3 : 4;
            Word eps = make_word(zz, kind, n);
            std::uint32_t expect_d = 1;
            std::uint64_t shape = rng.below(25);
            if (shape == 0) {
                auto [i, j] = random_position(rng, kind, n);
                word_append(eps, make_relative(kind, n, i, j, from_int(zz, rng.small(1)),
                                               ideal_gen_multiple(i3, 0, one(zz))));
                expect_d = 8;
            } else if (shape < 12) {
                auto [i, j] = random_position(rng, kind, n);
                word_append(eps, make_absolute(kind, n, i, j, from_int(zz, rng.small(2))));
                expect_d = 2;
            }
            Matrix e = eval_word(eps);
            std::vector<Elem> vent;
            for (std::size_t i = 0; i < n; ++i) vent.push_back(e.at(i, 0));
            Vector v = make_vector(zz, vent);
            Vector u = kind == GroupKind::Linear ? v : tilde(v, kind);
            std::size_t j = 1 + rng.below(n), k = 1 + rng.below(n);
            if (j == k) return;
            std::vector<Elem> went(n, zero(zz));
            went[k - 1] = mul(from_int(zz, 3), u.entries[j - 1]);
            went[j - 1] = neg(mul(from_int(zz, 3), u.entries[k - 1]));
            Vector w = make_vector(zz, std::move(went));
            auto cert = monomialize(eps, w, i3, "X");
            for (const auto& [name, pass] : cert.checks)
                if (!pass) fail(rep, t, Json{{"check", name}});
            if (cert.d != expect_d)
                fail(rep, t, Json{{"check", "exponent"}, {"d", cert.d}, {"expect", expect_d}});
        });
    return rep;
}

SuiteReport suite_dilation(std::uint64_t seed, int cases) {
    SuiteReport rep{"dilation", cases, {}};
    Rng rng{seed};
    Ring zz = integers();
    for (int t = 0; t < cases; ++t)
        guard(rep, t, [&] {
            int sv = rng.below(2) ? 2 : 3;
            Elem s = from_int(zz, sv);
            Ring zs = localized_ring(zz, s);
            Ring zsx = polynomial_ring(zs, {"X"});
            Elem X = variable(zsx, "X");
            IdealPtr is = make_ideal(zs, {from_int(zs, 5 - sv)});  // (3) at s=2, (2) at s=3
            IdealPtr isx = extend_ideal(is, zsx);
            Word eps = make_word(zsx, GroupKind::Linear, 3);
            std::uint32_t d = 1;
            if (rng.below(3) == 0) {
                auto [p, q] = random_position(rng, GroupKind::Linear, 3);
                word_append(eps, make_absolute(GroupKind::Linear, 3, p, q,
                                               from_int(zsx, rng.small(2))));
                d = 2;
            }
            auto [i, j] = random_position(rng, GroupKind::Linear, 3);
            std::uint32_t kdenom = static_cast<std::uint32_t>(rng.below(2));
            Elem coeff = embed(make_localized(zs, from_int(zz, 1 + rng.below(3)), kdenom), zsx);
            IdealElem wit = ideal_gen_multiple(isx, 0, mul(X, coeff));
            ConjBlock blk{eps, make_absolute(GroupKind::Linear, 3, i, j,
                                             ideal_elem_value(wit)),
                          wit};
            auto res = dilate({blk}, is, d);
            for (const auto& [name, pass] : res.checks)
                if (!pass) fail(rep, t, Json{{"check", name}});
            if (!eq(res.b, pow(s, res.l * d)))
                fail(rep, t, Json{{"check", "multiplier"}, {"b", elem_to_json(res.b)}});
        });
    return rep;
}

SuiteReport suite_degenerate(std::uint64_t seed, int /*cases*/) {
    SuiteReport rep{"degenerate-inputs", 0, {}};
    (void)seed;
    int t = 0;
    auto step = [&](const char* name, const std::function<bool()>& body) {
        ++rep.cases;
        guard(rep, t, [&] {
            if (!body()) fail(rep, t, Json{{"battery", name}});
        });
        ++t;
    };
    Ring zz = integers();
    step("empty-word-identity", [&] {
        for (auto [kind, n] : std::initializer_list<std::pair<GroupKind, std::size_t>>{
                 {GroupKind::Linear, 3}, {GroupKind::Symplectic, 4}, {GroupKind::Orthogonal, 4}})
            if (!is_identity(eval_word(make_word(zz, kind, n)))) return false;
        return true;
    });
    step("zero-vector-empty-factorization", [&] {
        auto i3 = make_ideal(zz, {from_int(zz, 3)});
        Vector w = make_vector(zz, {zero(zz), zero(zz), zero(zz)});
        return factor_rank_one(make_word(zz, GroupKind::Linear, 3), w, i3).output.factors.empty();
    });
    step("unit-ideal-recovers-absolute-case", [&] {
        auto unit = make_ideal(zz, {one(zz)});
        Matrix m = generator_matrix(
            make_absolute(GroupKind::Linear, 3, 1, 2, from_int(zz, 7)));
        return check_relative(m, unit).status == Check::True;
    });
    step("zero-ideal-rejects-nonidentity", [&] {
        auto zi = make_ideal(zz, {zero(zz)});
        Matrix id = identity_matrix(zz, 3);
        Matrix m = generator_matrix(
            make_absolute(GroupKind::Linear, 3, 1, 2, from_int(zz, 7)));
        return check_relative(id, zi).status == Check::True &&
               check_relative(m, zi).status == Check::False;
    });
    step("zero-parameter-merges-away", [&] {
        Generator g = make_absolute(GroupKind::Linear, 3, 1, 2, zero(zz));
        return merge_adjacent(word_of(g)).factors.empty();
    });
    step("word-times-inverse-is-identity", [&] {
        Word w = word_of(make_absolute(GroupKind::Symplectic, 4, 1, 3, from_int(zz, 2)));
        return is_identity(eval_word(word_concat(w, invert_word(w))));
    });
    return rep;
}

using SuiteFn = SuiteReport (*)(std::uint64_t, int);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"form-preservation", suite_form_preservation},
        {"parameter-splitting", suite_parameter_splitting},
        {"excision-ring", suite_excision_ring},
        {"rank-one-factorization", suite_rank_one},
        {"conjugation-rewrite", suite_conjugation},
        {"monomialization", suite_monomialization},
        {"dilation", suite_dilation},
        {"degenerate-inputs", suite_degenerate},
    };
    return reg;
}

}  // namespace

std::size_t SelfTestReport::total_failures() const {
    std::size_t n = 0;
    for (const auto& s : suites) n += s.failures.size();
    return n;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int cases) {
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(sub_seed(seed, n), cases);
    throw Error(ErrKind::Domain, "unknown suite: " + name);
}

SelfTestReport run_selftest(std::uint64_t seed, int cases) {
    SelfTestReport out;
    out.seed = seed;
    out.cases_per_suite = cases;
    for (const auto& [name, fn] : registry()) out.suites.push_back(fn(sub_seed(seed, name), cases));
    return out;
}

Json selftest_report_to_json(const SelfTestReport& r) {
    Json suites = Json::array();
    for (const auto& s : r.suites) {
        Json sj;
        sj["name"] = s.name;
        sj["cases"] = s.cases;
        Json fs = Json::array();
        for (const auto& f : s.failures) fs.push_back(Json::parse(f));
        sj["failures"] = std::move(fs);
        suites.push_back(std::move(sj));
    }
    Json j;
    j["seed"] = std::to_string(r.seed);
    j["cases-per-suite"] = r.cases_per_suite;
    j["suites"] = std::move(suites);
    j["total-failures"] = r.total_failures();
    return j;
}

}  // namespace elemex

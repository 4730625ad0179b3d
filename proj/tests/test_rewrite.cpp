#include <doctest.h>

#include "elemex/rewrite.hpp"

using namespace elemex;

namespace {

struct Fixture {
    Ring r = polynomial_ring(rationals(), {"X", "Y", "Z"});
    Elem X = variable(r, "X");
    Elem Y = variable(r, "Y");
    Elem Z = variable(r, "Z");
    IdealPtr iy = make_ideal(r, {Y});
};

Matrix conj_target(const Generator& outer, const Generator& inner) {
    return mat_mul(mat_mul(generator_matrix(outer), generator_matrix(inner)),
                   generator_inverse_matrix(outer));
}

void check_cert(const RewriteCertificate& c) {
    for (const auto& [name, pass] : c.checks) CHECK_MESSAGE(pass, name);
    REQUIRE(c.witnesses.size() == c.output.factors.size());
    for (std::size_t i = 0; i < c.witnesses.size(); ++i)
        if (c.witnesses[i])
            CHECK(eq(ideal_elem_value(*c.witnesses[i]), c.output.factors[i].first.z));
}

}  // namespace

TEST_CASE("conjugate rewrite: disjoint indices commute") {
    Fixture f;
    Elem a = mul(mul(f.X, f.X), f.Y);  // X^2 * Y
    Generator outer = make_absolute(GroupKind::Linear, 4, 1, 2, f.Z);
    Generator inner = make_absolute(GroupKind::Linear, 4, 3, 4, a);
    auto c = conjugate_rewrite(outer, inner, 1, f.iy, "X");
    check_cert(c);
    REQUIRE(c.output.factors.size() == 1);
    CHECK(eq(c.output.factors[0].first.z, a));
    CHECK(c.carriers == 0);
    CHECK(mat_eq(eval_word(c.output), conj_target(outer, inner)));
}

TEST_CASE("conjugate rewrite: shared index produces the commutator factor") {
    Fixture f;
    Elem a = mul(mul(f.X, f.X), f.Y);
    Generator outer = make_absolute(GroupKind::Linear, 3, 1, 3, f.Z);
    Generator inner = make_absolute(GroupKind::Linear, 3, 3, 2, a);
    auto c = conjugate_rewrite(outer, inner, 1, f.iy, "X");
    check_cert(c);
    REQUIRE(c.output.factors.size() == 2);
    CHECK(c.carriers == 0);
    // ge_12(Z*X^2*Y) then ge_32(X^2*Y)
    CHECK(c.output.factors[0].first.i == 1);
    CHECK(c.output.factors[0].first.j == 2);
    CHECK(eq(c.output.factors[0].first.z, mul(f.Z, a)));
    CHECK(eq(c.output.factors[1].first.z, a));
    CHECK(mat_eq(eval_word(c.output), conj_target(outer, inner)));
}

TEST_CASE("conjugate rewrite: opposed case splits through an auxiliary index") {
    Fixture f;
    Elem a = mul(mul(f.X, f.X), f.Y);
    Generator outer = make_absolute(GroupKind::Linear, 3, 2, 1, f.Z);
    Generator inner = make_absolute(GroupKind::Linear, 3, 1, 2, a);
    auto c = conjugate_rewrite(outer, inner, 1, f.iy, "X");
    check_cert(c);
    CHECK(c.output.factors.size() >= 4);
    CHECK(c.output.factors.size() <= 12);
    CHECK(c.carriers >= 1);  // budget carriers X, Z*X cannot lie in (Y)
    std::size_t vx = var_index(f.r, "X");
    for (const auto& [g, e] : c.output.factors) CHECK(divisible_by_var_power(g.z, vx, 1));
    CHECK(mat_eq(eval_word(c.output), conj_target(outer, inner)));
}

TEST_CASE("conjugate rewrite is total over all index configurations") {
    Fixture f;
    auto all_positions = [&](GroupKind kind, std::size_t n) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                if (i == j) continue;
                if (kind == GroupKind::Orthogonal && i == sigma(j)) continue;
                out.emplace_back(i, j);
            }
        return out;
    };
    auto run = [&](GroupKind kind, std::size_t n, bool opposed_must_fail) {
        Elem a = mul(mul(f.X, f.X), f.Y);
        for (auto [p, q] : all_positions(kind, n))
            for (auto [i, j] : all_positions(kind, n)) {
                Generator outer = make_absolute(kind, n, p, q, f.Z);
                Generator inner = make_absolute(kind, n, i, j, a);
                bool opposed = false;
                if (kind == GroupKind::Linear)
                    opposed = (p == j && q == i);
                else
                    opposed = (p == j && q == i) || (p == sigma(i) && q == sigma(j));
                if (opposed && opposed_must_fail) {
                    CHECK_THROWS_AS(conjugate_rewrite(outer, inner, 1, f.iy, "X"), Error);
                    continue;
                }
                auto c = conjugate_rewrite(outer, inner, 1, f.iy, "X");
                for (const auto& [name, pass] : c.checks) CHECK_MESSAGE(pass, name);
                if (!opposed) CHECK(c.carriers == 0);
                CHECK(mat_eq(eval_word(c.output), conj_target(outer, inner)));
            }
    };
    run(GroupKind::Linear, 3, false);
    run(GroupKind::Linear, 4, false);
    run(GroupKind::Symplectic, 4, false);
    // EO_4 has no auxiliary hyperbolic pair: the opposed case must refuse
    run(GroupKind::Orthogonal, 4, true);
    run(GroupKind::Symplectic, 6, false);
    run(GroupKind::Orthogonal, 6, false);
}

TEST_CASE("word conjugate rewrite halves the exponent budget per layer") {
    Fixture f;
    std::size_t vx = var_index(f.r, "X");

    SUBCASE("r = 0 leaves the generator unchanged") {
        Word eps = make_word(f.r, GroupKind::Linear, 3);
        Generator inner = make_absolute(GroupKind::Linear, 3, 1, 2, mul(f.X, f.Y));
        auto c = word_conjugate_rewrite(eps, inner, 1, f.iy, "X");
        check_cert(c);
        REQUIRE(c.output.factors.size() == 1);
        CHECK(eq(c.output.factors[0].first.z, mul(f.X, f.Y)));
    }

    SUBCASE("r = 1 matches conjugate_rewrite") {
        Generator g = make_absolute(GroupKind::Linear, 3, 2, 3, f.Z);
        Word eps = word_of(g);
        Elem a = mul(mul(f.X, f.X), f.Y);
        Generator inner = make_absolute(GroupKind::Linear, 3, 3, 1, a);
        auto c1 = word_conjugate_rewrite(eps, inner, 1, f.iy, "X");
        auto c2 = conjugate_rewrite(g, inner, 1, f.iy, "X");
        check_cert(c1);
        REQUIRE(c1.output.factors.size() == c2.output.factors.size());
        for (std::size_t t = 0; t < c1.output.factors.size(); ++t)
            CHECK(eq(c1.output.factors[t].first.z, c2.output.factors[t].first.z));
    }

    SUBCASE("r = 2 random words, all kinds") {
        std::uint64_t s = 77;
        auto rnd = [&]() {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            return s >> 33;
        };
        for (int t = 0; t < 30; ++t) {
            GroupKind kind = static_cast<GroupKind>(rnd() % 3);
            std::size_t n = (kind == GroupKind::Linear) ? 3 : 6;
            Word eps = make_word(f.r, kind, n);
            for (int k = 0; k < 2; ++k) {
                for (;;) {
                    std::size_t i = 1 + rnd() % n, j = 1 + rnd() % n;
                    if (i == j || (kind == GroupKind::Orthogonal && i == sigma(j))) continue;
                    Elem par = from_int(f.r, Int(rnd() % 5) - 2);
                    if (rnd() % 2) par = mul(par, f.Z);
                    word_append(eps, make_absolute(kind, n, i, j, par));
                    break;
                }
            }
            std::size_t i = 1 + rnd() % n, j = 1 + rnd() % n;
            if (i == j || (kind == GroupKind::Orthogonal && i == sigma(j))) continue;
            Elem a = mul(pow(f.X, 4), f.Y);  // divisible by X^{2^2 * 1}
            Generator inner = make_absolute(kind, n, i, j, a);
            auto c = word_conjugate_rewrite(eps, inner, 1, f.iy, "X");
            for (const auto& [name, pass] : c.checks) CHECK_MESSAGE(pass, name);
            for (const auto& [g, e] : c.output.factors)
                CHECK(divisible_by_var_power(g.z, vx, 1));
            Matrix em = eval_word(eps);
            Matrix target = mat_mul(mat_mul(em, generator_matrix(inner)), *em.inverse_witness);
            CHECK(mat_eq(eval_word(c.output), target));
        }
    }

    SUBCASE("insufficient budget is refused") {
        Generator g = make_absolute(GroupKind::Linear, 3, 2, 3, f.Z);
        Word eps = word_of(g);
        Generator inner = make_absolute(GroupKind::Linear, 3, 3, 1, mul(f.X, f.Y));
        CHECK_THROWS_AS(word_conjugate_rewrite(eps, inner, 1, f.iy, "X"), Error);
    }
}

TEST_CASE("flatten expands relative factors and folds exponents") {
    Fixture f;
    auto i3 = make_ideal(f.r, {f.Y});
    Generator rel = make_relative(GroupKind::Linear, 3, 1, 2, f.Z,
                                  ideal_gen_multiple(i3, 0, f.X));
    Word w = word_of(rel, -1);
    Word flat = flatten_word(w);
    REQUIRE(flat.factors.size() == 3);
    CHECK(mat_eq(eval_word(flat), generator_inverse_matrix(rel)));
}

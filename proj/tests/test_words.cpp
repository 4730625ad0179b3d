#include <doctest.h>

#include "elemex/words.hpp"

using namespace elemex;

namespace {

std::uint64_t wstate = 0;
std::uint64_t wrnd() {
    wstate = wstate * 6364136223846793005ull + 1442695040888963407ull;
    return wstate >> 33;
}

Generator random_absolute(const Ring& r, GroupKind kind, std::size_t n) {
    for (;;) {
        std::size_t i = 1 + wrnd() % n, j = 1 + wrnd() % n;
        if (i == j) continue;
        if (kind == GroupKind::Orthogonal && i == sigma(j)) continue;
        return make_absolute(kind, n, i, j, from_int(r, Int(wrnd() % 9) - 4));
    }
}

Word random_word(const Ring& r, GroupKind kind, std::size_t n, std::size_t len) {
    Word w = make_word(r, kind, n);
    for (std::size_t t = 0; t < len; ++t)
        word_append(w, random_absolute(r, kind, n), (wrnd() % 2) ? 1 : -1);
    return w;
}

}  // namespace

TEST_CASE("generator matrices match the definitions") {
    Ring z = integers();
    Matrix g = generator_matrix(make_absolute(GroupKind::Linear, 3, 1, 3, from_int(z, 5)));
    Matrix expect = identity_matrix(z, 3);
    expect.at(0, 2) = from_int(z, 5);
    CHECK(mat_eq(g, expect));

    Elem v = from_int(z, 7);
    Matrix s13 = generator_matrix(make_absolute(GroupKind::Symplectic, 4, 1, 3, v));
    Matrix e13 = identity_matrix(z, 4);
    e13.at(0, 2) = v;
    e13.at(3, 1) = neg(v);
    CHECK(mat_eq(s13, e13));

    Matrix s21 = generator_matrix(make_absolute(GroupKind::Symplectic, 4, 2, 1, v));
    Matrix e21 = identity_matrix(z, 4);
    e21.at(1, 0) = v;
    CHECK(mat_eq(s21, e21));

    SUBCASE("canonical representative preserves the matrix") {
        for (int t = 0; t < 100; ++t) {
            for (GroupKind k : {GroupKind::Symplectic, GroupKind::Orthogonal}) {
                std::size_t n = 4 + 2 * (wrnd() % 2);
                std::size_t i = 1 + wrnd() % n, j = 1 + wrnd() % n;
                if (i == j || i == sigma(j)) continue;
                Elem p = from_int(z, Int(wrnd() % 9) - 4);
                Matrix direct = identity_matrix(z, n);
                direct.at(i - 1, j - 1) = add(direct.at(i - 1, j - 1), p);
                Elem second = (k == GroupKind::Orthogonal)
                                  ? neg(p)
                                  : (((i + j) % 2 == 0) ? neg(p) : p);
                direct.at(sigma(j) - 1, sigma(i) - 1) =
                    add(direct.at(sigma(j) - 1, sigma(i) - 1), second);
                Generator gg = make_absolute(k, n, i, j, p);
                CHECK(gg.i < gg.j);
                CHECK(mat_eq(generator_matrix(gg), direct));
            }
        }
    }
    CHECK_THROWS_AS(make_absolute(GroupKind::Orthogonal, 4, 1, 2, v), Error);
    CHECK_THROWS_AS(make_absolute(GroupKind::Linear, 3, 1, 1, v), Error);
}

TEST_CASE("every generator matrix lies in its group") {
    wstate = 11;
    Ring z7 = integers_mod(7);
    int cases = 0;
    while (cases < 500) {
        for (GroupKind k : {GroupKind::Linear, GroupKind::Symplectic, GroupKind::Orthogonal}) {
            std::size_t n = (k == GroupKind::Linear) ? 3 + wrnd() % 2 : 4 + 2 * (wrnd() % 2);
            Generator g = random_absolute(z7, k, n);
            CHECK(check_group_membership(generator_matrix(g), k) == Check::True);
            CHECK(is_identity(mat_mul(generator_matrix(g), generator_inverse_matrix(g))));
            ++cases;
        }
    }
}

TEST_CASE("word evaluation and inversion") {
    Ring z = integers();
    Word empty = make_word(z, GroupKind::Linear, 3);
    CHECK(is_identity(eval_word(empty)));

    Word w = make_word(z, GroupKind::Linear, 3);
    word_append(w, make_absolute(GroupKind::Linear, 3, 1, 2, from_int(z, 2)));
    word_append(w, make_absolute(GroupKind::Linear, 3, 1, 2, from_int(z, 3)));
    Matrix expect = identity_matrix(z, 3);
    expect.at(0, 1) = from_int(z, 5);
    CHECK(mat_eq(eval_word(w), expect));

    CHECK(invert_word(empty).factors.empty());
    Matrix inv1 = eval_word(invert_word(word_of(make_absolute(GroupKind::Linear, 3, 1, 2, from_int(z, 4)))));
    Matrix em = identity_matrix(z, 3);
    em.at(0, 1) = from_int(z, -4);
    CHECK(mat_eq(inv1, em));

    wstate = 5;
    Ring z5 = integers_mod(5);
    for (int t = 0; t < 500; ++t) {
        GroupKind k = static_cast<GroupKind>(wrnd() % 3);
        std::size_t n = (k == GroupKind::Linear) ? 3 : 4;
        Word rw = random_word(z5, k, n, 1 + wrnd() % 4);
        CHECK(is_identity(mat_mul(eval_word(rw), eval_word(invert_word(rw)))));
    }
}

TEST_CASE("splitting and merging") {
    Ring zx = polynomial_ring(integers(), {"X"});
    Elem X = variable(zx, "X");
    Generator g = make_absolute(GroupKind::Linear, 3, 1, 2, add(X, one(zx)));
    Word s = split_parameter(g, X, one(zx));
    REQUIRE(s.factors.size() == 2);
    CHECK(eq(s.factors[0].first.z, X));
    CHECK(mat_eq(eval_word(s), generator_matrix(g)));

    Ring z = integers();
    Word cancel = make_word(z, GroupKind::Linear, 3);
    word_append(cancel, make_absolute(GroupKind::Linear, 3, 1, 2, from_int(z, 2)));
    word_append(cancel, make_absolute(GroupKind::Linear, 3, 1, 2, from_int(z, -2)));
    CHECK(merge_adjacent(cancel).factors.empty());

    wstate = 17;
    for (int t = 0; t < 200; ++t) {
        GroupKind k = static_cast<GroupKind>(wrnd() % 3);
        std::size_t n = (k == GroupKind::Linear) ? 3 : 4;
        Word rw = random_word(z, k, n, 1 + wrnd() % 5);
        CHECK(mat_eq(eval_word(merge_adjacent(rw)), eval_word(rw)));
    }

    SUBCASE("splitting across both symplectic branches") {
        Elem a = from_int(z, 3), b = from_int(z, 4);
        for (auto [i, j] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {1, 3}}) {
            Generator sg = make_absolute(GroupKind::Symplectic, 4, i, j, add(a, b));
            CHECK(mat_eq(eval_word(split_parameter(sg, a, b)), generator_matrix(sg)));
        }
    }
}

TEST_CASE("shuffle identity") {
    Ring z = integers();
    wstate = 23;
    for (int t = 0; t < 100; ++t) {
        GroupKind k = static_cast<GroupKind>(wrnd() % 3);
        std::size_t n = (k == GroupKind::Linear) ? 3 : 4;
        std::size_t np = 1 + wrnd() % 5;
        std::vector<std::pair<Word, Word>> pairs;
        Word plain = make_word(z, k, n);
        for (std::size_t p = 0; p < np; ++p) {
            Word a = random_word(z, k, n, wrnd() % 3);
            Word b = random_word(z, k, n, wrnd() % 3);
            plain = word_concat(plain, word_concat(a, b));
            pairs.emplace_back(std::move(a), std::move(b));
        }
        Word out = shuffle(pairs);
        CHECK(mat_eq(eval_word(out), eval_word(plain)));
        // tail of the output is Prod a_i; conjugates come first
        bool all_b_empty = true;
        for (auto& [a, b] : pairs) all_b_empty &= b.factors.empty();
        if (all_b_empty) {
            Word merged = merge_adjacent(out);
            Word tail = make_word(z, k, n);
            for (auto& [a, b] : pairs) tail = word_concat(tail, a);
            CHECK(mat_eq(eval_word(merged), eval_word(tail)));
        }
    }
}

TEST_CASE("relative generators evaluate into the relative group") {
    Ring z = integers();
    auto i3 = make_ideal(z, {from_int(z, 3)});
    wstate = 31;
    for (int t = 0; t < 200; ++t) {
        GroupKind k = static_cast<GroupKind>(wrnd() % 3);
        std::size_t n = (k == GroupKind::Linear) ? 3 : 4;
        std::size_t i = 1 + wrnd() % n, j = 1 + wrnd() % n;
        if (i == j || (k == GroupKind::Orthogonal && i == sigma(j))) continue;
        Elem f = from_int(z, Int(wrnd() % 7) - 3);
        IdealElem h = ideal_gen_multiple(i3, 0, from_int(z, Int(wrnd() % 5) - 2));
        Generator g = make_relative(k, n, i, j, f, h);
        Matrix m = generator_matrix(g);
        CHECK(check_relative(m, i3).status == Check::True);
        CHECK(check_group_membership(m, k) == Check::True);
        CHECK(is_identity(mat_mul(m, generator_inverse_matrix(g))));
    }
}

TEST_CASE("commutator of relative word with absolute generator stays relative") {
    Ring z = integers();
    auto i3 = make_ideal(z, {from_int(z, 3)});
    wstate = 37;
    for (int t = 0; t < 100; ++t) {
        GroupKind k = static_cast<GroupKind>(wrnd() % 3);
        std::size_t n = (k == GroupKind::Linear) ? 3 : 4;
        Word rel = make_word(z, k, n);
        for (int f = 0; f < 2; ++f) {
            std::size_t i = 1 + wrnd() % n, j = 1 + wrnd() % n;
            if (i == j || (k == GroupKind::Orthogonal && i == sigma(j))) continue;
            word_append(rel, make_relative(k, n, i, j, from_int(z, Int(wrnd() % 5) - 2),
                                           ideal_gen_multiple(i3, 0, from_int(z, Int(wrnd() % 3) - 1))));
        }
        Generator g = random_absolute(z, k, n);
        Matrix gm = generator_matrix(g);
        Matrix em = eval_word(rel);
        Matrix comm = mat_mul(mat_mul(gm, em),
                              mat_mul(generator_inverse_matrix(g), *em.inverse_witness));
        CHECK(check_relative(comm, i3).status == Check::True);
        CHECK(check_group_membership(comm, k) == Check::True);
    }
}

TEST_CASE("lift and project round trips") {
    Ring z = integers();
    auto i3 = make_ideal(z, {from_int(z, 3)});

    SUBCASE("single relative generator, by hand") {
        Generator g = make_relative(GroupKind::Linear, 3, 1, 2, from_int(z, 2),
                                    ideal_gen_multiple(i3, 0, one(z)));
        Generator lg = lift_generator(g, i3);
        Ring e = lg.ring();
        REQUIRE(e->kind == RingKind::Excision);
        CHECK(eq(lg.z, embed(from_int(z, 2), e)));
        CHECK(eq(phi(ideal_elem_value(*lg.h)), from_int(z, 3)));
        // lifted generator is relative to 0 (+) I
        Matrix lm = generator_matrix(lg);
        CHECK(check_relative(lm, lg.h->ideal).status == Check::True);
    }

    SUBCASE("word round trips and eval commutation") {
        wstate = 41;
        for (int t = 0; t < 200; ++t) {
            GroupKind k = static_cast<GroupKind>(wrnd() % 3);
            std::size_t n = (k == GroupKind::Linear) ? 3 : 4;
            Word rel = make_word(z, k, n);
            for (int f = 0; f < 1 + int(wrnd() % 3); ++f) {
                std::size_t i = 1 + wrnd() % n, j = 1 + wrnd() % n;
                if (i == j || (k == GroupKind::Orthogonal && i == sigma(j))) continue;
                word_append(
                    rel,
                    make_relative(k, n, i, j, from_int(z, Int(wrnd() % 5) - 2),
                                  ideal_gen_multiple(i3, 0, from_int(z, Int(wrnd() % 3) - 1))),
                    (wrnd() % 2) ? 1 : -1);
            }
            Word lifted = lift_word(rel, i3);
            Word back = project_word(lifted, i3);
            REQUIRE(back.factors.size() == rel.factors.size());
            for (std::size_t f = 0; f < rel.factors.size(); ++f) {
                CHECK(eq(back.factors[f].first.z, rel.factors[f].first.z));
                CHECK(eq(ideal_elem_value(*back.factors[f].first.h),
                         ideal_elem_value(*rel.factors[f].first.h)));
                CHECK(back.factors[f].second == rel.factors[f].second);
            }
            CHECK(mat_eq(phi_matrix(eval_word(lifted)), eval_word(rel)));
        }
    }

    SUBCASE("matrix lift") {
        Matrix a = identity_matrix(z, 3);
        a.at(0, 1) = from_int(z, 3);
        Matrix ainv = identity_matrix(z, 3);
        ainv.at(0, 1) = from_int(z, -3);
        a = with_inverse_witness(a, ainv);
        Matrix la = lift_matrix(a, i3);
        Ring e = la.ring;
        REQUIRE(e->kind == RingKind::Excision);
        CHECK(eq(exc_data(la.at(0, 0)).r, one(z)));
        CHECK(is_zero(exc_data(la.at(0, 1)).r));
        CHECK(eq(ideal_elem_value(exc_data(la.at(0, 1)).i), from_int(z, 3)));
        CHECK(mat_eq(phi_matrix(la), a));
        CHECK(check_group_membership(la, GroupKind::Linear) == Check::True);

        wstate = 43;
        for (int t = 0; t < 100; ++t) {
            auto rel = [&]() {
                Word w = make_word(z, GroupKind::Linear, 3);
                for (int f = 0; f < 2; ++f) {
                    std::size_t i = 1 + wrnd() % 3, j = 1 + wrnd() % 3;
                    if (i == j) continue;
                    word_append(w, make_relative(GroupKind::Linear, 3, i, j,
                                                 from_int(z, Int(wrnd() % 5) - 2),
                                                 ideal_gen_multiple(i3, 0, from_int(z, Int(wrnd() % 3) - 1))));
                }
                return eval_word(w);
            };
            Matrix x = rel(), y = rel();
            CHECK(mat_eq(phi_matrix(mat_mul(lift_matrix(x, i3), lift_matrix(y, i3))),
                         mat_mul(x, y)));
        }
    }
}

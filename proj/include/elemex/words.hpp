#pragma once

// Symbolic words in elementary generators: evaluation, inversion, the
// parameter-splitting and shuffle identities, and the lift / projection
// between words over R and words over the excision ring R (+) I.

#include "elemex/forms.hpp"

namespace elemex {

namespace testing {
/// Fault-injection switch for the mutation-sensitivity suite: flips the
/// mirrored-entry sign of two-term generators. Never set in production.
extern bool flip_steinberg_sign;
}  // namespace testing

enum class GenShape { Absolute, Relative };

// Absolute: ge_ij(z) / se_ij(z) / oe_ij(z).
// Relative: ge_ij(f) . ge_ji(h) . ge_ij(-f) with h a witnessed ideal element.
struct Generator {
    GroupKind kind = GroupKind::Linear;
    GenShape shape = GenShape::Absolute;
    std::size_t n = 0;
    std::size_t i = 0, j = 0;  // 1-based
    Elem z;                    // parameter (Absolute) or f (Relative)
    std::optional<IdealElem> h;

    const Ring& ring() const { return z.ring; }
};

struct Word {
    Ring ring;
    GroupKind kind = GroupKind::Linear;
    std::size_t n = 0;
    std::vector<std::pair<Generator, int>> factors;  // exponent +1 / -1
};

/// Validates indices and, for two-term symplectic / orthogonal generators
/// with i > j, stores the canonical i < j representative (parameter
/// adjusted by the definition's symmetry).
Generator make_absolute(GroupKind kind, std::size_t n, std::size_t i, std::size_t j, Elem z);
Generator make_relative(GroupKind kind, std::size_t n, std::size_t i, std::size_t j, Elem f,
                        IdealElem h);

Word make_word(Ring ring, GroupKind kind, std::size_t n);
Word word_of(Generator g, int exponent = 1);
void word_append(Word& w, Generator g, int exponent = 1);
Word word_concat(const Word& a, const Word& b);

Matrix generator_matrix(const Generator& g);
Matrix generator_inverse_matrix(const Generator& g);

/// Left-to-right product; the result carries a verified inverse-witness.
Matrix eval_word(const Word& w);

Word invert_word(const Word& w);

/// ge_ij(x+y) -> ge_ij(x) . ge_ij(y); requires z = x + y exactly.
Word split_parameter(const Generator& g, const Elem& x, const Elem& y);

/// Collapses adjacent same-position same-exponent Absolute factors by
/// summing parameters and drops zero-parameter Absolute factors.
Word merge_adjacent(const Word& w);

/// Prod a_i b_i = Prod (r_i b_i r_i^-1) . Prod a_i with r_i = a_1...a_i.
Word shuffle(const std::vector<std::pair<Word, Word>>& pairs);

/// The ideal 0 (+) I inside R (+) I, generator k = (0 (+) g_k).
IdealPtr lift_ideal(const Ring& excision, const IdealPtr& ideal);
/// Transports a witness h = sum c_k g_k to (0 (+) h) = sum (c_k (+) 0)(0 (+) g_k).
IdealElem lift_witness(const IdealElem& w, const Ring& excision, const IdealPtr& lifted_ideal);

/// Relative(i,j,f,h) -> Relative(i,j,(f(+)0),(0(+)h)); Absolute parameters
/// must be decidably in I and become (0 (+) z).
Generator lift_generator(const Generator& g, const IdealPtr& ideal);
Word lift_word(const Word& w, const IdealPtr& ideal);

/// Entrywise lift of alpha in G(n,R,I): diagonal (1 (+) a_ii), off-diagonal
/// (0 (+) a_ij), using check_relative witnesses; requires an inverse-witness
/// on alpha so the lift passes the group check.
Matrix lift_matrix(const Matrix& alpha, const IdealPtr& ideal);

/// Applies phi to every parameter (coefficientwise through polynomial
/// layers); target_ideal rebinds Relative witnesses, defaulting to the
/// ideal with phi-projected generators.
Word project_word(const Word& w, const std::optional<IdealPtr>& target_ideal = std::nullopt);

/// phi applied through polynomial layers: Exc -> base, Poly(Exc) -> Poly(base).
Elem phi_deep(const Elem& e);
Matrix phi_matrix(const Matrix& m);

}  // namespace elemex

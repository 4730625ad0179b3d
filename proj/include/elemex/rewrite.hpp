#pragma once

// Conjugation rewriting: expresses ge_pq(Z) . ge_ij(X^{2m} h) . ge_pq(-Z)
// (and iterated conjugates by a word) as a flat product of elementary
// generators whose parameters are all divisible by X^m. Every output is
// re-evaluated and compared exactly against the target before being
// returned; a failed comparison raises RewriteFailure, never a wrong word.
//
// Parameters lying in the ideal carry explicit witnesses. The opposed case
// (p,q) = (j,i) forces "carrier" factors whose parameters are X^m times a
// non-ideal element; these are flagged per factor. The evaluated word is
// still congruent to the identity modulo the ideal whenever the inner
// parameter is.

#include "elemex/words.hpp"

namespace elemex {

struct CertCheck {
    std::string name;
    bool pass = false;
};

struct RewriteCertificate {
    Word output;
    // aligned with output.factors; nullopt marks a carrier factor whose
    // parameter does not lie in the ideal
    std::vector<std::optional<IdealElem>> witnesses;
    std::size_t carriers = 0;
    std::vector<CertCheck> checks;
};

/// Replaces each Relative factor by its three Absolute constituents and
/// folds exponents into parameters, leaving exponent-one Absolute factors.
Word flatten_word(const Word& w);

/// Conjugation of a single generator by a single generator, by case
/// analysis on the commutator: identity (commute), a peelable commutator
/// word (one shared index), or the opposed budget split. `var` names the
/// divisibility variable; the inner parameter must be divisible by var^{2m}.
RewriteCertificate conjugate_rewrite(const Generator& outer, const Generator& inner,
                                     std::uint32_t m, const IdealPtr& ideal,
                                     const std::string& var);

/// Iterated version: eps (absolute factors, length r) conjugating a
/// generator whose parameter is divisible by var^{2^r * m}; output
/// parameters divisible by var^m.
RewriteCertificate word_conjugate_rewrite(const Word& eps, const Generator& inner,
                                          std::uint32_t m, const IdealPtr& ideal,
                                          const std::string& var);

/// Greedy left-peeling of a matrix into elementary generators, with
/// bounded backtracking; nullopt when no factorization is found.
std::optional<Word> factor_unipotent(const Matrix& m, GroupKind kind, std::size_t depth_limit = 16);

}  // namespace elemex

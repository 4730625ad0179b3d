#pragma once

// Denominator clearing over localizations and the dilation pipeline: turns
// a word over R_s[X] of conjugate factors eps . ge_ij(X h(X)) . eps^{-1}
// into a word over R[X] realizing the same matrix with X scaled by a
// multiplier b in (s^l).

#include "elemex/factor.hpp"

namespace elemex {

/// Clears localization denominators from every parameter of a word over
/// (R_s)[vars] by substituting scale_var -> s^l * scale_var with l the
/// maximum denominator exponent, then strips the localization layer.
/// Localizing the result reproduces the scaled input exactly (verified).
/// Non-domain bases must supply the injectivity exponent k.
std::pair<Word, std::uint32_t> clear_denominators(const Word& w, const std::string& scale_var,
                                                  std::optional<std::uint32_t> k = std::nullopt);

/// Matrix version: entries over R_s must already be denominator-free
/// (no scaling variable is available); returns the preimage over R.
std::pair<Matrix, std::uint32_t> clear_denominators(const Matrix& m,
                                                    std::optional<std::uint32_t> k = std::nullopt);

struct DilationResult {
    Elem b;              // the dilation multiplier, b = s^(l*d) in (s^l)
    std::uint32_t l = 0; // max denominator exponent met during the rewrite
    Word word;           // over R[x], evaluates to the input at x -> b*x
    std::size_t carriers = 0;
    std::vector<CertCheck> checks;
};

/// blocks: conjugate factors over (R_s)[x], parameters of g divisible by x
/// and witnessed in the extension of ideal_s (an ideal of R_s). Pipeline:
/// lift into the excision ring, substitute x -> x*t^d, rewrite every block
/// until all parameters are divisible by t, scale t -> s^l*t, project,
/// delocalize, and substitute t = 1. Requires d >= 2^(flattened length)
/// for every block and a domain base.
DilationResult dilate(const std::vector<ConjBlock>& blocks, const IdealPtr& ideal_s,
                      std::uint32_t d, const std::string& tvar = "T");

}  // namespace elemex

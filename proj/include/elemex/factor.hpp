#pragma once

// Rank-one-update factorization: writes I_n + M(v,w) (v = eval(eps).e1,
// w in I^n witnessed, <v,w> = 0) as a product of conjugates
// eps . ge_1j(z_j) . eps^{-1}, and its monomialized polynomial variant
// I_n + X^d M(v,w) as a flat product with X-divisible parameters.

#include "elemex/rewrite.hpp"

namespace elemex {

// one conjugate factor eps . g . eps^{-1}
struct ConjBlock {
    Word eps;
    Generator g;
    std::optional<IdealElem> witness;  // for g's parameter
};

struct RankOneCertificate {
    Word output;  // flattened: eps-factors, g, inverse eps-factors, per block
    std::vector<ConjBlock> blocks;
    std::vector<CertCheck> checks;
};

/// Certified factorization of I_n + M(v,w), v = eval(eps).e1.
/// eps: word of Relative factors; w: fully witnessed, <v,w> = 0 exactly,
/// isotropic for the orthogonal kind. Computed twice (directly over R and
/// through the excision ring R (+) I followed by projection); the two
/// routes must agree factor by factor.
RankOneCertificate factor_rank_one(const Word& eps, const Vector& w, const IdealPtr& ideal);

struct MonomialCertificate {
    Word output;
    std::uint32_t d = 1;  // 2^(flattened length of eps), or the requested value
    std::size_t carriers = 0;
    std::vector<std::optional<IdealElem>> witnesses;  // aligned with output factors
    std::vector<CertCheck> checks;
};

/// Factors I_n + var^d M(v,w) over R[var] with every output parameter
/// divisible by var; d defaults to 2^r and any d_request >= 2^r is honored.
/// `var` must not collide with a variable of R.
MonomialCertificate monomialize(const Word& eps, const Vector& w, const IdealPtr& ideal,
                                const std::string& var, std::uint32_t d_request = 0);

}  // namespace elemex

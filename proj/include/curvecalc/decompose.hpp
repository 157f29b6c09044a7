#pragma once

#include <string>
#include <vector>

#include "curvecalc/word.hpp"

namespace curvecalc {

/// u ≃ g u1 u' w and v ≃ w v' v1 h.
struct SymmetricDecomposition {
    GroupElem g, h;
    Word u1, u_prime, w, v_prime, v1;
};

/// u ≃ u1 α⁻¹ s⁻¹, v ≃ s β v1, and the product reduces to u1 x v1.
struct TriangleDecomposition {
    Word u1, alpha, s, beta, v1, x;
    bool cancel = false;
};

/// Splits reduced u, v by tracking which letters of u0 v0 absorb which
/// during reduction. Throws CalcError("decomposition check failed") if the
/// result violates one of its defining predicates.
SymmetricDecomposition symmetric_decomposition(const Calculus& calc, const Word& u, const Word& v);

/// Names of the violated predicates; empty when the decomposition is valid.
std::vector<std::string> check_symmetric(const Calculus& calc, const Word& u, const Word& v,
                                         const SymmetricDecomposition& dec);

/// With `cancel` the common commuting part is cancelled by a (C) move and
/// x is empty; otherwise x = s and the product is star(u, v).
TriangleDecomposition triangle_decomposition(const Calculus& calc, const Word& u, const Word& v, bool cancel);

std::vector<std::string> check_triangle(const Calculus& calc, const Word& u, const Word& v,
                                        const TriangleDecomposition& dec);

}  // namespace curvecalc

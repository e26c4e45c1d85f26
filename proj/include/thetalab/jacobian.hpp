#pragma once

#include <cstddef>
#include <string>

#include "thetalab/divisor.hpp"

namespace thetalab {

/// Square roots η of a fixed L with h⁰(η ⊗ M) = 0, counted on the ppav side.
///
/// The square roots of L form a torsor under the 2-torsion group, so once
/// one root (together with M and the degree shift) is encoded as the
/// translate a, the roots are the x + a for x in K and a root is
/// non-effective exactly when x is off t_a*Θ.
struct SquareRootReport {
    CountReport count;
    std::size_t n_noneffective = 0;
    std::size_t lower_bound = 0;  // 2^g
    /// n_noneffective >= 2^g with no Uncertain verdicts.
    bool pass = false;
    /// Only n_noneffective + n_uncertain >= 2^g could be established.
    bool conditional = false;
};

SquareRootReport count_noneffective_square_roots(const ThetaDivisor& divisor, const CVector& a);

}  // namespace thetalab

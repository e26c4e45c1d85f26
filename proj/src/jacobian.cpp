#include "thetalab/jacobian.hpp"

namespace thetalab {

SquareRootReport count_noneffective_square_roots(const ThetaDivisor& divisor, const CVector& a) {
    SquareRootReport out;
    out.count = count_on_translate(divisor, a);
    out.n_noneffective = out.count.n_off;
    out.lower_bound = std::size_t{1} << divisor.genus();
    if (out.count.n_uncertain == 0) {
        out.pass = out.n_noneffective >= out.lower_bound;
    } else {
        out.conditional = out.n_noneffective + out.count.n_uncertain >= out.lower_bound;
    }
    return out;
}

}  // namespace thetalab

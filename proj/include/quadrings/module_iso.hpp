#pragma once

#include <optional>

#include "correspondence.hpp"
#include "equivalence.hpp"

namespace quadrings {

/** Decide whether two traceable modules over the same algebra are isomorphic,
 * i.e. whether some P in GL2(R) conjugates T1 to T2.
 *
 * Finite rings are searched exhaustively.  Over Z the question is translated
 * through the correspondence: the modules are isomorphic iff their forms are
 * twisted-GL2 equivalent, and a form witness g yields the module witness
 * P = g^T (basis vectors transform by the transpose of the substitution
 * matrix).  Negative discriminants are therefore decided exactly; other
 * discriminants inherit the entry-bounded search of equivalent().
 */
inline std::optional<Mat2> module_isomorphic(const TraceableModule& M1,
                                             const TraceableModule& M2,
                                             const SearchBounds& bounds = {}) {
    if (M1.algebra() != M2.algebra())
        throw RingMismatchError("module_isomorphic: modules over different algebras");
    const Ring& R = M1.ring();

    if (R.is_finite()) {
        for (const Mat2& P : all_gl2(R))
            if (P * M1.T() == M2.T() * P) return P;
        return std::nullopt;
    }

    BQForm f1 = pair_to_form(CorrespondencePair{M1, Flavor::twisted}).form;
    BQForm f2 = pair_to_form(CorrespondencePair{M2, Flavor::twisted}).form;
    auto w = equivalent(f1, f2, EquivMode::gl2_twisted, bounds);
    if (!w) return std::nullopt;
    Mat2 P = w->g.mat().transpose();
    if (!(P * M1.T() == M2.T() * P))
        throw DomainError("module_isomorphic: transported witness failed to conjugate");
    return P;
}

} // namespace quadrings

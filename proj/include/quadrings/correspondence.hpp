#pragma once

#include "algebra.hpp"
#include "form.hpp"

namespace quadrings {

/** The (algebra, traceable module) side of the correspondence, tagged with the
 * flavor of the form it came from / will produce.
 */
struct CorrespondencePair {
    TraceableModule module;
    Flavor flavor;

    const QuadraticAlgebra& algebra() const { return module.algebra(); }
    const Ring& ring() const { return module.ring(); }

    bool operator==(const CorrespondencePair& o) const {
        return module == o.module && flavor == o.flavor;
    }
};

/** Key construction: f = (a, b, c) gives C = R[tau]/(tau^2 + b tau + ac) with
 * orientation +1, and the module R^2 with tau x = -b x - c y, tau y = a x.
 */
inline CorrespondencePair form_to_pair(const BQForm& f) {
    QuadraticAlgebra C(f.b(), f.a() * f.c(), +1);
    Mat2 T(-f.b(), f.a(), -f.c(), zero(f.ring()));
    return CorrespondencePair{TraceableModule(std::move(C), std::move(T)), f.flavor()};
}

/** Inverse construction result: the form plus the normalization shift that was
 * applied to tau (tau' = tau - s with s = T(y,y)).
 */
struct FormWithShift {
    BQForm form;
    RingElem shift;
};

/** Read a form off a pair: shift tau so that T(y,y) = 0, then
 * a = T'(x,y), b = -T'(x,x), c = -T'(y,x).  The shifted presentation must
 * satisfy b = q' and ac = r'; both are rechecked and a violation reports the
 * pair as inconsistent.
 */
inline FormWithShift pair_to_form(const CorrespondencePair& p) {
    RingElem s = p.module.T().at(1, 1);
    TraceableModule shifted = shift_module(p.module, s);
    const Mat2& T = shifted.T();
    RingElem a = T.at(0, 1);
    RingElem b = -T.at(0, 0);
    RingElem c = -T.at(1, 0);
    const QuadraticAlgebra& C = shifted.algebra();
    if (b != C.q() || a * c != C.r())
        throw InconsistentPairError("pair_to_form: shifted module does not present q' = b, "
                                    "r' = ac");
    return FormWithShift{BQForm(std::move(a), std::move(b), std::move(c), p.flavor),
                         std::move(s)};
}

/** Global construction of the same form: the coefficient matrix of the map
 * C/R (x) wedge^2 M -> Sym^2 M sending tau (x) (m1 ^ m2) to
 * tau m1 . m2 - tau m2 . m1, read in the bases fixed here (the sign of the
 * wedge is chosen so that this agrees with pair_to_form).  Shift-independent:
 * only the off-diagonal entries and the diagonal difference of T enter.
 */
inline BQForm pair_to_form_global(const CorrespondencePair& p) {
    const Mat2& T = p.module.T();
    RingElem a = T.at(0, 1);
    RingElem b = T.at(1, 1) - T.at(0, 0);
    RingElem c = -T.at(1, 0);
    return BQForm(std::move(a), std::move(b), std::move(c), p.flavor);
}

/** Quadratic map on the rank-2 module R m1 + R m2 in Kneser's coordinates:
 * the values q1 = q(m1), q2 = q(m2), q12 = q(m1 + m2).
 */
struct QuadraticMap {
    RingElem q1, q2, q12;

    QuadraticMap(RingElem q1_, RingElem q2_, RingElem q12_)
        : q1(std::move(q1_)), q2(std::move(q2_)), q12(std::move(q12_)) {
        if (q1.ring() != q2.ring() || q1.ring() != q12.ring())
            throw RingMismatchError("QuadraticMap: values from different rings");
    }

    const Ring& ring() const { return q1.ring(); }

    /** Polar form B(m1, m2) = q(m1 + m2) - q(m1) - q(m2). */
    RingElem polar12() const { return q12 - q1 - q2; }

    /** q(r1 m1 + r2 m2) = r1^2 q1 + r2^2 q2 + r1 r2 B. */
    RingElem evaluate(const RingElem& r1, const RingElem& r2) const {
        return r1 * r1 * q1 + r2 * r2 * q2 + r1 * r2 * polar12();
    }

    /** Polar form of two arbitrary module elements, bilinear in each slot. */
    RingElem polar(const RingElem& u1, const RingElem& u2, const RingElem& v1,
                   const RingElem& v2) const {
        return evaluate(u1 + v1, u2 + v2) - evaluate(u1, u2) - evaluate(v1, v2);
    }

    bool operator==(const QuadraticMap& o) const {
        return q1 == o.q1 && q2 == o.q2 && q12 == o.q12;
    }
};

inline QuadraticMap form_to_quadratic_map(const BQForm& f) {
    const Ring& R = f.ring();
    return QuadraticMap(f.evaluate(one(R), zero(R)), f.evaluate(zero(R), one(R)),
                        f.evaluate(one(R), one(R)));
}

/** Inverse of form_to_quadratic_map: a = q1, c = q2, b = q12 - q1 - q2. */
inline BQForm quadratic_map_to_form(const QuadraticMap& q, Flavor flavor) {
    return BQForm(q.q1, q.polar12(), q.q2, flavor);
}

/** A quadratic map is primitive when its values q(m1), B(m1, m2), q(m2)
 * generate the unit ideal (the same ideal the form coefficients generate).
 */
inline bool is_primitive(const QuadraticMap& q) {
    return generates_unit_ideal(q.ring(), {q.q1, q.polar12(), q.q2});
}

// --- base change Z -> Z/n --------------------------------------------------

inline RingElem base_change(const RingElem& x, const Ring& target) {
    if (!x.ring().is_integers())
        throw DomainError("base_change: source must be Z");
    if (!target.is_finite())
        throw DomainError("base_change: target must be Z/n");
    return RingElem(target, x.value());
}

inline BQForm base_change(const BQForm& f, const Ring& target) {
    return BQForm(base_change(f.a(), target), base_change(f.b(), target),
                  base_change(f.c(), target), f.flavor());
}

inline QuadraticAlgebra base_change(const QuadraticAlgebra& A, const Ring& target) {
    return QuadraticAlgebra(base_change(A.q(), target), base_change(A.r(), target),
                            A.orientation());
}

inline Mat2 base_change(const Mat2& m, const Ring& target) {
    return Mat2(base_change(m.at(0, 0), target), base_change(m.at(0, 1), target),
                base_change(m.at(1, 0), target), base_change(m.at(1, 1), target));
}

inline TraceableModule base_change(const TraceableModule& M, const Ring& target) {
    return TraceableModule(base_change(M.algebra(), target), base_change(M.T(), target));
}

inline CorrespondencePair base_change(const CorrespondencePair& p, const Ring& target) {
    return CorrespondencePair{base_change(p.module, target), p.flavor};
}

// --- invertibility ---------------------------------------------------------

/** Search for m with (m, tau m) an R-basis of the module; meaningful over
 * local rings Z/p^k, where existence is equivalent to invertibility.
 */
inline bool has_cyclic_generator(const TraceableModule& M) {
    const Ring& R = M.ring();
    if (!R.is_finite())
        throw DomainError("has_cyclic_generator: search requires a finite ring");
    for (const RingElem& u : elements_of(R)) {
        for (const RingElem& v : elements_of(R)) {
            Vec2 m(u, v);
            Vec2 tm = M.T() * m;
            RingElem det = m.x * tm.y - m.y * tm.x;
            if (det.is_unit()) return true;
        }
    }
    return false;
}

/** Whether the module of a pair is invertible (locally free of rank 1 over C).
 *
 * Decided through the correspondence: invertibility is equivalent to the
 * associated form being primitive.  Over Z/p^k a direct search for a cyclic
 * generator is run as well and must agree.
 */
inline bool is_invertible_module(const CorrespondencePair& p) {
    bool primitive = is_primitive(pair_to_form(p).form);
    const Ring& R = p.ring();
    if (R.is_finite() && is_prime_power(R.modulus())) {
        bool cyclic = has_cyclic_generator(p.module);
        if (cyclic != primitive)
            throw DomainError("is_invertible_module: cyclic-generator search disagrees with "
                              "primitivity over " + R.str());
    }
    return primitive;
}

} // namespace quadrings

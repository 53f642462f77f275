#pragma once

#include <ostream>

#include "mat2.hpp"

namespace quadrings {

/** The free quadratic algebra C = R[tau] / (tau^2 + q tau + r), carrying an
 * orientation sign (+1 or -1) that records the chosen generator of C/R.
 */
class QuadraticAlgebra {
public:
    QuadraticAlgebra(RingElem q, RingElem r, int orientation = +1)
        : q_(std::move(q)), r_(std::move(r)), orientation_(orientation) {
        if (q_.ring() != r_.ring())
            throw RingMismatchError("QuadraticAlgebra: q and r from different rings");
        if (orientation_ != 1 && orientation_ != -1)
            throw DomainError("QuadraticAlgebra: orientation must be +1 or -1");
    }

    static QuadraticAlgebra from_ints(const Ring& R, const Int& q, const Int& r,
                                      int orientation = +1) {
        return QuadraticAlgebra(RingElem(R, q), RingElem(R, r), orientation);
    }

    const Ring& ring() const { return q_.ring(); }
    const RingElem& q() const { return q_; }
    const RingElem& r() const { return r_; }
    int orientation() const { return orientation_; }

    bool operator==(const QuadraticAlgebra& o) const {
        return q_ == o.q_ && r_ == o.r_ && orientation_ == o.orientation_;
    }
    bool operator!=(const QuadraticAlgebra& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const QuadraticAlgebra& A) {
        auto term = [&os](const RingElem& x, const char* suffix) {
            if (x.ring().is_integers() && x.value() < 0)
                os << " - " << -x.value() << suffix;
            else
                os << " + " << x << suffix;
        };
        os << A.ring() << "[tau]/(tau^2";
        term(A.q_, " tau");
        term(A.r_, "");
        return os << ")";
    }

private:
    RingElem q_, r_;
    int orientation_;
};

/** Element u0 + u1 tau of a quadratic algebra. */
class AlgebraElem {
public:
    AlgebraElem(QuadraticAlgebra A, RingElem u0, RingElem u1)
        : A_(std::move(A)), u0_(std::move(u0)), u1_(std::move(u1)) {
        if (u0_.ring() != A_.ring() || u1_.ring() != A_.ring())
            throw RingMismatchError("AlgebraElem: coordinates outside the base ring");
    }

    const QuadraticAlgebra& algebra() const { return A_; }
    const RingElem& c0() const { return u0_; }
    const RingElem& c1() const { return u1_; }

    AlgebraElem operator+(const AlgebraElem& o) const {
        check(o);
        return AlgebraElem(A_, u0_ + o.u0_, u1_ + o.u1_);
    }

    AlgebraElem operator*(const AlgebraElem& o) const {
        check(o);
        // (u0 + u1 t)(v0 + v1 t) with t^2 = -q t - r.
        RingElem cross = u1_ * o.u1_;
        return AlgebraElem(A_, u0_ * o.u0_ - A_.r() * cross,
                           u0_ * o.u1_ + u1_ * o.u0_ - A_.q() * cross);
    }

    bool operator==(const AlgebraElem& o) const {
        check(o);
        return u0_ == o.u0_ && u1_ == o.u1_;
    }

    friend std::ostream& operator<<(std::ostream& os, const AlgebraElem& x) {
        return os << x.u0_ << " + " << x.u1_ << " tau";
    }

private:
    void check(const AlgebraElem& o) const {
        if (A_ != o.A_)
            throw RingMismatchError("AlgebraElem: mixing elements of different algebras");
    }

    QuadraticAlgebra A_;
    RingElem u0_, u1_;
};

/** Multiplication-by-gamma trace on C (matrix of gamma on the basis (1, tau)). */
inline RingElem algebra_trace(const QuadraticAlgebra& A, const AlgebraElem& gamma) {
    RingElem two(A.ring(), 2);
    return two * gamma.c0() - A.q() * gamma.c1();
}

/** Discriminant of C, computed as the determinant of the trace pairing
 * [[tr(1*1), tr(1*tau)], [tr(tau*1), tr(tau*tau)]] and checked against
 * q^2 - 4r before being returned.
 */
inline RingElem algebra_discriminant(const QuadraticAlgebra& A) {
    const Ring& R = A.ring();
    AlgebraElem unit(A, one(R), zero(R));
    AlgebraElem tau(A, zero(R), one(R));
    RingElem t11 = algebra_trace(A, unit * unit);
    RingElem t1t = algebra_trace(A, unit * tau);
    RingElem ttt = algebra_trace(A, tau * tau);
    RingElem det = t11 * ttt - t1t * t1t;
    RingElem shortcut = A.q() * A.q() - RingElem(R, 4) * A.r();
    if (det != shortcut)
        throw DomainError("algebra_discriminant: trace pairing disagrees with q^2 - 4r");
    return det;
}

/** Diagnostic result of the traceability test. */
struct Traceability {
    bool module_axiom; // T^2 + qT + rI = 0
    bool trace;        // tr T = -q
    explicit operator bool() const { return module_axiom && trace; }
};

/** Check whether T defines a traceable C-module structure on R^2. */
inline Traceability is_traceable(const QuadraticAlgebra& A, const Mat2& T) {
    if (A.ring() != T.ring())
        throw RingMismatchError("is_traceable: algebra over " + A.ring().str() +
                                ", matrix over " + T.ring().str());
    Mat2 lhs = T * T + T * A.q() + Mat2::scalar(A.r());
    return Traceability{lhs == Mat2::zero(A.ring()), T.trace() == -A.q()};
}

/** A traceable module: R^2 with tau acting through T, where T satisfies the
 * module axiom T^2 + qT + rI = 0 and the trace condition tr T = -q.  Columns
 * of T are the coordinates of tau x and tau y.  Validated at construction.
 */
class TraceableModule {
public:
    TraceableModule(QuadraticAlgebra A, Mat2 T) : A_(std::move(A)), T_(std::move(T)) {
        Traceability t = is_traceable(A_, T_);
        if (!t)
            throw NotTraceableError(
                std::string("TraceableModule: ") +
                    (!t.module_axiom ? "T^2 + qT + rI != 0 (not a C-module)"
                                     : "tr T != -q (module is not traceable)"),
                t.module_axiom, t.trace);
    }

    const QuadraticAlgebra& algebra() const { return A_; }
    const Ring& ring() const { return A_.ring(); }
    const Mat2& T() const { return T_; }

    bool operator==(const TraceableModule& o) const { return A_ == o.A_ && T_ == o.T_; }
    bool operator!=(const TraceableModule& o) const { return !(*this == o); }

private:
    QuadraticAlgebra A_;
    Mat2 T_;
};

/** Replace the generator tau by tau' = tau - s.  New presentation:
 * q' = q + 2s, r' = r + qs + s^2; orientation is unchanged.
 */
inline QuadraticAlgebra shift_generator(const QuadraticAlgebra& A, const RingElem& s) {
    if (A.ring() != s.ring())
        throw RingMismatchError("shift_generator: shift outside the base ring");
    RingElem two(A.ring(), 2);
    return QuadraticAlgebra(A.q() + two * s, A.r() + A.q() * s + s * s, A.orientation());
}

/** The same shift applied to a module: tau' acts through T - sI. */
inline TraceableModule shift_module(const TraceableModule& M, const RingElem& s) {
    return TraceableModule(shift_generator(M.algebra(), s), M.T() - Mat2::scalar(s));
}

/** Replace tau by -tau: (q, r) -> (-q, r) and the orientation sign flips. */
inline QuadraticAlgebra flip_orientation(const QuadraticAlgebra& A) {
    return QuadraticAlgebra(-A.q(), A.r(), -A.orientation());
}

inline TraceableModule flip_module(const TraceableModule& M) {
    return TraceableModule(flip_orientation(M.algebra()), -M.T());
}

} // namespace quadrings

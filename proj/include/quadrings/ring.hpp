#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace quadrings {

/** A commutative base ring: the integers Z, or a residue ring Z/n with n >= 2.
 *
 * Value type; two contexts compare equal iff they are the same ring.  Z/1 and
 * nonsensical moduli are rejected at construction, so downstream code never
 * sees a zero ring.
 */
class Ring {
public:
    static Ring integers() { return Ring(0); }

    static Ring mod(Int n) {
        if (n < 2)
            throw InvalidModulusError("Ring::mod: modulus must be >= 2, got " + n.str());
        return Ring(std::move(n));
    }

    bool is_integers() const { return n_ == 0; }
    bool is_finite() const { return n_ != 0; }

    /** Modulus of a residue ring; only meaningful when is_finite(). */
    const Int& modulus() const {
        if (!is_finite())
            throw DomainError("Ring::modulus: Z has no modulus");
        return n_;
    }

    bool operator==(const Ring& o) const { return n_ == o.n_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    std::string str() const { return is_finite() ? "Z/" + n_.str() : "Z"; }

    friend std::ostream& operator<<(std::ostream& os, const Ring& R) { return os << R.str(); }

private:
    explicit Ring(Int n) : n_(std::move(n)) {}

    Int n_; // 0 encodes Z
};

/** An element of a Ring.  Carries its context; arithmetic between elements of
 * different contexts throws RingMismatchError.  Residues are kept canonical
 * in [0, n).
 */
class RingElem {
public:
    RingElem(Ring ring, Int value) : ring_(std::move(ring)), v_(std::move(value)) {
        if (ring_.is_finite()) v_ = floor_mod(v_, ring_.modulus());
    }

    const Ring& ring() const { return ring_; }
    const Int& value() const { return v_; }

    bool is_zero() const { return v_ == 0; }

    bool is_unit() const {
        if (ring_.is_finite()) return gcd(v_, ring_.modulus()) == 1;
        return v_ == 1 || v_ == -1;
    }

    RingElem operator-() const { return RingElem(ring_, -v_); }

    RingElem operator+(const RingElem& o) const { return RingElem(ring_, v_ + same(o).v_); }
    RingElem operator-(const RingElem& o) const { return RingElem(ring_, v_ - same(o).v_); }
    RingElem operator*(const RingElem& o) const { return RingElem(ring_, v_ * same(o).v_); }

    bool operator==(const RingElem& o) const { return v_ == same(o).v_; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    /** Multiplicative inverse; throws NotAUnitError when none exists. */
    RingElem inverse() const {
        if (!ring_.is_finite()) {
            if (v_ == 1 || v_ == -1) return *this;
            throw NotAUnitError("RingElem::inverse: " + v_.str() + " is not a unit in Z");
        }
        Int x, y;
        Int g = ext_gcd(v_, ring_.modulus(), x, y);
        if (g != 1)
            throw NotAUnitError("RingElem::inverse: " + v_.str() + " is not a unit in " +
                                ring_.str());
        return RingElem(ring_, x);
    }

    /** this * u^-1 for a unit u. */
    RingElem divide_by_unit(const RingElem& u) const { return *this * same(u).inverse(); }

    std::string str() const { return v_.str(); }

    friend std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.v_; }

private:
    const RingElem& same(const RingElem& o) const {
        if (ring_ != o.ring_)
            throw RingMismatchError("RingElem: mixing elements of " + ring_.str() + " and " +
                                    o.ring_.str());
        return o;
    }

    Ring ring_;
    Int v_;
};

inline RingElem elem(const Ring& R, Int v) { return RingElem(R, std::move(v)); }
inline RingElem zero(const Ring& R) { return RingElem(R, 0); }
inline RingElem one(const Ring& R) { return RingElem(R, 1); }

/** True iff the listed elements generate the unit ideal of their ring.
 *
 * Over Z this is gcd = 1; over Z/n it is gcd(values..., n) = 1.  The empty
 * list generates the zero ideal and yields false.
 */
inline bool generates_unit_ideal(const Ring& R, const std::vector<RingElem>& xs) {
    if (xs.empty()) return false;
    Int g = R.is_finite() ? R.modulus() : Int(0);
    for (const RingElem& x : xs) {
        if (x.ring() != R)
            throw RingMismatchError("generates_unit_ideal: element of " + x.ring().str() +
                                    " in context " + R.str());
        g = gcd(g, x.value());
    }
    return g == 1;
}

inline bool generates_unit_ideal(const Ring& R, std::initializer_list<RingElem> xs) {
    return generates_unit_ideal(R, std::vector<RingElem>(xs));
}

/** The units of a finite ring, in ascending residue order. */
inline std::vector<RingElem> units_of(const Ring& R) {
    if (!R.is_finite())
        throw DomainError("units_of: ring must be finite");
    std::vector<RingElem> us;
    for (Int u = 1; u < R.modulus(); ++u)
        if (gcd(u, R.modulus()) == 1) us.emplace_back(R, u);
    return us;
}

/** All elements of a finite ring, in ascending residue order. */
inline std::vector<RingElem> elements_of(const Ring& R) {
    if (!R.is_finite())
        throw DomainError("elements_of: ring must be finite");
    std::vector<RingElem> xs;
    for (Int v = 0; v < R.modulus(); ++v) xs.emplace_back(R, v);
    return xs;
}

} // namespace quadrings

#pragma once

#include <ostream>
#include <string>

#include "mat2.hpp"

namespace quadrings {

/** Which group a form is considered under:
 *  - plain:   GL2 acting by substitution,
 *  - twisted: GL2 acting by substitution divided by the determinant,
 *  - linear:  twisted GL2 together with unit scalings (GL1).
 */
enum class Flavor { plain, twisted, linear };

inline std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::plain: return "plain";
        case Flavor::twisted: return "twisted";
        case Flavor::linear: return "linear";
    }
    return "?";
}

/** How a single GL2 element is applied. */
enum class ActionMode { plain, twisted };

/** Binary quadratic form a x^2 + b xy + c y^2 over a Ring, tagged with a Flavor. */
class BQForm {
public:
    BQForm(RingElem a, RingElem b, RingElem c, Flavor flavor)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), flavor_(flavor) {
        if (a_.ring() != b_.ring() || a_.ring() != c_.ring())
            throw RingMismatchError("BQForm: coefficients from different rings");
    }

    static BQForm from_ints(const Ring& R, const Int& a, const Int& b, const Int& c,
                            Flavor flavor = Flavor::twisted) {
        return BQForm(RingElem(R, a), RingElem(R, b), RingElem(R, c), flavor);
    }

    const Ring& ring() const { return a_.ring(); }
    const RingElem& a() const { return a_; }
    const RingElem& b() const { return b_; }
    const RingElem& c() const { return c_; }
    Flavor flavor() const { return flavor_; }

    BQForm with_flavor(Flavor f) const { return BQForm(a_, b_, c_, f); }

    RingElem evaluate(const RingElem& x, const RingElem& y) const {
        return a_ * x * x + b_ * x * y + c_ * y * y;
    }

    bool operator==(const BQForm& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && flavor_ == o.flavor_;
    }
    bool operator!=(const BQForm& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const BQForm& f) {
        return os << "(" << f.a_ << "," << f.b_ << "," << f.c_ << ")";
    }

private:
    RingElem a_, b_, c_;
    Flavor flavor_;
};

inline RingElem discriminant(const BQForm& f) {
    RingElem four(f.ring(), 4);
    return f.b() * f.b() - four * f.a() * f.c();
}

/** A form is primitive when its coefficients generate the unit ideal. */
inline bool is_primitive(const BQForm& f) {
    return generates_unit_ideal(f.ring(), {f.a(), f.b(), f.c()});
}

/** Substitution action of g = [[k,l],[m,n]]: f goes to f(kx + ly, mx + ny);
 * in twisted mode the result is divided by det g (a unit).
 *
 * Composition runs left to right: apply(apply(f, g), h) = apply(f, g * h).
 */
inline BQForm apply_gl2(const BQForm& f, const GL2& g, ActionMode mode) {
    if (f.ring() != g.mat().ring())
        throw RingMismatchError("apply_gl2: form over " + f.ring().str() + ", matrix over " +
                                g.mat().ring().str());
    const RingElem &k = g.mat().at(0, 0), &l = g.mat().at(0, 1);
    const RingElem &m = g.mat().at(1, 0), &n = g.mat().at(1, 1);
    const RingElem &a = f.a(), &b = f.b(), &c = f.c();
    RingElem two(f.ring(), 2);

    RingElem a2 = a * k * k + b * k * m + c * m * m;
    RingElem b2 = two * a * k * l + b * (k * n + l * m) + two * c * m * n;
    RingElem c2 = a * l * l + b * l * n + c * n * n;

    if (mode == ActionMode::twisted) {
        RingElem di = g.det().inverse();
        a2 = a2 * di;
        b2 = b2 * di;
        c2 = c2 * di;
    }
    return BQForm(a2, b2, c2, f.flavor());
}

/** GL1 scaling u . f = (ua, ub, uc); defined for linear-flavor forms only. */
inline BQForm apply_gl1(const BQForm& f, const RingElem& u) {
    if (f.flavor() != Flavor::linear)
        throw FlavorError("apply_gl1: scaling requires linear flavor, got " +
                          flavor_name(f.flavor()));
    if (f.ring() != u.ring())
        throw RingMismatchError("apply_gl1: form over " + f.ring().str() + ", scalar over " +
                                u.ring().str());
    if (!u.is_unit())
        throw NotAUnitError("apply_gl1: scalar " + u.str() + " is not a unit");
    return BQForm(u * f.a(), u * f.b(), u * f.c(), f.flavor());
}

} // namespace quadrings

#pragma once

#include <optional>

#include "form.hpp"

namespace quadrings {

/** Result of Gauss reduction: the reduced form and a plain-action witness,
 * apply_gl2(input, witness, plain) == form.
 */
struct Reduced {
    BQForm form;
    GL2 witness;
};

/** Gauss reduction of a positive definite form over Z (disc < 0, a > 0).
 *
 * The reduced representative satisfies |b| <= a <= c, with b >= 0 whenever
 * |b| = a or a = c; it is the unique such form in the SL2 orbit.
 */
inline Reduced reduce_posdef(const BQForm& f0) {
    if (!f0.ring().is_integers())
        throw DomainError("reduce_posdef: defined over Z only");
    Int D = discriminant(f0).value();
    if (D >= 0)
        throw DomainError("reduce_posdef: discriminant must be negative, got " + D.str());
    if (f0.a().value() <= 0)
        throw DomainError("reduce_posdef: leading coefficient must be positive");

    const Ring Z = f0.ring();
    BQForm f = f0;
    Mat2 w = Mat2::identity(Z);
    const GL2 swap = GL2::from_ints(Z, 0, -1, 1, 0); // (a,b,c) -> (c,-b,a)

    for (;;) {
        // Translate b into (-a, a].
        Int a = f.a().value(), b = f.b().value();
        Int t = floor_div(a - b, 2 * a);
        if (t != 0) {
            GL2 shift = GL2::from_ints(Z, 1, t, 0, 1);
            f = apply_gl2(f, shift, ActionMode::plain);
            w = w * shift.mat();
        }
        if (f.a().value() > f.c().value()) {
            f = apply_gl2(f, swap, ActionMode::plain);
            w = w * swap.mat();
            continue;
        }
        break;
    }
    if (f.a() == f.c() && f.b().value() < 0) {
        f = apply_gl2(f, swap, ActionMode::plain);
        w = w * swap.mat();
    }

    GL2 witness(w);
    if (apply_gl2(f0, witness, ActionMode::plain) != f)
        throw DomainError("reduce_posdef: internal witness check failed");
    return Reduced{f, witness};
}

/** The principal form of discriminant D over Z: (1, 0, -D/4) for D = 0 mod 4,
 * (1, 1, (1-D)/4) for D = 1 mod 4.
 */
inline BQForm principal_form(const Int& D, Flavor flavor = Flavor::twisted) {
    Int m = floor_mod(D, 4);
    const Ring Z = Ring::integers();
    if (m == 0) return BQForm::from_ints(Z, 1, 0, -D / 4, flavor);
    if (m == 1) return BQForm::from_ints(Z, 1, 1, (1 - D) / 4, flavor);
    throw DomainError("principal_form: " + D.str() + " is not 0 or 1 mod 4");
}

/** Which group equivalence is decided under. */
enum class EquivMode {
    sl2,             // det 1, substitution action
    gl2_plain,       // unit det, substitution action
    gl2_twisted,     // unit det, substitution divided by det
    gl2_twisted_gl1, // twisted GL2 together with unit scalings
};

inline EquivMode default_mode(Flavor f) {
    switch (f) {
        case Flavor::plain: return EquivMode::gl2_plain;
        case Flavor::twisted: return EquivMode::gl2_twisted;
        case Flavor::linear: return EquivMode::gl2_twisted_gl1;
    }
    return EquivMode::gl2_plain;
}

/** Witness for an equivalence: f2 = scale . apply_gl2(f1, g, mode).
 * scale is 1 except in gl2_twisted_gl1 mode.
 */
struct EquivWitness {
    GL2 g;
    RingElem scale;
    ActionMode mode;
};

/** Bound for the semi-decision searches over Z (indefinite or degenerate
 * discriminant): matrix entries are enumerated in [-max_entry, max_entry].
 * An empty result only means no witness exists within the bound.
 */
struct SearchBounds {
    Int max_entry = 50;
};

namespace detail {

inline BQForm scale_coeffs(const BQForm& f, const RingElem& u) {
    return BQForm(u * f.a(), u * f.b(), u * f.c(), f.flavor());
}

inline bool witness_ok(const BQForm& f1, const BQForm& f2, const EquivWitness& w) {
    BQForm g = apply_gl2(f1, w.g, w.mode);
    if (!(w.scale == one(f1.ring()))) g = scale_coeffs(g, w.scale);
    return g == f2;
}

/** Exhaustive equivalence over a finite ring. */
inline std::optional<EquivWitness> equivalent_finite(const BQForm& f1, const BQForm& f2,
                                                     EquivMode mode) {
    const Ring& R = f1.ring();
    const RingElem one_ = one(R);
    for (const Mat2& m : all_gl2(R)) {
        if (mode == EquivMode::sl2 && m.det() != one_) continue;
        GL2 g(m);
        ActionMode am = (mode == EquivMode::gl2_twisted || mode == EquivMode::gl2_twisted_gl1)
                            ? ActionMode::twisted
                            : ActionMode::plain;
        BQForm image = apply_gl2(f1, g, am);
        if (mode == EquivMode::gl2_twisted_gl1) {
            for (const RingElem& u : units_of(R)) {
                if (scale_coeffs(image, u) == f2) return EquivWitness{g, u, am};
            }
        } else if (image == f2) {
            return EquivWitness{g, one_, am};
        }
    }
    return std::nullopt;
}

/** SL2 decision over Z for definite forms via the canonical reduced form. */
inline std::optional<EquivWitness> sl2_definite(const BQForm& f1, const BQForm& f2) {
    bool neg1 = f1.a().value() < 0, neg2 = f2.a().value() < 0;
    if (neg1 != neg2) return std::nullopt; // substitution preserves definiteness sign
    auto flip = [](const BQForm& f) { return BQForm(-f.a(), -f.b(), -f.c(), f.flavor()); };
    BQForm p1 = neg1 ? flip(f1) : f1;
    BQForm p2 = neg2 ? flip(f2) : f2;
    Reduced r1 = reduce_posdef(p1);
    Reduced r2 = reduce_posdef(p2);
    if (r1.form != r2.form) return std::nullopt;
    // f1 -> canon under w1, f2 -> canon under w2, so f2 = apply(f1, w1 * w2^-1).
    GL2 g = GL2(r1.witness.mat() * r2.witness.mat().inverse());
    EquivWitness w{g, one(f1.ring()), ActionMode::plain};
    if (!witness_ok(f1, f2, w))
        throw DomainError("equivalent: internal witness composition failed");
    return w;
}

/** Entry-bounded witness search over Z.  Enumerates (k, l, m) and solves the
 * determinant equation for n; complete within the bound, silent beyond it.
 */
inline std::optional<EquivWitness> bounded_search(const BQForm& f1, const BQForm& f2,
                                                  EquivMode mode, const SearchBounds& bounds) {
    const Ring Z = f1.ring();
    const RingElem one_ = one(Z);
    const Int B = bounds.max_entry;
    std::vector<Int> dets;
    if (mode == EquivMode::sl2)
        dets = {Int(1)};
    else
        dets = {Int(1), Int(-1)};
    std::vector<RingElem> scales;
    if (mode == EquivMode::gl2_twisted_gl1)
        scales = {one_, -one_};
    else
        scales = {one_};
    ActionMode am = (mode == EquivMode::gl2_twisted || mode == EquivMode::gl2_twisted_gl1)
                        ? ActionMode::twisted
                        : ActionMode::plain;

    auto try_matrix = [&](const Int& k, const Int& l, const Int& m,
                          const Int& n) -> std::optional<EquivWitness> {
        GL2 g = GL2::from_ints(Z, k, l, m, n);
        BQForm image = apply_gl2(f1, g, am);
        for (const RingElem& u : scales)
            if (scale_coeffs(image, u) == f2) return EquivWitness{g, u, am};
        return std::nullopt;
    };

    for (Int k = -B; k <= B; ++k) {
        for (Int l = -B; l <= B; ++l) {
            for (Int m = -B; m <= B; ++m) {
                for (const Int& d : dets) {
                    if (k != 0) {
                        // k n = d + l m
                        Int num = d + l * m;
                        if (num % k != 0) continue;
                        Int n = num / k;
                        if (n < -B || n > B) continue;
                        if (auto w = try_matrix(k, l, m, n)) return w;
                    } else {
                        if (-l * m != d) continue;
                        for (Int n = -B; n <= B; ++n)
                            if (auto w = try_matrix(k, l, m, n)) return w;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/** Decide equivalence of two forms under the given group, producing a witness.
 *
 * Finite rings are decided exhaustively.  Over Z, negative discriminants are
 * decided via reduction to canonical forms; other discriminants fall back to
 * an entry-bounded search whose empty answer only rules out witnesses within
 * the bound.
 */
inline std::optional<EquivWitness> equivalent(const BQForm& f1, const BQForm& f2, EquivMode mode,
                                              const SearchBounds& bounds = {}) {
    if (f1.ring() != f2.ring())
        throw RingMismatchError("equivalent: forms over " + f1.ring().str() + " and " +
                                f2.ring().str());
    if (f1.flavor() != f2.flavor())
        throw FlavorError("equivalent: mixing flavors " + flavor_name(f1.flavor()) + " and " +
                          flavor_name(f2.flavor()));

    if (f1.ring().is_finite()) return detail::equivalent_finite(f1, f2, mode);

    // Over Z every mode preserves the discriminant (det is +-1, units are +-1).
    if (discriminant(f1) != discriminant(f2)) return std::nullopt;
    Int D = discriminant(f1).value();
    if (D >= 0) return detail::bounded_search(f1, f2, mode, bounds);

    const Ring Z = f1.ring();
    const RingElem one_ = one(Z);
    const GL2 mirror = GL2::from_ints(Z, 1, 0, 0, -1);

    switch (mode) {
        case EquivMode::sl2:
            return detail::sl2_definite(f1, f2);
        case EquivMode::gl2_plain: {
            if (auto w = detail::sl2_definite(f1, f2)) return w;
            // Try through the reflection diag(1,-1): f2 = apply(f1, g * mirror).
            BQForm f2m = apply_gl2(f2, mirror, ActionMode::plain);
            if (auto w = detail::sl2_definite(f1, f2m)) {
                EquivWitness out{GL2(w->g.mat() * mirror.mat()), one_, ActionMode::plain};
                if (!detail::witness_ok(f1, f2, out))
                    throw DomainError("equivalent: internal witness composition failed");
                return out;
            }
            return std::nullopt;
        }
        case EquivMode::gl2_twisted: {
            if (auto w = detail::sl2_definite(f1, f2))
                return EquivWitness{w->g, one_, ActionMode::twisted};
            BQForm f2m = apply_gl2(f2, mirror, ActionMode::twisted); // (-a, b, -c)
            if (auto w = detail::sl2_definite(f1, f2m)) {
                EquivWitness out{GL2(w->g.mat() * mirror.mat()), one_, ActionMode::twisted};
                if (!detail::witness_ok(f1, f2, out))
                    throw DomainError("equivalent: internal witness composition failed");
                return out;
            }
            return std::nullopt;
        }
        case EquivMode::gl2_twisted_gl1: {
            for (const RingElem& u : {one_, -one_}) {
                // Look for g with apply_tw(f1, g) = u^-1 . f2; then f2 = u . apply_tw(f1, g).
                BQForm target = detail::scale_coeffs(f2, u.inverse());
                if (auto w = equivalent(f1.with_flavor(Flavor::twisted),
                                        target.with_flavor(Flavor::twisted),
                                        EquivMode::gl2_twisted, bounds)) {
                    EquivWitness out{w->g, u, ActionMode::twisted};
                    if (!detail::witness_ok(f1, f2, out))
                        throw DomainError("equivalent: internal witness composition failed");
                    return out;
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

inline std::optional<EquivWitness> equivalent(const BQForm& f1, const BQForm& f2,
                                              const SearchBounds& bounds = {}) {
    return equivalent(f1, f2, default_mode(f1.flavor()), bounds);
}

} // namespace quadrings

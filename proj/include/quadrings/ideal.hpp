#pragma once

#include <optional>
#include <vector>

#include "correspondence.hpp"
#include "equivalence.hpp"
#include "module_iso.hpp"

namespace quadrings {

/** Integer vector in the coordinates (1, tau) of a quadratic algebra over Z. */
struct IVec {
    Int x, y;

    bool operator==(const IVec& o) const { return x == o.x && y == o.y; }
};

/** tau * (x + y tau) = -r y + (x - q y) tau. */
inline IVec tau_times(const QuadraticAlgebra& A, const IVec& v) {
    return IVec{-A.r().value() * v.y, v.x - A.q().value() * v.y};
}

/** Product of two algebra elements given as integer coordinate vectors. */
inline IVec alg_mul(const QuadraticAlgebra& A, const IVec& u, const IVec& v) {
    Int cross = u.y * v.y;
    return IVec{u.x * v.x - A.r().value() * cross,
                u.x * v.y + u.y * v.x - A.q().value() * cross};
}

/** A full, tau-closed lattice (1/den) L inside C (x) Q, for C over Z.
 *
 * The integral part L is stored in column Hermite normal form with basis
 * (d1, 0) and (e, d2): d1, d2 > 0 and 0 <= e < d1.  The fraction is kept
 * reduced (gcd(d1, e, d2, den) = 1, den > 0), so the representation is unique
 * per lattice.
 */
class IdealLattice {
public:
    const QuadraticAlgebra& algebra() const { return A_; }
    const Int& d1() const { return d1_; }
    const Int& e() const { return e_; }
    const Int& d2() const { return d2_; }
    const Int& den() const { return den_; }

    IVec col1() const { return IVec{d1_, 0}; }
    IVec col2() const { return IVec{e_, d2_}; }

    /** Membership of an integer vector in the integral part L. */
    bool contains(const IVec& v) const {
        if (v.y % d2_ != 0) return false;
        return (v.x - (v.y / d2_) * e_) % d1_ == 0;
    }

    bool operator==(const IdealLattice& o) const {
        return A_ == o.A_ && d1_ == o.d1_ && e_ == o.e_ && d2_ == o.d2_ && den_ == o.den_;
    }
    bool operator!=(const IdealLattice& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const IdealLattice& I) {
        os << "(1/" << I.den_ << ")[[" << I.d1_ << "," << I.e_ << "],[0," << I.d2_ << "]]";
        return os;
    }

    friend IdealLattice hnf_lattice(const QuadraticAlgebra&, const std::vector<IVec>&,
                                    const Int&);

private:
    IdealLattice(QuadraticAlgebra A, Int d1, Int e, Int d2, Int den)
        : A_(std::move(A)), d1_(std::move(d1)), e_(std::move(e)), d2_(std::move(d2)),
          den_(std::move(den)) {}

    QuadraticAlgebra A_;
    Int d1_, e_, d2_;
    Int den_;
};

/** Build the lattice (1/den) span(gens) in HNF, checking that it has full
 * rank and is closed under multiplication by tau.
 */
inline IdealLattice hnf_lattice(const QuadraticAlgebra& A, const std::vector<IVec>& gens,
                                const Int& den = 1) {
    if (!A.ring().is_integers())
        throw DomainError("hnf_lattice: ideal lattices are defined over Z");
    if (den <= 0)
        throw DomainError("hnf_lattice: denominator must be positive");

    // Combine generators to a vector whose y-part is the gcd of all y-parts.
    IVec v2{0, 0};
    for (const IVec& g : gens) {
        if (g.y == 0) continue;
        if (v2.y == 0) {
            v2 = g;
        } else {
            Int s, t;
            Int d = ext_gcd(v2.y, g.y, s, t);
            v2 = IVec{s * v2.x + t * g.x, d};
        }
    }
    if (v2.y < 0) v2 = IVec{-v2.x, -v2.y};

    // What remains after killing y-parts is a sublattice of Z * 1.
    Int d1 = 0;
    for (const IVec& g : gens) {
        Int x = (v2.y == 0) ? g.x : g.x - (g.y / v2.y) * v2.x;
        d1 = gcd(d1, x);
    }
    Int d2 = v2.y;
    if (d1 == 0 || d2 == 0)
        throw NotFullError("hnf_lattice: generators do not span a rank-2 lattice");
    Int e = floor_mod(v2.x, d1);

    // Reduce the fraction so the representation is unique.
    Int g = gcd(gcd(d1, e), gcd(d2, den));
    IdealLattice I(A, d1 / g, e / g, d2 / g, den / g);

    for (const IVec& c : {I.col1(), I.col2()})
        if (!I.contains(tau_times(A, c)))
            throw NotAnIdealError("hnf_lattice: lattice is not closed under tau");
    return I;
}

inline IdealLattice unit_ideal(const QuadraticAlgebra& A) {
    return hnf_lattice(A, {IVec{1, 0}, IVec{0, 1}});
}

/** Coordinates of v in the HNF basis of I's integral part (exact; v must lie
 * in the lattice).
 */
inline std::pair<Int, Int> coords_in(const IdealLattice& I, const IVec& v) {
    if (!I.contains(v))
        throw DomainError("coords_in: vector outside the lattice");
    Int beta = v.y / I.d2();
    Int alpha = (v.x - beta * I.e()) / I.d1();
    return {alpha, beta};
}

/** The traceable module carried by an ideal: the matrix of multiplication by
 * tau on the HNF basis.  Traceability is revalidated by construction.
 */
inline TraceableModule ideal_to_module(const IdealLattice& I) {
    auto [a1, b1] = coords_in(I, tau_times(I.algebra(), I.col1()));
    auto [a2, b2] = coords_in(I, tau_times(I.algebra(), I.col2()));
    const Ring Z = I.algebra().ring();
    return TraceableModule(I.algebra(),
                           Mat2(RingElem(Z, a1), RingElem(Z, a2), RingElem(Z, b1),
                                RingElem(Z, b2)));
}

/** Product lattice: span of the pairwise products of the bases, denominators
 * multiplied, result in reduced HNF.
 */
inline IdealLattice multiply_ideals(const IdealLattice& I, const IdealLattice& J) {
    if (I.algebra() != J.algebra())
        throw RingMismatchError("multiply_ideals: ideals over different algebras");
    const QuadraticAlgebra& A = I.algebra();
    std::vector<IVec> prods;
    for (const IVec& u : {I.col1(), I.col2()})
        for (const IVec& v : {J.col1(), J.col2()}) prods.push_back(alg_mul(A, u, v));
    return hnf_lattice(A, prods, I.den() * J.den());
}

/** Scale a lattice by an algebra element (integer coordinates). */
inline IdealLattice scale_ideal(const IdealLattice& I, const IVec& c) {
    const QuadraticAlgebra& A = I.algebra();
    return hnf_lattice(A, {alg_mul(A, c, I.col1()), alg_mul(A, c, I.col2())}, I.den());
}

/** Realize a traceable module as a full ideal lattice in C (x) Q.
 *
 * Picks m among x, y, x + y with (m, Tm) independent over Q (for non-scalar
 * T at least one of the three works), maps m to 1 and Tm to tau, pushes the
 * basis of M through that map, clears denominators and returns the integral
 * content-primitive representative.  When T acts as a rational scalar the
 * module provably embeds in no full lattice and NotRealizable is thrown;
 * this covers the zero form / C = Z[tau]/(tau^2) pair.
 */
inline IdealLattice realize_as_ideal(const CorrespondencePair& p) {
    if (!p.ring().is_integers())
        throw DomainError("realize_as_ideal: defined over Z only");
    const QuadraticAlgebra& A = p.algebra();
    const Mat2& T = p.module.T();
    Int t00 = T.at(0, 0).value(), t01 = T.at(0, 1).value();
    Int t10 = T.at(1, 0).value(), t11 = T.at(1, 1).value();

    // B = [m | Tm]; cyclic iff det B != 0.
    const std::pair<Int, Int> candidates[3] = {{1, 0}, {0, 1}, {1, 1}};
    for (const auto& [mx, my] : candidates) {
        Int bx = t00 * mx + t01 * my;
        Int by = t10 * mx + t11 * my;
        Int det = mx * by - my * bx;
        if (det == 0) continue;

        // Adjugate columns of B: det * phi(x) and det * phi(y) in (1, tau).
        IVec fx{by, -my};
        IVec fy{-bx, mx};
        IdealLattice I0 = hnf_lattice(A, {fx, fy}, abs(det));

        // Integral content-primitive representative of the same class.
        Int g0 = abs(det) / I0.den();
        Int g = gcd(gcd(I0.d1(), I0.e()), I0.d2());
        IdealLattice I =
            hnf_lattice(A, {IVec{I0.d1() / g, 0}, IVec{I0.e() / g, I0.d2() / g}});

        // I = c * phi(M) with c = |det| / (g0 g); g0 g divides fx, fy
        // entrywise, so the transported basis is integral.  Check that
        // multiplication by tau on I matches T through it.
        Int dv = g0 * g;
        Int sgn = det < 0 ? -1 : 1;
        IVec ix{sgn * fx.x / dv, sgn * fx.y / dv};
        IVec iy{sgn * fy.x / dv, sgn * fy.y / dv};
        TraceableModule MI = ideal_to_module(I);
        auto [u00, u10] = coords_in(I, ix);
        auto [u01, u11] = coords_in(I, iy);
        Mat2 U = Mat2::from_ints(A.ring(), u00, u01, u10, u11);
        if (!U.det().is_unit() || !(MI.T() * U == U * T))
            throw DomainError("realize_as_ideal: internal basis transport check failed");
        return I;
    }
    throw NotRealizableError("realize_as_ideal: tau acts as a rational scalar; the module is "
                             "not a full lattice in C (x) Q");
}

/** Same ideal class: there are nonzero c, c' in C with c I = c' J.  Decided
 * through a module isomorphism phi: I -> J; the witnessed identity is
 * phi(d) I = d J for d = the integer d1 of I (the criterion used to prove
 * that ideal classes match module classes).
 */
inline bool same_ideal_class(const IdealLattice& I, const IdealLattice& J,
                             const SearchBounds& bounds = {}) {
    if (I.algebra() != J.algebra())
        throw RingMismatchError("same_ideal_class: ideals over different algebras");
    auto P = module_isomorphic(ideal_to_module(I), ideal_to_module(J), bounds);
    if (!P) return false;

    // phi(d1 * 1): d1 = col1 of I has coordinates e1; its image has coordinates
    // P e1 in J's basis.
    Int p00 = P->at(0, 0).value(), p10 = P->at(1, 0).value();
    IVec phi_d{p00 * J.d1() + p10 * J.e(), p10 * J.d2()};
    IVec d{I.d1(), 0};

    const QuadraticAlgebra& A = I.algebra();
    IdealLattice lhs = hnf_lattice(A, {alg_mul(A, phi_d, I.col1()), alg_mul(A, phi_d, I.col2())});
    IdealLattice rhs = hnf_lattice(A, {alg_mul(A, d, J.col1()), alg_mul(A, d, J.col2())});
    if (lhs != rhs) {
        if (algebra_discriminant(A).value() != 0)
            throw DomainError("same_ideal_class: module isomorphism failed the scaling "
                              "criterion in a non-degenerate algebra");
        return false; // degenerate algebras: criterion is only a semi-decision
    }
    return true;
}

/** The canonical presentation of the discriminant-D algebra: q0 = D mod 2,
 * r0 = (q0^2 - D)/4, orientation +1.
 */
inline QuadraticAlgebra discriminant_algebra(const Int& D) {
    if (floor_mod(D, 4) > 1)
        throw DomainError("discriminant_algebra: " + D.str() + " is not 0 or 1 mod 4");
    Int q0 = floor_mod(D, 2);
    return QuadraticAlgebra::from_ints(Ring::integers(), q0, (q0 * q0 - D) / 4, +1);
}

/** Gauss composition through the correspondence: shift both modules into the
 * canonical presentation of the common discriminant, realize as ideals,
 * multiply, and read the form back off the product module.  For D < 0 the
 * result is normalized to the positive definite SL2-reduced representative
 * (flipping through twisted diag(1,-1) when needed).
 */
inline BQForm compose_forms(const BQForm& f1, const BQForm& f2) {
    if (!f1.ring().is_integers() || !f2.ring().is_integers())
        throw DomainError("compose_forms: defined over Z only");
    if (f1.flavor() != f2.flavor())
        throw FlavorError("compose_forms: mixing flavors " + flavor_name(f1.flavor()) +
                          " and " + flavor_name(f2.flavor()));
    Int D = discriminant(f1).value();
    if (discriminant(f2).value() != D)
        throw DiscriminantMismatchError("compose_forms: discriminants " + D.str() + " and " +
                                        discriminant(f2).value().str() + " differ");
    if (D == 0)
        throw DegenerateError("compose_forms: discriminant must be nonzero");
    if (!is_primitive(f1) || !is_primitive(f2))
        throw ImprimitiveError("compose_forms: both forms must be primitive");

    const Ring Z = f1.ring();
    QuadraticAlgebra CD = discriminant_algebra(D);
    auto to_ideal = [&](const BQForm& f) {
        CorrespondencePair p = form_to_pair(f);
        // Shift (b, ac) to the canonical presentation: s = (q0 - b)/2.
        Int s = (CD.q().value() - f.b().value()) / 2;
        TraceableModule M = shift_module(p.module, RingElem(Z, s));
        if (M.algebra() != CD)
            throw DomainError("compose_forms: internal presentation shift failed");
        return realize_as_ideal(CorrespondencePair{M, f.flavor()});
    };

    IdealLattice prod = multiply_ideals(to_ideal(f1), to_ideal(f2));
    BQForm f = pair_to_form(CorrespondencePair{ideal_to_module(prod), f1.flavor()}).form;

    if (D < 0) {
        if (f.a().value() < 0)
            f = apply_gl2(f, GL2::from_ints(Z, 1, 0, 0, -1), ActionMode::twisted);
        f = reduce_posdef(f).form;
    }
    return f;
}

/** All reduced primitive positive definite forms of discriminant D < 0,
 * in ascending (a, b) order.
 */
inline std::vector<BQForm> reduced_primitive_forms(const Int& D, Flavor flavor = Flavor::twisted) {
    if (D >= 0)
        throw DomainError("reduced_primitive_forms: D must be negative");
    if (floor_mod(D, 4) > 1)
        throw DomainError("reduced_primitive_forms: " + D.str() + " is not 0 or 1 mod 4");
    const Ring Z = Ring::integers();
    std::vector<BQForm> out;
    for (Int a = 1; 3 * a * a <= -D; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            if (floor_mod(b - D, 2) != 0) continue;
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue; // tie rule: b >= 0 when a = c
            if (gcd(gcd(a, b), c) != 1) continue;
            out.push_back(BQForm::from_ints(Z, a, b, c, flavor));
        }
    }
    return out;
}

/** The class group of discriminant D < 0: reduced primitive forms, the full
 * composition table, and the abelian invariant factors.
 */
struct ClassGroup {
    Int disc;
    std::vector<BQForm> forms;
    std::vector<std::vector<int>> table; // table[i][j] = index of forms[i] o forms[j]
    int identity;
    std::vector<Int> invariant_factors; // ascending divisibility; empty = trivial group

    Int order() const { return Int(forms.size()); }
};

namespace detail {

/** Invariant factors of a finite abelian group given by its composition
 * table, via the element counts of the p-power torsion subgroups.
 */
inline std::vector<Int> abelian_invariants(const std::vector<std::vector<int>>& table,
                                           int identity) {
    int h = static_cast<int>(table.size());
    if (h == 1) return {};

    auto power = [&](int x, Int n) {
        int acc = identity;
        int base = x;
        while (n > 0) {
            if (n % 2 == 1) acc = table[acc][base];
            base = table[base][base];
            n /= 2;
        }
        return acc;
    };

    // Primary decomposition, collected per prime as exponents in descending order.
    std::vector<std::vector<int>> primary; // list of exponent vectors
    std::vector<Int> primes;
    Int n = h;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) primes.push_back(n);

    for (const Int& p : primes) {
        // m_k = number of cyclic factors of order >= p^k, from the size of the
        // p^k-torsion: |G[p^k]| / |G[p^(k-1)]| = p^(m_k).
        std::vector<int> mks;
        Int prev = 1;
        for (Int pk = p;; pk *= p) {
            Int cnt = 0;
            for (int x = 0; x < h; ++x)
                if (power(x, pk) == identity) ++cnt;
            if (cnt == prev) break;
            if (cnt % prev != 0)
                throw DomainError("abelian_invariants: torsion counts are not p-power graded");
            Int ratio = cnt / prev;
            int mk = 0;
            Int t = 1;
            while (t < ratio) { t *= p; ++mk; }
            if (t != ratio)
                throw DomainError("abelian_invariants: torsion layer is not a p-power");
            mks.push_back(mk);
            prev = cnt;
        }
        // Exponent multiset: factor #i (1-based from largest) has exponent
        // #{k : m_k >= i}.
        std::vector<int> exps;
        if (!mks.empty()) {
            for (int i = 1; i <= mks[0]; ++i) {
                int e = 0;
                for (int mk : mks)
                    if (mk >= i) ++e;
                exps.push_back(e);
            }
        }
        primary.push_back(exps);
    }

    // Align the largest prime powers to form the largest invariant factor.
    size_t count = 0;
    for (const auto& exps : primary) count = std::max(count, exps.size());
    std::vector<Int> factors(count, 1);
    for (size_t pi = 0; pi < primes.size(); ++pi)
        for (size_t i = 0; i < primary[pi].size(); ++i) {
            Int pw = 1;
            for (int k = 0; k < primary[pi][i]; ++k) pw *= primes[pi];
            factors[i] *= pw; // i = 0 is the largest factor
        }
    std::sort(factors.begin(), factors.end()); // ascending divisibility
    return factors;
}

} // namespace detail

inline ClassGroup class_group(const Int& D) {
    if (D >= 0)
        throw DomainError("class_group: D must be negative");
    std::vector<BQForm> forms = reduced_primitive_forms(D);
    int h = static_cast<int>(forms.size());

    auto index_of = [&](const BQForm& f) {
        for (int i = 0; i < h; ++i)
            if (forms[i] == f) return i;
        throw DomainError("class_group: composition left the reduced system");
    };

    BQForm principal = principal_form(D);
    int identity = index_of(principal);

    std::vector<std::vector<int>> table(h, std::vector<int>(h));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) table[i][j] = index_of(compose_forms(forms[i], forms[j]));

    // Group sanity: identity, Latin square, inverses, associativity.
    for (int i = 0; i < h; ++i)
        if (table[identity][i] != i || table[i][identity] != i)
            throw DomainError("class_group: principal class is not an identity");
    for (int i = 0; i < h; ++i) {
        std::vector<bool> seen(h, false);
        bool has_inverse = false;
        for (int j = 0; j < h; ++j) {
            if (seen[table[i][j]])
                throw DomainError("class_group: composition table is not cancellative");
            seen[table[i][j]] = true;
            if (table[i][j] == identity) has_inverse = true;
        }
        if (!has_inverse)
            throw DomainError("class_group: class without inverse");
    }
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            for (int k = 0; k < h; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw DomainError("class_group: composition is not associative");

    std::vector<Int> invariants = detail::abelian_invariants(table, identity);
    return ClassGroup{D, std::move(forms), std::move(table), identity, std::move(invariants)};
}

} // namespace quadrings

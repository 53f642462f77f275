#include <catch_amalgamated.hpp>

#include <random>

#include <quadrings/equivalence.hpp>
#include <quadrings/form.hpp>

#include "oracle.hpp"

using namespace quadrings;

namespace {

std::mt19937_64 rng(20260825);

Int rand_int(long lo, long hi) {
    return Int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

std::vector<BQForm> all_forms(const Ring& R, Flavor flavor) {
    std::vector<BQForm> out;
    for (const RingElem& a : elements_of(R))
        for (const RingElem& b : elements_of(R))
            for (const RingElem& c : elements_of(R)) out.emplace_back(a, b, c, flavor);
    return out;
}

} // namespace

TEST_CASE("form basics") {
    Ring Z = Ring::integers();
    BQForm f = BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted);

    REQUIRE(f.a().value() == 2);
    REQUIRE(f.b().value() == 1);
    REQUIRE(f.c().value() == 3);
    REQUIRE(f.flavor() == Flavor::twisted);
    REQUIRE(discriminant(f).value() == -23);
    REQUIRE(f.evaluate(elem(Z, 1), elem(Z, 0)).value() == 2);
    REQUIRE(f.evaluate(elem(Z, 0), elem(Z, 1)).value() == 3);
    REQUIRE(f.evaluate(elem(Z, 1), elem(Z, 1)).value() == 6);
    REQUIRE(f.evaluate(elem(Z, -2), elem(Z, 5)).value() == 8 - 10 + 75);

    REQUIRE(f == BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted));
    REQUIRE(f != BQForm::from_ints(Z, 2, 1, 3, Flavor::plain));
    REQUIRE(f.with_flavor(Flavor::linear).flavor() == Flavor::linear);

    Ring Z5 = Ring::mod(5);
    REQUIRE(discriminant(BQForm::from_ints(Z5, 2, 1, 3)).value() == 2); // -23 mod 5

    REQUIRE_THROWS_AS(BQForm(elem(Z, 1), elem(Z5, 1), elem(Z, 1), Flavor::plain),
                      RingMismatchError);
}

TEST_CASE("primitivity of forms") {
    Ring Z = Ring::integers();
    REQUIRE(is_primitive(BQForm::from_ints(Z, 2, 1, 3)));
    REQUIRE_FALSE(is_primitive(BQForm::from_ints(Z, 2, 4, 6)));
    REQUIRE_FALSE(is_primitive(BQForm::from_ints(Z, 0, 0, 0)));
    REQUIRE(is_primitive(BQForm::from_ints(Z, 0, 1, 0)));

    Ring Z4 = Ring::mod(4);
    REQUIRE_FALSE(is_primitive(BQForm::from_ints(Z4, 2, 2, 2)));
    REQUIRE(is_primitive(BQForm::from_ints(Z4, 2, 1, 2)));
}

TEST_CASE("substitution action agrees with the evaluation oracle") {
    SECTION("exhaustive over Z/2 and Z/3, both action modes") {
        for (long n : {2L, 3L}) {
            Ring R = Ring::mod(n);
            for (const BQForm& f : all_forms(R, Flavor::plain)) {
                for (const Mat2& m : all_gl2(R)) {
                    GL2 g(m);
                    for (ActionMode mode : {ActionMode::plain, ActionMode::twisted})
                        REQUIRE(apply_gl2(f, g, mode) == oracle::apply_by_evaluation(f, m, mode));
                }
            }
        }
    }

    SECTION("twisted action with determinants other than +-1 over Z/5") {
        Ring R = Ring::mod(5);
        GL2 g = GL2::from_ints(R, 1, 2, 0, 3); // det 3
        REQUIRE(g.det().value() == 3);
        for (const BQForm& f : all_forms(R, Flavor::twisted)) {
            BQForm tw = apply_gl2(f, g, ActionMode::twisted);
            REQUIRE(tw == oracle::apply_by_evaluation(f, g.mat(), ActionMode::twisted));
            // defining relation: det * (twisted image) = plain substitution image
            BQForm pl = apply_gl2(f, g, ActionMode::plain);
            REQUIRE(tw.a() * g.det() == pl.a());
            REQUIRE(tw.b() * g.det() == pl.b());
            REQUIRE(tw.c() * g.det() == pl.c());
        }
    }
}

TEST_CASE("substitution respects products and the identity") {
    SECTION("exhaustive composition over Z/3") {
        Ring R = Ring::mod(3);
        BQForm f = BQForm::from_ints(R, 1, 2, 2);
        for (const Mat2& m1 : all_gl2(R)) {
            for (const Mat2& m2 : all_gl2(R)) {
                GL2 g1(m1), g2(m2);
                for (ActionMode mode : {ActionMode::plain, ActionMode::twisted})
                    REQUIRE(apply_gl2(apply_gl2(f, g1, mode), g2, mode) ==
                            apply_gl2(f, g1 * g2, mode));
            }
        }
    }

    SECTION("random composition over Z") {
        Ring Z = Ring::integers();
        for (int trial = 0; trial < 200; ++trial) {
            BQForm f(elem(Z, rand_int(-30, 30)), elem(Z, rand_int(-30, 30)),
                     elem(Z, rand_int(-30, 30)), Flavor::plain);
            Int k = rand_int(-4, 4), l = rand_int(-4, 4);
            Int det = rand_int(0, 1) == 0 ? 1 : -1;
            // build a unimodular matrix from a Bezout pair
            Int x, y;
            Int g = ext_gcd(k, l, x, y);
            if (g != 1) continue;
            GL2 m = GL2::from_ints(Z, k, l, -det * y, det * x);
            for (ActionMode mode : {ActionMode::plain, ActionMode::twisted}) {
                REQUIRE(apply_gl2(f, m, mode) == oracle::apply_by_evaluation(f, m.mat(), mode));
                REQUIRE(apply_gl2(f, GL2::identity(Z), mode) == f);
            }
        }
    }
}

TEST_CASE("discriminant transformation laws") {
    Ring R = Ring::mod(7);
    for (const BQForm& f : all_forms(R, Flavor::plain)) {
        GL2 g = GL2::from_ints(R, 2, 1, 1, 3); // det 5, a unit mod 7
        RingElem d2 = g.det() * g.det();
        REQUIRE(discriminant(apply_gl2(f, g, ActionMode::plain)) == discriminant(f) * d2);
        REQUIRE(discriminant(apply_gl2(f, g, ActionMode::twisted)) == discriminant(f));
    }
}

TEST_CASE("unit scaling of linear forms") {
    Ring R = Ring::mod(9);
    BQForm f = BQForm::from_ints(R, 2, 5, 7, Flavor::linear);
    RingElem u = elem(R, 4);

    BQForm uf = apply_gl1(f, u);
    REQUIRE(uf.a() == u * f.a());
    REQUIRE(uf.b() == u * f.b());
    REQUIRE(uf.c() == u * f.c());
    REQUIRE(discriminant(uf) == u * u * discriminant(f));

    REQUIRE_THROWS_AS(apply_gl1(f.with_flavor(Flavor::twisted), u), FlavorError);
    REQUIRE_THROWS_AS(apply_gl1(f.with_flavor(Flavor::plain), u), FlavorError);
    REQUIRE_THROWS_AS(apply_gl1(f, elem(R, 3)), NotAUnitError);
}

TEST_CASE("GL2 wrapper enforces invertibility") {
    Ring Z = Ring::integers();
    REQUIRE_THROWS_AS(GL2::from_ints(Z, 1, 0, 0, 2), NotInvertibleError);
    REQUIRE_THROWS_AS(GL2::from_ints(Ring::mod(4), 1, 0, 0, 2), NotInvertibleError);
    REQUIRE(GL2::from_ints(Ring::mod(5), 1, 0, 0, 2).det().value() == 2);

    GL2 g = GL2::from_ints(Z, 2, 1, 1, 1);
    REQUIRE(g * g.inverse() == GL2::identity(Z));
}

TEST_CASE("all_gl2 enumerates the whole group") {
    REQUIRE(all_gl2(Ring::mod(2)).size() == 6);   // |GL2(F2)| = 6
    REQUIRE(all_gl2(Ring::mod(3)).size() == 48);  // |GL2(F3)| = 48
    REQUIRE(all_gl2(Ring::mod(4)).size() == 96);  // |GL2(Z/4)| = 96
    for (const Mat2& m : all_gl2(Ring::mod(4))) REQUIRE(m.det().is_unit());
}

TEST_CASE("gauss reduction over Z") {
    Ring Z = Ring::integers();

    SECTION("known reductions") {
        Reduced r = reduce_posdef(BQForm::from_ints(Z, 4, 13, 12));
        REQUIRE(r.form == BQForm::from_ints(Z, 2, -1, 3));
        REQUIRE(apply_gl2(BQForm::from_ints(Z, 4, 13, 12), r.witness, ActionMode::plain) ==
                r.form);
        REQUIRE(r.witness.det().value() == 1);

        REQUIRE(reduce_posdef(BQForm::from_ints(Z, 1, 1, 6)).form ==
                BQForm::from_ints(Z, 1, 1, 6));
    }

    SECTION("agrees with the textbook move loop on random forms") {
        for (int trial = 0; trial < 300; ++trial) {
            Int a = rand_int(1, 40), b = rand_int(-40, 40);
            // force negative discriminant: c > b^2 / 4a
            Int c = floor_div(b * b, 4 * a) + rand_int(1, 40);
            BQForm f(elem(Z, a), elem(Z, b), elem(Z, c), Flavor::twisted);
            REQUIRE(discriminant(f).value() < 0);
            Reduced r = reduce_posdef(f);
            auto t = oracle::reduce_triple(a, b, c);
            REQUIRE(r.form.a().value() == t[0]);
            REQUIRE(r.form.b().value() == t[1]);
            REQUIRE(r.form.c().value() == t[2]);
            REQUIRE(r.witness.det().value() == 1);
            REQUIRE(apply_gl2(f, r.witness, ActionMode::plain) == r.form);
            // idempotent
            REQUIRE(reduce_posdef(r.form).form == r.form);
        }
    }

    SECTION("rejects indefinite and non-positive input") {
        REQUIRE_THROWS_AS(reduce_posdef(BQForm::from_ints(Z, 1, 0, -3)), DomainError);
        REQUIRE_THROWS_AS(reduce_posdef(BQForm::from_ints(Z, -1, 0, -3)), DomainError);
        REQUIRE_THROWS_AS(reduce_posdef(BQForm::from_ints(Ring::mod(5), 1, 0, 1)), DomainError);
    }
}

TEST_CASE("principal forms") {
    REQUIRE(principal_form(-23) == BQForm::from_ints(Ring::integers(), 1, 1, 6, Flavor::twisted));
    REQUIRE(principal_form(-4) == BQForm::from_ints(Ring::integers(), 1, 0, 1, Flavor::twisted));
    REQUIRE(principal_form(12) == BQForm::from_ints(Ring::integers(), 1, 0, -3, Flavor::twisted));
    REQUIRE(discriminant(principal_form(-71)).value() == -71);
    REQUIRE_THROWS_AS(principal_form(-5), DomainError);
}

TEST_CASE("equivalence search over finite rings and Z") {
    Ring Z = Ring::integers();

    SECTION("finite rings are decided exhaustively") {
        Ring R = Ring::mod(3);
        BQForm f = BQForm::from_ints(R, 1, 0, 1, Flavor::twisted);
        BQForm g = oracle::apply_by_evaluation(
            f, Mat2::from_ints(R, 1, 1, 2, 0), ActionMode::twisted);
        auto w = equivalent(f, g);
        REQUIRE(w.has_value());
        // a form with a different discriminant cannot be twisted-equivalent
        BQForm h = BQForm::from_ints(R, 1, 1, 1, Flavor::twisted);
        REQUIRE(discriminant(h) != discriminant(f));
        REQUIRE_FALSE(equivalent(f, h).has_value());
    }

    SECTION("definite forms over Z are decided via reduction") {
        BQForm f = BQForm::from_ints(Z, 4, 13, 12, Flavor::plain);
        BQForm g = BQForm::from_ints(Z, 2, -1, 3, Flavor::plain);
        auto w = equivalent(f, g, EquivMode::sl2);
        REQUIRE(w.has_value());
        REQUIRE(apply_gl2(f, w->g, ActionMode::plain) == g);

        // (2,1,3) and (2,-1,3) are inverse classes: no SL2 witness...
        BQForm p = BQForm::from_ints(Z, 2, 1, 3, Flavor::plain);
        BQForm q = BQForm::from_ints(Z, 2, -1, 3, Flavor::plain);
        REQUIRE_FALSE(equivalent(p, q, EquivMode::sl2).has_value());
        // ...but a det -1 substitution works: diag(1,-1) flips the middle sign
        auto pw = equivalent(p, q, EquivMode::gl2_plain);
        REQUIRE(pw.has_value());
        REQUIRE(apply_gl2(p, pw->g, ActionMode::plain) == q);
        // under the det-corrected action a det -1 matrix flips definiteness,
        // so the same two forms stay inequivalent there...
        REQUIRE_FALSE(equivalent(p.with_flavor(Flavor::twisted), q.with_flavor(Flavor::twisted),
                                 EquivMode::gl2_twisted)
                          .has_value());
        // ...until unit rescaling is allowed as well
        auto lw = equivalent(p.with_flavor(Flavor::linear), q.with_flavor(Flavor::linear),
                             EquivMode::gl2_twisted_gl1);
        REQUIRE(lw.has_value());
    }

    SECTION("witnesses returned by the bounded search act correctly") {
        BQForm f = BQForm::from_ints(Z, 1, 0, -3, Flavor::twisted);
        BQForm g = BQForm::from_ints(Z, -1, 0, 3, Flavor::twisted);
        auto w = equivalent(f, g, EquivMode::gl2_twisted);
        REQUIRE(w.has_value());
        BQForm moved = apply_gl2(f, w->g, w->mode);
        if (!(w->scale == one(Z))) moved = detail::scale_coeffs(moved, w->scale);
        REQUIRE(moved == g);
    }
}

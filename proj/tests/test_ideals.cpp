#include <catch_amalgamated.hpp>

#include <random>

#include <quadrings/ideal.hpp>

#include "oracle.hpp"

using namespace quadrings;

namespace {

std::mt19937_64 rng(77130421);

Int rand_int(long lo, long hi) {
    return Int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

const Ring Z = Ring::integers();

// the discriminant -23 algebra Z[tau]/(tau^2 + tau + 6)
QuadraticAlgebra C23() { return QuadraticAlgebra::from_ints(Z, 1, 6); }

} // namespace

TEST_CASE("hermite normal form of tau-closed lattices") {
    QuadraticAlgebra C = C23();

    SECTION("the ideal (2, tau)") {
        IdealLattice I = hnf_lattice(C, {IVec{2, 0}, IVec{0, 1}});
        REQUIRE(I.d1() == 2);
        REQUIRE(I.e() == 0);
        REQUIRE(I.d2() == 1);
        REQUIRE(I.den() == 1);
        REQUIRE(I.contains(IVec{2, 0}));
        REQUIRE(I.contains(IVec{-4, 3}));
        REQUIRE_FALSE(I.contains(IVec{1, 0}));
    }

    SECTION("generator order and redundancy do not matter") {
        IdealLattice I = hnf_lattice(C, {IVec{0, 1}, IVec{2, 0}, IVec{2, 1}, IVec{-6, -1}});
        REQUIRE(I == hnf_lattice(C, {IVec{2, 0}, IVec{0, 1}}));
    }

    SECTION("fractions are kept reduced") {
        IdealLattice I = hnf_lattice(C, {IVec{4, 0}, IVec{0, 2}}, 2);
        REQUIRE(I.d1() == 2);
        REQUIRE(I.d2() == 1);
        REQUIRE(I.den() == 1);
    }

    SECTION("covolume matches the minor-gcd oracle") {
        for (int trial = 0; trial < 200; ++trial) {
            Int q = rand_int(-9, 9), r = rand_int(-9, 9);
            QuadraticAlgebra A(elem(Z, q), elem(Z, r));
            // span of (v, tau v, w, tau w) is always a tau-closed module
            IVec v{rand_int(-9, 9), rand_int(-9, 9)};
            IVec w{rand_int(-9, 9), rand_int(-9, 9)};
            std::vector<IVec> gens = {v, tau_times(A, v), w, tau_times(A, w)};
            Int idx = oracle::lattice_index(
                {{v.x, v.y}, {gens[1].x, gens[1].y}, {w.x, w.y}, {gens[3].x, gens[3].y}});
            if (idx == 0) {
                REQUIRE_THROWS_AS(hnf_lattice(A, gens), NotFullError);
            } else {
                IdealLattice I = hnf_lattice(A, gens);
                REQUIRE(I.d1() * I.d2() == idx);
                for (const IVec& g : gens) REQUIRE(I.contains(g));
            }
        }
    }

    SECTION("lattices not closed under tau are rejected") {
        // span(1, 2 tau): tau * 1 = tau is not in the lattice
        REQUIRE_THROWS_AS(hnf_lattice(C, {IVec{1, 0}, IVec{0, 2}}), NotAnIdealError);
    }

    SECTION("rank deficiency and bad denominators are rejected") {
        REQUIRE_THROWS_AS(hnf_lattice(C, {IVec{2, 0}, IVec{4, 0}}), NotFullError);
        REQUIRE_THROWS_AS(hnf_lattice(C, {IVec{1, 0}, IVec{0, 1}}, 0), DomainError);
        REQUIRE_THROWS_AS(
            hnf_lattice(QuadraticAlgebra::from_ints(Ring::mod(5), 1, 1), {IVec{1, 0}, IVec{0, 1}}),
            DomainError);
    }
}

TEST_CASE("coordinates in the lattice basis") {
    IdealLattice I = hnf_lattice(C23(), {IVec{2, 0}, IVec{0, 1}});
    auto [a, b] = coords_in(I, IVec{-4, 3});
    REQUIRE(a == -2);
    REQUIRE(b == 3);
    REQUIRE_THROWS_AS(coords_in(I, IVec{1, 0}), DomainError);
}

TEST_CASE("the module carried by an ideal") {
    QuadraticAlgebra C = C23();

    SECTION("unit ideal gives the companion matrix of tau") {
        TraceableModule M = ideal_to_module(unit_ideal(C));
        REQUIRE(M.T() == Mat2::from_ints(Z, 0, -6, 1, -1));
    }

    SECTION("(2, tau) gives the matrix computed by hand") {
        TraceableModule M = ideal_to_module(hnf_lattice(C, {IVec{2, 0}, IVec{0, 1}}));
        // tau * 2 = 2 tau, tau * tau = -6 - tau
        REQUIRE(M.T() == Mat2::from_ints(Z, 0, -3, 2, -1));
    }
}

TEST_CASE("ideal multiplication") {
    QuadraticAlgebra C = C23();
    IdealLattice P = hnf_lattice(C, {IVec{2, 0}, IVec{0, 1}});      // (2, tau)
    IdealLattice Pbar = hnf_lattice(C, {IVec{2, 0}, IVec{1, 1}});   // (2, 1 + tau)

    SECTION("(2, tau)^2 = (4, 2 + tau)") {
        IdealLattice sq = multiply_ideals(P, P);
        REQUIRE(sq.d1() == 4);
        REQUIRE(sq.e() == 2);
        REQUIRE(sq.d2() == 1);
        REQUIRE(sq.den() == 1);
    }

    SECTION("(2, tau)(2, 1 + tau) = (2)") {
        IdealLattice prod = multiply_ideals(P, Pbar);
        REQUIRE(prod == scale_ideal(unit_ideal(C), IVec{2, 0}));
        REQUIRE(prod == hnf_lattice(C, {IVec{2, 0}, IVec{0, 2}}));
    }

    SECTION("the unit ideal is neutral") {
        REQUIRE(multiply_ideals(P, unit_ideal(C)) == P);
        REQUIRE(multiply_ideals(unit_ideal(C), Pbar) == Pbar);
    }

    SECTION("multiplication is commutative and associative here") {
        REQUIRE(multiply_ideals(P, Pbar) == multiply_ideals(Pbar, P));
        REQUIRE(multiply_ideals(multiply_ideals(P, P), Pbar) ==
                multiply_ideals(P, multiply_ideals(P, Pbar)));
    }

    SECTION("algebras must match") {
        IdealLattice other = unit_ideal(QuadraticAlgebra::from_ints(Z, 0, 1));
        REQUIRE_THROWS_AS(multiply_ideals(P, other), RingMismatchError);
    }
}

TEST_CASE("realizing a module as an ideal") {
    QuadraticAlgebra C = C23();

    SECTION("the module of (2,1,3) realizes as {3, 1 + tau}") {
        CorrespondencePair p = form_to_pair(BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted));
        REQUIRE(p.algebra() == C);
        IdealLattice I = realize_as_ideal(p);
        REQUIRE(I.d1() == 3);
        REQUIRE(I.e() == 1);
        REQUIRE(I.d2() == 1);
        REQUIRE(I.den() == 1);
    }

    SECTION("the realized ideal lies in the class the module determines") {
        CorrespondencePair p = form_to_pair(BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted));
        IdealLattice I = realize_as_ideal(p);
        IdealLattice P = hnf_lattice(C, {IVec{2, 0}, IVec{0, 1}}); // (2, tau)
        REQUIRE(same_ideal_class(I, P));
        // but not in the principal class, nor in the inverse class
        REQUIRE_FALSE(same_ideal_class(I, unit_ideal(C)));
        REQUIRE_FALSE(same_ideal_class(I, hnf_lattice(C, {IVec{2, 0}, IVec{1, 1}})));
    }

    SECTION("principal modules realize principally") {
        CorrespondencePair p = form_to_pair(BQForm::from_ints(Z, 1, 1, 6, Flavor::twisted));
        REQUIRE(same_ideal_class(realize_as_ideal(p), unit_ideal(C)));
    }

    SECTION("scalar tau action cannot be realized") {
        // the zero form: C = Z[tau]/tau^2, T = 0
        CorrespondencePair p = form_to_pair(BQForm::from_ints(Z, 0, 0, 0, Flavor::twisted));
        REQUIRE_THROWS_AS(realize_as_ideal(p), NotRealizableError);

        // nonzero scalar: q = -2, r = 1, T = I (tau acts as 1)
        QuadraticAlgebra A = QuadraticAlgebra::from_ints(Z, -2, 1);
        CorrespondencePair scalar{TraceableModule(A, Mat2::identity(Z)), Flavor::twisted};
        REQUIRE_THROWS_AS(realize_as_ideal(scalar), NotRealizableError);
    }

    SECTION("realization works from every shifted presentation") {
        BQForm f = BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted);
        CorrespondencePair p = form_to_pair(f);
        for (int s = -3; s <= 3; ++s) {
            CorrespondencePair moved{shift_module(p.module, elem(Z, s)), Flavor::twisted};
            REQUIRE_NOTHROW(realize_as_ideal(moved));
        }
    }
}

TEST_CASE("ideal classes survive principal scalings") {
    QuadraticAlgebra C = C23();
    IdealLattice P = hnf_lattice(C, {IVec{2, 0}, IVec{0, 1}});
    for (auto [cx, cy] : {std::pair<int, int>{3, 1}, {1, 2}, {-2, 5}}) {
        IdealLattice scaled = scale_ideal(P, IVec{cx, cy});
        REQUIRE(same_ideal_class(P, scaled));
        REQUIRE(same_ideal_class(scaled, P));
    }
}

TEST_CASE("composition of forms") {
    SECTION("the two pinned products") {
        BQForm f = BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted);
        REQUIRE(compose_forms(f, f) == BQForm::from_ints(Z, 2, -1, 3, Flavor::twisted));

        BQForm g = BQForm::from_ints(Z, 2, 1, 2, Flavor::twisted); // disc -15
        REQUIRE(compose_forms(g, g) == BQForm::from_ints(Z, 1, 1, 4, Flavor::twisted));
    }

    SECTION("the principal form is an identity") {
        for (Int D : {Int(-23), Int(-15), Int(-47)}) {
            BQForm e = principal_form(D);
            for (const BQForm& f : reduced_primitive_forms(D)) {
                REQUIRE(compose_forms(e, f) == f);
                REQUIRE(compose_forms(f, e) == f);
            }
        }
    }

    SECTION("agrees with direct Dirichlet composition whenever it applies") {
        for (Int D : {Int(-23), Int(-47), Int(-71), Int(-84), Int(-56)}) {
            auto forms = reduced_primitive_forms(D);
            for (const BQForm& f1 : forms) {
                for (const BQForm& f2 : forms) {
                    auto expect = oracle::dirichlet_compose(
                        {f1.a().value(), f1.b().value(), f1.c().value()},
                        {f2.a().value(), f2.b().value(), f2.c().value()});
                    if (!expect) continue;
                    BQForm got = compose_forms(f1, f2);
                    REQUIRE(got.a().value() == (*expect)[0]);
                    REQUIRE(got.b().value() == (*expect)[1]);
                    REQUIRE(got.c().value() == (*expect)[2]);
                }
            }
        }
    }

    SECTION("input checking") {
        BQForm f = BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted);
        BQForm g15 = BQForm::from_ints(Z, 2, 1, 2, Flavor::twisted);
        REQUIRE_THROWS_AS(compose_forms(f, g15), DiscriminantMismatchError);
        REQUIRE_THROWS_AS(compose_forms(f, f.with_flavor(Flavor::plain)), FlavorError);
        BQForm imp = BQForm::from_ints(Z, 2, 2, 4, Flavor::twisted);
        REQUIRE_THROWS_AS(compose_forms(imp, imp), ImprimitiveError);
        BQForm degen = BQForm::from_ints(Z, 1, 2, 1, Flavor::twisted);
        REQUIRE_THROWS_AS(compose_forms(degen, degen), DegenerateError);
    }
}

TEST_CASE("reduced primitive form enumeration") {
    SECTION("matches the independent triple scan") {
        for (Int D = -3; D >= -120; --D) {
            if (floor_mod(D, 4) > 1) continue;
            auto lib = reduced_primitive_forms(D);
            auto ref = oracle::reduced_triples(D);
            REQUIRE(lib.size() == ref.size());
            for (size_t i = 0; i < lib.size(); ++i) {
                REQUIRE(lib[i].a().value() == ref[i][0]);
                REQUIRE(lib[i].b().value() == ref[i][1]);
                REQUIRE(lib[i].c().value() == ref[i][2]);
            }
        }
    }

    SECTION("the -23 list is the classical one") {
        auto forms = reduced_primitive_forms(-23);
        REQUIRE(forms.size() == 3);
        REQUIRE(forms[0] == BQForm::from_ints(Z, 1, 1, 6, Flavor::twisted));
        REQUIRE(forms[1] == BQForm::from_ints(Z, 2, -1, 3, Flavor::twisted));
        REQUIRE(forms[2] == BQForm::from_ints(Z, 2, 1, 3, Flavor::twisted));
    }
}

TEST_CASE("class groups") {
    SECTION("orders of the classical examples") {
        REQUIRE(class_group(-23).order() == 3);
        REQUIRE(class_group(-15).order() == 2);
        REQUIRE(class_group(-47).order() == 5);
        REQUIRE(class_group(-71).order() == 7);
        REQUIRE(class_group(-4).order() == 1);
    }

    SECTION("invariant factors, including a non-cyclic group") {
        REQUIRE(class_group(-23).invariant_factors == std::vector<Int>{3});
        REQUIRE(class_group(-4).invariant_factors.empty());
        REQUIRE(class_group(-56).invariant_factors == std::vector<Int>{4});
        REQUIRE(class_group(-84).invariant_factors == std::vector<Int>{2, 2});
    }

    SECTION("the table is a group table with the principal identity") {
        ClassGroup G = class_group(-47);
        size_t h = G.forms.size();
        REQUIRE(G.forms[G.identity] == principal_form(-47));
        for (size_t i = 0; i < h; ++i) {
            std::vector<bool> seen(h, false);
            for (size_t j = 0; j < h; ++j) {
                int k = G.table[i][j];
                REQUIRE(k == G.table[j][i]);
                REQUIRE_FALSE(seen[k]);
                seen[k] = true;
            }
            REQUIRE(G.table[i][G.identity] == int(i));
        }
    }

    SECTION("order matches the oracle count for a sweep of discriminants") {
        for (Int D = -3; D >= -100; --D) {
            if (floor_mod(D, 4) > 1) continue;
            REQUIRE(class_group(D).order() == oracle::class_number(D));
        }
    }
}

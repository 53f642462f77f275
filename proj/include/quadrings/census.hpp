#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "correspondence.hpp"

namespace quadrings {

/** Enumeration guard: censuses are exhaustive, so the modulus is capped. */
struct CensusOptions {
    Int max_modulus = 5;
};

struct FormOrbit {
    BQForm rep; // lexicographically smallest member
    long size;
    RingElem disc;
    bool primitive;
};

struct FormCensus {
    Ring ring;
    Flavor flavor;
    std::vector<FormOrbit> orbits;
    std::vector<int> orbit_of; // indexed by a*n^2 + b*n + c
    long total;                // = n^3
};

struct PairClass {
    QuadraticAlgebra algebra; // of the lexicographically smallest member
    Mat2 T;
    long size;
    RingElem disc;
    bool invertible;
};

struct PairCensus {
    Ring ring;
    Flavor flavor;
    std::vector<PairClass> classes;
    std::vector<int> class_of; // indexed by (q,r,T) digits; -1 = not traceable
    long total_traceable;
};

namespace detail {

inline long digit(const RingElem& x) { return x.value().convert_to<long>(); }

inline void check_census_ring(const Ring& R, const CensusOptions& opt) {
    if (!R.is_finite())
        throw DomainError("census: ring must be finite");
    if (R.modulus() > opt.max_modulus)
        throw DomainError("census: modulus " + R.modulus().str() + " exceeds the bound " +
                          opt.max_modulus.str());
}

/** The flavor's form-side group as a generating set of endofunctions. */
inline std::vector<std::function<BQForm(const BQForm&)>> form_ops(const Ring& R, Flavor flavor) {
    std::vector<std::function<BQForm(const BQForm&)>> ops;
    ActionMode mode = flavor == Flavor::plain ? ActionMode::plain : ActionMode::twisted;
    for (const Mat2& g : gl2_generators(R))
        ops.push_back([g, mode](const BQForm& f) { return apply_gl2(f, GL2(g), mode); });
    if (flavor == Flavor::linear)
        for (const RingElem& u : units_of(R))
            ops.push_back([u](const BQForm& f) { return apply_gl1(f, u); });
    return ops;
}

struct PairPoint {
    RingElem q, r;
    Mat2 T;
};

/** The flavor's pair-side group: conjugation on T, shift and scale on tau.
 * twisted fixes the chosen generator (no scaling); plain ties the scale to
 * det(P)^-1; linear scales freely.
 */
inline std::vector<std::function<PairPoint(const PairPoint&)>> pair_ops(const Ring& R,
                                                                        Flavor flavor) {
    std::vector<std::function<PairPoint(const PairPoint&)>> ops;
    RingElem two(R, 2);

    auto scale = [two](const PairPoint& p, const RingElem& u) {
        return PairPoint{u * p.q, u * u * p.r, p.T * u};
    };

    for (const Mat2& g : gl2_generators(R)) {
        Mat2 gi = g.inverse();
        if (flavor == Flavor::plain) {
            RingElem u = g.det().inverse();
            ops.push_back([g, gi, u, scale](const PairPoint& p) {
                return scale(PairPoint{p.q, p.r, g * p.T * gi}, u);
            });
        } else {
            ops.push_back(
                [g, gi](const PairPoint& p) { return PairPoint{p.q, p.r, g * p.T * gi}; });
        }
    }
    // Shift tau by 1: (q, r) -> (q + 2, r + q + 1), T -> T - I.
    ops.push_back([two](const PairPoint& p) {
        const Ring& R_ = p.q.ring();
        return PairPoint{p.q + two, p.r + p.q + one(R_), p.T - Mat2::identity(R_)};
    });
    if (flavor == Flavor::linear)
        for (const RingElem& u : units_of(R))
            ops.push_back([u, scale](const PairPoint& p) { return scale(p, u); });
    return ops;
}

} // namespace detail

/** Orbits of the flavor's group on all n^3 forms over a finite ring,
 * deterministic (ascending index order, lex-smallest representatives).
 */
inline FormCensus enumerate_form_orbits(const Ring& R, Flavor flavor,
                                        const CensusOptions& opt = {}) {
    detail::check_census_ring(R, opt);
    long n = R.modulus().convert_to<long>();
    long total = n * n * n;

    auto decode = [&](long i) {
        return BQForm(RingElem(R, i / (n * n)), RingElem(R, (i / n) % n), RingElem(R, i % n),
                      flavor);
    };
    auto encode = [&](const BQForm& f) {
        return detail::digit(f.a()) * n * n + detail::digit(f.b()) * n + detail::digit(f.c());
    };

    auto ops = detail::form_ops(R, flavor);
    FormCensus census{R, flavor, {}, std::vector<int>(total, -1), total};

    for (long start = 0; start < total; ++start) {
        if (census.orbit_of[start] != -1) continue;
        int id = static_cast<int>(census.orbits.size());
        long size = 0;
        std::deque<long> queue{start};
        census.orbit_of[start] = id;
        while (!queue.empty()) {
            long i = queue.front();
            queue.pop_front();
            ++size;
            BQForm f = decode(i);
            for (const auto& op : ops) {
                long j = encode(op(f));
                if (census.orbit_of[j] == -1) {
                    census.orbit_of[j] = id;
                    queue.push_back(j);
                }
            }
        }
        BQForm rep = decode(start);
        census.orbits.push_back(FormOrbit{rep, size, discriminant(rep), is_primitive(rep)});
    }
    return census;
}

/** Classes of traceable pairs (q, r, T) over a finite ring under the flavor's
 * rigidified action, deterministic as above.
 */
inline PairCensus enumerate_pair_classes(const Ring& R, Flavor flavor,
                                         const CensusOptions& opt = {}) {
    detail::check_census_ring(R, opt);
    long n = R.modulus().convert_to<long>();
    long total = n * n * n * n * n * n;

    auto decode = [&](long i) {
        long t11 = i % n, t10 = (i / n) % n, t01 = (i / (n * n)) % n, t00 = (i / (n * n * n)) % n;
        long r = (i / (n * n * n * n)) % n, q = i / (n * n * n * n * n);
        return detail::PairPoint{RingElem(R, q), RingElem(R, r),
                                 Mat2(RingElem(R, t00), RingElem(R, t01), RingElem(R, t10),
                                      RingElem(R, t11))};
    };
    auto encode = [&](const detail::PairPoint& p) {
        long i = detail::digit(p.q);
        i = i * n + detail::digit(p.r);
        i = i * n + detail::digit(p.T.at(0, 0));
        i = i * n + detail::digit(p.T.at(0, 1));
        i = i * n + detail::digit(p.T.at(1, 0));
        i = i * n + detail::digit(p.T.at(1, 1));
        return i;
    };

    PairCensus census{R, flavor, {}, std::vector<int>(total, -1), 0};
    std::vector<char> traceable(total, 0);
    for (long i = 0; i < total; ++i) {
        detail::PairPoint p = decode(i);
        if (is_traceable(QuadraticAlgebra(p.q, p.r), p.T)) {
            traceable[i] = 1;
            ++census.total_traceable;
        }
    }

    auto ops = detail::pair_ops(R, flavor);
    for (long start = 0; start < total; ++start) {
        if (!traceable[start] || census.class_of[start] != -1) continue;
        int id = static_cast<int>(census.classes.size());
        long size = 0;
        std::deque<long> queue{start};
        census.class_of[start] = id;
        while (!queue.empty()) {
            long i = queue.front();
            queue.pop_front();
            ++size;
            detail::PairPoint p = decode(i);
            for (const auto& op : ops) {
                long j = encode(op(p));
                if (!traceable[j])
                    throw DomainError("enumerate_pair_classes: action left the traceable set");
                if (census.class_of[j] == -1) {
                    census.class_of[j] = id;
                    queue.push_back(j);
                }
            }
        }
        detail::PairPoint rep = decode(start);
        QuadraticAlgebra A(rep.q, rep.r);
        CorrespondencePair pair{TraceableModule(A, rep.T), flavor};
        census.classes.push_back(
            PairClass{A, rep.T, size, algebra_discriminant(A), is_invertible_module(pair)});
    }
    return census;
}

/** Result of checking that form_to_pair induces a discriminant- and
 * primitivity-preserving bijection between the two censuses.
 */
struct BijectionReport {
    Ring ring;
    Flavor flavor;
    FormCensus forms;
    PairCensus pairs;
    std::vector<int> orbit_to_class; // indexed by orbit id
    std::vector<std::string> discrepancies;
    bool pass;
};

inline BijectionReport verify_bijection(const Ring& R, Flavor flavor,
                                        const CensusOptions& opt = {}) {
    FormCensus F = enumerate_form_orbits(R, flavor, opt);
    PairCensus P = enumerate_pair_classes(R, flavor, opt);
    long n = R.modulus().convert_to<long>();

    std::vector<int> orbit_to_class(F.orbits.size(), -1);
    std::vector<std::string> bad;

    auto note = [&](const std::string& s) {
        if (bad.size() < 32) bad.push_back(s);
    };

    for (long i = 0; i < F.total; ++i) {
        BQForm f(RingElem(R, i / (n * n)), RingElem(R, (i / n) % n), RingElem(R, i % n), flavor);
        CorrespondencePair p = form_to_pair(f);
        detail::PairPoint pt{p.algebra().q(), p.algebra().r(), p.module.T()};
        long j = detail::digit(pt.q);
        j = j * n + detail::digit(pt.r);
        j = j * n + detail::digit(pt.T.at(0, 0));
        j = j * n + detail::digit(pt.T.at(0, 1));
        j = j * n + detail::digit(pt.T.at(1, 0));
        j = j * n + detail::digit(pt.T.at(1, 1));
        int cls = P.class_of[j];
        if (cls < 0) {
            note("form index " + std::to_string(i) + ": image is not traceable");
            continue;
        }
        int orbit = F.orbit_of[i];
        if (orbit_to_class[orbit] == -1)
            orbit_to_class[orbit] = cls;
        else if (orbit_to_class[orbit] != cls)
            note("orbit " + std::to_string(orbit) + ": image class is not well defined");
        if (discriminant(f) != algebra_discriminant(p.algebra()))
            note("form index " + std::to_string(i) + ": discriminant not preserved");
    }

    std::vector<int> hits(P.classes.size(), 0);
    for (size_t o = 0; o < orbit_to_class.size(); ++o) {
        int cls = orbit_to_class[o];
        if (cls == -1) {
            note("orbit " + std::to_string(o) + ": no image class");
            continue;
        }
        ++hits[cls];
        if (F.orbits[o].primitive != P.classes[cls].invertible)
            note("orbit " + std::to_string(o) + ": primitivity does not match invertibility");
    }
    for (size_t c = 0; c < hits.size(); ++c) {
        if (hits[c] == 0) note("pair class " + std::to_string(c) + ": not hit by any orbit");
        if (hits[c] > 1) note("pair class " + std::to_string(c) + ": hit by multiple orbits");
    }

    long form_sum = 0;
    for (const auto& o : F.orbits) form_sum += o.size;
    if (form_sum != F.total) note("form orbit sizes do not sum to n^3");
    long pair_sum = 0;
    for (const auto& c : P.classes) pair_sum += c.size;
    if (pair_sum != P.total_traceable) note("pair class sizes do not sum to the traceable count");

    bool pass = bad.empty();
    return BijectionReport{R, flavor, std::move(F), std::move(P), std::move(orbit_to_class),
                           std::move(bad), pass};
}

/** Deterministic plain-text rendering of a report (byte-stable per input). */
inline std::string render_report(const BijectionReport& rep) {
    std::string s;
    s += "bijection " + rep.ring.str() + " " + flavor_name(rep.flavor) + ": ";
    s += rep.pass ? "PASS" : "FAIL";
    s += "\n  forms: " + std::to_string(rep.forms.total) + " in " +
         std::to_string(rep.forms.orbits.size()) + " orbits; pairs: " +
         std::to_string(rep.pairs.total_traceable) + " traceable in " +
         std::to_string(rep.pairs.classes.size()) + " classes\n";
    for (size_t o = 0; o < rep.forms.orbits.size(); ++o) {
        const FormOrbit& fo = rep.forms.orbits[o];
        s += "  orbit " + std::to_string(o) + ": rep (" + fo.rep.a().str() + "," +
             fo.rep.b().str() + "," + fo.rep.c().str() + ") size " + std::to_string(fo.size) +
             " disc " + fo.disc.str() + (fo.primitive ? " primitive" : " imprimitive");
        int cls = rep.orbit_to_class[o];
        if (cls >= 0) {
            const PairClass& pc = rep.pairs.classes[cls];
            s += " -> class " + std::to_string(cls) + ": (q,r) = (" + pc.algebra.q().str() +
                 "," + pc.algebra.r().str() + ") size " + std::to_string(pc.size) +
                 (pc.invertible ? " invertible" : " non-invertible");
        }
        s += "\n";
    }
    for (const std::string& d : rep.discrepancies) s += "  ! " + d + "\n";
    return s;
}

} // namespace quadrings

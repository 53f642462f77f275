#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "census.hpp"
#include "equivalence.hpp"
#include "ideal.hpp"

namespace quadrings {

// ordered_json keeps fields in the documented order instead of sorting keys.
using json = nlohmann::ordered_json;

/** Integers serialize as JSON numbers when they fit in 64 bits and as decimal
 * strings beyond that; both shapes (and either one) are accepted on input.
 */
inline json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return json(v.convert_to<std::int64_t>());
    return json(v.str());
}

inline Int json_to_int(const json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw DomainError("json: not an integer: " + j.dump());
        }
    }
    throw DomainError("json: expected an integer or decimal string, got " + j.dump());
}

inline json ring_to_json(const Ring& R) {
    if (R.is_integers()) return json("Z");
    return json{{"zmod", int_to_json(R.modulus())}};
}

inline Ring json_to_ring(const json& j) {
    if (j.is_string() && j.get<std::string>() == "Z") return Ring::integers();
    if (j.is_object() && j.contains("zmod")) return Ring::mod(json_to_int(j.at("zmod")));
    throw DomainError("json: expected \"Z\" or {\"zmod\": n}, got " + j.dump());
}

inline json elem_to_json(const RingElem& x) { return int_to_json(x.value()); }

inline RingElem json_to_elem(const json& j, const Ring& R) { return RingElem(R, json_to_int(j)); }

inline Flavor flavor_from_name(const std::string& name) {
    if (name == "plain") return Flavor::plain;
    if (name == "twisted") return Flavor::twisted;
    if (name == "linear") return Flavor::linear;
    throw DomainError("unknown flavor \"" + name + "\" (expected plain, twisted or linear)");
}

inline json form_to_json(const BQForm& f) {
    return json{{"ring", ring_to_json(f.ring())},
                {"coeffs", json::array({elem_to_json(f.a()), elem_to_json(f.b()),
                                        elem_to_json(f.c())})},
                {"flavor", flavor_name(f.flavor())}};
}

inline BQForm json_to_form(const json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("coeffs") || !j.contains("flavor"))
        throw DomainError("json: form needs ring, coeffs and flavor: " + j.dump());
    Ring R = json_to_ring(j.at("ring"));
    const json& c = j.at("coeffs");
    if (!c.is_array() || c.size() != 3)
        throw DomainError("json: form coeffs must be a triple: " + c.dump());
    return BQForm(json_to_elem(c.at(0), R), json_to_elem(c.at(1), R), json_to_elem(c.at(2), R),
                  flavor_from_name(j.at("flavor").get<std::string>()));
}

inline json mat_to_json(const Mat2& m) {
    return json::array(
        {json::array({elem_to_json(m.at(0, 0)), elem_to_json(m.at(0, 1))}),
         json::array({elem_to_json(m.at(1, 0)), elem_to_json(m.at(1, 1))})});
}

inline Mat2 json_to_mat(const json& j, const Ring& R) {
    if (!j.is_array() || j.size() != 2 || !j.at(0).is_array() || j.at(0).size() != 2 ||
        !j.at(1).is_array() || j.at(1).size() != 2)
        throw DomainError("json: matrix must be [[a,b],[c,d]]: " + j.dump());
    return Mat2(json_to_elem(j.at(0).at(0), R), json_to_elem(j.at(0).at(1), R),
                json_to_elem(j.at(1).at(0), R), json_to_elem(j.at(1).at(1), R));
}

inline json algebra_to_json(const QuadraticAlgebra& A) {
    return json{{"ring", ring_to_json(A.ring())},
                {"q", elem_to_json(A.q())},
                {"r", elem_to_json(A.r())},
                {"orientation", A.orientation()}};
}

inline QuadraticAlgebra json_to_algebra(const json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("q") || !j.contains("r"))
        throw DomainError("json: algebra needs ring, q and r: " + j.dump());
    Ring R = json_to_ring(j.at("ring"));
    int orientation = j.contains("orientation") ? j.at("orientation").get<int>() : +1;
    return QuadraticAlgebra(json_to_elem(j.at("q"), R), json_to_elem(j.at("r"), R), orientation);
}

inline json module_to_json(const TraceableModule& M) {
    return json{{"algebra", algebra_to_json(M.algebra())}, {"T", mat_to_json(M.T())}};
}

inline TraceableModule json_to_module(const json& j) {
    if (!j.is_object() || !j.contains("algebra") || !j.contains("T"))
        throw DomainError("json: module needs algebra and T: " + j.dump());
    QuadraticAlgebra A = json_to_algebra(j.at("algebra"));
    Mat2 T = json_to_mat(j.at("T"), A.ring());
    return TraceableModule(std::move(A), std::move(T));
}

/** Pairs are emitted flat: ring, flavor, q, r, orientation, T.  On input the
 * nested shapes {"module": …, "flavor": …} and {"algebra": …, "T": …,
 * "flavor": …} are accepted as well.
 */
inline json pair_to_json(const CorrespondencePair& p) {
    return json{{"ring", ring_to_json(p.ring())},
                {"flavor", flavor_name(p.flavor)},
                {"q", elem_to_json(p.algebra().q())},
                {"r", elem_to_json(p.algebra().r())},
                {"orientation", p.algebra().orientation()},
                {"T", mat_to_json(p.module.T())}};
}

inline CorrespondencePair json_to_pair(const json& j) {
    if (!j.is_object()) throw DomainError("json: pair must be an object: " + j.dump());
    Flavor flavor = j.contains("flavor")
                        ? flavor_from_name(j.at("flavor").get<std::string>())
                        : Flavor::twisted;
    if (j.contains("module"))
        return CorrespondencePair{json_to_module(j.at("module")), flavor};
    if (j.contains("algebra")) {
        QuadraticAlgebra A = json_to_algebra(j.at("algebra"));
        Mat2 T = json_to_mat(j.at("T"), A.ring());
        return CorrespondencePair{TraceableModule(std::move(A), std::move(T)), flavor};
    }
    if (j.contains("ring") && j.contains("q") && j.contains("r") && j.contains("T")) {
        Ring R = json_to_ring(j.at("ring"));
        int orientation = j.contains("orientation") ? j.at("orientation").get<int>() : +1;
        QuadraticAlgebra A(json_to_elem(j.at("q"), R), json_to_elem(j.at("r"), R), orientation);
        Mat2 T = json_to_mat(j.at("T"), R);
        return CorrespondencePair{TraceableModule(std::move(A), std::move(T)), flavor};
    }
    throw DomainError("json: pair needs module / algebra+T / ring+q+r+T: " + j.dump());
}

/** HNF serializes as the row-major matrix [[d1,e],[0,d2]] whose columns are
 * the lattice basis in coordinates (1, tau); den is the common denominator.
 */
inline json ideal_to_json(const IdealLattice& I) {
    return json{{"algebra", algebra_to_json(I.algebra())},
                {"hnf", json::array({json::array({int_to_json(I.d1()), int_to_json(I.e())}),
                                     json::array({json(0), int_to_json(I.d2())})})},
                {"den", int_to_json(I.den())}};
}

inline IdealLattice json_to_ideal(const json& j) {
    if (!j.is_object() || !j.contains("algebra") || !j.contains("hnf") || !j.contains("den"))
        throw DomainError("json: ideal needs algebra, hnf and den: " + j.dump());
    QuadraticAlgebra A = json_to_algebra(j.at("algebra"));
    const json& h = j.at("hnf");
    if (!h.is_array() || h.size() != 2 || !h.at(0).is_array() || h.at(0).size() != 2 ||
        !h.at(1).is_array() || h.at(1).size() != 2)
        throw DomainError("json: hnf must be [[d1,e],[0,d2]]: " + h.dump());
    Int d1 = json_to_int(h.at(0).at(0)), e = json_to_int(h.at(0).at(1));
    Int z = json_to_int(h.at(1).at(0)), d2 = json_to_int(h.at(1).at(1));
    if (z != 0) throw DomainError("json: hnf lower-left entry must be 0: " + h.dump());
    Int den = json_to_int(j.at("den"));
    return hnf_lattice(A, {IVec{d1, 0}, IVec{e, d2}}, den);
}

inline json witness_to_json(const EquivWitness& w) {
    return json{{"g", mat_to_json(w.g.mat())},
                {"scale", elem_to_json(w.scale)},
                {"mode", w.mode == ActionMode::plain ? "plain" : "twisted"}};
}

inline json classgroup_to_json(const ClassGroup& G) {
    json forms = json::array();
    for (const BQForm& f : G.forms)
        forms.push_back(json::array(
            {elem_to_json(f.a()), elem_to_json(f.b()), elem_to_json(f.c())}));
    json factors = json::array();
    for (const Int& d : G.invariant_factors) factors.push_back(int_to_json(d));
    return json{{"disc", int_to_json(G.disc)},
                {"order", int_to_json(G.order())},
                {"identity", G.identity},
                {"invariant_factors", factors},
                {"forms", forms},
                {"table", json(G.table)}};
}

/** Aligned, diff-friendly text rendering of a class group. */
inline std::string classgroup_to_text(const ClassGroup& G) {
    std::vector<std::string> labels;
    size_t width = 0;
    for (const BQForm& f : G.forms) {
        std::string s = "(" + f.a().str() + "," + f.b().str() + "," + f.c().str() + ")";
        width = std::max(width, s.size());
        labels.push_back(std::move(s));
    }
    auto pad = [width](const std::string& s) {
        return s + std::string(width - s.size() + 2, ' ');
    };
    std::string out = "discriminant " + G.disc.str() + ", order " + G.order().str() + "\n";
    out += "invariant factors:";
    if (G.invariant_factors.empty()) out += " 1 (trivial group)";
    for (const Int& d : G.invariant_factors) out += " " + d.str();
    out += "\n\n" + pad("");
    for (const std::string& l : labels) out += pad(l);
    out += "\n";
    for (size_t i = 0; i < labels.size(); ++i) {
        out += pad(labels[i]);
        for (size_t k = 0; k < labels.size(); ++k) out += pad(labels[G.table[i][k]]);
        out += "\n";
    }
    return out;
}

inline json report_to_json(const BijectionReport& rep) {
    json orbits = json::array();
    for (size_t o = 0; o < rep.forms.orbits.size(); ++o) {
        const FormOrbit& fo = rep.forms.orbits[o];
        orbits.push_back(json{{"rep", json::array({elem_to_json(fo.rep.a()),
                                                   elem_to_json(fo.rep.b()),
                                                   elem_to_json(fo.rep.c())})},
                              {"size", fo.size},
                              {"disc", elem_to_json(fo.disc)},
                              {"primitive", fo.primitive},
                              {"class", rep.orbit_to_class[o]}});
    }
    json classes = json::array();
    for (const PairClass& pc : rep.pairs.classes)
        classes.push_back(json{{"q", elem_to_json(pc.algebra.q())},
                               {"r", elem_to_json(pc.algebra.r())},
                               {"T", mat_to_json(pc.T)},
                               {"size", pc.size},
                               {"disc", elem_to_json(pc.disc)},
                               {"invertible", pc.invertible}});
    return json{{"ring", ring_to_json(rep.ring)},
                {"flavor", flavor_name(rep.flavor)},
                {"pass", rep.pass},
                {"form_total", rep.forms.total},
                {"traceable_total", rep.pairs.total_traceable},
                {"orbits", orbits},
                {"classes", classes},
                {"discrepancies", json(rep.discrepancies)},
                {"summary", render_report(rep)}};
}

inline json error_to_json(const Error& e) {
    return json{{"schema", 1}, {"error", e.code()}, {"message", e.what()}};
}

} // namespace quadrings

// Walks one discriminant end to end: reduced forms, the composition table,
// the invariant factors, and the algebra/module picture behind one class.

#include <iostream>

#include <quadrings/quadrings.hpp>

using namespace quadrings;

int main(int argc, char** argv) {
    Int D = -23;
    if (argc > 1) D = Int(argv[1]);

    std::cout << "class group of discriminant " << D << "\n\n";
    ClassGroup G = class_group(D);
    std::cout << classgroup_to_text(G) << "\n";

    std::cout << "the correspondence for each reduced form:\n";
    for (const BQForm& f : G.forms) {
        CorrespondencePair p = form_to_pair(f);
        std::cout << "  " << f << "  ->  C = " << p.algebra() << ", T = " << p.module.T();
        IdealLattice I = realize_as_ideal(p);
        std::cout << ", ideal " << I << "\n";
    }

    std::cout << "\nsquare of the first non-principal class, recomposed:\n";
    if (G.forms.size() > 1) {
        const BQForm& f = G.forms[1];
        BQForm sq = compose_forms(f, f);
        std::cout << "  " << f << " o " << f << " = " << sq << "\n";
    } else {
        std::cout << "  (group is trivial)\n";
    }
    return 0;
}

#pragma once

#include <stdexcept>
#include <string>

namespace quadrings {

/** Base class for all domain errors raised by this library.
 *
 * Every subclass carries a stable machine-readable code (used by the CLI to
 * build error payloads) next to the human-readable message.
 */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/** Operands belong to different ring contexts. */
struct RingMismatchError : Error {
    explicit RingMismatchError(const std::string& msg) : Error("ring_mismatch", msg) {}
};

/** Requested modulus does not define a supported residue ring (n >= 2). */
struct InvalidModulusError : Error {
    explicit InvalidModulusError(const std::string& msg) : Error("invalid_modulus", msg) {}
};

/** Inversion or unit-division was attempted on a non-unit. */
struct NotAUnitError : Error {
    explicit NotAUnitError(const std::string& msg) : Error("not_a_unit", msg) {}
};

/** An operation was applied to a form of the wrong flavor, or flavors were mixed. */
struct FlavorError : Error {
    explicit FlavorError(const std::string& msg) : Error("flavor_mismatch", msg) {}
};

/** A matrix that must lie in GL2 (unit determinant) does not. */
struct NotInvertibleError : Error {
    explicit NotInvertibleError(const std::string& msg) : Error("not_invertible", msg) {}
};

/** T fails the module axiom T^2 + qT + rI = 0 and/or the trace condition tr T = -q.
 *
 * The two flags record which half failed, so callers can distinguish
 * "not a module over C at all" from "a module, but not traceable".
 */
struct NotTraceableError : Error {
    NotTraceableError(const std::string& msg, bool module_axiom_ok_, bool trace_ok_)
        : Error("not_traceable", msg), module_axiom_ok(module_axiom_ok_), trace_ok(trace_ok_) {}

    bool module_axiom_ok;
    bool trace_ok;
};

/** The (b, ac) consistency check failed while reading a form off a module. */
struct InconsistentPairError : Error {
    explicit InconsistentPairError(const std::string& msg) : Error("inconsistent_pair", msg) {}
};

/** A lattice that should have full rank 2 does not. */
struct NotFullError : Error {
    explicit NotFullError(const std::string& msg) : Error("not_full", msg) {}
};

/** A lattice is not closed under multiplication by tau. */
struct NotAnIdealError : Error {
    explicit NotAnIdealError(const std::string& msg) : Error("not_an_ideal", msg) {}
};

/** The module provably cannot be realized as a full ideal lattice. */
struct NotRealizableError : Error {
    explicit NotRealizableError(const std::string& msg) : Error("not_realizable", msg) {}
};

/** An operation that needs a nonzero discriminant met a degenerate input. */
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error("degenerate", msg) {}
};

/** Composition was attempted on an imprimitive form. */
struct ImprimitiveError : Error {
    explicit ImprimitiveError(const std::string& msg) : Error("imprimitive", msg) {}
};

/** Two forms that must share a discriminant do not. */
struct DiscriminantMismatchError : Error {
    explicit DiscriminantMismatchError(const std::string& msg)
        : Error("discriminant_mismatch", msg) {}
};

/** Catch-all for precondition violations not covered by a more specific type. */
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain", msg) {}
};

} // namespace quadrings

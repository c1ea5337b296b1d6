#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace detzeta {

// Base class for all errors raised by the library. Every subclass carries a
// short machine-readable kind string so CLI wrappers can map errors to exit
// codes without RTTI gymnastics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define DETZETA_ERROR(Name)                                          \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

// series / evaluation
DETZETA_ERROR(DomainError);

// solvers
DETZETA_ERROR(NoConvergence);
DETZETA_ERROR(DerivativeVanished);
DETZETA_ERROR(RatioAboveOne);

// model / validation
DETZETA_ERROR(StructuralError);
DETZETA_ERROR(GeometryError);
DETZETA_ERROR(SolveError);
DETZETA_ERROR(ParseError);

// pinning
DETZETA_ERROR(SignInconsistency);
DETZETA_ERROR(AdmissibilityError);
DETZETA_ERROR(NonRealPoint);
DETZETA_ERROR(NonHyperbolic);

// determinant / slits
DETZETA_ERROR(TailNotConverging);
DETZETA_ERROR(KindMismatch);
DETZETA_ERROR(NotNeutral);
DETZETA_ERROR(NeutralDirectionWrong);

// operator numerics
DETZETA_ERROR(ContourViolation);
DETZETA_ERROR(InverseFailure);
DETZETA_ERROR(GeometryMismatch);
DETZETA_ERROR(SingularityNotRemovable);
DETZETA_ERROR(ParameterOutOfRange);

#undef DETZETA_ERROR

inline std::string format_point(std::complex<double> z) {
    return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
           std::to_string(z.imag()) + "i)";
}

}  // namespace detzeta

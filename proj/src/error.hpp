#ifndef MULTSPEC_ERROR_HPP
#define MULTSPEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace multspec {

enum class Err {
    Parse,
    NotPrime,
    ReducibleModulus,
    DivideByZero,
    FieldMismatch,
    InexactDivision,
    FieldTooLarge,
    DegenerateMap,
    DegreeTooLow,
    BudgetExceeded,
    NotPeriodic,
    InseparableMap,
    ConjugationSearchFailed,
    PlaceMismatch,
    SingularCurve,
    Unsupported,
    InseparablePolynomial,
    BadSpecialization,
    Internal,
};

struct Error : std::runtime_error {
    Err code;
    Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

inline const char* err_name(Err c) {
    switch (c) {
        case Err::Parse: return "Parse";
        case Err::NotPrime: return "NotPrime";
        case Err::ReducibleModulus: return "ReducibleModulus";
        case Err::DivideByZero: return "DivideByZero";
        case Err::FieldMismatch: return "FieldMismatch";
        case Err::InexactDivision: return "InexactDivision";
        case Err::FieldTooLarge: return "FieldTooLarge";
        case Err::DegenerateMap: return "DegenerateMap";
        case Err::DegreeTooLow: return "DegreeTooLow";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::NotPeriodic: return "NotPeriodic";
        case Err::InseparableMap: return "InseparableMap";
        case Err::ConjugationSearchFailed: return "ConjugationSearchFailed";
        case Err::PlaceMismatch: return "PlaceMismatch";
        case Err::SingularCurve: return "SingularCurve";
        case Err::Unsupported: return "Unsupported";
        case Err::InseparablePolynomial: return "InseparablePolynomial";
        case Err::BadSpecialization: return "BadSpecialization";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

struct Budget {
    // hard element count for exhaustive searches (root enumeration, PGL2 sweeps,
    // interpolation node supplies)
    unsigned long long enumeration = 1000000ULL;
    // degree caps for iterate/dynatomic intermediates
    int max_poly_degree = 2000;
    int max_coeff_degree = 5000;
};

inline const Budget& default_budget() {
    static const Budget b{};
    return b;
}

} // namespace multspec

#endif

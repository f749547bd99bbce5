#pragma once

#include <stdexcept>
#include <string>

namespace effbounds {

// Domain errors carry a stable name (used in CLI output and exit codes)
// and the module they originate from.
class Error : public std::runtime_error {
public:
    Error(std::string name, std::string module, const std::string& msg)
        : std::runtime_error(msg), name_(std::move(name)), module_(std::move(module)) {}

    const std::string& name() const { return name_; }
    const std::string& module() const { return module_; }

private:
    std::string name_;
    std::string module_;
};

// Fatal verification violations: a failed universal inequality always means
// an implementation bug, never an acceptable outcome.  Mapped to exit code 2.
class ViolationError : public Error {
public:
    using Error::Error;
};

inline Error err_not_squarefree(const std::string& msg)       { return Error("NotSquarefree", "nf_core", msg); }
inline Error err_limit_exceeded(const std::string& msg)       { return Error("LimitExceeded", "nf_core", msg); }
inline Error err_asserted_unsupported(const std::string& msg) { return Error("AssertedFieldUnsupported", "nf_core", msg); }
inline Error err_inconsistent(const std::string& msg)         { return Error("InconsistentInvariants", "nf_core", msg); }
inline Error err_missing_infinite(const std::string& msg)     { return Error("MissingInfinitePlace", "heights", msg); }
inline Error err_unknown_constant(const std::string& msg)     { return Error("UnknownConstant", "bounds", msg); }
inline Error err_param_out_of_range(const std::string& msg)   { return Error("ParamOutOfRange", "bounds", msg); }
inline Error err_requires_finite(const std::string& msg)      { return Error("RequiresFinitePlaces", "bounds", msg); }
inline Error err_not_s_integral(const std::string& msg)       { return Error("NotSIntegral", "bounds", msg); }
inline Error err_not_homogeneous(const std::string& msg)      { return Error("NotHomogeneous", "forms", msg); }
inline Error err_syntax(const std::string& msg)               { return Error("SyntaxError", "forms", msg); }
inline Error err_unsupported_coeff(const std::string& msg)    { return Error("UnsupportedCoefficientField", "forms", msg); }
inline Error err_does_not_split(const std::string& msg)       { return Error("DoesNotSplit", "forms", msg); }
inline Error err_factors_required(const std::string& msg)     { return Error("FactorsRequired", "forms", msg); }
inline Error err_verification_failed(const std::string& msg)  { return Error("VerificationFailed", "forms", msg); }
inline Error err_not_applicable(const std::string& msg)       { return Error("NotApplicable", "forms", msg); }
inline Error err_box_too_large(const std::string& msg)        { return Error("BoxTooLarge", "verify", msg); }
inline Error err_schema(const std::string& msg)               { return Error("SchemaError", "cli", msg); }

inline ViolationError err_bound_violated(const std::string& msg) { return ViolationError("BoundViolated", "verify", msg); }
inline ViolationError err_prop4_violated(const std::string& msg) { return ViolationError("Prop4Violated", "verify", msg); }
inline ViolationError err_prop5_violated(const std::string& msg) { return ViolationError("Prop5Violated", "verify", msg); }

} // namespace effbounds

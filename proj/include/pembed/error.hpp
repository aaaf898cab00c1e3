#ifndef PEMBED_ERROR_HPP
#define PEMBED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pembed {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : Error { ZeroPolynomial() : Error("zero polynomial") {} };
struct DegreeTooSmall : Error { DegreeTooSmall() : Error("degree too small") {} };
struct NotPrimitiveContent : Error { NotPrimitiveContent() : Error("content != 1") {} };
struct NoConvergence : Error { explicit NoConvergence(const std::string& m) : Error("root refinement failed: " + m) {} };
struct InequalityViolated : Error { explicit InequalityViolated(const std::string& m) : Error("inequality violated: " + m) {} };
struct DivisionByZero : Error { DivisionByZero() : Error("division by zero element") {} };
struct FieldMismatch : Error { FieldMismatch() : Error("elements belong to different fields") {} };
struct ZeroElement : Error { ZeroElement() : Error("zero element") {} };
struct NotGenerating : Error { NotGenerating() : Error("generators do not generate the ambient field") {} };
struct ZeroReduction : Error { ZeroReduction() : Error("polynomial vanishes mod p") {} };
struct SearchExhausted : Error {
    explicit SearchExhausted(unsigned long long limit)
        : Error("prime search exhausted below " + std::to_string(limit)), limit(limit) {}
    unsigned long long limit;
};
struct PreconditionViolated : Error { explicit PreconditionViolated(const std::string& m) : Error(m) {} };
struct FactorizationTimeout : Error { FactorizationTimeout() : Error("factorization effort exceeded") {} };
struct HypothesisNotMet : Error { explicit HypothesisNotMet(const std::string& m) : Error(m) {} };
struct NotSimpleRoot : Error { NotSimpleRoot() : Error("residue is not a simple root") {} };
struct ZeroValuation : Error { ZeroValuation() : Error("valuation of zero is infinite") {} };
struct PrecisionExhausted : Error { PrecisionExhausted() : Error("p-adic precision cap reached before valuation was determined") {} };
struct NotPrimePair : Error { NotPrimePair() : Error("k+t and k-t must both be prime") {} };
struct MissingInput : Error { explicit MissingInput(const std::string& name) : Error("missing input: " + name) {} };
struct InternalAssertionFailed : Error { explicit InternalAssertionFailed(const std::string& m) : Error("internal assertion failed: " + m) {} };
struct ParseError : Error { explicit ParseError(const std::string& m) : Error(m) {} };

} // namespace pembed

#endif

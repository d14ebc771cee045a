#pragma once

#include <stdexcept>
#include <string>

namespace subconv {

// Base class for every error this library throws on a violated precondition
// or an exhausted budget.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotCoprime : Error {
    explicit NotCoprime(const std::string& msg) : Error(msg) {}
};
struct ModuliNotCoprime : Error {
    explicit ModuliNotCoprime(const std::string& msg) : Error(msg) {}
};
struct Overflow : Error {
    explicit Overflow(const std::string& msg) : Error(msg) {}
};
struct RoundingResidualTooLarge : Error {
    explicit RoundingResidualTooLarge(const std::string& msg) : Error(msg) {}
};
struct NormalizerVanishes : Error {
    explicit NormalizerVanishes(const std::string& msg) : Error(msg) {}
};
struct TruncationIncomplete : Error {
    explicit TruncationIncomplete(const std::string& msg) : Error(msg) {}
};
struct InvalidLambdaP : Error {
    explicit InvalidLambdaP(const std::string& msg) : Error(msg) {}
};
struct LevelTooSmall : Error {
    explicit LevelTooSmall(const std::string& msg) : Error(msg) {}
};
struct QuadratureNonConvergent : Error {
    explicit QuadratureNonConvergent(const std::string& msg) : Error(msg) {}
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};
struct InvalidSigma : Error {
    explicit InvalidSigma(const std::string& msg) : Error(msg) {}
};
struct DegenerateBalance : Error {
    explicit DegenerateBalance(const std::string& msg) : Error(msg) {}
};
struct Infeasible : Error {
    explicit Infeasible(const std::string& msg) : Error(msg) {}
};

} // namespace subconv

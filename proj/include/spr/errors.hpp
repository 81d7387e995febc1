#ifndef SPR_ERRORS_HPP
#define SPR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spr {

// Bad user input: malformed files, invalid ids, out-of-range parameters.
// The CLI maps this to exit code 1.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A checked invariant failed at runtime. Carries a witness description.
// The CLI maps this to exit code 2.
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// A clustering provider broke its contract (overlap, disconnected cluster,
// diameter over budget).
struct ProviderError : InvariantError {
    explicit ProviderError(const std::string& msg) : InvariantError(msg) {}
};

// contract_assignment found an invalid branch set.
struct MinorValidityError : InvariantError {
    explicit MinorValidityError(const std::string& msg) : InvariantError(msg) {}
};

// scattered_path could not connect the endpoints through the cluster graph.
// The scattering verifier catches this and records a violation.
struct ScatterInfeasibleError : std::runtime_error {
    explicit ScatterInfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad (beta, tau, c) combination.
struct ConfigError : InputError {
    explicit ConfigError(const std::string& msg) : InputError(msg) {}
};

}  // namespace spr

#endif  // SPR_ERRORS_HPP

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace okvalid {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violations on mathematical inputs: division by an interval
// containing zero, square root of a negative range, nonzero mean where a
// zero-mean series is required, dimension mismatches.
class DomainError : public Error {
public:
    using Error::Error;
};

// Pipeline stage at which a certification attempt stopped.
enum class Stage {
    ok,
    input,
    residual,
    inverse_bound,
    lipschitz,
    radii,
    consistency,
};

std::string_view to_string(Stage stage);
Stage stage_from_string(std::string_view name);

// A rigorous bound could not be established. Carries the stage that failed
// and, for the inverse estimate, a suggested larger truncation.
class CertificationError : public Error {
public:
    CertificationError(Stage stage, const std::string& what, std::optional<int> suggested_n = {})
        : Error(what), stage_(stage), suggested_n_(suggested_n) {}

    Stage stage() const noexcept { return stage_; }
    std::optional<int> suggested_n() const noexcept { return suggested_n_; }

private:
    Stage stage_;
    std::optional<int> suggested_n_;
};

// Newton iteration did not converge.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace okvalid

#pragma once

#include <stdexcept>
#include <string>

namespace nlc {

/// Runtime failure modes of a time step. Bad arguments use std::invalid_argument.
enum class Failure {
    CflExceeded,
    DegenerateDirector,
    CgNotConverged,
    NonFinite,
    Io,
};

inline const char* to_string(Failure f) {
    switch (f) {
    case Failure::CflExceeded: return "cfl-exceeded";
    case Failure::DegenerateDirector: return "degenerate-director";
    case Failure::CgNotConverged: return "cg-not-converged";
    case Failure::NonFinite: return "non-finite";
    case Failure::Io: return "io";
    }
    return "unknown";
}

class SolverError : public std::runtime_error {
public:
    SolverError(Failure kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    Failure kind() const noexcept { return kind_; }

private:
    Failure kind_;
};

} // namespace nlc

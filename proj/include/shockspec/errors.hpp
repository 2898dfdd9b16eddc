#pragma once

#include <stdexcept>
#include <string>

namespace shockspec {

// Argument outside an operation's domain (range checks, |y| limits, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Gamma/digamma pole hit (nonpositive-integer argument).
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// A series or iteration failed to reach tolerance within its cap.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// phi2 requested at (or within the guard band of) a degenerate mode, where the
// downstream solution is proportional to phi1 and the generic formula loses meaning.
struct DegenerateModeError : std::runtime_error {
    explicit DegenerateModeError(const std::string& what) : std::runtime_error(what) {}
};

// A denominator of a closed-form identity vanished (ell + 1 hit an eigenvalue).
struct ResonanceError : std::runtime_error {
    explicit ResonanceError(const std::string& what) : std::runtime_error(what) {}
};

// Energy-moment series diverges (lambda_0 <= ell + 1).
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenvalue scan found zero or multiple sign changes in a bracket window.
struct MissedRootError : std::runtime_error {
    explicit MissedRootError(const std::string& what) : std::runtime_error(what) {}
};

// Source-spectrum table failed validation.
struct GridError : std::runtime_error {
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

// Closed-form normalization came out nonpositive (misconverged eigenvalue).
struct NonpositiveResultError : std::runtime_error {
    explicit NonpositiveResultError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace shockspec

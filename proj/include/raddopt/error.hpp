#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace raddopt {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file or config. Carries the 1-based line number when known (0 otherwise).
class InputError : public Error {
public:
    InputError(std::string source, std::size_t line, const std::string& what)
        : Error(source + (line ? ":" + std::to_string(line) : std::string{}) + ": " + what),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Inconsistent shapes or structure (dimension mismatch, bad node id, pruning bug).
class StructuralError : public Error {
public:
    using Error::Error;
};

// Analysis routine could not produce its result (non-convergence, assumption violated).
class AnalysisError : public Error {
public:
    explicit AnalysisError(const std::string& what, double residual = 0.0)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// A simulation state became non-finite or exceeded the divergence guard.
class DivergenceError : public Error {
public:
    DivergenceError(std::size_t step, double magnitude)
        : Error("divergence at step " + std::to_string(step) + " (|state| = " +
                std::to_string(magnitude) + ")"),
          step_(step),
          magnitude_(magnitude) {}

    std::size_t step() const noexcept { return step_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    std::size_t step_;
    double magnitude_;
};

// Internal invariant broken; indicates a bug rather than bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace raddopt

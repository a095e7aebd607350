#pragma once

#include <stdexcept>
#include <string>

namespace mixedlab {

/// Numerical tolerances and size limits shared by every module.
///
/// The process-wide instance is read through `config()`. Front ends may replace
/// it once with `set_config()` before any computation starts; library code never
/// mutates it.
struct Config {
    int qubit_cap = 12;
    double validation_tol = 1e-10;      // Hermiticity, trace, positivity, unitarity
    double reconstruction_tol = 1e-9;   // spectral reconstruction, sums of POVM elements
    double eigenvalue_floor = 1e-12;    // eigenvalues below this are zero inside logarithms
};

const Config& config();
void set_config(const Config& cfg);

// Error hierarchy. Everything the library throws derives from Error.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand or state fails its invariants.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Operands of incompatible qubit counts.
class DimensionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Requested size exceeds the configured qubit cap.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A result contradicts a property that holds for every valid input.
class InternalConsistencyError : public Error {
  public:
    using Error::Error;
};

/// A verifier oracle ran out of its call budget.
class BudgetError : public Error {
  public:
    using Error::Error;
};

void check_qubit_cap(int qubits, const std::string& what);

}  // namespace mixedlab

#pragma once

#include <stdexcept>
#include <string>

namespace maser {

// Parameters sit on a mathematical singularity (equilibrium, vanishing rate,
// log divergence). Maps to CLI exit code 3.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A numerical routine could not produce a trustworthy answer: rank deficiency,
// ambiguous eigenvalue branch, non-real result. Maps to CLI exit code 4.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class RankError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class BranchError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// Bad user configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace maser

#ifndef MUTGEN_ERRORS_HPP
#define MUTGEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mutgen {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
    pass = 0,
    verification_failed = 1,
    usage = 2,
    infeasible = 3,
    oracle_violation = 4,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const noexcept { return ExitCode::usage; }
};

// Malformed input: bad flags, unparsable files, violated preconditions.
class UsageError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public UsageError {
public:
    using UsageError::UsageError;
};

class NotIncreasing : public UsageError {
public:
    using UsageError::UsageError;
};

class InsufficientBits : public UsageError {
public:
    using UsageError::UsageError;
};

// A construction could not be completed at the requested size.
class Infeasible : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::infeasible; }
};

class TailTooFat : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class DominationFailure : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class NoWitness : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class InsufficientDepth : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class DegenerateTree : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class NoKeyAtResolution : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class OracleViolation : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::oracle_violation; }
};

} // namespace mutgen

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace dsmb {

/// Base of every error raised by the library. `exit_code()` is what the CLI
/// returns when the error escapes a subcommand.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 3; }
};

/// Invalid user configuration (bad flag values, missing payloads).
class ConfigError : public Error
{
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// Operation applied to an object in the wrong state (e.g. perturbing twice).
class StateError : public Error
{
public:
  using Error::Error;
};

/// DSM cutoff selects no sampling point.
class ThresholdError : public Error
{
public:
  using Error::Error;
};

/// Shape or precondition mismatch between collaborating objects.
class ContractError : public Error
{
public:
  using Error::Error;
};

/// Failure that should be impossible for supported inputs.
class InternalError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

} // namespace dsmb

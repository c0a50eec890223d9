#pragma once

#include <stdexcept>
#include <string>

namespace toycascade {

// Base of every error raised by the library. Callers that only care about
// "numerical failure vs. bad input" can catch the two intermediate classes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalFailure {
 public:
  NonConvergence(const std::string& what, long step)
      : NumericalFailure(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class DegenerateSite : public NumericalFailure {
 public:
  DegenerateSite(const std::string& what, int site)
      : NumericalFailure(what), site_(site) {}
  int site() const noexcept { return site_; }

 private:
  int site_;
};

class SolveFailed : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class IterationFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NotSymmetric : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotPositive : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DoesNotFit : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SupportTooSmall : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonUniqueNearest : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class Antipodal : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ValidityGuard : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace toycascade

#pragma once

#include <stdexcept>
#include <string>

namespace scatter1d {

// Every failure raised by the library carries the name of the violated
// invariant; the CLI prints that name on stderr and maps BadInput to exit
// code 2 and NumericalFailure to exit code 3.
class Error : public std::runtime_error {
public:
  Error(const char* name, const std::string& msg)
      : std::runtime_error(std::string(name) + ": " + msg), name_(name) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

class BadInput : public Error {
public:
  explicit BadInput(const std::string& msg) : Error("BadInput", msg) {}

protected:
  BadInput(const char* name, const std::string& msg) : Error(name, msg) {}
};

class NumericalFailure : public Error {
public:
  explicit NumericalFailure(const std::string& msg) : Error("NumericalFailure", msg) {}

protected:
  NumericalFailure(const char* name, const std::string& msg) : Error(name, msg) {}
};

// precondition violations (bad arguments / wrong kind of input)
struct OrderingViolation : BadInput {
  explicit OrderingViolation(const std::string& m) : BadInput("OrderingViolation", m) {}
};
struct NoSuchBoundState : BadInput {
  explicit NoSuchBoundState(const std::string& m) : BadInput("NoSuchBoundState", m) {}
};
struct AnalyticModelRequired : BadInput {
  explicit AnalyticModelRequired(const std::string& m) : BadInput("AnalyticModelRequired", m) {}
};
struct ParityMismatch : BadInput {
  explicit ParityMismatch(const std::string& m) : BadInput("ParityMismatch", m) {}
};
struct NotExceptional : BadInput {
  explicit NotExceptional(const std::string& m) : BadInput("NotExceptional", m) {}
};
struct HasBoundStates : BadInput {
  explicit HasBoundStates(const std::string& m) : BadInput("HasBoundStates", m) {}
};

// numerical failures (resolution / conditioning problems)
struct StepTooCoarse : NumericalFailure {
  explicit StepTooCoarse(const std::string& m) : NumericalFailure("StepTooCoarse", m) {}
};
struct ScanTooCoarse : NumericalFailure {
  explicit ScanTooCoarse(const std::string& m) : NumericalFailure("ScanTooCoarse", m) {}
};
struct NonPositiveChi : NumericalFailure {
  explicit NonPositiveChi(const std::string& m) : NumericalFailure("NonPositiveChi", m) {}
};
struct TailTooFat : NumericalFailure {
  explicit TailTooFat(const std::string& m) : NumericalFailure("TailTooFat", m) {}
};
struct InconclusiveLimit : NumericalFailure {
  explicit InconclusiveLimit(const std::string& m) : NumericalFailure("InconclusiveLimit", m) {}
};
struct WindowTooSmall : NumericalFailure {
  explicit WindowTooSmall(const std::string& m) : NumericalFailure("WindowTooSmall", m) {}
};
struct NegativeDiscriminant : NumericalFailure {
  explicit NegativeDiscriminant(const std::string& m) : NumericalFailure("NegativeDiscriminant", m) {}
};

}  // namespace scatter1d

#pragma once

#include <stdexcept>
#include <string>

namespace bethe {

// Base class for all library errors.  code() is a stable machine-readable
// tag used by the CLI when it turns an exception into a report entry.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class DivisionByZeroError : public Error {
public:
    explicit DivisionByZeroError(const std::string& msg) : Error("DivisionByZero", msg) {}
};

// A rational function evaluated where its denominator vanishes.
class PoleAtZeroError : public Error {
public:
    explicit PoleAtZeroError(const std::string& msg) : Error("PoleAtZero", msg) {}
};

// A kernel or product evaluated at arguments where it has a pole,
// or a parameter configuration containing such a pair.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& msg) : Error("PoleError", msg) {}
};

class DuplicatePointsError : public Error {
public:
    explicit DuplicatePointsError(const std::string& msg) : Error("DuplicatePoints", msg) {}
};

class NonSquareError : public Error {
public:
    explicit NonSquareError(const std::string& msg) : Error("NonSquare", msg) {}
};

class BadCardinalityError : public Error {
public:
    explicit BadCardinalityError(const std::string& msg) : Error("BadCardinality", msg) {}
};

class CardinalityMismatchError : public Error {
public:
    explicit CardinalityMismatchError(const std::string& msg) : Error("CardinalityMismatch", msg) {}
};

class MissingRValueError : public Error {
public:
    explicit MissingRValueError(const std::string& msg) : Error("MissingRValue", msg) {}
};

class ConstraintViolationError : public Error {
public:
    explicit ConstraintViolationError(const std::string& msg) : Error("ConstraintViolation", msg) {}
};

class ZeroPivotError : public Error {
public:
    explicit ZeroPivotError(const std::string& msg) : Error("ZeroPivot", msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

} // namespace bethe

#pragma once

#include <stdexcept>
#include <string>

namespace formdim {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Checked integer arithmetic overflowed (rationals are exact, never wrapped).
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// A tensor-shape rule was violated while building an expression.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

/// Numeric evaluation failed (missing binding, domain error, ...).
class EvalError : public Error {
public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// Unit string could not be parsed or names an unknown symbol.
class UnitError : public Error {
public:
    explicit UnitError(const std::string& msg) : Error(msg) {}
};

/// Transformation failed (unmapped terminal, double transform, ...).
class TransformError : public Error {
public:
    explicit TransformError(const std::string& msg) : Error(msg) {}
};

/// Base class for factorization failures.
class FactorizeError : public Error {
public:
    explicit FactorizeError(const std::string& msg) : Error(msg) {}
};

/// Sum operands carry different physical dimensions: a modeling error.
class InconsistentDimensions : public FactorizeError {
public:
    explicit InconsistentDimensions(const std::string& msg) : FactorizeError(msg) {}
};

/// Sum operands agree in dimension but carry different quantity factors:
/// a scaling/conditioning hazard.
class InconsistentFactors : public FactorizeError {
public:
    explicit InconsistentFactors(const std::string& msg) : FactorizeError(msg) {}
};

/// A non-homogeneous scalar function (ln, sqrt) received an argument with a
/// nonzero quantity factor.
class NonHomogeneousArgument : public FactorizeError {
public:
    explicit NonHomogeneousArgument(const std::string& msg) : FactorizeError(msg) {}
};

/// Normalization failed (unknown reference term or dimensional mismatch
/// across terms).
class NormalizeError : public Error {
public:
    explicit NormalizeError(const std::string& msg) : Error(msg) {}
};

/// Scenario or expression text could not be parsed; carries line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace formdim

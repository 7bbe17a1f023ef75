#pragma once

#include <stdexcept>
#include <string>

namespace relcone {

// Root of every error the library raises. Callers that only care about
// "something went wrong with the input" can catch this one.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in cyclotomic field") {}
};

class ConductorLimitExceeded : public Error {
public:
    ConductorLimitExceeded(long conductor, long limit)
        : Error("conductor " + std::to_string(conductor) + " exceeds limit " + std::to_string(limit)),
          conductor_(conductor) {}
    long conductor() const noexcept { return conductor_; }

private:
    long conductor_;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UndefinedInitial : public Error {
public:
    UndefinedInitial() : Error("initial form of a series with no known nonzero term") {}
};

class InnerOrderZero : public Error {
public:
    InnerOrderZero() : Error("composition requires an inner series of order >= 1") {}
};

class NotUnitSeries : public Error {
public:
    NotUnitSeries() : Error("k-th root requires a series of the form 1 + h with ord h >= 1") {}
    explicit NotUnitSeries(const std::string& what) : Error(what) {}
};

class NotOrderOne : public Error {
public:
    NotOrderOne() : Error("reversion requires a series of order exactly 1") {}
};

class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class FieldExtensionRequired : public Error {
public:
    using Error::Error;
};

class InvalidBranch : public Error {
public:
    using Error::Error;
};

class AllDegenerate : public Error {
public:
    AllDegenerate() : Error("every sampled secant fell below the degeneracy floor") {}
};

class EqualPoints : public Error {
public:
    EqualPoints() : Error("a line needs two distinct projective points") {}
};

class InconsistentChart : public Error {
public:
    using Error::Error;
};

}  // namespace relcone

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownLabelError : Error {
    int label;
    explicit UnknownLabelError(int l)
        : Error("unknown vertex label " + std::to_string(l)), label(l) {}
};

struct NonEdgeError : Error {
    int u, v;
    NonEdgeError(int a, int b)
        : Error("(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge"),
          u(a), v(b) {}
};

struct InvalidStepError : Error {
    std::size_t index;
    InvalidStepError(std::size_t i, const std::string& why)
        : Error("contraction step " + std::to_string(i) + " invalid: " + why), index(i) {}
};

struct NotAPartitionError : Error {
    using Error::Error;
};

struct RepresentativeMismatchError : Error {
    using Error::Error;
};

struct NotAContractionToHError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

struct TimeoutError : Error {
    using Error::Error;
};

struct InvalidDecompositionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line;
    ParseError(std::size_t ln, const std::string& why)
        : Error("line " + std::to_string(ln) + ": " + why), line(ln) {}
};

// reduction input errors
struct NegativeLiteralError : Error {
    using Error::Error;
};
struct VariableOccursTooOftenError : Error {
    using Error::Error;
};
struct TooManyVariablesError : Error {
    using Error::Error;
};
struct AssignmentDoesNotSatisfyError : Error {
    using Error::Error;
};
struct InvalidPartitionError : Error {
    using Error::Error;
};

} // namespace lc

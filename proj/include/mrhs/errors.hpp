#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrhs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct ZeroInverse : Error {
    using Error::Error;
};
struct EnumerationTooLarge : Error {
    using Error::Error;
};
struct ModelTooLarge : Error {
    using Error::Error;
};
struct TooManySets : Error {
    using Error::Error;
};
struct InvalidPermutation : Error {
    using Error::Error;
};
struct InvalidPrefix : Error {
    using Error::Error;
};
struct FieldTooSmall : Error {
    using Error::Error;
};
struct InfeasibleParameters : Error {
    using Error::Error;
};
struct ConstructionStalled : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t line_no, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    std::size_t line;
};

}  // namespace mrhs

#pragma once

#include <stdexcept>
#include <string>

namespace padicreg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// exact-zero input, p-divisible input, wrong residue, ...
struct DomainError : Error {
    using Error::Error;
};

// a value whose known digits all vanish was needed as a certified quantity
struct PrecisionError : Error {
    using Error::Error;
};

struct RankUndecidable : Error {
    using Error::Error;
};

struct UnsupportedSplittingField : Error {
    int degree;
    explicit UnsupportedSplittingField(int deg)
        : Error("root finding requires a splitting field of degree > 2 (remaining factor of degree " +
                std::to_string(deg) + ")"),
          degree(deg) {}
};

struct PatternViolation : Error {
    using Error::Error;
};

struct Inconsistent : Error {
    using Error::Error;
};

struct ZeroVector : Error {
    using Error::Error;
};

struct MissingRow : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(int ln, const std::string& msg)
        : Error("parse error at line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

} // namespace padicreg

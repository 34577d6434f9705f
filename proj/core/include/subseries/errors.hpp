#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subseries {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A required analytic certificate (convergence/decay modulus, infinitude
/// flag) is missing or insufficient for the requested operation.
struct CertificateError : Error {
    using Error::Error;
};

/// A bounded search ran out of indices before the construction finished.
/// `found` reports how much of the requested output was produced.
struct HorizonExhausted : Error {
    std::uint64_t found = 0;
    std::uint64_t requested = 0;
    HorizonExhausted(const std::string& what, std::uint64_t found_, std::uint64_t requested_)
        : Error(what), found(found_), requested(requested_) {}
};

struct ParseError : Error {
    std::size_t offset = 0;  // 1-based offset into the input text
    ParseError(const std::string& what, std::size_t offset_) : Error(what), offset(offset_) {}
};

}  // namespace subseries

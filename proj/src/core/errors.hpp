// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace truncrange {

// Single exception type for the core; the code enum maps one-to-one onto the
// C API status values.
class Error : public std::runtime_error {
public:
    enum class Code {
        invalid_argument,  // malformed input or violated precondition
        domain,            // mathematically unsupported region
        convergence,       // iteration or quadrature failed to converge
        parse,             // bad CSV content (message carries the line number)
        io,                // file could not be opened / read / written
        internal
    };

    Error(Code code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

[[noreturn]] inline void throw_invalid(std::string what) {
    throw Error(Error::Code::invalid_argument, std::move(what));
}

[[noreturn]] inline void throw_domain(std::string what) {
    throw Error(Error::Code::domain, std::move(what));
}

[[noreturn]] inline void throw_convergence(std::string what) {
    throw Error(Error::Code::convergence, std::move(what));
}

[[noreturn]] inline void throw_parse(std::string what) {
    throw Error(Error::Code::parse, std::move(what));
}

[[noreturn]] inline void throw_io(std::string what) {
    throw Error(Error::Code::io, std::move(what));
}

}  // namespace truncrange

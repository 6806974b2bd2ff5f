#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace opo {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

// Error taxonomy; the CLI maps each kind onto an exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
    virtual int exit_code() const noexcept { return 3; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
    int exit_code() const noexcept override { return 1; }
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "validation"; }
    int exit_code() const noexcept override { return 2; }
};

class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical"; }
    int exit_code() const noexcept override { return 3; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
    int exit_code() const noexcept override { return 4; }
};

// f^dagger-type conjugate point: -conj(w)
inline cplx mirror(cplx w) { return -std::conj(w); }

} // namespace opo

/**
 * @file errors.h
 * @brief Exception taxonomy shared by all herzlab modules.
 *
 * Every throwing function documents which of these it raises:
 *  - InputError:       a value is outside the operation's domain (negative
 *                      time, non-finite sample, too few points, ...)
 *  - ParamError:       a parameter pack fails validation (exponents out of
 *                      range, q <= 0, alpha <= -n/p, bad grid sizes, ...)
 *  - StateError:       a required representation is missing (e.g. asking for
 *                      physical values of a spectrum-only field)
 *  - ResolutionError:  the grid cannot resolve the request (ball radius below
 *                      the spacing, level beyond the Nyquist band, ...)
 *  - CapabilityError:  a needed ingredient is unavailable (derivatives
 *                      missing and the finite-difference fallback disabled)
 *  - CompositionError: operands that must share a grid do not
 */
#pragma once

#include <stdexcept>
#include <string>

namespace herzlab {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
  public:
    using Error::Error;
};

class ParamError : public Error {
  public:
    using Error::Error;
};

class StateError : public Error {
  public:
    using Error::Error;
};

class ResolutionError : public Error {
  public:
    using Error::Error;
};

class CapabilityError : public Error {
  public:
    using Error::Error;
};

class CompositionError : public Error {
  public:
    using Error::Error;
};

}  // namespace herzlab

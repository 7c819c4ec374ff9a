// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_ERRORS_HPP
#define UCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uca {

// Invalid argument values (out-of-range indices, bad angles, length mismatches).
class invalid_argument : public std::invalid_argument {
  public:
    explicit invalid_argument(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed external data (CSV/JSON parse or schema problems).
class format_error : public std::runtime_error {
  public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerically ill-posed request (singular ring, undefined beamwidth, ...).
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace uca

#endif

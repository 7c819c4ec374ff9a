// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_IO_UTIL_HPP
#define UCA_IO_UTIL_HPP

#include <string>

namespace uca {

// Fixed float formatting for all text outputs: 9 significant digits.
std::string g9(double value);

// Write the whole file via a temporary sibling and rename, so readers never
// observe a partially written file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace uca

#endif

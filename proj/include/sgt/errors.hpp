#pragma once

#include <stdexcept>
#include <string>

namespace sgt {

// Malformed file contents (bad header line, inconsistent sizes, ...).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem-level failures (missing file, unreadable stream).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sgt

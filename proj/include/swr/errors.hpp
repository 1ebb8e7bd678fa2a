#pragma once

#include <stdexcept>

namespace swr {

// On-disk format problems: bad magic, truncated payload, malformed mask text.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite values produced inside a numerical kernel.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swr

#pragma once

#include <stdexcept>
#include <string>

namespace segdiscover {

/// Base exception for every recoverable failure in the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace segdiscover

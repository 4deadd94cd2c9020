#pragma once

#include <stdexcept>
#include <string>

namespace stnet {

/// Input could not be read or does not follow its documented format.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input was well-formed but violates a referential or domain invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stnet

#pragma once

#include <stdexcept>
#include <string>

namespace tia {

// Bad user-supplied data: malformed files, unknown ids, violated call
// preconditions that callers are expected to guard against.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured size or memory cap was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A contract between modules was broken (caller bug, not user error).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tia

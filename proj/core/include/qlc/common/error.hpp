#pragma once

#include <stdexcept>
#include <string>

namespace qlc {

// Root of every error the engine throws on purpose. Anything else escaping a
// public function is a bug.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qlc

#pragma once

#include <stdexcept>
#include <string>

namespace korolat {

// Thrown when an exhaustive enumeration would exceed its configured cap.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace korolat

#pragma once

#include <stdexcept>
#include <string>

namespace jsde {

// Invalid construction arguments, unsupported requests, failed quadrature.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jsde

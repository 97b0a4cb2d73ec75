#pragma once

#include <stdexcept>
#include <string>

namespace scientrank {

/// Bad input data or an analysis that cannot be carried out (CLI exit code 1).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace scientrank

#pragma once

#include <stdexcept>
#include <string>

namespace netdef {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter or configuration value. `field()` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace netdef

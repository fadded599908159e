#pragma once
// Error taxonomy shared by the library and the CLI exit-code mapping.

#include <stdexcept>
#include <string>

namespace semimpact {

// Bad or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An upstream artifact is missing; names the command that produces it
// (CLI exit code 3).
class MissingArtifactError : public std::runtime_error {
public:
    MissingArtifactError(const std::string& what, std::string producer)
        : std::runtime_error(what), producer_(std::move(producer)) {}
    const std::string& producer() const { return producer_; }

private:
    std::string producer_;
};

// Input data violates an invariant (CLI exit code 4).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace semimpact

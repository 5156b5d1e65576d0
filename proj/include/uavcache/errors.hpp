#pragma once

#include <stdexcept>
#include <string>

namespace uavcache {

/// Invalid configuration or scenario parameters. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Instance cannot be solved (e.g. K*Q < N). CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A module contract was violated by a caller (internal error).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace uavcache

#pragma once

#include <stdexcept>
#include <string>

namespace spinforge {

// Usage errors (bad arguments, bad configs). Map to CLI exit code 2.
struct argument_error : std::invalid_argument {
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

struct capacity_error : argument_error {
    explicit capacity_error(const std::string& msg) : argument_error(msg) {}
};

struct aliasing_error : argument_error {
    explicit aliasing_error(const std::string& msg) : argument_error(msg) {}
};

struct parity_error : argument_error {
    explicit parity_error(const std::string& msg) : argument_error(msg) {}
};

struct config_error : argument_error {
    explicit config_error(const std::string& msg) : argument_error(msg) {}
};

// Numerical failures (solver breakdown, singular denominators). Map to CLI exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct singularity_error : numerical_error {
    explicit singularity_error(const std::string& msg) : numerical_error(msg) {}
};

struct conditioning_error : numerical_error {
    explicit conditioning_error(const std::string& msg) : numerical_error(msg) {}
};

struct undefined_mean_spin_error : numerical_error {
    explicit undefined_mean_spin_error(const std::string& msg) : numerical_error(msg) {}
};

}  // namespace spinforge

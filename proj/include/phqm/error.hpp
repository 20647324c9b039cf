#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phqm {

enum class ErrorKind {
    dimension_mismatch,
    non_finite,
    defective,
    degenerate,
    overflow,
    not_positive_definite,
    not_hermitian,
    complex_spectrum,
    not_quasi_hermitian,
    not_eta_hermitian,
    not_closed_system,
    zero_vector,
    degenerate_time,
    singular_transform,
    invalid_argument,
};

std::string_view error_kind_name(ErrorKind kind);

/// Base exception for every numerical precondition or postcondition failure.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace phqm

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace credo {

enum class Errc {
    invalid_parameter,
    invalid_resolution,
    resolution_not_available,
    judgment_unavailable,
    domain_mismatch,
    enumeration_cap_exceeded,
    precondition_violated,
    no_solution,
    not_found,
    parse_error,
    unsupported_version,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace credo

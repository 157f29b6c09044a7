#pragma once

#include <stdexcept>
#include <string>

namespace curvecalc {

// Every rejection carries a short machine-readable kind ("sub-minimal complexity",
// "budget", ...) so the CLI can emit it as a JSON error record.
class CalcError : public std::runtime_error {
public:
    CalcError(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
    explicit CalcError(std::string kind)
        : std::runtime_error(kind), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

}  // namespace curvecalc

#pragma once

#include <stdexcept>
#include <string>

namespace loclab {

// Invalid input (bad triple, degenerate cone, out-of-range option). CLI maps
// these to exit code 2.
struct no_cone_error : std::domain_error {
    explicit no_cone_error(const std::string& msg) : std::domain_error(msg) {}
};

struct degenerate_error : std::domain_error {
    explicit degenerate_error(const std::string& msg) : std::domain_error(msg) {}
};

// Internal numerical failure (integration blow-up, quadrature not converging,
// consistency check tripped). CLI maps these to exit code 1.
struct numerics_error : std::runtime_error {
    explicit numerics_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct consistency_error : numerics_error {
    explicit consistency_error(const std::string& msg) : numerics_error(msg) {}
};

} // namespace loclab

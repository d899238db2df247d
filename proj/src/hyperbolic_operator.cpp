#include "hyperseries/hyperbolic_operator.hpp"

#include <cmath>
#include <string>

namespace hyperseries {

void validate(const OperatorParams &p)
{
    if (p.n < 2) {
        raise(Errc::invalid_argument, "n must be an integer >= 2, got " + std::to_string(p.n));
    }
    if (!std::isfinite(p.delta_prime) || !(p.delta_prime > 0.0)) {
        raise(Errc::invalid_argument, "delta' must be positive and finite");
    }
}

double z_of_eta(const OperatorParams &p, double eta)
{
    validate(p);
    if (!std::isfinite(eta) || eta < 0.0) {
        raise(Errc::domain_error, "eta must be finite and >= 0, got " + std::to_string(eta));
    }
    return p.delta_prime * std::cosh(eta);
}

double eta_of_z(const OperatorParams &p, double z)
{
    validate(p);
    if (!std::isfinite(z) || z < p.delta_prime) {
        raise(Errc::out_of_range, "z must satisfy z >= delta' (z=" + std::to_string(z) + ")");
    }
    return std::acosh(z / p.delta_prime);
}

} // namespace hyperseries

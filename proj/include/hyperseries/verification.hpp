#pragma once

// The verification suite: randomized and fixed checks of every numerical
// contract in the library, each reduced to (max_error, tolerance, pass).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperseries/eigen_recursion.hpp"

namespace hyperseries {

struct Check {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    /// Perturb one coefficient of every series in the residual check by
    /// 1e-4; the residual check must then fail.
    bool tamper = false;
};

/// Random parameters: n in {2,3,4}, lambda in [-5,5] minus 0, delta' in
/// [0.5,2], a0 in +-[0.5,2], a1 in [-1,1], center 0 or +-(delta' + [0.5,2]).
EigenParams random_eigen_params(std::mt19937_64 &rng);

/// `count` draws of random_eigen_params() from a generator seeded with `seed`.
std::vector<EigenParams> random_eigen_suite(std::uint64_t seed, int count);

Check check_miller_recurrence(std::uint64_t seed);
Check check_a2_closed_form(std::uint64_t seed);
Check check_residual_vanishing(std::uint64_t seed, bool tamper = false);
Check check_center0_recursion(std::uint64_t seed);
Check check_series_vs_ode(std::uint64_t seed);
Check check_polynomial_nonexistence(std::uint64_t seed);
Check check_temporal_identity(std::uint64_t seed);
Check check_pde_end_to_end();
Check check_kernel_family();
Check check_negative_control(std::uint64_t seed);

/// All checks in a fixed order.
std::vector<Check> run_verification(const VerifyOptions &options = {});

} // namespace hyperseries

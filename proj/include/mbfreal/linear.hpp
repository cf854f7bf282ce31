#pragma once

#include "mbfreal/rational.hpp"

#include <optional>
#include <vector>

namespace mbfreal {

// coeffs . x >= rhs
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational rhs;
};

struct FmResult {
    bool feasible = false;
    // A satisfying point when feasible.
    std::vector<Rational> point;
    // Nonnegative multipliers over the input constraints when infeasible:
    // sum(lambda * coeffs) = 0 and sum(lambda * rhs) > 0.
    std::vector<Rational> multipliers;
};

struct FmStats {
    std::size_t max_constraints = 0;
    std::size_t eliminations = 0;
};

// Exact Fourier-Motzkin elimination with multiplier tracking and back-substitution.
FmResult fourier_motzkin(const std::vector<LinearConstraint>& system, int num_vars, FmStats* stats = nullptr);

bool is_farkas_certificate(const std::vector<LinearConstraint>& system, const std::vector<Rational>& multipliers);
bool satisfies(const std::vector<LinearConstraint>& system, const std::vector<Rational>& point);

// Finds x >= 0 with A x = b by a two-phase exact simplex using Bland's rule.
std::optional<std::vector<Rational>> find_nonnegative_solution(const std::vector<std::vector<Rational>>& a,
                                                               const std::vector<Rational>& b);

}  // namespace mbfreal

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "secrelay/channel.hpp"
#include "secrelay/scenario.hpp"

namespace secrelay {

struct PowerConstraints {
    double p_avg = 0.1; // watts, average budget per user
    double p_max = 0.2; // watts, peak per slot

    void validate() const {
        if (!(p_avg > 0.0) || !(p_avg <= p_max))
            throw std::invalid_argument("power constraints require 0 < p_avg <= p_max");
    }
};

struct PowerPolicy {
    PowerMatrix powers; // [M][N]
    PowerConstraints constraints;
};

struct DualSolve {
    double rho = 0.0;
    double avg_power_achieved = 0.0;
    int iterations = 0;
    double residual = 0.0;          // |avg - p_avg| at exit (0 when rho = 0)
    std::vector<double> powers;     // per-slot allocation at rho
};

// Secure water-filling level for one slot (Eq. 21 semantics): the positive
// root of mu/(1+mu P) - eta/(1+eta P) = rho, clamped to [0, p_max].
inline double power_given_rho(double mu, double eta, double rho, double p_max) {
    if (mu <= eta) return 0.0;
    if (rho <= 0.0) return p_max; // root diverges as rho -> 0+
    const double half_b = 0.5 / eta + 0.5 / mu;
    const double c = 1.0 / (mu * eta) - (1.0 / rho) * (1.0 / eta - 1.0 / mu);
    if (c >= 0.0) return 0.0; // both roots nonpositive
    // stable form of -half_b + sqrt(half_b^2 - c)
    const double root = -c / (half_b + std::sqrt(half_b * half_b - c));
    return std::min(root, p_max);
}

// Bisection on the dual price enforcing the per-user average-power budget.
inline DualSolve solve_rho(std::span<const double> mu_row, std::span<const double> eta_row,
                           const PowerConstraints& constraints) {
    constraints.validate();
    const int N = static_cast<int>(mu_row.size());
    if (eta_row.size() != mu_row.size() || N < 1)
        throw std::invalid_argument("solve_rho: rows must have equal length >= 1");

    auto allocate = [&](double rho, std::vector<double>& out) {
        out.resize(N);
        double sum = 0.0;
        for (int n = 0; n < N; ++n) {
            out[n] = power_given_rho(mu_row[n], eta_row[n], rho, constraints.p_max);
            sum += out[n];
        }
        return sum / N;
    };

    DualSolve result;
    double avg0 = allocate(0.0, result.powers);
    if (avg0 <= constraints.p_avg) {
        result.rho = 0.0;
        result.avg_power_achieved = avg0;
        return result;
    }

    double rho_hi = 0.0;
    for (int n = 0; n < N; ++n) rho_hi = std::max(rho_hi, mu_row[n]);
    std::vector<double> scratch;
    while (allocate(rho_hi, scratch) > constraints.p_avg) rho_hi *= 2.0;

    double rho_lo = 0.0;
    const double tol = 1e-9 * constraints.p_avg;
    double rho = rho_hi;
    double avg = allocate(rho, result.powers);
    int it = 0;
    for (; it < 200; ++it) {
        rho = 0.5 * (rho_lo + rho_hi);
        avg = allocate(rho, result.powers);
        if (std::abs(avg - constraints.p_avg) <= tol) break;
        if (avg > constraints.p_avg)
            rho_lo = rho;
        else
            rho_hi = rho;
        if (rho_hi - rho_lo <= 1e-15 * rho_hi) break;
    }
    // land on the feasible side of the budget
    if (avg > constraints.p_avg + tol) {
        rho = rho_hi;
        avg = allocate(rho, result.powers);
    }
    result.rho = rho;
    result.avg_power_achieved = avg;
    result.iterations = it + 1;
    result.residual = std::abs(avg - constraints.p_avg);
    return result;
}

// Subproblem P2.I: per-user secure water-filling with the worst eavesdropper
// index frozen at the previous policy. The acceptance guard keeps the
// objective non-decreasing when the argmax switches under the new powers.
inline PowerPolicy optimize_powers(const Scenario& s, const UavTrajectory& traj,
                                   const PowerPolicy& prev, const ChannelParams& params,
                                   const PowerConstraints& constraints) {
    const int M = s.num_users();
    const int N = s.num_slots();
    const LinkGains gains = compute_link_gains(s, traj, params);

    std::vector<int> worst(N);
    for (int n = 0; n < N; ++n) worst[n] = worst_eavesdropper(prev.powers, gains, n);

    PowerPolicy next;
    next.constraints = constraints;
    next.powers.assign(M, std::vector<double>(N));
    for (int i = 0; i < M; ++i) {
        std::vector<double> eta_row(N);
        for (int n = 0; n < N; ++n) eta_row[n] = gains.eta[i][worst[n]][n];
        DualSolve dual = solve_rho(gains.mu[i], eta_row, constraints);
        next.powers[i] = std::move(dual.powers);
    }

    if (objective_p2(traj, next.powers, s, params) < objective_p2(traj, prev.powers, s, params))
        return prev;
    return next;
}

} // namespace secrelay

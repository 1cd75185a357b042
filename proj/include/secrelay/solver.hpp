#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secrelay/channel.hpp"
#include "secrelay/position_opt.hpp"
#include "secrelay/power_opt.hpp"
#include "secrelay/scenario.hpp"

namespace secrelay {

enum class Strategy { fixed_full, position_only, power_only, joint };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::fixed_full: return "fixed_full";
        case Strategy::position_only: return "position_only";
        case Strategy::power_only: return "power_only";
        case Strategy::joint: return "joint";
    }
    return "unknown";
}

inline std::optional<Strategy> parse_strategy(const std::string& name) {
    if (name == "fixed_full") return Strategy::fixed_full;
    if (name == "position_only") return Strategy::position_only;
    if (name == "power_only") return Strategy::power_only;
    if (name == "joint") return Strategy::joint;
    return std::nullopt;
}

struct SolverConfig {
    double chi = 1e-4;       // relative-improvement stopping threshold
    int max_iterations = 100;
    std::optional<UavTrajectory> initial_trajectory; // default: cluster centers
    std::optional<PowerMatrix> initial_powers;       // default: min(p_avg, p_max)

    void validate() const {
        if (!(chi > 0.0) || !std::isfinite(chi))
            throw std::invalid_argument("chi must be finite and > 0");
        if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    }
};

struct SolveResult {
    UavTrajectory trajectory;
    PowerPolicy powers;
    std::vector<double> objective_trace; // objective_p2 per iteration, index 0 = initial
    double p1_objective = 0.0;
    double p1_before_zeroing = 0.0; // clamped objective at the raw BCD iterate
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<int, int>> zeroed_slots; // (user, slot) pairs
};

struct Lemma1Result {
    PowerPolicy powers;
    double p1_objective = 0.0;
    std::vector<std::pair<int, int>> zeroed_slots;
};

// Zero every user's power in slots where the secrecy term is negative. This
// leaves the clamped objective unchanged and makes it coincide with the
// smooth one.
inline Lemma1Result lemma1_postprocess(const UavTrajectory& traj, const PowerPolicy& powers,
                                       const Scenario& s, const ChannelParams& params) {
    Lemma1Result out;
    out.powers = powers;
    for (int n = 0; n < s.num_slots(); ++n) {
        if (tau(n, traj, out.powers.powers, s, params) < 0.0) {
            for (int i = 0; i < s.num_users(); ++i) {
                out.powers.powers[i][n] = 0.0;
                out.zeroed_slots.emplace_back(i, n);
            }
        }
    }
    out.p1_objective = objective_p1(traj, out.powers.powers, s, params);
    return out;
}

namespace detail {

inline UavTrajectory centers_trajectory(const Scenario& s) {
    UavTrajectory traj;
    traj.altitude = s.H;
    traj.xy = s.cluster_center;
    return traj;
}

inline SolveResult run_bcd(const Scenario& s, const ChannelParams& params,
                           const PowerConstraints& constraints, const SolverConfig& config,
                           bool update_position, bool update_power) {
    config.validate();
    constraints.validate();
    if (auto errors = validate_scenario(s); !errors.empty())
        throw std::invalid_argument("invalid scenario: " + errors.front());

    const int M = s.num_users();
    const int N = s.num_slots();

    UavTrajectory traj =
        config.initial_trajectory ? *config.initial_trajectory : centers_trajectory(s);
    PowerPolicy policy;
    policy.constraints = constraints;
    policy.powers = config.initial_powers
                        ? *config.initial_powers
                        : uniform_powers(M, N, std::min(constraints.p_avg, constraints.p_max));

    SolveResult result;
    result.objective_trace.push_back(objective_p2(traj, policy.powers, s, params));
    result.converged = false;

    constexpr double eps = 1e-15;
    int j = 0;
    for (; j < config.max_iterations; ++j) {
        if (update_position) traj = optimize_trajectory(s, traj, policy.powers, params);
        if (update_power) policy = optimize_powers(s, traj, policy, params, constraints);
        const double current = objective_p2(traj, policy.powers, s, params);
        const double previous = result.objective_trace.back();
        result.objective_trace.push_back(current);
        if ((current - previous) / std::max(std::abs(current), eps) < config.chi) {
            result.converged = true;
            ++j;
            break;
        }
    }
    result.iterations = j;

    result.p1_before_zeroing = objective_p1(traj, policy.powers, s, params);
    Lemma1Result post = lemma1_postprocess(traj, policy, s, params);
    result.trajectory = std::move(traj);
    result.powers = std::move(post.powers);
    result.p1_objective = post.p1_objective;
    result.zeroed_slots = std::move(post.zeroed_slots);
    return result;
}

} // namespace detail

// Algorithm: block coordinate descent alternating the SCA position step and
// the secure water-filling power step until the relative improvement of the
// smooth objective drops below chi.
inline SolveResult run_algorithm1(const Scenario& s, const ChannelParams& params,
                                  const PowerConstraints& constraints,
                                  const SolverConfig& config = {}) {
    return detail::run_bcd(s, params, constraints, config, true, true);
}

inline SolveResult run_baseline(const Scenario& s, const ChannelParams& params,
                                const PowerConstraints& constraints, Strategy strategy,
                                const SolverConfig& config = {}) {
    switch (strategy) {
        case Strategy::joint:
            return detail::run_bcd(s, params, constraints, config, true, true);
        case Strategy::position_only:
            return detail::run_bcd(s, params, constraints, config, true, false);
        case Strategy::power_only:
            return detail::run_bcd(s, params, constraints, config, false, true);
        case Strategy::fixed_full: {
            SolverConfig one = config;
            one.max_iterations = 1;
            SolveResult r = detail::run_bcd(s, params, constraints, one, false, false);
            return r;
        }
    }
    throw std::invalid_argument("unknown strategy");
}

} // namespace secrelay

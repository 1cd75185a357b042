#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "secrelay/channel.hpp"
#include "secrelay/scenario.hpp"

namespace secrelay {

struct DiskConstraint {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.0;

    bool contains(double x, double y, double slack = 0.0) const {
        const double dx = x - center[0];
        const double dy = y - center[1];
        return std::sqrt(dx * dx + dy * dy) <= radius + slack;
    }
};

// First-order surrogate of the per-slot legitimate rate, expanded in the
// squared user-UAV distance at the current trajectory. Concave quadratic in
// (x_u, y_u) with isotropic Hessian.
struct SurrogateCoefficients {
    int slot = 0;
    std::array<double, 2> expansion_point{0.0, 0.0};
    std::vector<double> alpha;     // [M], 1/(m^2 ln2) weights, >= 0
    std::vector<double> constant;  // [M], bits/s/Hz
    std::vector<double> user_x;    // [M]
    std::vector<double> user_y;    // [M]
    std::vector<double> z_term;    // [M], (H - z_i)^2

    double alpha_sum() const {
        double s = 0.0;
        for (double a : alpha) s += a;
        return s;
    }

    double evaluate(double x, double y) const {
        double value = 0.0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            const double dx = x - user_x[i];
            const double dy = y - user_y[i];
            value += constant[i] - alpha[i] * (dx * dx + dy * dy + z_term[i]);
        }
        return value;
    }
};

inline SurrogateCoefficients build_surrogate(const Scenario& s, const UavTrajectory& traj_fea,
                                             const PowerMatrix& powers,
                                             const ChannelParams& params, int n) {
    const int M = s.num_users();
    const double lambda0 = params.lambda0();
    const double ln2 = std::log(2.0);

    SurrogateCoefficients c;
    c.slot = n;
    c.expansion_point = traj_fea.xy[n];
    c.alpha.resize(M);
    c.constant.resize(M);
    c.user_x.resize(M);
    c.user_y.resize(M);
    c.z_term.resize(M);

    const Vec3 uav = traj_fea.position(n);
    for (int i = 0; i < M; ++i) {
        const Vec3& u = s.users[i][n];
        c.user_x[i] = u.x;
        c.user_y[i] = u.y;
        const double dz = traj_fea.altitude - u.z;
        c.z_term[i] = dz * dz;
        const double p_eff = lambda0 * powers[i][n]; // P-grave
        const double psi_fea = clamped_distance_sq(u, uav);
        if (p_eff <= 0.0) {
            c.alpha[i] = 0.0;
            c.constant[i] = 0.0;
            continue;
        }
        c.alpha[i] = p_eff / (ln2 * (psi_fea * psi_fea + p_eff * psi_fea));
        c.constant[i] = std::log2(1.0 + p_eff / psi_fea) + c.alpha[i] * psi_fea;
    }
    return c;
}

// Exact maximizer of the concave quadratic over the disk: the alpha-weighted
// user centroid, projected onto the boundary if it falls outside.
inline std::array<double, 2> solve_position_subproblem(const SurrogateCoefficients& coeffs,
                                                       const DiskConstraint& disk) {
    const double total = coeffs.alpha_sum();
    if (total <= 0.0) return coeffs.expansion_point;

    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < coeffs.alpha.size(); ++i) {
        cx += coeffs.alpha[i] * coeffs.user_x[i];
        cy += coeffs.alpha[i] * coeffs.user_y[i];
    }
    cx /= total;
    cy /= total;

    const double dx = cx - disk.center[0];
    const double dy = cy - disk.center[1];
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (dist <= disk.radius) return {cx, cy};
    const double scale = disk.radius / dist;
    return {disk.center[0] + dx * scale, disk.center[1] + dy * scale};
}

// One SCA position step, decomposed per slot. The guard keeps the old
// position on any floating-point regression of the true legitimate rate.
inline UavTrajectory optimize_trajectory(const Scenario& s, const UavTrajectory& traj_fea,
                                         const PowerMatrix& powers, const ChannelParams& params) {
    UavTrajectory next = traj_fea;
    for (int n = 0; n < s.num_slots(); ++n) {
        const SurrogateCoefficients coeffs = build_surrogate(s, traj_fea, powers, params, n);
        const DiskConstraint disk{s.cluster_center[n], s.R};
        const auto candidate = solve_position_subproblem(coeffs, disk);
        const double old_rate = legit_rate_slot(s, traj_fea.xy[n][0], traj_fea.xy[n][1],
                                                traj_fea.altitude, powers, params, n);
        const double new_rate =
            legit_rate_slot(s, candidate[0], candidate[1], traj_fea.altitude, powers, params, n);
        if (new_rate >= old_rate) next.xy[n] = candidate;
    }
    return next;
}

} // namespace secrelay

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "secrelay/channel.hpp"
#include "secrelay/position_opt.hpp"
#include "secrelay/power_opt.hpp"
#include "secrelay/scenario.hpp"

namespace secrelay {

// Brute-force reference implementations. Test-support only: everything above
// the channel primitives is re-derived independently of the solver path.

struct GridSpec {
    int position_resolution = 101; // points per axis
    int power_levels = 201;

    void validate() const {
        if (position_resolution < 2 || power_levels < 2)
            throw std::invalid_argument("grid resolution fields must be >= 2");
    }
};

struct PositionSearchResult {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
};

inline std::vector<std::array<double, 2>> feasible_grid_points(const DiskConstraint& disk,
                                                               int resolution) {
    std::vector<std::array<double, 2>> points;
    const double step = 2.0 * disk.radius / (resolution - 1);
    for (int ix = 0; ix < resolution; ++ix) {
        const double x = disk.center[0] - disk.radius + ix * step;
        for (int iy = 0; iy < resolution; ++iy) {
            const double y = disk.center[1] - disk.radius + iy * step;
            if (disk.contains(x, y, 1e-12)) points.push_back({x, y});
        }
    }
    return points;
}

// Exhaustive search of an arbitrary per-slot position objective over the disk.
inline PositionSearchResult
grid_search_position_objective(const DiskConstraint& disk, const GridSpec& grid,
                               const std::function<double(double, double)>& objective) {
    grid.validate();
    PositionSearchResult best;
    bool first = true;
    for (const auto& p : feasible_grid_points(disk, grid.position_resolution)) {
        const double value = objective(p[0], p[1]);
        if (first || value > best.value) {
            best = {p[0], p[1], value};
            first = false;
        }
    }
    return best;
}

// True per-slot legitimate rate maximized over the disk.
inline PositionSearchResult grid_search_position(const Scenario& s, const PowerMatrix& powers,
                                                 const ChannelParams& params, int n,
                                                 const GridSpec& grid) {
    const DiskConstraint disk{s.cluster_center[n], s.R};
    return grid_search_position_objective(disk, grid, [&](double x, double y) {
        double sum = 0.0;
        const Vec3 uav{x, y, s.H};
        for (int i = 0; i < s.num_users(); ++i)
            sum += legit_capacity(powers[i][n], clamped_distance_sq(s.users[i][n], uav), params);
        return sum;
    });
}

struct JointSearchResult {
    UavTrajectory trajectory;
    PowerMatrix powers;
    double objective_p1 = 0.0;
};

// Global reference for the clamped problem on tiny instances. Exhaustive
// product search over per-slot positions and per-user per-slot power levels,
// keeping only average-feasible power combinations.
inline JointSearchResult grid_search_joint(const Scenario& s, const ChannelParams& params,
                                           const PowerConstraints& constraints,
                                           const GridSpec& grid) {
    grid.validate();
    constraints.validate();
    const int M = s.num_users();
    const int K = s.num_eavesdroppers();
    const int N = s.num_slots();
    if (M > 2 || K > 2 || N > 2)
        throw std::invalid_argument("grid_search_joint: instance too large (M,K,N must be <= 2)");

    std::vector<double> levels(grid.power_levels);
    for (int l = 0; l < grid.power_levels; ++l)
        levels[l] = constraints.p_max * l / (grid.power_levels - 1);

    // per-user power tuples over slots with feasible average
    std::vector<std::vector<double>> user_tuples;
    {
        std::vector<double> tuple(N, 0.0);
        std::vector<int> idx(N, 0);
        while (true) {
            double sum = 0.0;
            for (int n = 0; n < N; ++n) sum += levels[idx[n]];
            if (sum / N <= constraints.p_avg + 1e-12) {
                for (int n = 0; n < N; ++n) tuple[n] = levels[idx[n]];
                user_tuples.push_back(tuple);
            }
            int pos = N - 1;
            while (pos >= 0 && ++idx[pos] == grid.power_levels) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }

    std::vector<std::vector<std::array<double, 2>>> slot_points(N);
    for (int n = 0; n < N; ++n)
        slot_points[n] = feasible_grid_points(DiskConstraint{s.cluster_center[n], s.R},
                                              grid.position_resolution);

    // independent per-slot secrecy evaluation: tau[n] depends only on the
    // slot's position and the slot-n powers, so search slot by slot when
    // powers are fixed; positions decouple entirely given a power combo.
    JointSearchResult best;
    best.objective_p1 = -1.0;
    std::vector<int> power_idx(M, 0);
    PowerMatrix powers(M, std::vector<double>(N, 0.0));
    while (true) {
        for (int i = 0; i < M; ++i) powers[i] = user_tuples[power_idx[i]];

        double total = 0.0;
        std::vector<std::array<double, 2>> traj_xy(N);
        for (int n = 0; n < N; ++n) {
            double wiretap = 0.0;
            for (int j = 0; j < K; ++j) {
                double sum = 0.0;
                for (int i = 0; i < M; ++i) {
                    const double d2 = clamped_distance_sq(s.users[i][n], s.eavesdroppers[j]);
                    sum += eaves_capacity(powers[i][n], d2 * d2, params);
                }
                wiretap = std::max(wiretap, sum);
            }
            double best_slot = -1.0;
            for (const auto& p : slot_points[n]) {
                double legit = 0.0;
                const Vec3 uav{p[0], p[1], s.H};
                for (int i = 0; i < M; ++i)
                    legit += legit_capacity(powers[i][n],
                                            clamped_distance_sq(s.users[i][n], uav), params);
                if (legit > best_slot) {
                    best_slot = legit;
                    traj_xy[n] = p;
                }
            }
            total += std::max(best_slot - wiretap, 0.0);
        }
        total /= N;
        if (total > best.objective_p1) {
            best.objective_p1 = total;
            best.powers = powers;
            best.trajectory.xy = traj_xy;
            best.trajectory.altitude = s.H;
        }

        int pos = M - 1;
        while (pos >= 0 && ++power_idx[pos] == static_cast<int>(user_tuples.size()))
            power_idx[pos--] = 0;
        if (pos < 0) break;
    }
    return best;
}

} // namespace secrelay

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

#include "secrelay/scenario.hpp"

namespace secrelay {

// Far-field guard: distances below the 1 m reference point are clamped
// before any gain computation.
inline constexpr double kMinDistance = 1.0;

inline std::atomic<std::uint64_t>& clamp_counter() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

struct ChannelParams {
    double beta0 = 1.0;  // linear gain at d0 = 1 m
    double sigma2 = 1.0; // noise power, watts

    double lambda0() const { return beta0 / sigma2; }

    static ChannelParams from_lambda0(double lambda0) { return {lambda0, 1.0}; }
};

// UAV positions per slot at fixed altitude.
struct UavTrajectory {
    std::vector<std::array<double, 2>> xy; // [N]
    double altitude = 0.0;

    Vec3 position(int n) const { return {xy[n][0], xy[n][1], altitude}; }
};

// powers[i][n] in watts
using PowerMatrix = std::vector<std::vector<double>>;

inline PowerMatrix uniform_powers(int num_users, int num_slots, double level) {
    return PowerMatrix(num_users, std::vector<double>(num_slots, level));
}

inline double clamped_distance_sq(const Vec3& a, const Vec3& b) {
    const double d2 = distance_sq(a, b);
    if (d2 < kMinDistance * kMinDistance) {
        clamp_counter().fetch_add(1, std::memory_order_relaxed);
        return kMinDistance * kMinDistance;
    }
    return d2;
}

// Air-to-ground gain, path-loss exponent 2.
inline double a2g_gain(const Vec3& user, const Vec3& uav, const ChannelParams& params) {
    return params.beta0 / clamped_distance_sq(user, uav);
}

// Ground-to-ground gain, path-loss exponent 4.
inline double g2g_gain(const Vec3& user, const Vec3& eaves, const ChannelParams& params) {
    const double d2 = clamped_distance_sq(user, eaves);
    return params.beta0 / (d2 * d2);
}

inline double legit_capacity(double power, double d2, const ChannelParams& params) {
    return std::log2(1.0 + params.lambda0() * power / d2);
}

inline double eaves_capacity(double power, double d4, const ChannelParams& params) {
    return std::log2(1.0 + params.lambda0() * power / d4);
}

// mu[i][n] = lambda0 / d^2_iu[n], eta[i][j][n] = lambda0 / d^4_ij[n].
struct LinkGains {
    std::vector<std::vector<double>> mu;               // [M][N]
    std::vector<std::vector<std::vector<double>>> eta; // [M][K][N]
};

inline LinkGains compute_link_gains(const Scenario& s, const UavTrajectory& traj,
                                    const ChannelParams& params) {
    const int M = s.num_users();
    const int K = s.num_eavesdroppers();
    const int N = s.num_slots();
    const double lambda0 = params.lambda0();

    LinkGains g;
    g.mu.assign(M, std::vector<double>(N));
    g.eta.assign(M, std::vector<std::vector<double>>(K, std::vector<double>(N)));
    for (int i = 0; i < M; ++i) {
        for (int n = 0; n < N; ++n) {
            g.mu[i][n] = lambda0 / clamped_distance_sq(s.users[i][n], traj.position(n));
            for (int j = 0; j < K; ++j) {
                const double d2 = clamped_distance_sq(s.users[i][n], s.eavesdroppers[j]);
                g.eta[i][j][n] = lambda0 / (d2 * d2);
            }
        }
    }
    return g;
}

// argmax over eavesdroppers of the summed wiretap capacities at slot n;
// ties broken by lowest index.
inline int worst_eavesdropper(const PowerMatrix& powers, const LinkGains& gains, int n) {
    const int M = static_cast<int>(gains.eta.size());
    const int K = M > 0 ? static_cast<int>(gains.eta[0].size()) : 0;
    int best = 0;
    double best_sum = -1.0;
    for (int j = 0; j < K; ++j) {
        double sum = 0.0;
        for (int i = 0; i < M; ++i)
            sum += std::log2(1.0 + gains.eta[i][j][n] * powers[i][n]);
        if (sum > best_sum) {
            best_sum = sum;
            best = j;
        }
    }
    return best;
}

// Sum of legitimate capacities at slot n for a candidate UAV xy position.
inline double legit_rate_slot(const Scenario& s, double x, double y, double altitude,
                              const PowerMatrix& powers, const ChannelParams& params, int n) {
    double sum = 0.0;
    const Vec3 uav{x, y, altitude};
    for (int i = 0; i < s.num_users(); ++i) {
        const double d2 = clamped_distance_sq(s.users[i][n], uav);
        sum += legit_capacity(powers[i][n], d2, params);
    }
    return sum;
}

// Per-slot secrecy term: sum_i C_iu[n] - max_j sum_i C_ij[n]; may be negative.
inline double tau(int n, const UavTrajectory& traj, const PowerMatrix& powers,
                  const Scenario& s, const ChannelParams& params) {
    const int M = s.num_users();
    const int K = s.num_eavesdroppers();
    double legit = 0.0;
    const Vec3 uav = traj.position(n);
    for (int i = 0; i < M; ++i) {
        const double d2 = clamped_distance_sq(s.users[i][n], uav);
        legit += legit_capacity(powers[i][n], d2, params);
    }
    double worst = 0.0;
    for (int j = 0; j < K; ++j) {
        double sum = 0.0;
        for (int i = 0; i < M; ++i) {
            const double d2 = clamped_distance_sq(s.users[i][n], s.eavesdroppers[j]);
            sum += eaves_capacity(powers[i][n], d2 * d2, params);
        }
        worst = (j == 0) ? sum : std::max(worst, sum);
    }
    return legit - worst;
}

// Smooth objective: mean of per-slot tau values (no clamp).
inline double objective_p2(const UavTrajectory& traj, const PowerMatrix& powers,
                           const Scenario& s, const ChannelParams& params) {
    const int N = s.num_slots();
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += tau(n, traj, powers, s, params);
    return sum / N;
}

// Average secrecy capacity: mean of clamped per-slot terms.
inline double objective_p1(const UavTrajectory& traj, const PowerMatrix& powers,
                           const Scenario& s, const ChannelParams& params) {
    const int N = s.num_slots();
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::max(tau(n, traj, powers, s, params), 0.0);
    return sum / N;
}

} // namespace secrelay

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace secrelay {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance_sq(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

struct ScenarioConfig {
    int num_users = 1;
    int num_eavesdroppers = 1;
    int num_slots = 1;
    double cluster_radius = 50.0;   // r_c, meters
    double uav_disk_radius = 100.0; // R, meters
    double uav_altitude = 100.0;    // H, meters
    double field_size = 400.0;      // square side for eavesdropper placement
    Vec3 cluster_start{0.0, 0.0, 0.0};
    std::array<double, 2> cluster_velocity{0.0, 0.0}; // meters per slot
    double user_height = 0.0;
    double eaves_height = 0.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (num_users < 1) throw std::invalid_argument("num_users must be >= 1");
        if (num_eavesdroppers < 1) throw std::invalid_argument("num_eavesdroppers must be >= 1");
        if (num_slots < 1) throw std::invalid_argument("num_slots must be >= 1");
        if (!(cluster_radius >= 0.0)) throw std::invalid_argument("cluster_radius must be >= 0");
        if (!(uav_disk_radius > 0.0)) throw std::invalid_argument("uav_disk_radius must be > 0");
        if (!(field_size > 0.0)) throw std::invalid_argument("field_size must be > 0");
        if (!(user_height >= 0.0) || !(eaves_height >= 0.0))
            throw std::invalid_argument("node heights must be >= 0");
        if (!(uav_altitude > user_height) || !(uav_altitude > eaves_height))
            throw std::invalid_argument("uav_altitude must exceed ground node heights");
    }
};

// Geometric world consumed by every other module. Users move with the
// cluster; eavesdroppers are static across slots.
struct Scenario {
    std::vector<std::vector<Vec3>> users;          // [M][N]
    std::vector<Vec3> eavesdroppers;               // [K]
    std::vector<std::array<double, 2>> cluster_center; // [N]
    double R = 0.0;
    double H = 0.0;

    int num_users() const { return static_cast<int>(users.size()); }
    int num_eavesdroppers() const { return static_cast<int>(eavesdroppers.size()); }
    int num_slots() const { return static_cast<int>(cluster_center.size()); }
};

inline Scenario generate_scenario(const ScenarioConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Scenario s;
    s.R = config.uav_disk_radius;
    s.H = config.uav_altitude;

    const double half = config.field_size / 2.0;
    s.eavesdroppers.resize(config.num_eavesdroppers);
    for (auto& e : s.eavesdroppers) {
        e.x = -half + config.field_size * unit(rng);
        e.y = -half + config.field_size * unit(rng);
        e.z = config.eaves_height;
    }

    s.cluster_center.resize(config.num_slots);
    for (int n = 0; n < config.num_slots; ++n) {
        s.cluster_center[n] = {config.cluster_start.x + n * config.cluster_velocity[0],
                               config.cluster_start.y + n * config.cluster_velocity[1]};
    }

    s.users.assign(config.num_users, std::vector<Vec3>(config.num_slots));
    for (int i = 0; i < config.num_users; ++i) {
        for (int n = 0; n < config.num_slots; ++n) {
            const double r = config.cluster_radius * std::sqrt(unit(rng));
            const double theta = 2.0 * M_PI * unit(rng);
            s.users[i][n].x = s.cluster_center[n][0] + r * std::cos(theta);
            s.users[i][n].y = s.cluster_center[n][1] + r * std::sin(theta);
            s.users[i][n].z = config.user_height;
        }
    }
    return s;
}

// Structural checks only; loaded scenarios may encode arbitrary geometries,
// so no cluster-containment test here.
inline std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> errors;
    if (s.eavesdroppers.empty()) errors.push_back("no eavesdroppers");
    if (s.users.empty()) errors.push_back("no users");
    if (s.cluster_center.empty()) errors.push_back("no slots");
    if (!(s.R > 0.0)) errors.push_back("R must be > 0");
    if (!std::isfinite(s.H) || !(s.H > 0.0)) errors.push_back("H must be finite and > 0");

    const std::size_t n_slots = s.cluster_center.size();
    for (std::size_t i = 0; i < s.users.size(); ++i) {
        if (s.users[i].size() != n_slots) {
            errors.push_back("user " + std::to_string(i) + " has wrong slot count");
            continue;
        }
        for (std::size_t n = 0; n < n_slots; ++n) {
            const Vec3& p = s.users[i][n];
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                errors.push_back("non-finite coordinate at user " + std::to_string(i) +
                                 " slot " + std::to_string(n));
        }
    }
    for (std::size_t j = 0; j < s.eavesdroppers.size(); ++j) {
        const Vec3& p = s.eavesdroppers[j];
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            errors.push_back("non-finite coordinate at eavesdropper " + std::to_string(j));
    }
    for (std::size_t n = 0; n < n_slots; ++n) {
        if (!std::isfinite(s.cluster_center[n][0]) || !std::isfinite(s.cluster_center[n][1]))
            errors.push_back("non-finite cluster center at slot " + std::to_string(n));
    }
    return errors;
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    auto& users = j["users"] = nlohmann::json::array();
    for (const auto& row : s.users) {
        nlohmann::json slots = nlohmann::json::array();
        for (const auto& p : row) slots.push_back({p.x, p.y, p.z});
        users.push_back(std::move(slots));
    }
    auto& eaves = j["eavesdroppers"] = nlohmann::json::array();
    for (const auto& p : s.eavesdroppers) eaves.push_back({p.x, p.y, p.z});
    auto& centers = j["cluster_center"] = nlohmann::json::array();
    for (const auto& c : s.cluster_center) centers.push_back({c[0], c[1]});
    j["R"] = s.R;
    j["H"] = s.H;
    return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    for (const auto& row : j.at("users")) {
        std::vector<Vec3> slots;
        for (const auto& p : row) slots.push_back({p.at(0), p.at(1), p.at(2)});
        s.users.push_back(std::move(slots));
    }
    for (const auto& p : j.at("eavesdroppers"))
        s.eavesdroppers.push_back({p.at(0), p.at(1), p.at(2)});
    for (const auto& c : j.at("cluster_center"))
        s.cluster_center.push_back({c.at(0), c.at(1)});
    s.R = j.at("R");
    s.H = j.at("H");
    return s;
}

inline ScenarioConfig scenario_config_from_json(const nlohmann::json& j) {
    ScenarioConfig c;
    c.num_users = j.at("num_users");
    c.num_eavesdroppers = j.at("num_eavesdroppers");
    c.num_slots = j.at("num_slots");
    c.cluster_radius = j.at("cluster_radius");
    c.uav_disk_radius = j.at("uav_disk_radius");
    c.uav_altitude = j.at("uav_altitude");
    c.field_size = j.value("field_size", 400.0);
    if (j.contains("cluster_start")) {
        const auto& p = j["cluster_start"];
        c.cluster_start = {p.at(0), p.at(1), p.size() > 2 ? double(p.at(2)) : 0.0};
    }
    if (j.contains("cluster_velocity")) {
        const auto& v = j["cluster_velocity"];
        c.cluster_velocity = {v.at(0), v.at(1)};
    }
    c.user_height = j.value("user_height", 0.0);
    c.eaves_height = j.value("eaves_height", 0.0);
    c.rng_seed = j.value("rng_seed", std::uint64_t{0});
    return c;
}

} // namespace secrelay

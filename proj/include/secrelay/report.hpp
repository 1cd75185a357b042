#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "secrelay/channel.hpp"
#include "secrelay/solver.hpp"

namespace secrelay {

inline constexpr const char* kCsvSchemaVersion = "v1";

// 12 significant digits, deterministic across runs
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct RunRecord {
    std::string scenario_id;
    std::string strategy;
    std::uint64_t seed = 0;
    SolveResult result;
    double wall_time_seconds = 0.0; // reported on stdout only; kept out of the
                                    // CSV so repeated runs are byte-identical
};

// Summary row followed by one row per slot. The per-user powers for a slot
// are semicolon-joined in the user_powers column so the column set stays
// fixed for any M.
inline std::string run_record_csv(const RunRecord& rec, const Scenario& s,
                                  const ChannelParams& params) {
    std::ostringstream out;
    out << "schema_version,row_type,scenario_id,strategy,seed,objective_p1,objective_p2,"
           "iterations,converged,slot,x_u,y_u,tau_n,worst_eaves,user_powers\n";
    const SolveResult& r = rec.result;
    const double p2 = objective_p2(r.trajectory, r.powers.powers, s, params);
    out << kCsvSchemaVersion << ",summary," << rec.scenario_id << ',' << rec.strategy << ','
        << rec.seed << ',' << format_double(r.p1_objective) << ',' << format_double(p2) << ','
        << r.iterations << ',' << (r.converged ? 1 : 0) << ",,,,,,\n";

    const LinkGains gains = compute_link_gains(s, r.trajectory, params);
    for (int n = 0; n < s.num_slots(); ++n) {
        const double tau_n = tau(n, r.trajectory, r.powers.powers, s, params);
        const int jstar = worst_eavesdropper(r.powers.powers, gains, n);
        out << kCsvSchemaVersion << ",slot," << rec.scenario_id << ',' << rec.strategy << ','
            << rec.seed << ",,,,," << n << ',' << format_double(r.trajectory.xy[n][0]) << ','
            << format_double(r.trajectory.xy[n][1]) << ',' << format_double(tau_n) << ','
            << jstar << ',';
        for (int i = 0; i < s.num_users(); ++i) {
            if (i) out << ';';
            out << format_double(r.powers.powers[i][n]);
        }
        out << '\n';
    }
    return out.str();
}

inline std::string trace_csv(const SolveResult& r) {
    std::ostringstream out;
    out << "iteration,objective_p2\n";
    for (std::size_t j = 0; j < r.objective_trace.size(); ++j)
        out << j << ',' << format_double(r.objective_trace[j]) << '\n';
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

} // namespace secrelay

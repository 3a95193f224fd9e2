#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <new>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "particula/csv.hpp"
#include "particula/md.hpp"

/// Scaling benchmark of the velocity-update kernel, plus the brute-force
/// reference used to validate it.
namespace particula::bench {

enum class Mode {
    fixed_neighbors,  ///< r_cut = sqrt(3/n): neighbor count constant, expect linear scaling
    fixed_cutoff,     ///< r_cut = sqrt(3/500): neighbor count grows with n, expect ~quadratic
    brute_force,      ///< time the all-pairs reference instead of the cell-list path
};

inline std::string_view mode_name(Mode mode) {
    switch (mode) {
        case Mode::fixed_neighbors: return "fixed-neighbors";
        case Mode::fixed_cutoff: return "fixed-cutoff";
        case Mode::brute_force: return "brute-force";
    }
    return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "fixed-neighbors") return Mode::fixed_neighbors;
    if (s == "fixed-cutoff") return Mode::fixed_cutoff;
    if (s == "brute-force") return Mode::brute_force;
    return std::nullopt;
}

/// One benchmark row: timing of the velocity update on a frozen
/// configuration of n particles.
struct BenchRecord {
    Mode mode;
    std::size_t n;
    double r_cut;
    long reps;
    double total_seconds;
    double mean_seconds;  ///< T_e = total/reps
    double rate;          ///< n / T_e
};

/// Evaluation count for n particles: floor(1000/n) + 1, so small systems are
/// timed often enough to rise above clock noise.
constexpr long rep_count(std::size_t n) { return static_cast<long>(1000 / n) + 1; }

/// All-pairs reference for one velocity update: O(N^2) over every alive pair,
/// minimum image taken by explicit shift enumeration, no spatial index
/// anywhere on the path. Returns the post-update velocities. This is the
/// oracle the indexed path is checked against.
inline std::vector<Vec<2>> brute_force_reference(const md::Particles& particles,
                                                 const md::SimParams& params) {
    const double r_cut = params.cutoff();
    const double c = params.c;
    const std::size_t n = particles.size();
    auto positions = particles.view<md::Particles::position>();
    auto velocities = particles.view<md::velocity>();

    // shortest periodic image on the unit torus: try the three candidate
    // shifts and keep the smallest, preferring the positive one on a tie
    auto shortest = [](double d) {
        double best = d;
        for (double cand : {d - 1.0, d + 1.0}) {
            const double a = std::abs(cand), b = std::abs(best);
            if (a < b || (a == b && cand > best)) best = cand;
        }
        return best;
    };

    std::vector<Vec<2>> out(velocities.begin(), velocities.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (!particles.is_alive(i)) continue;
        Vec<2> dv{};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !particles.is_alive(j)) continue;
            const Vec<2> dx{shortest(positions[j][0] - positions[i][0]),
                            shortest(positions[j][1] - positions[i][1])};
            const double r = norm(dx);
            if (r > 0.0 && r < r_cut) dv += md::force(dx, c, r_cut);
        }
        out[i] = velocities[i] + dv;
    }
    return out;
}

constexpr double kVerifyTolerance = 1e-12;

struct VerifyResult {
    std::size_t n;
    double max_rel_error;
    bool ok;
};

/// Run one velocity update through the cell-list path and through the
/// brute-force reference, and compare per particle. Passes when every
/// relative error is within kVerifyTolerance.
inline VerifyResult verify(std::size_t n, std::uint64_t seed,
                           IndexVariant variant = IndexVariant::serial_buckets, Exec exec = {}) {
    md::SimParams params;
    params.n = n;
    params.seed = seed;
    params.variant = variant;
    params.exec = exec;

    auto sim = md::init_random(params);
    const auto expected = brute_force_reference(sim.particles, params);
    md::velocity_update(sim.particles, sim.index, params);

    auto velocities = sim.particles.view<md::velocity>();
    double worst = 0.0;
    for (std::size_t i = 0; i < sim.particles.size(); ++i) {
        const double err = norm(velocities[i] - expected[i]);
        const double rel = err / std::max(norm(expected[i]), 1e-30);
        if (rel > worst) worst = rel;
    }
    return {n, worst, worst <= kVerifyTolerance};
}

namespace detail {

/// Keeps a computed value observably alive so the timed call cannot be
/// optimized away.
inline void do_not_optimize(const void* p) { asm volatile("" : : "g"(p) : "memory"); }

inline BenchRecord bench_one(Mode mode, std::size_t n, std::uint64_t seed, Exec exec) {
    md::SimParams params;
    params.n = n;
    params.seed = seed;
    params.exec = exec;
    if (mode == Mode::fixed_cutoff) params.r_cut = std::sqrt(3.0 / 500.0);

    auto sim = md::init_random(params);

    auto evaluate = [&] {
        if (mode == Mode::brute_force) {
            auto result = brute_force_reference(sim.particles, params);
            do_not_optimize(result.data());
        } else {
            md::velocity_update(sim.particles, sim.index, params);
        }
    };

    evaluate();  // untimed warm-up; the timed reps run on hot caches

    const long reps = rep_count(n);
    const auto t0 = std::chrono::steady_clock::now();
    for (long rep = 0; rep < reps; ++rep) evaluate();
    const auto t1 = std::chrono::steady_clock::now();

    BenchRecord record;
    record.mode = mode;
    record.n = n;
    record.r_cut = params.cutoff();
    record.reps = reps;
    record.total_seconds = std::chrono::duration<double>(t1 - t0).count();
    record.mean_seconds = record.total_seconds / static_cast<double>(reps);
    record.rate = static_cast<double>(n) / record.mean_seconds;
    return record;
}

}  // namespace detail

/// Benchmark the velocity update over a list of particle counts. Each entry
/// initialises a fresh configuration, then times rep_count(n) evaluations of
/// the velocity update alone on it; the configuration stays frozen (positions
/// never advance, the index is never rebuilt). Initialisation and index
/// construction are outside the timed region.
inline std::vector<BenchRecord> run_benchmark(Mode mode, std::span<const std::size_t> n_list,
                                              std::uint64_t seed, Exec exec = {}) {
    std::vector<BenchRecord> records;
    records.reserve(n_list.size());
    for (std::size_t n : n_list) {
        if (n < 2)
            throw std::invalid_argument("bench: n must be at least 2, got " + std::to_string(n));
        try {
            records.push_back(detail::bench_one(mode, n, seed, exec));
        } catch (const std::bad_alloc&) {
            throw std::runtime_error("bench: out of memory at n = " + std::to_string(n));
        }
    }
    return records;
}

/// CSV rows in input order under the fixed header
/// mode,n,r_cut,reps,total_seconds,mean_seconds,rate.
inline void write_csv(std::ostream& os, std::span<const BenchRecord> records) {
    os << "mode,n,r_cut,reps,total_seconds,mean_seconds,rate\n";
    for (const auto& r : records) {
        os << mode_name(r.mode) << ',' << r.n << ',' << particula::detail::g17(r.r_cut) << ','
           << r.reps << ',' << particula::detail::g17(r.total_seconds) << ','
           << particula::detail::g17(r.mean_seconds) << ',' << particula::detail::g17(r.rate)
           << '\n';
    }
}

}  // namespace particula::bench

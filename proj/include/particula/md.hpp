#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>

#include "particula/cell_list.hpp"
#include "particula/particle_set.hpp"
#include "particula/update.hpp"

/// Reference application: N point particles in the periodic unit square,
/// interacting through a short-range exponential pair force and advanced by a
/// semi-implicit Euler integrator at unit timestep. Each step kicks the
/// velocities from the neighbor force sum first, then moves the positions by
/// the fresh velocities.
namespace particula::md {

PARTICULA_VARIABLE(velocity, Vec<2>);

using Particles = ParticleSet<2, velocity>;
using Index = CellListIndex<Particles>;

struct SimParams {
    std::size_t n = 100;
    std::uint64_t seed = 0;
    long timesteps = 1000;
    double r_cut = 0;  ///< interaction cutoff; 0 selects the default sqrt(3/n)
    double c = 1e-3;   ///< force constant
    IndexVariant variant = IndexVariant::serial_buckets;
    Exec exec{};

    // the integrator is defined at unit timestep; the update equations absorb it
    static constexpr double dt = 1.0;

    /// sqrt(3/n) keeps the expected neighbor count at about 3*pi regardless
    /// of n.
    double cutoff() const { return r_cut > 0 ? r_cut : std::sqrt(3.0 / static_cast<double>(n)); }
};

/// Pair force at minimum-image displacement dx:
///
///   f(dx) = -c * exp(-|dx|) * dx/|dx|   for 0 < |dx| < r_cut,
///           0                            otherwise.
///
/// The |dx| = 0 case is excluded by the callers' self-pair filter; returning
/// zero for it here turns a contract slip into a no-op instead of a NaN.
inline Vec<2> force(const Vec<2>& dx, double c, double r_cut) {
    const double r = norm(dx);
    if (!(r > 0.0) || r >= r_cut) return {};
    const double scale = -c * std::exp(-r) / r;
    return {scale * dx[0], scale * dx[1]};
}

/// 53-bit uniform draw in [0, 1): the top bits of one generator output, so
/// the stream is identical on every platform.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

struct Simulation {
    Particles particles;
    Index index;
};

/// n particles uniform in the unit square, velocities zero, cell width
/// r_cut, both dimensions periodic. Deterministic for a fixed seed.
inline Simulation init_random(const SimParams& params) {
    if (params.n < 1) throw std::invalid_argument("md: need at least one particle");
    const double r_cut = params.cutoff();
    if (!(r_cut > 0.0) || r_cut > 1.0)
        throw std::invalid_argument("md: cutoff must lie in (0, 1], got " + std::to_string(r_cut));

    Particles particles(params.n);
    std::mt19937_64 gen(params.seed);
    auto positions = particles.view<Particles::position>();
    for (std::size_t i = 0; i < params.n; ++i) {
        positions[i][0] = uniform01(gen);
        positions[i][1] = uniform01(gen);
    }
    // velocities start at zero from the container's zero-initialisation

    auto index = init_neighbour_search(particles, Vec<2>{0.0, 0.0}, Vec<2>{1.0, 1.0}, r_cut,
                                       {true, true}, params.variant);
    return {std::move(particles), std::move(index)};
}

/// Velocity half-step: v_i += sum over neighbors j with 0 < |dx_ij| < r_cut
/// of f(dx_ij). Buffered, so every particle's sum sees the pre-step state.
inline void velocity_update(Particles& particles, Index& index, const SimParams& params,
                            Order order = Order::forward) {
    const double r_cut = params.cutoff();
    const double c = params.c;
    auto acc = sum_over_neighbors<Vec<2>>(
        r_cut,
        [r_cut](const Vec<2>& dx) {
            const double r = norm(dx);
            return r < r_cut && r > 0.0;
        },
        [c, r_cut](std::size_t, std::size_t, const Vec<2>& dx) { return force(dx, c, r_cut); });
    neighbor_accumulate_update<velocity>(
        particles, index, acc, [](const Vec<2>& v, const Vec<2>& dv) { return v + dv; },
        params.exec, order);
}

/// Position half-step: r_i += v_i with the just-updated velocities, followed
/// by wrap and index re-sync.
inline void position_update(Particles& particles, Index& index, const SimParams& params) {
    const UpdatePlan move = plan({"position", "velocity"}, {"position"});
    auto positions = particles.view<Particles::position>();
    auto velocities = particles.view<velocity>();
    for_each_update<Particles::position>(
        particles, &index, move, [&](std::size_t i) { return positions[i] + velocities[i]; },
        params.exec);
}

/// One timestep. The order is fixed: velocities first, then positions from
/// the new velocities.
inline void step(Particles& particles, Index& index, const SimParams& params) {
    velocity_update(particles, index, params);
    position_update(particles, index, params);
}

using SnapshotFn = std::function<void(long step, const Particles&)>;

/// Run the full simulation. When a snapshot callback is given it is invoked
/// with the state at the top of every step (steps 0 .. timesteps-1), before
/// the updates. Returns the final state.
inline Particles run(const SimParams& params, const SnapshotFn& snapshot = {}) {
    auto sim = init_random(params);
    for (long io = 0; io < params.timesteps; ++io) {
        if (snapshot) snapshot(io, sim.particles);
        step(sim.particles, sim.index, params);
    }
    return std::move(sim.particles);
}

}  // namespace particula::md

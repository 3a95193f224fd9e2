// Acceptance suite: end-to-end checks of the library's core guarantees, one
// printed pass/fail line each. Criteria with a runtime budget fail when they
// blow it. Exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <cli.hpp>
#include <particula/particula.hpp>

#include "oracle.hpp"

namespace fs = std::filesystem;
namespace md = particula::md;
namespace bench = particula::bench;
using particula::IndexVariant;
using particula::Vec;
using particula::Vec2;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool in_budget = true;
    if (budget_seconds > 0.0 && elapsed > budget_seconds) {
        in_budget = false;
        outcome.detail += " [over the " + std::to_string(budget_seconds) + " s budget]";
    }
    const bool pass = outcome.ok && in_budget;
    if (!pass) ++failures;

    std::ostringstream line;
    line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label;
    if (!outcome.detail.empty()) line << " -- " << outcome.detail;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << elapsed << " s)";
    std::cout << line.str() << std::endl;
}

template <std::size_t D>
using Set = particula::ParticleSet<D>;

template <class SetT, std::size_t D>
std::vector<std::uint64_t> search_ids(const particula::CellListIndex<SetT>& index,
                                      const SetT& set, const Vec<D>& q, double r) {
    std::vector<std::uint64_t> ids;
    radius_search(index, set, q, r,
                  [&](const particula::NeighborHit<D>& h) { ids.push_back(set.id_of(h.index)); });
    std::sort(ids.begin(), ids.end());
    return ids;
}

template <std::size_t D>
struct RandomConfig {
    Set<D> particles;
    oracle::Box<D> box;
    double cell_width = 0;
    double radius = 0;
};

template <std::size_t D>
RandomConfig<D> make_config(std::mt19937& rng, std::size_t max_n) {
    RandomConfig<D> cfg;
    double min_extent = 1e30;
    for (std::size_t k = 0; k < D; ++k) {
        cfg.box.lower[k] = std::uniform_real_distribution<>(-1.0, 1.0)(rng);
        const double extent = std::uniform_real_distribution<>(0.4, 2.5)(rng);
        cfg.box.upper[k] = cfg.box.lower[k] + extent;
        cfg.box.periodic[k] = rng() % 2 == 0;
        min_extent = std::min(min_extent, extent);
    }
    cfg.cell_width = std::uniform_real_distribution<>(0.05, 1.2)(rng) * min_extent;
    // radius anywhere in (0, cell_width]
    cfg.radius = std::uniform_real_distribution<>(0.05, 1.0)(rng) * cfg.cell_width;

    const std::size_t n = 1 + rng() % max_n;
    cfg.particles = Set<D>(n);
    auto pos = cfg.particles.template view<typename Set<D>::position>();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < D; ++k)
            pos[i][k] = std::uniform_real_distribution<>(cfg.box.lower[k], cfg.box.upper[k])(rng);
        if (rng() % 8 == 0) cfg.particles.mark_dead(i);
    }
    return cfg;
}

// ---- criterion 1 ------------------------------------------------------

template <std::size_t D>
bool search_oracle_configs(std::mt19937& rng, int configs, long& queries, std::string& note) {
    for (int round = 0; round < configs; ++round) {
        auto cfg = make_config<D>(rng, 512);
        const auto variant =
            rng() % 2 ? IndexVariant::serial_buckets : IndexVariant::bulk_reordered;
        auto index = init_neighbour_search(cfg.particles, cfg.box.lower, cfg.box.upper,
                                           cfg.cell_width, cfg.box.periodic, variant);

        auto positions = cfg.particles.template view<typename Set<D>::position>();
        for (std::size_t q = 0; q < cfg.particles.size(); ++q) {
            const auto got = search_ids(index, cfg.particles, positions[q], cfg.radius);
            const auto want = oracle::radius_ids(cfg.particles, cfg.box, positions[q], cfg.radius);
            ++queries;
            if (got != want) {
                note = "mismatch in a D=" + std::to_string(D) + " configuration (n=" +
                       std::to_string(cfg.particles.size()) + ")";
                return false;
            }
        }
    }
    return true;
}

Outcome check_search_oracle() {
    std::mt19937 rng(1001);
    long queries = 0;
    std::string note;
    const bool ok = search_oracle_configs<1>(rng, 70, queries, note) &&
                    search_oracle_configs<2>(rng, 70, queries, note) &&
                    search_oracle_configs<3>(rng, 70, queries, note);
    if (!ok) return {false, note};
    return {true, "210 random configurations, " + std::to_string(queries) +
                      " queries, all id sets equal to brute force"};
}

// ---- criterion 2 ------------------------------------------------------

Outcome check_dynamics_oracle() {
    double worst = 0.0;
    for (std::size_t n : {16u, 100u, 256u}) {
        const auto result = bench::verify(n, 7);
        worst = std::max(worst, result.max_rel_error);
        if (!result.ok)
            return {false, "n=" + std::to_string(n) + " max relative error " +
                               std::to_string(result.max_rel_error) + " > 1e-12"};
    }
    std::ostringstream os;
    os << "n in {16,100,256}, worst per-particle relative error " << worst << " <= 1e-12";
    return {true, os.str()};
}

// ---- criterion 3 ------------------------------------------------------

Outcome check_momentum() {
    md::SimParams params;
    params.n = 100;
    params.seed = 12;
    const double bound = 1e-12 * static_cast<double>(params.n) * params.c;

    auto sim = md::init_random(params);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::vector<Vec2> before(sim.particles.view<md::velocity>().begin(),
                                       sim.particles.view<md::velocity>().end());
        md::velocity_update(sim.particles, sim.index, params);
        Vec2 total{};
        auto vel = sim.particles.view<md::velocity>();
        for (std::size_t i = 0; i < vel.size(); ++i) total += vel[i] - before[i];
        worst = std::max(worst, particula::norm(total));
        md::position_update(sim.particles, sim.index, params);
    }
    std::ostringstream os;
    os << "worst per-step |sum dv| = " << worst << (worst <= bound ? " <= " : " > ") << bound;
    return {worst <= bound, os.str()};
}

// ---- criterion 4 ------------------------------------------------------

Outcome check_order_independence() {
    md::SimParams params;
    params.n = 100;
    params.seed = 3;

    auto forward = md::init_random(params);
    auto reverse = md::init_random(params);
    md::velocity_update(forward.particles, forward.index, params, particula::Order::forward);
    md::velocity_update(reverse.particles, reverse.index, params, particula::Order::reverse);

    for (std::size_t i = 0; i < forward.particles.size(); ++i)
        if (forward.particles.get<md::velocity>(i) != reverse.particles.get<md::velocity>(i))
            return {false, "velocities differ at index " + std::to_string(i)};
    return {true, "forward and reversed processing produce bitwise-identical velocities"};
}

// ---- criterion 5 ------------------------------------------------------

template <std::size_t D>
bool variant_agreement_configs(std::mt19937& rng, int configs, std::string& note) {
    for (int round = 0; round < configs; ++round) {
        auto cfg = make_config<D>(rng, 256);
        auto copy = cfg.particles;
        auto serial = init_neighbour_search(cfg.particles, cfg.box.lower, cfg.box.upper,
                                            cfg.cell_width, cfg.box.periodic,
                                            IndexVariant::serial_buckets);
        auto bulk = init_neighbour_search(copy, cfg.box.lower, cfg.box.upper, cfg.cell_width,
                                          cfg.box.periodic, IndexVariant::bulk_reordered);
        for (int t = 0; t < 10; ++t) {
            Vec<D> q;
            for (std::size_t k = 0; k < D; ++k)
                q[k] = std::uniform_real_distribution<>(cfg.box.lower[k], cfg.box.upper[k])(rng);
            if (search_ids(serial, cfg.particles, q, cfg.radius) !=
                search_ids(bulk, copy, q, cfg.radius)) {
                note = "variant disagreement in a D=" + std::to_string(D) + " configuration";
                return false;
            }
        }
    }
    return true;
}

Outcome check_variant_agreement() {
    std::mt19937 rng(2002);
    std::string note;
    const bool ok = variant_agreement_configs<1>(rng, 17, note) &&
                    variant_agreement_configs<2>(rng, 17, note) &&
                    variant_agreement_configs<3>(rng, 16, note);
    if (!ok) return {false, note};
    return {true, "50 random configurations, 10 queries each, id sets identical"};
}

// ---- criteria 6 and 7 -------------------------------------------------

Outcome check_linear_scaling() {
    const std::size_t ns[] = {1000, 4000, 16000, 64000};
    const auto records = bench::run_benchmark(bench::Mode::fixed_neighbors, ns, 5);

    double lo = records[0].rate, hi = records[0].rate;
    std::ostringstream os;
    os << "rates N/T_e:";
    for (const auto& r : records) {
        lo = std::min(lo, r.rate);
        hi = std::max(hi, r.rate);
        os << ' ' << static_cast<long long>(r.rate);
    }
    const double spread = hi / lo;
    os << ", spread " << spread << " (must stay below 4)";
    return {spread < 4.0, os.str()};
}

Outcome check_quadratic_cutoff() {
    const std::size_t ns[] = {2000, 4000, 8000, 16000, 32000};
    const auto records = bench::run_benchmark(bench::Mode::fixed_cutoff, ns, 5);

    // least-squares slope of log T_e against log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(records.size());
    for (const auto& r : records) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.mean_seconds);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    std::ostringstream os;
    os << "log-log slope of T_e vs N = " << slope << " (must lie in [1.6, 2.4])";
    return {slope >= 1.6 && slope <= 2.4, os.str()};
}

// ---- criterion 8 ------------------------------------------------------

Outcome check_md_reproduction() {
    const auto dir = fs::temp_directory_path() / "particula_acceptance";
    fs::create_directories(dir);
    const auto file_a = (dir / "fig4_a.csv").string();
    const auto file_b = (dir / "fig4_b.csv").string();

    auto invoke = [](const std::string& out) {
        const char* argv[] = {"particula", "md",     "--n",  "100",       "--steps", "1000",
                              "--seed",    "42",     "--out", out.c_str()};
        std::ostringstream sink;
        auto* old = std::cout.rdbuf(sink.rdbuf());
        const int code = particula::cli::run(static_cast<int>(std::size(argv)), argv);
        std::cout.rdbuf(old);
        return code;
    };
    if (invoke(file_a) != 0 || invoke(file_b) != 0) return {false, "md invocation failed"};

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const auto a = slurp(file_a), b = slurp(file_b);
    fs::remove(file_a);
    fs::remove(file_b);
    if (a.empty() || a != b) return {false, "the two trajectory files differ"};

    // the final state itself: inside the box, velocities finite
    md::SimParams params;
    params.n = 100;
    params.seed = 42;
    params.timesteps = 1000;
    auto final_state = md::run(params);
    for (std::size_t i = 0; i < final_state.size(); ++i) {
        const auto pos = final_state.get<md::Particles::position>(i);
        const auto vel = final_state.get<md::velocity>(i);
        if (!(pos[0] >= 0.0 && pos[0] < 1.0 && pos[1] >= 0.0 && pos[1] < 1.0))
            return {false, "a final position escaped [0,1)^2"};
        if (!(std::isfinite(vel[0]) && std::isfinite(vel[1])))
            return {false, "a final velocity is not finite"};
    }
    return {true, "1000 steps, bitwise-identical trajectories, all positions in [0,1)^2"};
}

// ---- criterion 9 ------------------------------------------------------

Outcome check_rep_formula() {
    const std::pair<std::size_t, long> cases[] = {
        {10, 101}, {100, 11}, {999, 2}, {1000, 2}, {2000, 1}};
    for (const auto& [n, want] : cases)
        if (bench::rep_count(n) != want)
            return {false, "rep_count(" + std::to_string(n) + ") = " +
                               std::to_string(bench::rep_count(n)) + ", expected " +
                               std::to_string(want)};
    return {true, "reps = floor(1000/N)+1 across {10,100,999,1000,2000}"};
}

}  // namespace

int main() {
    criterion(1, "radius search equals the brute-force oracle on randomized configurations",
              60.0, check_search_oracle);
    criterion(2, "cell-list velocity update matches the all-pairs reference to 1e-12", 10.0,
              check_dynamics_oracle);
    criterion(3, "momentum conserved per step in the fully periodic box", 0.0, check_momentum);
    criterion(4, "buffered update is independent of particle processing order", 0.0,
              check_order_independence);
    criterion(5, "serial-bucket and bulk-reordered indexes answer identically", 0.0,
              check_variant_agreement);
    criterion(6, "fixed-neighbor-count benchmark stays in the linear-scaling regime", 300.0,
              check_linear_scaling);
    criterion(7, "fixed-cutoff benchmark grows like N^2", 300.0, check_quadratic_cutoff);
    criterion(8, "md run is deterministic, bounded, and finite at demo scale", 0.0,
              check_md_reproduction);
    criterion(9, "benchmark repetition count follows the floor formula", 0.0, check_rep_formula);

    if (failures == 0)
        std::cout << "all criteria passed" << std::endl;
    else
        std::cout << failures << " criteria failed" << std::endl;
    return failures;
}

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "particula/cell_list.hpp"
#include "particula/neighbor_query.hpp"

namespace particula {

/// Runtime stand-in for compile-time operator introspection: which variables
/// an update reads and writes, whether it consumes neighbor sums, and the
/// search radius of those sums. The engine uses the plan to decide between
/// in-place and buffered evaluation; a position write always forces a re-sync
/// of the spatial index.
struct UpdatePlan {
    std::vector<std::string> reads;
    std::vector<std::string> writes;
    bool uses_neighbors = false;
    std::optional<double> search_radius;

    /// True when a written variable is also read (directly or inside a
    /// neighbor kernel/predicate); such updates must evaluate every particle
    /// against the pre-update state before committing anything.
    bool aliased() const {
        return std::any_of(writes.begin(), writes.end(), [&](const std::string& w) {
            return std::find(reads.begin(), reads.end(), w) != reads.end();
        });
    }

    /// True when the update moves particles, so the cell lists are stale
    /// afterwards.
    bool needs_reindex() const {
        return std::find(writes.begin(), writes.end(), "position") != writes.end();
    }
};

inline UpdatePlan plan(std::vector<std::string> reads, std::vector<std::string> writes,
                       bool uses_neighbors = false, std::optional<double> search_radius = {}) {
    return UpdatePlan{std::move(reads), std::move(writes), uses_neighbors, search_radius};
}

/// Thread count for the evaluation phase of an update. Evaluation only reads
/// the pre-update state and writes disjoint slots, so it can fan out; commits
/// and re-syncs always run on the calling thread.
struct Exec {
    unsigned threads = 1;

    static Exec parallel() {
        return Exec{std::max(1u, std::thread::hardware_concurrency())};
    }
};

/// Particle processing order of an update's evaluation phase. Buffered
/// commits make the result order-independent; the knob exists so tests can
/// demonstrate exactly that.
enum class Order { forward, reverse };

namespace detail {

template <class F>
void run_chunked(std::size_t n, unsigned threads, F&& body) {
    if (threads <= 1 || n < 2048) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(threads, n);
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e] {
            try {
                body(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// One neighbor sum: which hits participate (a predicate over the
/// minimum-image displacement), what each contributes (the kernel), and how
/// contributions combine (an associative op with identity `init`).
template <class V, class Pred, class Kernel, class Combine = std::plus<V>>
struct NeighborAccumulation {
    double search_radius;
    Pred predicate;   // (const Vec<D>& dx) -> bool
    Kernel kernel;    // (std::size_t i, std::size_t j, const Vec<D>& dx) -> V
    V init{};
    Combine combine{};
};

template <class V, class Pred, class Kernel, class Combine = std::plus<V>>
NeighborAccumulation<V, Pred, Kernel, Combine> sum_over_neighbors(double search_radius,
                                                                  Pred predicate, Kernel kernel,
                                                                  V init = V{},
                                                                  Combine combine = {}) {
    return {search_radius, std::move(predicate), std::move(kernel), std::move(init),
            std::move(combine)};
}

/// Per-particle update: target[i] <- expr(i) for every alive particle, with
/// expr evaluated against the pre-update state. The plan must declare the
/// write; when it shows the target is also read, results are staged in a
/// temporary buffer and committed only after every particle was evaluated.
///
/// Writing positions wraps them back into the box and re-syncs the index, so
/// a position update needs one (pass the index the set was built with;
/// nullptr is fine for any other target).
template <variable Target, class Set, class Expr>
void for_each_update(Set& set, CellListIndex<Set>* index, const UpdatePlan& update_plan,
                     Expr&& expr, Exec exec = {}) {
    using value_type = typename Target::value_type;
    constexpr bool writes_position = std::is_same_v<Target, typename Set::position>;

    if (std::find(update_plan.writes.begin(), update_plan.writes.end(),
                  std::string(Target::name)) == update_plan.writes.end())
        throw std::logic_error("for_each_update: plan does not declare a write of '" +
                               std::string(Target::name) + "'");
    if (writes_position && index == nullptr)
        throw std::invalid_argument(
            "for_each_update: position updates need the spatial index for wrap and re-sync");

    const std::size_t n = set.size();
    auto target = set.template view<Target>();

    if (update_plan.aliased()) {
        std::vector<value_type> buffer(n);
        detail::run_chunked(n, exec.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                if (set.is_alive(i)) buffer[i] = expr(i);
        });
        for (std::size_t i = 0; i < n; ++i)
            if (set.is_alive(i)) target[i] = buffer[i];
    } else {
        detail::run_chunked(n, exec.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                if (set.is_alive(i)) target[i] = expr(i);
        });
    }

    if constexpr (writes_position) index->sync(set);
}

/// Overload for sets without a spatial index; position writes are refused
/// because there is no domain to wrap into.
template <variable Target, class Set, class Expr>
void for_each_update(Set& set, const UpdatePlan& update_plan, Expr&& expr, Exec exec = {}) {
    for_each_update<Target>(set, static_cast<CellListIndex<Set>*>(nullptr), update_plan,
                            std::forward<Expr>(expr), exec);
}

/// Neighbor-accumulation update: for all alive i simultaneously,
///
///   target[i] <- post(target_old[i],  combine over { kernel(i, j, dx_ij) :
///                j an alive neighbor within search_radius, predicate(dx_ij) })
///
/// Every read on the right-hand side sees the pre-update state: results are
/// staged in a buffer sized to the set and committed only after all particles
/// were evaluated, so the result does not depend on processing order. Dead
/// particles neither update nor contribute. The search radius must not exceed
/// the index's cell width.
template <variable Target, class Set, class Acc, class Post>
void neighbor_accumulate_update(Set& set, CellListIndex<Set>& index, const Acc& acc, Post&& post,
                                Exec exec = {}, Order order = Order::forward) {
    using value_type = typename Target::value_type;
    constexpr std::size_t D = Set::dim;
    index.check_in_sync(set);

    const std::size_t n = set.size();
    auto target = set.template view<Target>();
    auto positions = set.template view<typename Set::position>();
    std::vector<value_type> buffer(n);

    auto evaluate = [&](std::size_t i) {
        auto sum = acc.init;
        radius_search(index, set, positions[i], acc.search_radius,
                      [&](const NeighborHit<D>& hit) {
                          if (acc.predicate(hit.dx))
                              sum = acc.combine(sum, acc.kernel(i, hit.index, hit.dx));
                      });
        buffer[i] = post(target[i], sum);
    };

    if (order == Order::forward) {
        detail::run_chunked(n, exec.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                if (set.is_alive(i)) evaluate(i);
        });
    } else {
        for (std::size_t i = n; i-- > 0;)
            if (set.is_alive(i)) evaluate(i);
    }

    // commit only after every particle was evaluated
    for (std::size_t i = 0; i < n; ++i)
        if (set.is_alive(i)) target[i] = buffer[i];

    if constexpr (std::is_same_v<Target, typename Set::position>) index.sync(set);
}

}  // namespace particula

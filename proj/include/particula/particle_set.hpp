#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "particula/variables.hpp"
#include "particula/vec.hpp"

namespace particula {

template <std::size_t D, variable... Vars>
class ParticleSet;

/// Lightweight handle to one particle: a pointer to the set and an index,
/// stamped with the set's structure version. Structural mutations (push_back,
/// erase, permutation) bump the version; touching a stale ref throws
/// std::logic_error instead of silently reading the wrong particle.
template <class Set>
class ParticleRef {
public:
    ParticleRef(Set& set, std::size_t index)
        : set_(&set), index_(index), version_(set.structure_version()) {}

    bool valid() const noexcept {
        return version_ == set_->structure_version() && index_ < set_->size();
    }

    std::size_t index() const {
        check();
        return index_;
    }

    template <variable V>
    decltype(auto) get() const {
        check();
        return set_->template get<V>(index_);
    }

private:
    void check() const {
        if (!valid())
            throw std::logic_error("ParticleRef: stale handle, the set was structurally modified");
    }

    Set* set_;
    std::size_t index_;
    std::uint64_t version_;
};

/// Structure-of-arrays particle container.
///
/// Every set stores position, id and alive; additional variables are declared
/// as tag types in the template parameter list. Each variable lives in its
/// own contiguous array and all arrays always have identical length, so one
/// particle is a column across the arrays.
///
/// erase() swap-removes: the last particle moves into the erased slot and the
/// arrays shrink by one. Removal is O(1) and survivors keep their ids, but
/// iteration order is permuted.
///
/// Concurrency: one writer, or any number of readers. ParticleRef handles do
/// not survive structural mutations.
template <std::size_t D, variable... Vars>
class ParticleSet {
public:
    static constexpr std::size_t dim = D;
    using vec_type = Vec<D>;
    using position = particula::position<D>;
    using reference = ParticleRef<ParticleSet>;
    using const_reference = ParticleRef<const ParticleSet>;

    ParticleSet() = default;

    /// n particles with ids 0..n-1, all alive, every other variable
    /// zero-initialised.
    explicit ParticleSet(std::size_t n) {
        array<position>().resize(n);
        auto& ids = array<particula::id>();
        ids.resize(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = i;
        array<particula::alive>().assign(n, 1);
        (array<Vars>().resize(n), ...);
        next_id_ = n;
    }

    std::size_t size() const noexcept { return array<particula::id>().size(); }
    bool empty() const noexcept { return size() == 0; }

    std::size_t alive_count() const noexcept {
        std::size_t n = 0;
        for (auto a : array<particula::alive>()) n += (a != 0);
        return n;
    }

    /// Append one particle with all variables zero-initialised.
    reference push_back() { return push_back(vec_type{}, typename Vars::value_type{}...); }

    /// Append one particle with the given position and user-variable values.
    /// The new particle receives the next unused id and is alive.
    reference push_back(const vec_type& pos, const typename Vars::value_type&... values) {
        array<position>().push_back(pos);
        array<particula::id>().push_back(next_id_++);
        array<particula::alive>().push_back(1);
        (array<Vars>().push_back(values), ...);
        ++structure_version_;
        return reference(*this, size() - 1);
    }

    /// Remove the particle at index i by swapping the last particle into its
    /// slot. Survivor ids and values are untouched; storage order is not.
    void erase(std::size_t i) {
        bounds_check(i, "erase");
        const std::size_t last = size() - 1;
        for_each_array([&](auto& a) {
            a[i] = std::move(a[last]);
            a.pop_back();
        });
        ++structure_version_;
    }

    template <variable V>
    typename V::value_type& get(std::size_t i) {
        bounds_check(i, "get");
        return array<V>()[i];
    }

    template <variable V>
    const typename V::value_type& get(std::size_t i) const {
        bounds_check(i, "get");
        return array<V>()[i];
    }

    /// Unchecked whole-array access; the hot-loop counterpart of get().
    template <variable V>
    std::span<typename V::value_type> view() noexcept {
        return array<V>();
    }

    template <variable V>
    std::span<const typename V::value_type> view() const noexcept {
        return array<V>();
    }

    std::uint64_t id_of(std::size_t i) const { return get<particula::id>(i); }
    bool is_alive(std::size_t i) const { return get<particula::alive>(i) != 0; }

    /// Mark for deferred deletion: the particle stays in storage but leaves
    /// every spatial cell at the next index sync.
    void mark_dead(std::size_t i) { get<particula::alive>(i) = 0; }

    reference operator[](std::size_t i) {
        bounds_check(i, "operator[]");
        return reference(*this, i);
    }
    const_reference operator[](std::size_t i) const {
        bounds_check(i, "operator[]");
        return const_reference(*this, i);
    }

    /// Reorder storage so the particle now at slot k is the one previously at
    /// slot order[k]. All variables move together; ids travel with their
    /// particles. Used by bulk-reordering spatial indexes.
    void apply_permutation(std::span<const std::size_t> order) {
        if (order.size() != size())
            throw std::invalid_argument("ParticleSet: permutation size " +
                                        std::to_string(order.size()) + " != particle count " +
                                        std::to_string(size()));
        for_each_array([&](auto& a) {
            auto old = std::move(a);
            a.resize(old.size());
            for (std::size_t k = 0; k < order.size(); ++k) a[k] = old[order[k]];
        });
        ++structure_version_;
    }

    /// Incremented by every structural mutation; lets refs and spatial
    /// indexes detect that they are stale.
    std::uint64_t structure_version() const noexcept { return structure_version_; }

private:
    template <variable V>
    using array_of = std::vector<typename V::value_type>;

    using storage = std::tuple<array_of<position>, array_of<particula::id>,
                               array_of<particula::alive>, array_of<Vars>...>;

    template <class V, class... Ts>
    static constexpr std::size_t index_in() {
        constexpr bool matches[] = {std::is_same_v<V, Ts>...};
        for (std::size_t k = 0; k < sizeof...(Ts); ++k)
            if (matches[k]) return k;
        return sizeof...(Ts);
    }

    template <variable V>
    static constexpr std::size_t var_slot() {
        constexpr std::size_t slot = index_in<V, position, particula::id, particula::alive, Vars...>();
        static_assert(slot < 3 + sizeof...(Vars), "variable is not part of this ParticleSet");
        return slot;
    }

    template <variable V>
    array_of<V>& array() noexcept {
        return std::get<var_slot<V>()>(arrays_);
    }
    template <variable V>
    const array_of<V>& array() const noexcept {
        return std::get<var_slot<V>()>(arrays_);
    }

    template <class F>
    void for_each_array(F&& f) {
        std::apply([&](auto&... a) { (f(a), ...); }, arrays_);
    }

    void bounds_check(std::size_t i, const char* what) const {
        if (i >= size())
            throw std::out_of_range(std::string("ParticleSet::") + what + ": index " +
                                    std::to_string(i) + " out of range, count is " +
                                    std::to_string(size()));
    }

    storage arrays_;
    std::uint64_t next_id_ = 0;
    std::uint64_t structure_version_ = 0;
};

}  // namespace particula

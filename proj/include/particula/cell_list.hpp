#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "particula/domain.hpp"
#include "particula/particle_set.hpp"

namespace particula {

/// Storage layout of a cell-list index.
///
/// serial_buckets threads per-cell linked lists through the particle storage
/// and never moves the particles. bulk_reordered physically sorts the set by
/// cell id on every sync (a stable counting sort moving all variables
/// together, ids included), leaving each cell's particles contiguous.
enum class IndexVariant { serial_buckets, bulk_reordered };

/// Cell-list spatial index over a ParticleSet.
///
/// The index is a snapshot: it reflects the positions and alive flags seen at
/// the last sync(). Particles marked dead are dropped from every cell at the
/// next sync; structural mutations of the set (push_back/erase) invalidate
/// the index until it is synced again, and queries detect that.
///
/// sync() is a writer; between syncs any number of threads may query
/// concurrently.
template <class Set>
class CellListIndex {
public:
    static constexpr std::size_t dim = Set::dim;
    using domain_type = Domain<dim>;

    CellListIndex(Set& set, domain_type domain, IndexVariant variant)
        : domain_(std::move(domain)), variant_(variant) {
        rebuild(set);
    }

    const domain_type& domain() const noexcept { return domain_; }
    IndexVariant variant() const noexcept { return variant_; }

    /// Sync stamp: 0 right after construction, +1 per sync().
    std::uint64_t generation() const noexcept { return generation_; }

    /// Re-read positions and alive flags from the set. Periodic position
    /// components are wrapped in place; a non-periodic component outside the
    /// box throws std::domain_error. Under bulk_reordered the set's arrays
    /// are permuted into cell order.
    void sync(Set& set) {
        rebuild(set);
        ++generation_;
    }

    /// Throws std::logic_error if the set was structurally modified since the
    /// last sync.
    void check_in_sync(const Set& set) const {
        if (set.structure_version() != synced_version_ || set.size() != synced_count_)
            throw std::logic_error(
                "CellListIndex: particle set structurally modified since last sync");
    }

    /// Visit the storage indices of the particles in one cell, in storage
    /// order. Only alive particles are ever linked into cells.
    template <class F>
    void for_each_in_cell(std::size_t cell, F&& f) const {
        if (variant_ == IndexVariant::serial_buckets) {
            for (auto k = head_[cell]; k >= 0; k = next_[static_cast<std::size_t>(k)])
                f(static_cast<std::size_t>(k));
        } else {
            for (std::size_t k = begin_[cell]; k < end_[cell]; ++k) f(k);
        }
    }

private:
    void rebuild(Set& set) {
        const std::size_t n = set.size();
        const std::size_t ncells = domain_.cell_count();
        auto positions = set.template view<typename Set::position>();
        for (std::size_t i = 0; i < n; ++i)
            if (set.is_alive(i)) positions[i] = domain_.wrap(positions[i]);

        if (variant_ == IndexVariant::serial_buckets) {
            head_.assign(ncells, -1);
            next_.assign(n, -1);
            // link back to front so each cell lists its particles in
            // ascending storage order
            for (std::size_t i = n; i-- > 0;) {
                if (!set.is_alive(i)) continue;
                const std::size_t c = domain_.cell_linear(domain_.cell_of(positions[i]));
                next_[i] = head_[c];
                head_[c] = static_cast<std::ptrdiff_t>(i);
            }
            begin_.clear();
            end_.clear();
        } else {
            // stable counting sort by cell id; dead particles key one past
            // the last cell so they land after every cell range
            std::vector<std::size_t> key(n);
            for (std::size_t i = 0; i < n; ++i)
                key[i] = set.is_alive(i) ? domain_.cell_linear(domain_.cell_of(positions[i]))
                                         : ncells;
            std::vector<std::size_t> offset(ncells + 2, 0);
            for (std::size_t i = 0; i < n; ++i) ++offset[key[i] + 1];
            for (std::size_t c = 1; c < offset.size(); ++c) offset[c] += offset[c - 1];
            begin_.assign(offset.begin(), offset.begin() + static_cast<std::ptrdiff_t>(ncells));
            end_.assign(offset.begin() + 1, offset.begin() + static_cast<std::ptrdiff_t>(ncells) + 1);
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[offset[key[i]]++] = i;
            set.apply_permutation(order);
            head_.clear();
            next_.clear();
        }

        synced_version_ = set.structure_version();
        synced_count_ = n;
    }

    domain_type domain_;
    IndexVariant variant_;
    std::uint64_t generation_ = 0;
    std::uint64_t synced_version_ = 0;
    std::size_t synced_count_ = 0;
    // serial_buckets: per-cell list heads and per-particle links, -1 ends a list
    std::vector<std::ptrdiff_t> head_;
    std::vector<std::ptrdiff_t> next_;
    // bulk_reordered: contiguous [begin, end) storage range per cell
    std::vector<std::size_t> begin_;
    std::vector<std::size_t> end_;
};

/// Build a cell-list index for the set over the given box. Cells are at
/// least cell_width wide, so any neighbor search with a radius up to
/// cell_width only ever needs a cell and its adjacent cells.
template <std::size_t D, variable... Vars>
CellListIndex<ParticleSet<D, Vars...>> init_neighbour_search(
    ParticleSet<D, Vars...>& set, const Vec<D>& lower, const Vec<D>& upper, double cell_width,
    const std::array<bool, D>& periodic, IndexVariant variant = IndexVariant::serial_buckets) {
    return CellListIndex<ParticleSet<D, Vars...>>(set, Domain<D>(lower, upper, cell_width, periodic),
                                                  variant);
}

}  // namespace particula

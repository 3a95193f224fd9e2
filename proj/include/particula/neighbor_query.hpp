#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "particula/cell_list.hpp"

namespace particula {

/// One query result: a particle's storage index plus the minimum-image
/// displacement from the query point to that particle.
template <std::size_t D>
struct NeighborHit {
    std::size_t index;
    Vec<D> dx;
};

namespace detail {

/// The distinct cells reachable from a center cell by per-dimension offsets
/// {-1, 0, +1}: wrapped around on periodic dimensions, truncated at the walls
/// otherwise. With only one or two cells along a dimension the wrapped
/// offsets collide; duplicates are dropped so no cell is visited twice.
template <std::size_t D>
class CellStencil {
public:
    CellStencil(const Domain<D>& domain, const std::array<std::size_t, D>& center) {
        for (std::size_t k = 0; k < D; ++k) {
            const auto n = static_cast<long long>(domain.cells_per_dim()[k]);
            for (long long off = -1; off <= 1; ++off) {
                long long c = static_cast<long long>(center[k]) + off;
                if (domain.periodic(k))
                    c = (c % n + n) % n;
                else if (c < 0 || c >= n)
                    continue;
                push_unique(k, static_cast<std::size_t>(c));
            }
        }
    }

    template <class F>
    void for_each_cell(const Domain<D>& domain, F&& f) const {
        std::array<unsigned, D> it{};
        for (;;) {
            std::array<std::size_t, D> c;
            for (std::size_t k = 0; k < D; ++k) c[k] = coord_[k][it[k]];
            f(domain.cell_linear(c));
            std::size_t k = 0;
            while (k < D && ++it[k] == count_[k]) it[k++] = 0;
            if (k == D) break;
        }
    }

private:
    void push_unique(std::size_t k, std::size_t c) {
        for (unsigned j = 0; j < count_[k]; ++j)
            if (coord_[k][j] == c) return;
        coord_[k][count_[k]++] = c;
    }

    std::array<std::array<std::size_t, 3>, D> coord_{};
    std::array<unsigned, D> count_{};
};

template <std::size_t D>
void check_search_radius(const Domain<D>& domain, double radius, const char* what) {
    if (!(radius >= 0.0))
        throw std::invalid_argument(std::string(what) + ": search radius must be non-negative");
    if (radius > domain.requested_cell_width())
        throw std::invalid_argument(std::string(what) + ": radius " + std::to_string(radius) +
                                    " exceeds the cell width " +
                                    std::to_string(domain.requested_cell_width()) +
                                    "; an adjacent-cell search would miss neighbors");
}

}  // namespace detail

/// Visit every alive particle whose minimum-image displacement from q fits in
/// the axis-aligned box |dx[k]| <= half_width, each exactly once. Only the
/// cell containing q and its adjacent cells are scanned, so half_width must
/// not exceed the cell width the index was built with.
///
/// visit receives a NeighborHit<D>; hits stream in a fixed order (stencil
/// cell order, storage order within a cell).
template <class Set, class F>
void box_search(const CellListIndex<Set>& index, const Set& set, const Vec<Set::dim>& q,
                double half_width, F&& visit) {
    constexpr std::size_t D = Set::dim;
    const auto& domain = index.domain();
    detail::check_search_radius(domain, half_width, "box_search");
    index.check_in_sync(set);

    const Vec<D> qw = domain.wrap(q);
    const detail::CellStencil<D> stencil(domain, domain.cell_of(qw));
    auto positions = set.template view<typename Set::position>();

    stencil.for_each_cell(domain, [&](std::size_t cell) {
        index.for_each_in_cell(cell, [&](std::size_t j) {
            if (!set.is_alive(j)) return;
            const Vec<D> dx = domain.min_image(qw, positions[j]);
            for (std::size_t k = 0; k < D; ++k)
                if (std::abs(dx[k]) > half_width) return;
            visit(NeighborHit<D>{j, dx});
        });
    });
}

/// Visit every alive particle with |dx| strictly below r (a particle exactly
/// at q is included with dx = 0; callers filter |dx| > 0 when they want
/// self-exclusion). Same adjacency contract as box_search: r must not exceed
/// the cell width.
template <class Set, class F>
void radius_search(const CellListIndex<Set>& index, const Set& set, const Vec<Set::dim>& q,
                   double r, F&& visit) {
    constexpr std::size_t D = Set::dim;
    const auto& domain = index.domain();
    detail::check_search_radius(domain, r, "radius_search");
    index.check_in_sync(set);

    const Vec<D> qw = domain.wrap(q);
    const detail::CellStencil<D> stencil(domain, domain.cell_of(qw));
    auto positions = set.template view<typename Set::position>();

    stencil.for_each_cell(domain, [&](std::size_t cell) {
        index.for_each_in_cell(cell, [&](std::size_t j) {
            if (!set.is_alive(j)) return;
            const Vec<D> dx = domain.min_image(qw, positions[j]);
            // |dx| < r with the norm spelled out, not |dx|^2 < r^2: the two
            // can disagree by one ulp at the boundary and the strict-< cut
            // must match the accumulation predicates exactly
            if (norm(dx) < r) visit(NeighborHit<D>{j, dx});
        });
    });
}

}  // namespace particula

#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "particula/vec.hpp"

namespace particula {

/// Hypercube simulation box with per-dimension periodicity, carved into a
/// lattice of equal cells.
///
/// Along each dimension the cell count is floor(extent / cell_width), clamped
/// to at least one cell, so the actual cell width never falls below the
/// requested width (except in the single-cell case where the whole extent is
/// narrower than the request). Cells at least as wide as the requested width
/// are what make a one-cell-deep adjacency search complete for any query
/// radius up to that width.
template <std::size_t D>
class Domain {
public:
    Domain(const Vec<D>& lower, const Vec<D>& upper, double cell_width,
           const std::array<bool, D>& periodic)
        : lower_(lower), upper_(upper), periodic_(periodic), requested_width_(cell_width) {
        if (!(cell_width > 0.0))
            throw std::invalid_argument("Domain: cell width must be positive, got " +
                                        std::to_string(cell_width));
        for (std::size_t k = 0; k < D; ++k) {
            if (!(lower[k] < upper[k]))
                throw std::invalid_argument("Domain: lower bound must be below upper bound in dimension " +
                                            std::to_string(k));
            extent_[k] = upper[k] - lower[k];
            auto n = static_cast<std::size_t>(std::max(1.0, std::floor(extent_[k] / cell_width)));
            // guard the floor rule against rounding in the division
            while (n > 1 && extent_[k] / static_cast<double>(n) < cell_width) --n;
            cells_[k] = n;
            actual_width_[k] = extent_[k] / static_cast<double>(n);
            assert(cells_[k] == 1 || actual_width_[k] >= requested_width_);
        }
    }

    const Vec<D>& lower() const noexcept { return lower_; }
    const Vec<D>& upper() const noexcept { return upper_; }
    const Vec<D>& extent() const noexcept { return extent_; }
    bool periodic(std::size_t k) const noexcept { return periodic_[k]; }
    double requested_cell_width() const noexcept { return requested_width_; }
    const std::array<std::size_t, D>& cells_per_dim() const noexcept { return cells_; }
    const Vec<D>& actual_cell_width() const noexcept { return actual_width_; }

    std::size_t cell_count() const noexcept {
        std::size_t n = 1;
        for (std::size_t k = 0; k < D; ++k) n *= cells_[k];
        return n;
    }

    /// Map p into the box: periodic components are reduced modulo the extent
    /// into [lower, upper); non-periodic components must already lie in
    /// [lower, upper] and pass through unchanged.
    Vec<D> wrap(const Vec<D>& p) const {
        Vec<D> q = p;
        for (std::size_t k = 0; k < D; ++k) {
            if (periodic_[k]) {
                double r = std::fmod(q[k] - lower_[k], extent_[k]);
                if (r < 0.0) r += extent_[k];
                double x = lower_[k] + r;
                if (x >= upper_[k]) x = lower_[k];  // r can round up to the full extent
                q[k] = x;
            } else if (q[k] < lower_[k] || q[k] > upper_[k]) {
                throw std::domain_error("Domain: position component " + std::to_string(q[k]) +
                                        " outside non-periodic dimension " + std::to_string(k) +
                                        " [" + std::to_string(lower_[k]) + ", " +
                                        std::to_string(upper_[k]) + "]");
            }
        }
        return q;
    }

    /// Lattice coordinates of an already-wrapped point. A non-periodic
    /// component sitting exactly on the upper bound clamps into the last
    /// cell.
    std::array<std::size_t, D> cell_of(const Vec<D>& p) const noexcept {
        std::array<std::size_t, D> c{};
        for (std::size_t k = 0; k < D; ++k) {
            auto i = static_cast<long long>(std::floor((p[k] - lower_[k]) / actual_width_[k]));
            const auto top = static_cast<long long>(cells_[k]) - 1;
            c[k] = static_cast<std::size_t>(i < 0 ? 0 : (i > top ? top : i));
        }
        return c;
    }

    /// Row-major flattening with dimension 0 running fastest.
    std::size_t cell_linear(const std::array<std::size_t, D>& c) const noexcept {
        std::size_t idx = c[D - 1];
        for (std::size_t k = D - 1; k-- > 0;) idx = idx * cells_[k] + c[k];
        return idx;
    }

    /// Shortest displacement from `from` to `to` under the box periodicity.
    /// Each periodic component is shifted by +-extent to the representative
    /// of smallest magnitude; a tie at exactly half the extent resolves to
    /// the positive half. Both points must already be wrapped.
    Vec<D> min_image(const Vec<D>& from, const Vec<D>& to) const noexcept {
        Vec<D> d;
        for (std::size_t k = 0; k < D; ++k) {
            double x = to[k] - from[k];
            if (periodic_[k]) {
                const double half = 0.5 * extent_[k];
                if (x > half)
                    x -= extent_[k];
                else if (x <= -half)
                    x += extent_[k];
            }
            d[k] = x;
        }
        return d;
    }

private:
    Vec<D> lower_, upper_, extent_, actual_width_;
    std::array<bool, D> periodic_;
    std::array<std::size_t, D> cells_{};
    double requested_width_;
};

}  // namespace particula

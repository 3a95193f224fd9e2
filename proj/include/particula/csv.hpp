#pragma once

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>

#include "particula/particle_set.hpp"

namespace particula {

namespace detail {

/// 17 significant decimal digits: enough for an exact double round-trip.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

/// Streams particle snapshots as CSV, one row per alive particle:
///
///   step,id,x[,y[,z]],vx[,vy[,vz]]
///
/// The header is written once, before the first row. Reals carry 17
/// significant digits; lines end with LF.
template <variable VelVar, class Set>
class TrajectoryWriter {
    static constexpr std::size_t D = Set::dim;
    static_assert(D <= 3, "column naming covers up to three dimensions");

public:
    explicit TrajectoryWriter(std::ostream& os) : os_(&os) {}

    void write(long step, const Set& set) {
        if (!header_done_) {
            static constexpr const char* axis[] = {"x", "y", "z"};
            *os_ << "step,id";
            for (std::size_t k = 0; k < D; ++k) *os_ << ',' << axis[k];
            for (std::size_t k = 0; k < D; ++k) *os_ << ",v" << axis[k];
            *os_ << '\n';
            header_done_ = true;
        }
        auto positions = set.template view<typename Set::position>();
        auto velocities = set.template view<VelVar>();
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (!set.is_alive(i)) continue;
            *os_ << step << ',' << set.id_of(i);
            for (std::size_t k = 0; k < D; ++k) *os_ << ',' << detail::g17(positions[i][k]);
            for (std::size_t k = 0; k < D; ++k) *os_ << ',' << detail::g17(velocities[i][k]);
            *os_ << '\n';
        }
    }

private:
    std::ostream* os_;
    bool header_done_ = false;
};

}  // namespace particula

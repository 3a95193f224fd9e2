#pragma once

#include <concepts>
#include <cstdint>
#include <string_view>

#include "particula/vec.hpp"

namespace particula {

/// A particle variable is declared as a tag type: a stored value_type plus a
/// name. The tag is never instantiated; it keys one parallel array inside a
/// ParticleSet.
///
///     struct mass {
///         using value_type = double;
///         static constexpr std::string_view name = "mass";
///     };
template <class V>
concept variable = requires {
    typename V::value_type;
    { V::name } -> std::convertible_to<std::string_view>;
};

/// Shorthand for declaring a variable tag.
#define PARTICULA_VARIABLE(NAME, TYPE)                   \
    struct NAME {                                        \
        using value_type = TYPE;                         \
        static constexpr std::string_view name = #NAME;  \
    }

/// Spatial position, one of the three variables every set carries.
template <std::size_t D>
struct position {
    using value_type = Vec<D>;
    static constexpr std::string_view name = "position";
};

/// Unique identification number, assigned from a per-set monotone counter and
/// never reused, so a particle stays identifiable across erasures and
/// reorderings.
struct id {
    using value_type = std::uint64_t;
    static constexpr std::string_view name = "id";
};

/// Liveness flag: 1 = alive, 0 = marked for deletion. Marked particles stay
/// in storage but drop out of every spatial cell at the next sync; erase()
/// removes a particle from storage immediately.
struct alive {
    using value_type = std::uint8_t;
    static constexpr std::string_view name = "alive";
};

}  // namespace particula

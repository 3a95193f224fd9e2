#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <ostream>

namespace particula {

/// Fixed-size Cartesian vector of doubles. The spatial dimension is a
/// compile-time constant.
template <std::size_t D>
struct Vec {
    static_assert(D >= 1, "Vec needs at least one component");

    std::array<double, D> v{};

    constexpr Vec() = default;

    template <std::convertible_to<double>... Ts>
        requires(sizeof...(Ts) == D)
    constexpr Vec(Ts... xs) : v{static_cast<double>(xs)...} {}

    constexpr double& operator[](std::size_t k) noexcept { return v[k]; }
    constexpr double operator[](std::size_t k) const noexcept { return v[k]; }

    constexpr Vec& operator+=(const Vec& o) noexcept {
        for (std::size_t k = 0; k < D; ++k) v[k] += o.v[k];
        return *this;
    }
    constexpr Vec& operator-=(const Vec& o) noexcept {
        for (std::size_t k = 0; k < D; ++k) v[k] -= o.v[k];
        return *this;
    }
    constexpr Vec& operator*=(double s) noexcept {
        for (std::size_t k = 0; k < D; ++k) v[k] *= s;
        return *this;
    }
    constexpr Vec& operator/=(double s) noexcept {
        for (std::size_t k = 0; k < D; ++k) v[k] /= s;
        return *this;
    }

    friend constexpr Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
    friend constexpr Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
    friend constexpr Vec operator*(Vec a, double s) noexcept { return a *= s; }
    friend constexpr Vec operator*(double s, Vec a) noexcept { return a *= s; }
    friend constexpr Vec operator/(Vec a, double s) noexcept { return a /= s; }
    friend constexpr Vec operator-(const Vec& a) noexcept {
        Vec r;
        for (std::size_t k = 0; k < D; ++k) r.v[k] = -a.v[k];
        return r;
    }

    friend constexpr bool operator==(const Vec&, const Vec&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Vec& a) {
        os << '(';
        for (std::size_t k = 0; k < D; ++k) os << (k ? ", " : "") << a.v[k];
        return os << ')';
    }
};

using Vec1 = Vec<1>;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <std::size_t D>
constexpr double dot(const Vec<D>& a, const Vec<D>& b) noexcept {
    double s = 0;
    for (std::size_t k = 0; k < D; ++k) s += a[k] * b[k];
    return s;
}

template <std::size_t D>
constexpr double norm2(const Vec<D>& a) noexcept {
    return dot(a, a);
}

template <std::size_t D>
double norm(const Vec<D>& a) noexcept {
    return std::sqrt(norm2(a));
}

}  // namespace particula

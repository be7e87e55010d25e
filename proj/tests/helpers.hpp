#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "hdisk/jet.hpp"

namespace hdisk::test {

// Deterministic sample points, uniform in area over |z| <= radius.
inline std::vector<cplx> seeded_points(std::size_t count, double radius, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = radius * std::sqrt(unit(rng));
        pts.push_back(std::polar(r, 2.0 * M_PI * unit(rng)));
    }
    return pts;
}

inline std::vector<std::pair<cplx, cplx>> seeded_pairs(std::size_t count, double radius,
                                                       unsigned seed) {
    const std::vector<cplx> flat = seeded_points(2 * count, radius, seed);
    std::vector<std::pair<cplx, cplx>> ps;
    ps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) ps.emplace_back(flat[2 * i], flat[2 * i + 1]);
    return ps;
}

// |got - want| relative to max(1, |want|): absolute near zero, relative away.
inline double dev(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double dev(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace hdisk::test

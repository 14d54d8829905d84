/*
 * rng.hpp — seeded randomness with fully specified output
 *
 * mt19937_64 supplies the bits, but doubles are derived explicitly (ldexp for
 * uniforms, Box–Muller for normals) instead of through std::*_distribution,
 * whose mapping is implementation-defined. Byte-identical reruns for a fixed
 * seed are part of this project's contract.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lpa/core.hpp"

namespace lpa {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return std::ldexp(static_cast<double>(bits() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(bits() % n); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform(), v = uniform();
        while (u == 0.0) u = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cx complex_normal() { return cx(normal(), normal()); }

    cx unit_phase() {
        const double a = 6.283185307179586476925286766559 * uniform();
        return cx(std::cos(a), std::sin(a));
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = index(i);
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    // Independent child stream; mixing keeps sibling streams uncorrelated.
    Rng fork(std::uint64_t salt) {
        std::uint64_t z = bits() + 0x9e3779b97f4a7c15ULL * (salt + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lpa

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "confocal/vec.hpp"

namespace confocal {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic generator; sampling is implemented on top of raw 64-bit
/// draws so sequences depend only on the seed, not on library internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent stream for one case of a seeded sweep.
    static Rng for_case(std::uint64_t seed, std::uint64_t case_index) {
        return Rng(splitmix64(seed ^ splitmix64(case_index + 0x51ed2701)));
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Marsaglia polar method; spare value cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

    int sign() { return uniform() < 0.5 ? -1 : 1; }

    Vec gaussian_vec(int n) {
        Vec v(n);
        for (auto& x : v) x = gaussian();
        return v;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

/// Random orthonormal n-frame from Gram-Schmidt on gaussian columns,
/// with one re-orthogonalization pass.
inline Cols random_orthonormal(int n, Rng& rng) {
    Cols q;
    q.reserve(n);
    while (static_cast<int>(q.size()) < n) {
        Vec v = rng.gaussian_vec(n);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& u : q) v = axpy(v, -dot(u, v), u);
        double nv = norm(v);
        if (nv < 1e-6) continue;
        q.push_back(scale(v, 1.0 / nv));
    }
    return q;
}

} // namespace confocal

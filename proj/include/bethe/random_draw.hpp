#pragma once

// Deterministic random generation of exact test data: small-height Gaussian
// rationals and admissible Bethe configurations (rejection sampling keeps
// every pairwise difference across the four parameter sets away from 0 and
// +-c, logging the number of redraws).

#include <cstdint>
#include <random>
#include <vector>

#include "bethe/config.hpp"
#include "bethe/rational.hpp"

namespace bethe {

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi);

    // Numerator in [-height, height], denominator in [1, height].
    GaussianRational rational(long height = 20);

    // Real part always present; imaginary part with probability 1/2.
    GaussianRational gaussian_rational(long height = 20);

    GaussianRational nonzero_rational(long height = 20);
    GaussianRational nonzero_gaussian(long height = 20);

private:
    std::mt19937_64 eng_;
};

struct DrawOptions {
    size_t a = 1;
    size_t b = 1;
    long height = 20;
    bool complex_parts = true;
    bool twisted = false;    // generic kappa triple with varkappa = kappa2/kappa1
    bool unit_twist = false; // kappa = (1,1,1), varkappa = 1
    bool with_free_r = true; // populate r1 at uB and r3 at vC
};

// Points pairwise admissible against each other and against `pool`:
// differences avoid 0 and +-c.  Accepted points are appended to the pool.
std::vector<GaussianRational> draw_points(RandomSource& rng, size_t n, long height,
                                          bool complex_parts, const GaussianRational& c,
                                          std::vector<GaussianRational>& pool,
                                          std::uint64_t* redraws = nullptr);

BetheConfig<GaussianRational> draw_config(RandomSource& rng, const DrawOptions& opt,
                                          std::uint64_t* redraws = nullptr);

// Stable per-trial seed derivation (splitmix-style mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial);

} // namespace bethe

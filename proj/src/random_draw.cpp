#include "bethe/random_draw.hpp"

#include "bethe/errors.hpp"

namespace bethe {

long RandomSource::integer(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(eng_);
}

GaussianRational RandomSource::rational(long height) {
    if (height < 1) height = 1;
    return GaussianRational::ratio(integer(-height, height), integer(1, height));
}

GaussianRational RandomSource::gaussian_rational(long height) {
    GaussianRational re = rational(height);
    if (integer(0, 1) == 0) return re;
    return re + GaussianRational::i() * rational(height);
}

GaussianRational RandomSource::nonzero_rational(long height) {
    for (;;) {
        GaussianRational x = rational(height);
        if (!x.is_zero()) return x;
    }
}

GaussianRational RandomSource::nonzero_gaussian(long height) {
    for (;;) {
        GaussianRational x = gaussian_rational(height);
        if (!x.is_zero()) return x;
    }
}

std::vector<GaussianRational> draw_points(RandomSource& rng, size_t n, long height,
                                          bool complex_parts, const GaussianRational& c,
                                          std::vector<GaussianRational>& pool,
                                          std::uint64_t* redraws) {
    std::vector<GaussianRational> out;
    out.reserve(n);
    const long max_attempts = 20000;
    for (size_t k = 0; k < n; ++k) {
        bool placed = false;
        for (long attempt = 0; attempt < max_attempts; ++attempt) {
            GaussianRational x =
                complex_parts ? rng.gaussian_rational(height) : rng.rational(height);
            bool clash = false;
            for (const auto& y : pool) {
                const GaussianRational d = x - y;
                if (d.is_zero() || (d - c).is_zero() || (d + c).is_zero()) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                pool.push_back(x);
                out.push_back(std::move(x));
                placed = true;
                break;
            }
            if (redraws) ++*redraws;
        }
        if (!placed)
            throw Error("draw-exhausted",
                        "could not place an admissible point; raise the height");
    }
    return out;
}

BetheConfig<GaussianRational> draw_config(RandomSource& rng, const DrawOptions& opt,
                                          std::uint64_t* redraws) {
    BetheConfig<GaussianRational> cfg;
    cfg.c = opt.complex_parts ? rng.nonzero_gaussian(opt.height) : rng.nonzero_rational(opt.height);

    std::vector<GaussianRational> pool;
    auto fill = [&](ParamSet<GaussianRational>& set, size_t n) {
        for (auto& x : draw_points(rng, n, opt.height, opt.complex_parts, cfg.c, pool, redraws))
            set.v.push_back(std::move(x));
    };
    fill(cfg.uC, opt.a);
    fill(cfg.uB, opt.a);
    fill(cfg.vC, opt.b);
    fill(cfg.vB, opt.b);

    if (opt.unit_twist) {
        cfg.kappa = {GaussianRational::one(), GaussianRational::one(), GaussianRational::one()};
        cfg.varkappa = GaussianRational::one();
    } else if (opt.twisted) {
        for (auto& k : cfg.kappa) k = rng.nonzero_rational(opt.height);
        cfg.varkappa = cfg.kappa[1] / cfg.kappa[0];
    } else {
        cfg.varkappa = rng.nonzero_rational(opt.height);
    }

    if (opt.with_free_r) {
        for (size_t j = 0; j < opt.a; ++j)
            cfg.r1_free.set(cfg.uB[j], rng.nonzero_rational(opt.height));
        for (size_t j = 0; j < opt.b; ++j)
            cfg.r3_free.set(cfg.vC[j], rng.nonzero_rational(opt.height));
    }

    cfg.validate();
    return cfg;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace bethe

#include "bethe/commands.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "bethe/dwpf.hpp"
#include "bethe/errors.hpp"
#include "bethe/highest.hpp"
#include "bethe/random_draw.hpp"
#include "bethe/scalar_product.hpp"
#include "bethe/spectral.hpp"

namespace bethe {
namespace {

using Clock = std::chrono::steady_clock;
using Q = GaussianRational;

std::uint64_t micros_since(Clock::time_point t0) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count());
}

std::uint64_t effective_seed(const CommandOptions& opt, const Json& problem) {
    if (opt.seed_set) return opt.seed;
    if (problem.contains("seed") && problem["seed"].is_number_unsigned())
        return problem["seed"].get<std::uint64_t>();
    return 1;
}

long effective_trials(const CommandOptions& opt, const Json& problem, long fallback) {
    if (opt.trials >= 0) return opt.trials;
    if (problem.contains("trials") && problem["trials"].is_number_integer())
        return problem["trials"].get<long>();
    return fallback;
}

int effective_cap(int cli_value, const Json& problem, const char* field, int fallback) {
    if (cli_value >= 0) return cli_value;
    if (problem.contains(field) && problem[field].is_number_integer())
        return problem[field].get<int>();
    return fallback;
}

// Static round-robin worker pool writing into caller-preallocated slots.
void run_pool(int threads, size_t n, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(static_cast<size_t>(threads), n);
    pool.reserve(count);
    for (size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// Runs `body`, timing it and mapping any domain error to a structured
// "error" entry carrying the witness.
template <class Body>
void guarded(CheckResult& cr, const Json& witness, Body&& body) {
    const auto t0 = Clock::now();
    try {
        body(cr);
    } catch (const Error& e) {
        cr.status = "error";
        cr.values["error"] = e.what();
        cr.witness = witness.is_null() ? Json::object() : witness;
        cr.witness["error"] = e.what();
    } catch (const std::exception& e) {
        cr.status = "error";
        cr.values["error"] = std::string("unexpected: ") + e.what();
        cr.witness = witness.is_null() ? Json::object() : witness;
        cr.witness["error"] = cr.values["error"];
    }
    cr.micros = micros_since(t0);
}

void set_verdict(CheckResult& cr, bool ok, const Json& witness) {
    if (ok) {
        cr.status = "pass";
    } else {
        cr.status = "fail";
        cr.witness = witness;
    }
}

// ---------------------------------------------------------------------- //

CheckResult crosscheck_one(const BetheConfig<Q>& cfg, Variant variant, std::string name) {
    CheckResult cr;
    cr.name = std::move(name);
    Json wit{{"config", config_to_json(cfg)}, {"variant", variant_name(variant)}};
    guarded(cr, wit, [&](CheckResult& c) {
        cfg.validate();
        const auto r = apply_constraints(cfg, variant);
        SumStats stats;
        const Q s = sum_formula(cfg, r, &stats);
        const Q d = det_rep(cfg, r, variant);
        c.values = Json{{"sum_formula", s.str()},
                        {"det_rep", d.str()},
                        {"outer_terms", stats.outer_terms},
                        {"z_terms", stats.z_terms}};
        set_verdict(c, s == d, wit);
    });
    return cr;
}

// ---------------------------------------------------------------------- //

struct IdentityData {
    RandomSource* rng;
    long height;
    Json* record;
};

Json points_json(const std::vector<Q>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs) arr.push_back(x.str());
    return arr;
}

ParamSet<Q> make_set(std::vector<Q> xs, const char* label) {
    return ParamSet<Q>(std::move(xs), label);
}

// One full identity sweep; returns the name of the first failing identity,
// empty when everything holds.  `record` receives the drawn data keyed by
// identity name, so any failure is reproducible from the report alone.
std::string identity_sweep(RandomSource& rng, long height, int max_a, int max_b, Json& record) {
    const Q c = rng.nonzero_gaussian(height);
    record["c"] = c.str();
    const KernelCtx<Q> kc(c);

    auto draw_sets = [&](std::initializer_list<size_t> sizes) {
        std::vector<Q> pool;
        std::vector<std::vector<Q>> out;
        for (size_t n : sizes) out.push_back(draw_points(rng, n, height, true, c, pool));
        return out;
    };

    {   // Cauchy-type determinant identities.
        const size_t n = static_cast<size_t>(rng.integer(0, 3));
        auto sets = draw_sets({n, n});
        record["cauchy"] = Json{{"u", points_json(sets[0])}, {"v", points_json(sets[1])}};
        if (!cauchy_identities(make_set(sets[0], "u"), make_set(sets[1], "v"), kc))
            return "cauchy";
    }

    {   // Determinant of a sum expanded over complementary minors.
        const size_t n = static_cast<size_t>(rng.integer(0, 3));
        auto sets = draw_sets({n, n});
        std::vector<Q> ca, cb;
        for (int i = 0; i < 4; ++i) ca.push_back(rng.rational(height));
        for (int i = 0; i < 4; ++i) cb.push_back(rng.rational(height));
        auto A = [&](const Q& u, const Q& v) { return ca[0] + ca[1] * u + ca[2] * v + ca[3] * u * v; };
        auto B = [&](const Q& u, const Q& v) { return cb[0] + cb[1] * u + cb[2] * v + cb[3] * u * v; };
        record["laplace"] = Json{{"u", points_json(sets[0])},
                                 {"v", points_json(sets[1])},
                                 {"coeffA", points_json(ca)},
                                 {"coeffB", points_json(cb)}};
        if (!laplace_check(A, B, make_set(sets[0], "u"), make_set(sets[1], "v"), kc))
            return "laplace";
    }

    {   // Row stacking of two rectangular tables.
        const int a = static_cast<int>(rng.integer(0, 2));
        const int b = static_cast<int>(rng.integer(0, 2));
        auto sets = draw_sets({static_cast<size_t>(a + b)});
        std::vector<Q> pa, pb;
        for (int j = 0; j < a; ++j) pa.push_back(rng.rational(height));
        for (int j = 0; j < b; ++j) pb.push_back(rng.rational(height));
        auto A = [&](int j, const Q& x) { return pa[static_cast<size_t>(j)] + x * Q::from_int(j + 1) + x * x; };
        auto B = [&](int j, const Q& x) { return pb[static_cast<size_t>(j)] - x * Q::from_int(j + 2); };
        record["row-stack"] = Json{{"x", points_json(sets[0])},
                                   {"a", a},
                                   {"b", b},
                                   {"rowA", points_json(pa)},
                                   {"rowB", points_json(pb)}};
        if (!row_stack_check(A, B, make_set(sets[0], "x"), a, b, kc)) return "row-stack";
    }

    {   // Two-factor g-product merge over splits.
        const size_t m1 = static_cast<size_t>(rng.integer(0, 2));
        const size_t m2 = static_cast<size_t>(rng.integer(0, 2));
        auto sets = draw_sets({m1 + m2, m1, m2});
        record["merge-gg"] = Json{{"w", points_json(sets[0])},
                                  {"u", points_json(sets[1])},
                                  {"v", points_json(sets[2])}};
        if (!lemma_gg_check(make_set(sets[0], "w"), make_set(sets[1], "u"),
                            make_set(sets[2], "v"), kc))
            return "merge-gg";
    }

    {   // Product of two domain-wall blocks merged into one.
        const size_t m1 = static_cast<size_t>(rng.integer(0, 2));
        const size_t m2 = static_cast<size_t>(rng.integer(0, 2));
        auto sets = draw_sets({m1 + m2, m1, m2});
        record["merge-KK"] = Json{{"w", points_json(sets[0])},
                                  {"u", points_json(sets[1])},
                                  {"v", points_json(sets[2])}};
        if (!lemma_KK_check(make_set(sets[0], "w"), make_set(sets[1], "u"),
                            make_set(sets[2], "v"), kc))
            return "merge-KK";
    }

    {   // Weighted split sum collapsing to one long determinant.
        const size_t m = static_cast<size_t>(rng.integer(0, 3));
        auto sets = draw_sets({m, m});
        std::vector<Q> c1, c2;
        for (size_t j = 0; j < m; ++j) c1.push_back(rng.rational(height));
        for (size_t j = 0; j < m; ++j) c2.push_back(rng.rational(height));
        record["long-det"] = Json{{"w", points_json(sets[0])},
                                  {"xi", points_json(sets[1])},
                                  {"C1", points_json(c1)},
                                  {"C2", points_json(c2)}};
        if (!lemma_longdet_check(make_set(sets[0], "w"), make_set(sets[1], "xi"), c1, c2, kc))
            return "long-det";
    }

    {   // Highest coefficient: both partition representations agree.
        const size_t za = static_cast<size_t>(rng.integer(0, std::max(0, max_a)));
        const size_t zb = static_cast<size_t>(rng.integer(0, std::max(0, max_b)));
        auto sets = draw_sets({za, za, zb, zb});
        record["z-agreement"] = Json{{"t", points_json(sets[0])},
                                     {"x", points_json(sets[1])},
                                     {"s", points_json(sets[2])},
                                     {"y", points_json(sets[3])}};
        ZArgs<Q> za_args{make_set(sets[0], "t"), make_set(sets[1], "x"),
                         make_set(sets[2], "s"), make_set(sets[3], "y")};
        if (Z_omega(za_args, kc) != Z_eta(za_args, kc)) return "z-agreement";
    }

    {   // Vandermonde-factor split consistency (sign bookkeeping).
        const size_t n = static_cast<size_t>(rng.integer(0, 3));
        auto sets = draw_sets({n});
        ParamSet<Q> xs = make_set(sets[0], "x");
        record["delta-split"] = Json{{"x", points_json(sets[0])}};
        for (size_t k = 0; k <= n; ++k)
            for (Splits s(static_cast<int>(n), static_cast<int>(k)); !s.done(); s.advance()) {
                auto [xI, xII] = split_set(xs, s.get());
                Q lhs = kc.delta(xs);
                Q rhs = kc.delta(xI) * kc.delta(xII) * kc.gprod(xII, xI);
                if (s.get().sign < 0) rhs = -rhs;
                if (lhs != rhs) return "delta-split";
            }
    }

    // Omega-weighted single-row sums over the deformation field.
    RandomSource cfg_rng(rng.integer(0, 1L << 30));
    DrawOptions dopt;
    dopt.a = static_cast<size_t>(rng.integer(0, std::max(0, max_a)));
    dopt.b = static_cast<size_t>(rng.integer(0, std::max(0, max_b)));
    dopt.height = height;
    const BetheConfig<Q> cfg = draw_config(cfg_rng, dopt);
    record["single-sums"] = Json{{"config", config_to_json(cfg)}};
    if (!single_sum_checks(cfg)) return "single-sums";

    return "";
}

// ---------------------------------------------------------------------- //

Json norm_instance_json(const Q& c, const std::vector<Q>& u, const std::vector<Q>& v,
                        const std::vector<Q>& beta, const std::vector<Q>& gamma,
                        const std::vector<Q>& d, const std::vector<Q>& e) {
    return Json{{"c", c.str()},   {"u", points_json(u)},   {"v", points_json(v)},
                {"beta", points_json(beta)}, {"gamma", points_json(gamma)},
                {"d", points_json(d)}, {"e", points_json(e)}};
}

void run_norm_instance(CheckResult& cr, const Q& c, const std::vector<Q>& u,
                       const std::vector<Q>& v, const std::vector<Q>& beta,
                       const std::vector<Q>& gamma, const std::vector<Q>& d,
                       const std::vector<Q>& e, const std::vector<Q>* beta2,
                       const std::vector<Q>* gamma2) {
    Json wit = norm_instance_json(c, u, v, beta, gamma, d, e);
    guarded(cr, wit, [&](CheckResult& out) {
        const NormLimitOutcome first = norm_limit_check(u, v, beta, gamma, d, e, c);
        out.values = Json{{"limit", first.limit_value.str()},
                          {"gaudin", first.gaudin_value.str()}};
        bool ok = first.pass;

        if (beta2 && gamma2) {
            const NormLimitOutcome second = norm_limit_check(u, v, *beta2, *gamma2, d, e, c);
            out.values["limit_second_direction"] = second.limit_value.str();
            ok = ok && second.pass && second.limit_value == first.limit_value;
        }

        std::vector<Q> ld1(u.size()), ld3(v.size());
        {
            const KernelCtx<Q> kc(c);
            ParamSet<Q> useq(u, "u"), vseq(v, "v");
            for (size_t j = 0; j < u.size(); ++j)
                ld1[j] = d[j] / u_constraint_rhs(kc, Q::one(), useq, j, vseq);
            for (size_t j = 0; j < v.size(); ++j) ld3[j] = e[j] / kc.fprod(v[j], useq);
        }
        const bool jac = jacobian_check(u, v, ld1, ld3, c);
        out.values["jacobian"] = jac ? "pass" : "fail";
        set_verdict(out, ok && jac, wit);
    });
}

// ---------------------------------------------------------------------- //

void run_formfactor_instance(CheckResult& cr, const BetheConfig<Q>& cfg, int i,
                             const Json& pivot_request) {
    Json wit{{"config", config_to_json(cfg)}, {"i", i}};
    guarded(cr, wit, [&](CheckResult& out) {
        cfg.validate();
        if (!pivot_request.is_null()) {
            const size_t p = pivot_request.get<size_t>();
            try {
                const Q val = formfactor_value(cfg, i, p);
                out.values["value_at_requested_pivot"] = val.str();
            } catch (const ZeroPivotError&) {
                Json adm = Json::array();
                const auto om = omega_vector(cfg);
                for (size_t q = 0; q < om.size(); ++q)
                    if (!om[q].is_zero()) adm.push_back(q);
                out.values["admissible_pivots"] = adm;
                throw;
            }
        }

        const FormFactorOutcome fo = formfactor_derivative_check(cfg, i);
        out.values["derivative"] = fo.derivative_value.str();
        out.values["determinant"] = fo.determinant_value.str();
        out.values["vanishes_at_unit_twist"] = fo.vanishes_at_unit_twist;
        bool ok = fo.pass;

        // Pivot independence across every admissible row.
        const size_t n = cfg.a() + cfg.b();
        const auto om = omega_vector(cfg);
        for (size_t p = 0; p < n && ok; ++p) {
            if (om[p].is_zero()) continue;
            ok = formfactor_value(cfg, i, p) == fo.determinant_value;
        }
        out.values["pivot_independent"] = ok;
        set_verdict(out, ok, wit);
    });
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) { return Splits::count(static_cast<int>(n), static_cast<int>(k)); }

} // namespace

// ------------------------------------------------------------------------ //

Report run_crosscheck(const Json& problem, const CommandOptions& opt) {
    Report rep;
    rep.command = "crosscheck";
    rep.seed = effective_seed(opt, problem);

    Variant variant = Variant::SemiOnShell;
    if (problem.contains("variant")) {
        const std::string v = problem["variant"].get<std::string>();
        if (v == std::string(variant_name(Variant::TwistedOnShell)))
            variant = Variant::TwistedOnShell;
        else if (v != std::string(variant_name(Variant::SemiOnShell)))
            throw ParseError("unknown variant \"" + v + "\"");
    }

    const long trials = effective_trials(opt, problem, 5);
    const int max_a = effective_cap(opt.max_a, problem, "max_a", 2);
    const int max_b = effective_cap(opt.max_b, problem, "max_b", 2);
    rep.trials = static_cast<std::uint64_t>(trials < 0 ? 0 : trials);

    if (problem.contains("config")) {
        const BetheConfig<Q> cfg = config_from_json(problem["config"]);
        rep.checks.push_back(crosscheck_one(cfg, variant, "crosscheck explicit config"));
    }

    struct Task {
        size_t a, b;
        long t;
    };
    std::vector<Task> tasks;
    for (int a = 0; a <= max_a; ++a)
        for (int b = 0; b <= max_b; ++b)
            for (long t = 0; t < trials; ++t)
                tasks.push_back({static_cast<size_t>(a), static_cast<size_t>(b), t});

    const size_t base = rep.checks.size();
    rep.checks.resize(base + tasks.size());
    run_pool(opt.threads, tasks.size(), [&](size_t i) {
        const Task tk = tasks[i];
        CheckResult& cr = rep.checks[base + i];
        cr.name = "crosscheck a=" + std::to_string(tk.a) + " b=" + std::to_string(tk.b) +
                  " trial " + std::to_string(tk.t) + " (" + variant_name(variant) + ")";
        guarded(cr, Json::object(), [&](CheckResult&) {
            RandomSource rng(derive_seed(rep.seed, i));
            DrawOptions dopt;
            dopt.a = tk.a;
            dopt.b = tk.b;
            dopt.twisted = variant == Variant::TwistedOnShell;
            const BetheConfig<Q> cfg = draw_config(rng, dopt);
            cr = crosscheck_one(cfg, variant, cr.name);
        });
    });
    return rep;
}

Report run_identities(const Json& problem, const CommandOptions& opt) {
    Report rep;
    rep.command = "identities";
    rep.seed = effective_seed(opt, problem);
    const long trials = effective_trials(opt, problem, 50);
    const int max_a = effective_cap(opt.max_a, problem, "max_a", 3);
    const int max_b = effective_cap(opt.max_b, problem, "max_b", 3);
    rep.trials = static_cast<std::uint64_t>(trials < 0 ? 0 : trials);

    if (problem.contains("config")) {
        // An explicit configuration runs the deformation-field row sums only.
        const BetheConfig<Q> cfg = config_from_json(problem["config"]);
        CheckResult cr;
        cr.name = "identities explicit config (single-row sums)";
        Json wit{{"config", config_to_json(cfg)}};
        guarded(cr, wit, [&](CheckResult& c) {
            cfg.validate();
            set_verdict(c, single_sum_checks(cfg), wit);
        });
        rep.checks.push_back(std::move(cr));
    }

    const size_t base = rep.checks.size();
    rep.checks.resize(base + static_cast<size_t>(trials < 0 ? 0 : trials));
    run_pool(opt.threads, static_cast<size_t>(trials < 0 ? 0 : trials), [&](size_t t) {
        CheckResult& cr = rep.checks[base + t];
        cr.name = "identities trial " + std::to_string(t);
        Json record = Json::object();
        guarded(cr, Json::object(), [&](CheckResult& c) {
            RandomSource rng(derive_seed(rep.seed, t));
            const std::string failed = identity_sweep(rng, 20, max_a, max_b, record);
            if (failed.empty()) {
                c.status = "pass";
                c.values["identities"] =
                    Json::array({"cauchy", "laplace", "row-stack", "merge-gg", "merge-KK",
                                 "long-det", "z-agreement", "delta-split", "single-sums"});
            } else {
                c.status = "fail";
                c.values["failed_identity"] = failed;
                c.witness = Json{{"identity", failed}, {"data", record}};
            }
        });
        if (cr.status == "error") cr.witness["data"] = record;
    });
    return rep;
}

Report run_norm(const Json& problem, const CommandOptions& opt) {
    Report rep;
    rep.command = "norm";
    rep.seed = effective_seed(opt, problem);
    const long trials = effective_trials(opt, problem, 2);
    const int max_a = effective_cap(opt.max_a, problem, "max_a", 2);
    const int max_b = effective_cap(opt.max_b, problem, "max_b", 2);
    rep.trials = static_cast<std::uint64_t>(trials < 0 ? 0 : trials);

    if (problem.contains("norm")) {
        const Json& nj = problem["norm"];
        const Q c = rat_field(nj, "c");
        const auto u = rat_array(nj, "u");
        const auto v = rat_array(nj, "v");
        const auto beta = rat_array(nj, "beta");
        const auto gamma = rat_array(nj, "gamma");
        const auto d = rat_array(nj, "d");
        const auto e = rat_array(nj, "e");
        CheckResult cr;
        cr.name = "norm explicit instance";
        run_norm_instance(cr, c, u, v, beta, gamma, d, e, nullptr, nullptr);
        rep.checks.push_back(std::move(cr));
    }

    const std::vector<std::pair<size_t, size_t>> schedule = {
        {1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}};
    struct Task {
        size_t a, b;
        long t;
    };
    std::vector<Task> tasks;
    for (const auto& [a, b] : schedule) {
        if (static_cast<int>(a) > max_a || static_cast<int>(b) > max_b) continue;
        for (long t = 0; t < trials; ++t) tasks.push_back({a, b, t});
    }

    const size_t base = rep.checks.size();
    rep.checks.resize(base + tasks.size());
    run_pool(opt.threads, tasks.size(), [&](size_t i) {
        const Task tk = tasks[i];
        CheckResult& cr = rep.checks[base + i];
        cr.name = "norm a=" + std::to_string(tk.a) + " b=" + std::to_string(tk.b) + " trial " +
                  std::to_string(tk.t);
        guarded(cr, Json::object(), [&](CheckResult&) {
            // Degenerate tangent systems or nongeneric coalescence directions
            // are rejected by the check; redraw with a derived seed.
            for (std::uint64_t attempt = 0;; ++attempt) {
                RandomSource rng(derive_seed(rep.seed, i * 101 + attempt));
                const Q c = rng.nonzero_gaussian(20);
                std::vector<Q> pool;
                const auto u = draw_points(rng, tk.a, 20, true, c, pool);
                const auto v = draw_points(rng, tk.b, 20, true, c, pool);
                std::vector<Q> beta, gamma, beta2, gamma2, d, e;
                for (size_t j = 0; j < tk.a; ++j) beta.push_back(rng.nonzero_rational(20));
                for (size_t j = 0; j < tk.b; ++j) gamma.push_back(rng.nonzero_rational(20));
                for (size_t j = 0; j < tk.a; ++j) beta2.push_back(rng.nonzero_rational(20));
                for (size_t j = 0; j < tk.b; ++j) gamma2.push_back(rng.nonzero_rational(20));
                for (size_t j = 0; j < tk.a; ++j) d.push_back(rng.rational(20));
                for (size_t j = 0; j < tk.b; ++j) e.push_back(rng.rational(20));
                try {
                    run_norm_instance(cr, c, u, v, beta, gamma, d, e, &beta2, &gamma2);
                } catch (const ConstraintViolationError&) {
                    if (attempt < 4) continue;
                    throw;
                }
                if (cr.status == "error" && attempt < 4) continue;
                if (attempt > 0) cr.values["redraws"] = attempt;
                break;
            }
        });
    });
    return rep;
}

Report run_formfactor(const Json& problem, const CommandOptions& opt) {
    Report rep;
    rep.command = "formfactor";
    rep.seed = effective_seed(opt, problem);
    const long trials = effective_trials(opt, problem, 2);
    const int max_a = effective_cap(opt.max_a, problem, "max_a", 2);
    const int max_b = effective_cap(opt.max_b, problem, "max_b", 1);
    rep.trials = static_cast<std::uint64_t>(trials < 0 ? 0 : trials);

    if (problem.contains("formfactor")) {
        const Json& fj = problem["formfactor"];
        const BetheConfig<Q> cfg = config_from_json(
            fj.contains("config") ? fj["config"]
                                  : (problem.contains("config")
                                         ? problem["config"]
                                         : throw ParseError("formfactor needs a config")));
        std::vector<int> indices;
        if (fj.contains("i"))
            indices.push_back(fj["i"].get<int>());
        else
            indices = {1, 2, 3};
        const Json pivot = fj.contains("pivot") ? fj["pivot"] : Json();
        for (int i : indices) {
            CheckResult cr;
            cr.name = "formfactor explicit instance i=" + std::to_string(i);
            run_formfactor_instance(cr, cfg, i, pivot);
            rep.checks.push_back(std::move(cr));
        }
    }

    struct Task {
        size_t a, b;
        int i;
        long t;
    };
    std::vector<Task> tasks;
    for (int a = 0; a <= max_a; ++a)
        for (int b = 0; b <= max_b; ++b) {
            if (a + b == 0) continue;
            for (int i = 1; i <= 3; ++i)
                for (long t = 0; t < trials; ++t)
                    tasks.push_back({static_cast<size_t>(a), static_cast<size_t>(b), i, t});
        }

    const size_t base = rep.checks.size();
    rep.checks.resize(base + tasks.size());
    run_pool(opt.threads, tasks.size(), [&](size_t idx) {
        const Task tk = tasks[idx];
        CheckResult& cr = rep.checks[base + idx];
        cr.name = "formfactor a=" + std::to_string(tk.a) + " b=" + std::to_string(tk.b) +
                  " i=" + std::to_string(tk.i) + " trial " + std::to_string(tk.t);
        guarded(cr, Json::object(), [&](CheckResult&) {
            RandomSource rng(derive_seed(rep.seed, idx));
            DrawOptions dopt;
            dopt.a = tk.a;
            dopt.b = tk.b;
            dopt.unit_twist = true;
            dopt.with_free_r = false;
            const BetheConfig<Q> cfg = draw_config(rng, dopt);
            run_formfactor_instance(cr, cfg, tk.i, Json());
            if (cr.status == "pass") {
                // Graded trace combination vanishes between distinct states.
                const size_t p = default_pivot(cfg);
                const Q combo = formfactor_value(cfg, 1, p) + formfactor_value(cfg, 2, p) -
                                formfactor_value(cfg, 3, p);
                cr.values["trace_combination"] = combo.str();
                if (!combo.is_zero()) {
                    cr.status = "fail";
                    cr.witness = Json{{"config", config_to_json(cfg)},
                                      {"identity", "trace-combination"}};
                }
            }
        });
    });
    return rep;
}

Report run_bench(const Json& problem, const CommandOptions& opt) {
    Report rep;
    rep.command = "bench";
    rep.seed = effective_seed(opt, problem);

    std::vector<int> sizes = {1, 2, 3};
    if (problem.contains("sizes")) {
        sizes.clear();
        for (const auto& s : problem["sizes"]) sizes.push_back(s.get<int>());
    }
    long budget = opt.budget_secs;
    if (budget < 0 && problem.contains("budget_secs"))
        budget = problem["budget_secs"].get<long>();
    if (budget < 0) budget = 300;

    const auto start = Clock::now();
    std::uint64_t largest_sum_micros = 0, largest_det_micros = 0;
    int largest_done = -1;

    for (size_t idx = 0; idx < sizes.size(); ++idx) {
        const int s = sizes[idx];
        CheckResult cr;
        cr.name = "bench a=b=" + std::to_string(s);
        if (micros_since(start) / 1000000 >= static_cast<std::uint64_t>(budget)) {
            cr.status = "skipped-budget";
            cr.values["budget_secs"] = budget;
            rep.checks.push_back(std::move(cr));
            continue;
        }
        guarded(cr, Json::object(), [&](CheckResult& c) {
            RandomSource rng(derive_seed(rep.seed, static_cast<std::uint64_t>(s)));
            DrawOptions dopt;
            dopt.a = static_cast<size_t>(s);
            dopt.b = static_cast<size_t>(s);
            const BetheConfig<Q> cfg = draw_config(rng, dopt);
            const auto r = apply_constraints(cfg, Variant::SemiOnShell);

            SumStats stats;
            const auto t_sum0 = Clock::now();
            const Q sum = sum_formula(cfg, r, &stats);
            const std::uint64_t sum_micros = micros_since(t_sum0);

            const auto t_det0 = Clock::now();
            const Q det = det_rep(cfg, r, Variant::SemiOnShell);
            const std::uint64_t det_micros = micros_since(t_det0);

            // Analytic bookkeeping: outer terms are the four-fold splits,
            // sum_{k,n} C(a,k)^2 C(b,n)^2 = C(2a,a) C(2b,b); each (k,n) term
            // spawns C(a-k+n, a-k) + C(k+b-n, k) highest-coefficient splits.
            const std::uint64_t n_a = static_cast<std::uint64_t>(s);
            std::uint64_t expect_outer = 0, expect_z = 0;
            for (std::uint64_t k = 0; k <= n_a; ++k)
                for (std::uint64_t n = 0; n <= n_a; ++n) {
                    const std::uint64_t combos =
                        binom(n_a, k) * binom(n_a, k) * binom(n_a, n) * binom(n_a, n);
                    expect_outer += combos;
                    expect_z += combos * (binom(n_a - k + n, n_a - k) + binom(k + n_a - n, k));
                }

            c.values = Json{{"size", s},
                            {"sum_formula", sum.str()},
                            {"det_rep", det.str()},
                            {"sum_micros", sum_micros},
                            {"det_micros", det_micros},
                            {"outer_terms", stats.outer_terms},
                            {"outer_terms_expected", expect_outer},
                            {"z_terms", stats.z_terms},
                            {"z_terms_expected", expect_z}};
            const bool ok = sum == det && stats.outer_terms == expect_outer &&
                            stats.z_terms == expect_z;
            set_verdict(c, ok, Json{{"config", config_to_json(cfg)}});
            if (ok && s > largest_done) {
                largest_done = s;
                largest_sum_micros = sum_micros;
                largest_det_micros = det_micros;
            }
        });
        rep.checks.push_back(std::move(cr));
    }

    if (largest_done >= 2) {
        CheckResult cr;
        cr.name = "bench crossover (sum path slower than determinant path)";
        cr.values = Json{{"size", largest_done},
                         {"sum_micros", largest_sum_micros},
                         {"det_micros", largest_det_micros}};
        cr.status = largest_sum_micros > largest_det_micros ? "pass" : "fail";
        if (cr.status == "fail")
            cr.witness = Json{{"size", largest_done},
                              {"sum_micros", largest_sum_micros},
                              {"det_micros", largest_det_micros}};
        rep.checks.push_back(std::move(cr));
    }
    return rep;
}

} // namespace bethe

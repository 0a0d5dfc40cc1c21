#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "bethe/commands.hpp"
#include "bethe/errors.hpp"
#include "bethe/io.hpp"

namespace {

using bethe::CommandOptions;
using bethe::Json;
using bethe::Report;

void add_common(CLI::App* cmd, CommandOptions& opt, bool& seed_flag) {
    cmd->add_option("--input", opt.input_path, "Problem file (JSON)")->required();
    cmd->add_option("--seed", opt.seed, "Base seed for random draws")
        ->each([&seed_flag](const std::string&) { seed_flag = true; });
    cmd->add_option("--trials", opt.trials, "Trials per parameter combination");
    cmd->add_option("--max-a", opt.max_a, "Largest first-level magnon number");
    cmd->add_option("--max-b", opt.max_b, "Largest second-level magnon number");
    cmd->add_option("--threads", opt.threads, "Worker threads");
    cmd->add_option("--output", opt.output_path, "Write the JSON report here (default stdout)");
    cmd->add_option("--budget-secs", opt.budget_secs, "Wall-clock budget in seconds");
}

int emit_and_grade(const Report& rep, const CommandOptions& opt) {
    bethe::emit_report(rep, opt.output_path);
    return rep.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact scalar products, norms, and form factors of Bethe vectors"};
    app.require_subcommand(1);

    CommandOptions opt;
    bool seed_flag = false;

    CLI::App* crosscheck = app.add_subcommand(
        "crosscheck", "Compare the partition-sum and determinant scalar products");
    CLI::App* identities =
        app.add_subcommand("identities", "Random sweeps over the determinant identity suite");
    CLI::App* norm = app.add_subcommand(
        "norm", "On-shell norm limit against the Gaudin determinant");
    CLI::App* formfactor = app.add_subcommand(
        "formfactor", "Diagonal form factors: twist derivative against the determinant");
    CLI::App* bench = app.add_subcommand(
        "bench", "Timing and term-count comparison of the two scalar-product routes");
    for (CLI::App* cmd : {crosscheck, identities, norm, formfactor, bench})
        add_common(cmd, opt, seed_flag);

    CLI11_PARSE(app, argc, argv);
    opt.seed_set = seed_flag;

    try {
        const Json problem = bethe::load_json_file(opt.input_path);
        Report rep;
        if (crosscheck->parsed())
            rep = bethe::run_crosscheck(problem, opt);
        else if (identities->parsed())
            rep = bethe::run_identities(problem, opt);
        else if (norm->parsed())
            rep = bethe::run_norm(problem, opt);
        else if (formfactor->parsed())
            rep = bethe::run_formfactor(problem, opt);
        else
            rep = bethe::run_bench(problem, opt);
        return emit_and_grade(rep, opt);
    } catch (const bethe::ParseError& e) {
        Report rep;
        rep.command = "parse";
        bethe::CheckResult cr;
        cr.name = "problem file";
        cr.status = "error";
        cr.values["error"] = e.what();
        rep.checks.push_back(std::move(cr));
        bethe::emit_report(rep, opt.output_path);
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const bethe::Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected: %s\n", e.what());
        return 2;
    }
}

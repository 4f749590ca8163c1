// covgl: exact verification of covering-group Whittaker and zeta identities.

#include "covgl/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact covering-group Whittaker / Rankin-Selberg zeta verifier"};
    app.require_subcommand(1);

    covgl::RunConfig cfg;
    std::string format = "text";

    auto add_common = [&](CLI::App* sub, bool needs_descriptor) {
        if (needs_descriptor) {
            sub->add_option("--n", cfg.n, "covering degree")->required();
            sub->add_option("--p", cfg.p, "bilinear form parameter p")->required();
            sub->add_option("--q", cfg.q, "bilinear form parameter q")->required();
            sub->add_option("--r", cfg.r, "rank")->required();
        }
        sub->add_option("--trunc", cfg.trunc, "truncation order (0 = default)");
        sub->add_option("--format", format, "output format: text, json, csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_flag("--timing", cfg.timing,
                      "measure elapsed_ms (breaks byte-reproducibility)");
    };

    auto* pair = app.add_subcommand("pair", "classify the fundamental-pair criterion");
    add_common(pair, true);
    auto* orbits = app.add_subcommand("orbits", "twisted Weyl orbits and Whittaker dimension");
    add_common(orbits, true);
    auto* whittaker = app.add_subcommand("whittaker", "theta coefficient values and symmetries");
    add_common(whittaker, true);
    auto* vt = app.add_subcommand("verify-theta", "theta-theta zeta factorization");
    add_common(vt, true);
    auto* vr = app.add_subcommand("verify-rank2", "rank-2 factorization at rational samples");
    add_common(vr, true);
    vr->add_option("--samples", cfg.samples, "number of exact sample points");
    vr->add_option("--seed", cfg.seed, "sampling seed");
    auto* cx = app.add_subcommand("counterexample", "the rank-(1,2) residual computation");
    add_common(cx, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (pair->parsed()) cfg.command = covgl::RunConfig::Command::Pair;
    else if (orbits->parsed()) cfg.command = covgl::RunConfig::Command::Orbits;
    else if (whittaker->parsed()) cfg.command = covgl::RunConfig::Command::Whittaker;
    else if (vt->parsed()) cfg.command = covgl::RunConfig::Command::VerifyTheta;
    else if (vr->parsed()) cfg.command = covgl::RunConfig::Command::VerifyRank2;
    else if (cx->parsed()) cfg.command = covgl::RunConfig::Command::Counterexample;

    if (format == "json") cfg.format = covgl::RunConfig::Format::Json;
    else if (format == "csv") cfg.format = covgl::RunConfig::Format::Csv;

    if (cfg.samples < 1 || (cfg.trunc < 0)) {
        std::cerr << "error: samples and trunc must be positive\n";
        return 2;
    }

    auto result = covgl::run(cfg);
    std::cout << result.output;
    return result.exit_code;
}

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_support.hpp"
#include "gammalim/identities.hpp"

namespace {

using namespace gammalim;
using nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kPole = 2,
    kDiscrepancy = 3,
    kIo = 4,
};

struct EvalArgs {
    std::string z_text;
    std::string method = "rational";
    long terms = 1000000;
    long nodes = 400;
};

struct LimitArgs {
    long n = 1;
    long k = 0;
    std::string convention = "residue";
    double eps0 = 1e-3;
    int steps = 20;
};

struct CheckArgs {
    std::string identity = "all";
    long n_max = 0;
    long single_n = 0;
};

struct SweepArgs {
    cli::SweepConfig config;
    std::string output_path;
};

int run_eval(const EvalArgs& args) {
    const auto z = cli::parse_complex(args.z_text);
    if (!z) {
        std::cerr << "error: cannot parse complex literal '" << args.z_text << "'\n";
        return kUsage;
    }
    EvalMethod method;
    if (args.method == "rational") {
        method = EvalMethod::rational();
    } else if (args.method == "product") {
        method = EvalMethod::product(args.terms);
    } else if (args.method == "integral") {
        method = EvalMethod::quadrature(args.nodes);
    } else {
        std::cerr << "error: unknown method '" << args.method << "'\n";
        return kUsage;
    }
    std::cout << cli::format_complex_sig17(eval_gamma(*z, method)) << "\n";
    return kOk;
}

int run_limit(const LimitArgs& args, double tol) {
    const poles::RatioLimitSpec spec{args.n, args.k};
    const auto requested_convention = args.convention == "paper"
                                          ? poles::SignConvention::PaperTheorem2
                                          : poles::SignConvention::ResidueOracle;
    const auto oracle = poles::residue_ratio_oracle(spec);
    std::printf("n=%ld k=%ld\n", args.n, args.k);
    std::printf("closed-form (residue-oracle): %s\n",
                cli::format_sig17(oracle.to_real()).c_str());
    if (poles::conventions_disagree(args.n, args.k)) {
        const auto paper =
            poles::ratio_limit_closed_form(spec, poles::SignConvention::PaperTheorem2);
        std::printf("closed-form (paper): %s\n", cli::format_sig17(paper.to_real()).c_str());
        std::printf(
            "DISCREPANCY: paper sign (-1)^k disagrees with residue-oracle sign "
            "(-1)^(k(n-1)) for odd n, odd k\n");
    }

    if (oracle.log_mag < -700.0) {
        std::printf("extrapolation skipped: |limit| is below double range\n");
        return kOk;
    }

    const auto est = poles::limit_extrapolate(spec, args.eps0, args.steps);
    const double value = est.value.to_real();
    std::printf("extrapolated: %s\n", cli::format_sig17(value).c_str());
    std::printf("achieved-tol: %s\n", cli::format_shortest(est.achieved_tol).c_str());
    std::printf("order: %.2f\n", est.order);

    const auto closed = poles::ratio_limit_closed_form(spec, requested_convention);
    const double gate = tol > 0.0 ? tol : 1e-6;
    const bool magnitude_ok =
        std::abs(std::expm1(est.value.log_mag - closed.log_mag)) <= gate;
    const bool sign_ok = est.value.sign() == closed.sign();
    if (magnitude_ok && sign_ok) {
        std::printf("agreement: extrapolant matches %s convention\n",
                    args.convention.c_str());
        return kOk;
    }
    std::printf("agreement: extrapolant CONTRADICTS %s convention (measured %s)\n",
                args.convention.c_str(), cli::format_sig17(value).c_str());
    return kDiscrepancy;
}

int run_check(const CheckArgs& args, const std::string& format, double tol) {
    identities::CheckOptions opts;
    opts.n_max = args.n_max;
    opts.single_n = args.single_n;
    opts.tol_override = tol;

    std::vector<identities::IdentityReport> reports;
    if (args.identity == "all") {
        reports = identities::check_all(opts);
    } else {
        bool found = false;
        for (const auto id :
             {identities::IdentityId::Reflection, identities::IdentityId::SineProduct,
              identities::IdentityId::GaussMultiplication,
              identities::IdentityId::GammaFractionProduct,
              identities::IdentityId::RootsOfUnityProduct,
              identities::IdentityId::ChordLength}) {
            if (args.identity == identities::identity_name(id)) {
                reports.push_back(identities::check_identity(id, opts));
                found = true;
                break;
            }
        }
        if (!found) {
            std::cerr << "error: unknown identity '" << args.identity
                      << "' (try: reflection, sine-product, gauss, gamma-fraction-product, "
                         "roots-of-unity, chord-length, all)\n";
            return kUsage;
        }
    }

    bool all_pass = true;
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) {
            arr.push_back({{"identity", identities::identity_name(r.identity_id)},
                           {"grid", r.grid},
                           {"max_rel_residual", r.max_rel_residual},
                           {"threshold", r.threshold},
                           {"pass", r.pass},
                           {"worst_point", r.worst_point}});
            all_pass = all_pass && r.pass;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::printf("%-24s %-44s %-13s %-11s %s\n", "identity", "grid", "max-residual",
                    "threshold", "status");
        for (const auto& r : reports) {
            std::printf("%-24s %-44s %-13.3e %-11.3e %s\n",
                        identities::identity_name(r.identity_id), r.grid.c_str(),
                        r.max_rel_residual, r.threshold, r.pass ? "PASS" : "FAIL");
            all_pass = all_pass && r.pass;
        }
    }
    return all_pass ? kOk : kUsage;
}

int run_sweep(const SweepArgs& args, const std::string& format) {
    const auto& cfg = args.config;
    if (cfg.n < 1 || cfg.samples < 2 || !(cfg.half_width > 0.0) ||
        cfg.exclusion_radius < 0.0 || cfg.exclusion_radius >= cfg.half_width) {
        std::cerr << "error: need n >= 1, samples >= 2, half-width > 0, "
                     "0 <= exclude < half-width\n";
        return kUsage;
    }
    const auto records = cli::run_sweep(cfg);

    std::ofstream out(args.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << args.output_path << "' for writing\n";
        return kIo;
    }
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : records)
            arr.push_back({{"z", r.z},
                           {"ratio", r.ratio},
                           {"limit", r.limit},
                           {"abs_deviation", r.abs_deviation}});
        out << arr.dump(2) << "\n";
    } else {
        out << "z,ratio,limit,abs_deviation\n";
        for (const auto& r : records)
            out << cli::format_shortest(r.z) << ',' << cli::format_shortest(r.ratio) << ','
                << cli::format_shortest(r.limit) << ','
                << cli::format_shortest(r.abs_deviation) << '\n';
    }
    out.flush();
    if (!out) {
        std::cerr << "error: short write to '" << args.output_path << "'\n";
        return kIo;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex Gamma function evaluators, identity checks, and the limits of "
                 "Gamma(n z)/Gamma(z) at the poles"};
    app.require_subcommand(1);

    std::string format = "csv";
    double tol = 0.0;
    app.add_option("--format", format, "output format for sweep/check")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", tol, "override the default tolerance/threshold");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate Gamma(z)");
    eval_cmd->fallthrough();
    eval_cmd->allow_extras(); // a leading '-' in the z literal is not a flag
    eval_cmd->add_option("z", eval_args.z_text, "complex literal, e.g. 0.5+1i");
    eval_cmd->add_option("--method", eval_args.method, "rational | product | integral")
        ->check(CLI::IsMember({"rational", "product", "integral"}));
    eval_cmd->add_option("--terms", eval_args.terms, "product truncation N");
    eval_cmd->add_option("--nodes", eval_args.nodes, "quadrature node count");

    LimitArgs limit_args;
    auto* limit_cmd =
        app.add_subcommand("limit", "limit of Gamma(n z)/Gamma(z) at z = -k");
    limit_cmd->fallthrough();
    limit_cmd->add_option("-n", limit_args.n, "dilation factor")->required();
    limit_cmd->add_option("-k", limit_args.k, "pole index")->required();
    limit_cmd->add_option("--convention", limit_args.convention, "residue | paper")
        ->check(CLI::IsMember({"residue", "paper"}));
    limit_cmd->add_option("--eps0", limit_args.eps0, "largest step offset");
    limit_cmd->add_option("--steps", limit_args.steps, "extrapolation steps");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "verify Gamma identities on a grid");
    check_cmd->fallthrough();
    check_cmd->add_option("identity", check_args.identity,
                          "identity name or 'all' (default)");
    check_cmd->add_option("--n-max", check_args.n_max, "override the grid extent");
    check_cmd->add_option("-n", check_args.single_n, "restrict gauss to a single n");

    SweepArgs sweep_args;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "tabulate Gamma(n z)/Gamma(z) around a pole");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("-n", sweep_args.config.n, "dilation factor")->required();
    sweep_cmd->add_option("--center", sweep_args.config.center, "interval center");
    sweep_cmd->add_option("--half-width", sweep_args.config.half_width, "interval half width");
    sweep_cmd->add_option("--samples", sweep_args.config.samples, "sample count");
    sweep_cmd->add_option("--exclude", sweep_args.config.exclusion_radius,
                          "skip points this close to any pole");
    sweep_cmd->add_option("-o,--output", sweep_args.output_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (eval_cmd->parsed()) {
            if (eval_args.z_text.empty()) {
                const auto extras = eval_cmd->remaining();
                if (extras.size() != 1) {
                    std::cerr << "error: eval expects exactly one complex literal\n";
                    return kUsage;
                }
                eval_args.z_text = extras.front();
            } else if (!eval_cmd->remaining().empty()) {
                std::cerr << "error: unexpected extra arguments to eval\n";
                return kUsage;
            }
            return run_eval(eval_args);
        }
        if (limit_cmd->parsed()) return run_limit(limit_args, tol);
        if (check_cmd->parsed()) return run_check(check_args, format, tol);
        if (sweep_cmd->parsed()) return run_sweep(sweep_args, format);
    } catch (const PoleError& e) {
        std::cerr << e.what() << "\n";
        return kPole;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const OverflowToLogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

// Command-line front end: parses flags (and an optional JSON config file,
// with explicit flags taking precedence), then hands a finalized RunConfig to
// the batch drivers. Exit codes: 0 all checks passed, 1 violation or
// counterexample candidate recorded, 2 usage/configuration error, 130 when a
// SIGINT truncated the run (the record stream ends with a status record).
#include <csignal>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "werner/errors.hpp"
#include "werner/io.hpp"
#include "werner/runner.hpp"

namespace {

void on_sigint(int) { werner::interrupt_flag().store(true); }

struct FlagBag {
    werner::RunConfig cfg;
    std::vector<std::string> tol_entries;
    std::string config_path;
};

void add_common_flags(CLI::App* cmd, FlagBag& bag, const char* samples_names) {
    cmd->add_option("--d", bag.cfg.d, "Matrix dimension d");
    cmd->add_option(samples_names, bag.cfg.samples,
                    "Number of samples (command-specific default when omitted)");
    cmd->add_option("--seed", bag.cfg.seed,
                    "Master seed; required here or in the config file, never defaulted "
                    "from the clock");
    cmd->add_option("--threads", bag.cfg.threads,
                    "Worker threads; 0 reads WERNER_THREADS, then falls back to 1");
    cmd->add_option("--out", bag.cfg.output_path,
                    "Record file (default: <command>.<format>)");
    cmd->add_option("--format", bag.cfg.format, "Record format: jsonl (default) or csv");
    cmd->add_option("--config", bag.config_path,
                    "JSON config file holding any of these settings; explicit flags "
                    "override it");
    cmd->add_option("--tol", bag.tol_entries,
                    "Tolerance override NAME=VALUE (repeatable); names: phi_rel, "
                    "identity_rel, det_log_rel, psd_slack, pd_rel, boundary");
}

constexpr const char* kCommonSchema =
    "Every output starts with {record:\"header\", command, config, timestamp} (the\n"
    "timestamp is the only non-reproducible field), ends with {record:\"summary\", ...,\n"
    "completed, violations}, and appends {record:\"status\", status:\"interrupted\"}\n"
    "after SIGINT. Violating inputs are reproduced in full precision in\n"
    "<out>.artifacts.json. Exit 1 iff a violation record was written.";

}  // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_sigint);

    FlagBag bag;
    CLI::App app{"werner2d: numerical toolkit for the two-copy distillability form on the "
                 "Werner family"};
    app.require_subcommand(1);
    app.footer(kCommonSchema);

    CLI::App* identities = app.add_subcommand(
        "identities",
        "Check all stated identities on random instances: the four formulations of the "
        "form agree, the unitary/contraction invariance, the (A, B) conjugation law and "
        "the 2x2 mixing law of H, and both determinant identities.\n"
        "Sample record: {index, phi_dev, invariance_dev, ab_dev, lambda_dev, "
        "det_unitary_dev, det_gl_dev, violation}");
    add_common_flags(identities, bag, "--samples");

    CLI::App* psd_scan = app.add_subcommand(
        "psd-scan",
        "Sample lambda_min of H over random pairs (positivity conjecture evidence); "
        "violation when lambda_min < -psd_slack * ||H||.\n"
        "Sample record: {index, seed, d, lambda_min, norm_H[, minor_min], violation}");
    add_common_flags(psd_scan, bag, "--samples");
    psd_scan->add_flag("--restricted", bag.cfg.restricted,
                       "Sample X from the diagonal-positive stratum instead of dense "
                       "Gaussian (violation counts must agree with the default mode)");
    psd_scan->add_option("--minor-order", bag.cfg.minor_order,
                         "Also check this leading principal minor (1..2d^2; 0 = off)");

    CLI::App* diag_verify = app.add_subcommand(
        "diag-verify",
        "Verify the diagonal-pair block decomposition on random pairs: exact residual, "
        "positive-definite blocks, lambda_min(H) > 0 for generic pairs.\n"
        "Sample record: {index, seed, d, generic, lambda_min_H, min_block_eig, residual, "
        "norm_H, violation}");
    add_common_flags(diag_verify, bag, "--samples");

    CLI::App* det_sample = app.add_subcommand(
        "det-sample",
        "Randomized non-vanishing evidence for det H on generic pairs (d >= 3); a zero "
        "candidate survives only after an independent LU re-verification.\n"
        "Sample record: {index, d, generic, sign, log_abs_det, log_margin, violation}");
    add_common_flags(det_sample, bag, "--samples");

    CLI::App* search = app.add_subcommand(
        "search",
        "Alternating smallest-eigenvector minimization of the two-copy form; negative "
        "values below -1e-6 are re-verified against the operator oracle before being "
        "reported.\n"
        "Restart record: {index, value, iterations, candidate}; summary carries "
        "best_value, best_point (full precision) and traces_path (CSV restart,iter,value)");
    add_common_flags(search, bag, "--samples,--restarts");
    search->add_option("--max-iters", bag.cfg.max_iters, "Iteration cap per restart");
    search->add_option("--traces", bag.cfg.traces_path,
                       "Trace CSV path (default: <out>.traces.csv)");

    CLI::App* onedistill = app.add_subcommand(
        "onedistill-scan",
        "Single-copy threshold scan over a t grid: minimize the Rayleigh quotient of "
        "sigma(t) over Schmidt-rank-2 states; the minimum must stay ~0 for t <= 1/2 and "
        "turn negative above, non-increasing in t.\n"
        "Sample record: {t, min_value, violation}");
    add_common_flags(onedistill, bag, "--samples,--restarts");
    onedistill->add_option("--t-min", bag.cfg.t_min, "Grid start (default 0.30)");
    onedistill->add_option("--t-max", bag.cfg.t_max, "Grid end (default 0.70)");
    onedistill->add_option("--t-step", bag.cfg.t_step, "Grid step (default 0.05)");
    onedistill->add_option("--max-iters", bag.cfg.max_iters, "Iteration cap per restart");

    CLI::App* crosscheck = app.add_subcommand(
        "oracle-crosscheck",
        "The four formulations of the form side by side with their values (d <= 5, since "
        "the operator oracle is dense in d^4).\n"
        "Sample record: {index, phi_vector, phi_matrix, quadratic_eval, oracle, max_dev, "
        "violation}");
    add_common_flags(crosscheck, bag, "--samples");

    CLI::App* continuation = app.add_subcommand(
        "continuation",
        "Certify positive definiteness of H at random generic targets by walking a "
        "straight-line path from a seeded generic diagonal start with an adaptive "
        "eigenvalue-continuity margin.\n"
        "Sample record: {index, status, n_path_samples, min_lambda_min, retries, "
        "perturbed, direct_psd, agree, violation, path:[{t, lambda_min, log_abs_det, "
        "generic}]}");
    add_common_flags(continuation, bag, "--samples,--targets");
    continuation->add_option("--steps", bag.cfg.steps, "Base path samples (default 50)");

    // The config file has to land before CLI flag values so flags override
    // it; scan argv directly because the path must be known pre-parse.
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            bag.config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            bag.config_path = arg.substr(9);
    }
    try {
        if (!bag.config_path.empty())
            werner::apply_config_json(bag.cfg, werner::load_json_file(bag.config_path));
    } catch (const werner::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return werner::kExitUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : werner::kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    bag.cfg.command = sub->get_name();
    if (sub->count("--seed") > 0) bag.cfg.seed_set = true;

    try {
        for (const std::string& entry : bag.tol_entries) {
            const auto eq = entry.find('=');
            if (eq == std::string::npos)
                throw werner::ConfigError("--tol expects NAME=VALUE, got '" + entry + "'");
            try {
                bag.cfg.tolerances[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
            } catch (const std::logic_error&) {
                throw werner::ConfigError("--tol: '" + entry.substr(eq + 1) +
                                          "' is not a number");
            }
        }
        werner::finalize_config(bag.cfg);
        return werner::run(bag.cfg);
    } catch (const werner::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return werner::kExitUsage;
    } catch (const werner::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return werner::kExitUsage;
    } catch (const werner::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return werner::kExitViolation;
    }
}

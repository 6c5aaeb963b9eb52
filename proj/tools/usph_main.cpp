// command-line driver: point evaluations, envelope/zeta/ode probes, the
// projection identity, the grid sweep, the decay-rate fit, and the named
// self-test suites.
//
// exit codes: 0 pass, 1 assertion failure, 2 I/O or config error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "usph/asymp.hpp"
#include "usph/envelopes.hpp"
#include "usph/errors.hpp"
#include "usph/eval.hpp"
#include "usph/index.hpp"
#include "usph/suites.hpp"
#include "usph/sweep.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssert = 1;
constexpr int kExitConfig = 2;

usph::HalfInt parse_half_or_throw(const std::string& s, const char* flag) {
    const auto h = usph::parse_half(s);
    if (!h) throw usph::domain_error(std::string(flag) + ": cannot parse half-integer '" + s + "'");
    return *h;
}

usph::IndexPair make_pair(const std::string& ell, const std::string& m) {
    const usph::IndexPair p{parse_half_or_throw(ell, "--ell"), parse_half_or_throw(m, "--m")};
    if (!p.in_I()) throw usph::index_error("pair " + p.str() + " is not in the index set I");
    return p;
}

int cmd_eval(const std::string& ell, const std::string& m, const std::vector<double>& xs, int d) {
    const usph::IndexPair p = make_pair(ell, m);
    for (const double x : xs) {
        const auto pt = usph::EvalPoint::from_x(x);
        std::printf("x=%.17g Y=%.17g X=%.17g\n", x, usph::eval_Y(p, pt), usph::eval_X(d, p, pt));
    }
    return kExitPass;
}

int cmd_envelope(const std::string& ell, const std::string& m, const std::vector<double>& xs,
                 int d, const usph::RegimeParams& rp) {
    const usph::IndexPair p = make_pair(ell, m);
    const bool hermite = p.m.value() >= rp.epsilon * p.ell.value();
    for (const double x : xs) {
        const auto pt = usph::EvalPoint::from_x(x);
        const double env = hermite ? usph::hermite_envelope(d, p, pt, rp)
                                   : usph::bessel_envelope(d, p, pt, rp);
        std::printf("x=%.17g regime=%s envelope=%.17g universal=%.17g\n", x,
                    hermite ? "hermite" : "bessel", env, usph::universal_bound(p, pt));
    }
    return kExitPass;
}

int cmd_zeta(const std::string& ell, const std::string& m, const std::vector<double>& xs,
             double epsilon, bool ratio) {
    const usph::IndexPair p = make_pair(ell, m);
    for (const double x : xs) {
        const auto z = usph::zeta_solve(p, x, epsilon);
        std::printf("x=%.17g zeta=%.17g residual=%.3g", x, z.zeta, z.residual);
        if (ratio) {
            try {
                std::printf(" ratio=%.17g", usph::claim_ratio(p, x, epsilon));
            } catch (const usph::skip_point&) {
                std::printf(" ratio=skip");
            } catch (const usph::domain_error&) {
                std::printf(" ratio=n/a"); // y outside the claim window
            }
        }
        std::printf("\n");
    }
    return kExitPass;
}

int cmd_ode(const std::string& ell, const std::string& m, const std::vector<double>& xs,
            std::optional<double> h_arg) {
    const usph::IndexPair p = make_pair(ell, m);
    for (const double x : xs) {
        const double h = h_arg ? *h_arg : usph::ode_step(x);
        const double res = usph::ode_residual_extrapolated(p, x, h);
        std::printf("x=%.17g h=%.3g L=%.17g Q=%.17g residual=%.3g", x, h, usph::eval_L(p, x),
                    usph::q_eval(p, x), res);
        if (p.m.twice > 2) {
            const auto t = usph::transition_points(p);
            if (t.xbar && x > *t.xbar && x < 1.0) {
                const auto s = usph::sign_check(p, x);
                std::printf(" decaying=%s", s ? (*s ? "yes" : "NO") : "unsigned");
            }
        }
        std::printf("\n");
    }
    return kExitPass;
}

int cmd_projection(int d, const std::string& ell, const std::vector<double>& xs) {
    const usph::HalfInt l = parse_half_or_throw(ell, "--ell");
    bool ok = true;
    for (const double x : xs) {
        const auto [lhs, rhs] = usph::projection_identity_check(d, l, x);
        const double rel = std::fabs(lhs / rhs - 1.0);
        ok = ok && rel <= 1e-8;
        std::printf("x=%.17g lhs=%.17g rhs=%.17g rel=%.3g\n", x, lhs, rhs, rel);
    }
    return ok ? kExitPass : kExitAssert;
}

int cmd_fit(int d, const std::string& ell_max, double epsilon, double K) {
    const usph::FitResult fr =
        usph::fit_decay_constant(d, parse_half_or_throw(ell_max, "--ell-max"), epsilon, K);
    if (fr.region_empty) {
        std::printf("region empty: no pair with K*a < 1 in range\n");
        return kExitPass;
    }
    std::printf("c=%.6f C=%.6g samples=%lld\n", fr.c, fr.big_C,
                static_cast<long long>(fr.samples));
    return kExitPass;
}

int cmd_sweep(const usph::SweepConfig& cfg) {
    const usph::SweepReport rep = usph::run_sweep(cfg);
    if (cfg.output_path.empty()) {
        if (cfg.output_format == "csv")
            rep.write_csv(std::cout);
        else
            std::cout << rep.to_json();
    } else {
        // run_sweep already wrote the file; leave a one-line summary here
        std::printf("wrote %s report to %s (%zu pairs, %lld ms)\n", cfg.output_format.c_str(),
                    cfg.output_path.c_str(), rep.per_pair.size(),
                    static_cast<long long>(rep.wall_time_ms));
    }
    bool ok = true;
    for (const auto& s : rep.suites) {
        if (!s.pass) {
            ok = false;
            std::fprintf(stderr, "suite failed: %s (%s)\n", s.name.c_str(), s.detail.c_str());
        }
    }
    return ok ? kExitPass : kExitAssert;
}

int cmd_selftest(const std::vector<std::string>& names, bool list) {
    if (list) {
        for (const auto& n : usph::suite_names()) std::printf("%s\n", n.c_str());
        return kExitPass;
    }
    const std::vector<std::string> run = names.empty() ? usph::suite_names() : names;
    bool ok = true;
    for (const auto& n : run) {
        const usph::CheckResult r = usph::run_suite(n);
        ok = ok && r.pass;
        std::printf("[%s] %-18s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.elapsed_s, r.detail.c_str());
        std::fflush(stdout);
    }
    return ok ? kExitPass : kExitAssert;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultraspherical profile and envelope toolkit"};
    app.require_subcommand(1);

    std::string ell, m, ell_max = "200";
    std::vector<double> xs;
    int d = 2;
    usph::RegimeParams rp;
    double epsilon = 0.5, K = 2.0;
    std::optional<double> h_arg;
    bool ratio = false, list = false;
    std::vector<std::string> suite_args;

    auto* c_eval = app.add_subcommand("eval", "evaluate Y and X at given abscissae");
    c_eval->add_option("--ell", ell, "half-integer ell, e.g. 7/2")->required();
    c_eval->add_option("--m", m, "half-integer m")->required();
    c_eval->add_option("--x", xs, "abscissae in [-1,1]")->required()->expected(-1);
    c_eval->add_option("--d", d, "sphere dimension (>= 2)");

    auto* c_env = app.add_subcommand("envelope", "evaluate the regime envelope and universal bound");
    c_env->add_option("--ell", ell)->required();
    c_env->add_option("--m", m)->required();
    c_env->add_option("--x", xs)->required()->expected(-1);
    c_env->add_option("--d", d);
    c_env->add_option("--epsilon", rp.epsilon, "regime split threshold");
    c_env->add_option("--c", rp.c, "decay-branch rate");
    c_env->add_option("--K", rp.K, "decay-branch onset multiplier");

    auto* c_zeta = app.add_subcommand("zeta", "solve the implicit change of variables");
    c_zeta->add_option("--ell", ell)->required();
    c_zeta->add_option("--m", m)->required();
    c_zeta->add_option("--x", xs)->required()->expected(-1);
    c_zeta->add_option("--epsilon", epsilon);
    c_zeta->add_flag("--ratio", ratio, "also print (zeta - b^2)/(y^2 - b^2)");

    auto* c_ode = app.add_subcommand("ode", "finite-difference residual of L'' = QL");
    c_ode->add_option("--ell", ell)->required();
    c_ode->add_option("--m", m)->required();
    c_ode->add_option("--x", xs)->required()->expected(-1);
    double h_val = 0.0;
    auto* h_opt = c_ode->add_option("--step", h_val, "step size (default: harness rule)");

    auto* c_proj = app.add_subcommand("projection", "check the projection-kernel identity");
    c_proj->add_option("--d", d)->required();
    c_proj->add_option("--ell", ell, "whole or half-integer ell in N_d")->required();
    c_proj->add_option("--x", xs)->required()->expected(-1);

    usph::SweepConfig cfg;
    std::string config_path, ell_max_flag;
    auto* c_sweep = app.add_subcommand("sweep", "grid sweep of profiles against envelopes");
    c_sweep->add_option("--config", config_path, "key=value config file");
    auto* o_d = c_sweep->add_option("--d", cfg.d_list, "sphere dimensions");
    auto* o_lm = c_sweep->add_option("--ell-max", ell_max_flag, "largest ell");
    auto* o_g = c_sweep->add_option("--grid", cfg.x_grid_size, "x-grid size (odd, >= 3)");
    auto* o_e = c_sweep->add_option("--epsilon", cfg.epsilon);
    auto* o_c = c_sweep->add_option("--c", cfg.c);
    auto* o_k = c_sweep->add_option("--K", cfg.K);
    auto* o_tn = c_sweep->add_option("--tol-norm", cfg.tol_norm);
    auto* o_tr = c_sweep->add_option("--tol-rel", cfg.tol_rel);
    auto* o_j = c_sweep->add_option("--jobs", cfg.parallelism, "worker threads");
    auto* o_out = c_sweep->add_option("--output", cfg.output_path, "report file path");
    auto* o_fmt = c_sweep->add_option("--format", cfg.output_format, "json or csv");

    auto* c_fit = app.add_subcommand("fit-c", "fit the largest stable decay rate");
    c_fit->add_option("--d", d);
    c_fit->add_option("--ell-max", ell_max);
    c_fit->add_option("--epsilon", epsilon);
    c_fit->add_option("--K", K);

    auto* c_self = app.add_subcommand("selftest", "run the named check suites (default: all)");
    c_self->add_option("suites", suite_args, "suite names");
    c_self->add_flag("--list", list, "print suite names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (c_eval->parsed()) return cmd_eval(ell, m, xs, d);
        if (c_env->parsed()) return cmd_envelope(ell, m, xs, d, rp);
        if (c_zeta->parsed()) return cmd_zeta(ell, m, xs, epsilon, ratio);
        if (c_ode->parsed()) {
            if (h_opt->count() > 0) h_arg = h_val;
            return cmd_ode(ell, m, xs, h_arg);
        }
        if (c_proj->parsed()) return cmd_projection(d, ell, xs);
        if (c_sweep->parsed()) {
            if (!config_path.empty()) {
                usph::SweepConfig file_cfg = usph::load_sweep_config(config_path);
                // explicit flags override file values
                if (o_d->count() > 0) file_cfg.d_list = cfg.d_list;
                if (o_g->count() > 0) file_cfg.x_grid_size = cfg.x_grid_size;
                if (o_e->count() > 0) file_cfg.epsilon = cfg.epsilon;
                if (o_c->count() > 0) file_cfg.c = cfg.c;
                if (o_k->count() > 0) file_cfg.K = cfg.K;
                if (o_tn->count() > 0) file_cfg.tol_norm = cfg.tol_norm;
                if (o_tr->count() > 0) file_cfg.tol_rel = cfg.tol_rel;
                if (o_j->count() > 0) file_cfg.parallelism = cfg.parallelism;
                if (o_out->count() > 0) file_cfg.output_path = cfg.output_path;
                if (o_fmt->count() > 0) file_cfg.output_format = cfg.output_format;
                cfg = file_cfg;
            }
            if (o_lm->count() > 0)
                cfg.ell_max = parse_half_or_throw(ell_max_flag, "--ell-max");
            cfg.validate();
            return cmd_sweep(cfg);
        }
        if (c_fit->parsed()) return cmd_fit(d, ell_max, epsilon, K);
        if (c_self->parsed()) return cmd_selftest(suite_args, list);
    } catch (const usph::convergence_error& e) {
        std::fprintf(stderr, "error: %s (residual %.3g)\n", e.what(), e.residual);
        return kExitAssert;
    } catch (const usph::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}

#include "cim/config.hpp"
#include "cim/csv.hpp"
#include "cim/gap.hpp"
#include "cim/manifold.hpp"
#include "cim/parabolic.hpp"
#include "cim/robustness.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace cim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

SpectralField make_forcing(const ExperimentConfig& cfg, int n_modes) {
    SpectralField f{std::size_t(n_modes)};
    const double amp = cfg.get_double("f_amp", 0.0);
    const int mode = cfg.get_int("f_mode", 1);
    if (amp != 0.0 && mode >= 1 && mode <= n_modes) f[std::size_t(mode - 1)] = amp;
    return f;
}

SpectralField random_field(std::uint64_t seed, int n_modes, int support_modes, double l2_norm) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    SpectralField u{std::size_t(n_modes)};
    for (int i = 0; i < std::min(support_modes, n_modes); ++i) u[std::size_t(i)] = unit(rng);
    const double n = norm_hs(u, 0.0);
    if (n > 0.0)
        for (std::size_t i = 0; i < u.n_modes(); ++i) u[i] *= l2_norm / n;
    return u;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    const fs::path dir = cfg.get("out_dir", "out");
    fs::create_directories(dir);
    return (dir / name).string();
}

WindowTimes windows_from(const ExperimentConfig& cfg) {
    return default_windows(cfg.get_double("tau3", 0.0), cfg.get_int("i3_points", 1),
                           cfg.get_double("t_horizon", 10.0), cfg.get_int("t_grid_size", 16));
}

PipelineConfig pipeline_from(const ExperimentConfig& cfg) {
    PipelineConfig p;
    p.delta = cfg.get_double("delta", 1.5);
    p.n_modes = cfg.get_int("n_modes", 16);
    p.dt = cfg.get_double("dt", 1e-3);
    p.use_modified_nonlinearity = cfg.get_bool("modified", false);
    p.n_star = cfg.get_int("n_star", 4);
    p.grid_halfwidth = cfg.get_double("grid_halfwidth", 1.5);
    p.grid_points_per_axis = cfg.get_int("grid_points_per_axis", 3);
    p.grid_cap = std::size_t(cfg.get_int("grid_cap", 729));
    p.fit.T_relax = cfg.get_double("t_relax", 1.0);
    p.fit.tol = cfg.get_double("fit_tol", 1e-7);
    p.fit.max_iter = cfg.get_int("max_iter", 200);
    p.windows = windows_from(cfg);
    p.seed = std::uint64_t(cfg.get_int("seed", 1));
    p.f = make_forcing(cfg, p.n_modes);
    return p;
}

int cmd_certify(const ExperimentConfig& cfg) {
    const double delta = cfg.get_double("delta", 1.5);
    if (delta <= 1.0) {
        std::cerr << "certify: delta must be > 1\n";
        return kExitUsage;
    }
    const double eps = cfg.get_double("eps", 1e-3);
    const int n_max = cfg.get_int("n_max", 64);
    GapCertificate cert = certify(delta, eps, n_max);
    const double eps_s = eps_s_search(delta, n_max, cfg.get_double("tol", 1e-6));

    CsvWriter cw(out_path(cfg, "certificate.csv"));
    cw.header({"delta", "ell", "n_p_star", "eps", "n_eps_star", "eps_s"});
    cw.row({cert.delta, cert.ell, double(cert.n_star_parabolic), cert.eps,
            double(cert.n_star_hyperbolic.value_or(-1)), eps_s});

    CsvWriter mw(out_path(cfg, "margins.csv"));
    mw.header({"condition", "lhs", "rhs", "satisfied"});
    for (const GapMargin& m : cert.margins)
        mw.raw_row({m.condition, fmt_g17(m.lhs), fmt_g17(m.rhs), m.satisfied ? "1" : "0"});

    std::cout << "delta=" << fmt_g17(delta) << " ell=" << fmt_g17(cert.ell)
              << " N_p*=" << cert.n_star_parabolic << " eps=" << fmt_g17(eps) << " N_eps*=";
    if (cert.n_star_hyperbolic)
        std::cout << *cert.n_star_hyperbolic;
    else
        std::cout << "none";
    std::cout << " eps_s=" << fmt_g17(eps_s) << "\n";
    return kExitOk;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    const std::string mode = cfg.get("mode", "parabolic");
    const int n_modes = cfg.get_int("n_modes", 32);
    const double T = cfg.get_double("T", 5.0);
    const double dt = cfg.get_double("dt", 1e-3);
    const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 1));
    const SpectralField f = make_forcing(cfg, n_modes);
    const SpectralField u0 =
        random_field(seed, n_modes, cfg.get_int("u0_modes", 4), cfg.get_double("u0_norm", 0.5));
    const int every = cfg.get_int("record_every", 10);

    if (mode == "parabolic") {
        ParabolicConfig pc{f, n_modes, dt, cfg.get_bool("modified", false),
                           cfg.get_double("delta", 1.5)};
        ParabolicFlow flow(pc);
        TrajectoryRecord rec = flow.evolve(u0, T, every);

        CsvWriter cw(out_path(cfg, "trajectory.csv"));
        std::vector<std::string> cols{"time"};
        for (int n = 1; n <= n_modes; ++n) cols.push_back("coeff_" + std::to_string(n));
        cols.insert(cols.end(), {"l2", "h1", "lyapunov"});
        cw.header(cols);
        for (std::size_t i = 0; i < rec.times.size(); ++i) {
            std::vector<double> row{rec.times[i]};
            row.insert(row.end(), rec.states[i].coeffs.begin(), rec.states[i].coeffs.end());
            row.insert(row.end(), {rec.l2[i], rec.h1[i], rec.lyap[i]});
            cw.row(row);
        }
        if (pc.use_modified_nonlinearity) return kExitOk;  // audits assume raw g
        AuditReport a1 = check_L2_decay(rec, u0, f);
        AuditReport a2 = check_lyapunov_monotone(rec, 1e-6 * dt * every);
        AuditReport a3 = check_H1_absorbing(rec, u0, f);
        std::cout << "audit l2_decay=" << (a1.passed ? "pass" : "FAIL")
                  << " lyapunov=" << (a2.passed ? "pass" : "FAIL")
                  << " h1_absorbing=" << (a3.passed ? "pass" : "FAIL") << "\n";
        return (a1.passed && a2.passed && a3.passed) ? kExitOk : kExitAuditFail;
    }

    if (mode != "hyperbolic") {
        std::cerr << "simulate: mode must be parabolic or hyperbolic\n";
        return kExitUsage;
    }
    HyperbolicConfig hc{cfg.get_double("eps", 1.0), f,    n_modes,
                        dt, cfg.get_bool("modified", false), cfg.get_double("delta", 1.5)};
    HyperbolicFlow flow(hc);
    const ProductState x0 =
        cfg.get_bool("lifted", true) ? lift(u0, f) : ProductState(u0, SpectralField(u0.n_modes()));
    ProductTrajectory rec = flow.evolve(x0, T, every);

    CsvWriter cw(out_path(cfg, "trajectory.csv"));
    std::vector<std::string> cols{"time"};
    for (int n = 1; n <= n_modes; ++n) cols.push_back("u_" + std::to_string(n));
    for (int n = 1; n <= n_modes; ++n) cols.push_back("v_" + std::to_string(n));
    cols.insert(cols.end(), {"x_eps_1", "x_eps_2", "n3"});
    cw.header(cols);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        std::vector<double> row{rec.times[i]};
        row.insert(row.end(), rec.states[i].u.coeffs.begin(), rec.states[i].u.coeffs.end());
        row.insert(row.end(), rec.states[i].v.coeffs.begin(), rec.states[i].v.coeffs.end());
        row.insert(row.end(), {norm_xeps(rec.states[i], 1, hc.eps),
                               norm_xeps(rec.states[i], 2, hc.eps), norm_N3(rec.states[i], hc.eps)});
        cw.row(row);
    }
    return kExitOk;
}

void write_cloud(const ExperimentConfig& cfg, const std::string& name,
                 const ManifoldCloud& cloud) {
    CsvWriter cw(out_path(cfg, name));
    std::vector<std::string> cols{"tau", "t"};
    const std::size_t n = cloud.points.empty() ? 0 : cloud.points.front().n_modes();
    for (std::size_t i = 1; i <= n; ++i) cols.push_back("u_" + std::to_string(i));
    if (cloud.product)
        for (std::size_t i = 1; i <= n; ++i) cols.push_back("v_" + std::to_string(i));
    cw.header(cols);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        std::vector<double> row{cloud.provenance[i][0], cloud.provenance[i][1]};
        row.insert(row.end(), cloud.points[i].u.coeffs.begin(), cloud.points[i].u.coeffs.end());
        if (cloud.product)
            row.insert(row.end(), cloud.points[i].v.coeffs.begin(),
                       cloud.points[i].v.coeffs.end());
        cw.row(row);
    }
}

int cmd_manifold(const ExperimentConfig& cfg) {
    const std::string which = cfg.get("which", "parabolic");
    PipelineConfig p = pipeline_from(cfg);
    if (which == "parabolic") {
        write_cloud(cfg, "cloud.csv", build_parabolic_manifold(p));
        return kExitOk;
    }
    if (which == "hyperbolic") {
        write_cloud(cfg, "cloud.csv", build_hyperbolic_manifold(cfg.get_double("eps", 1e-2), p));
        return kExitOk;
    }
    std::cerr << "manifold: which must be parabolic or hyperbolic\n";
    return kExitUsage;
}

int cmd_robustness(const ExperimentConfig& cfg) {
    std::vector<double> eps_list = cfg.get_list("eps_list");

    if (cfg.has("distances")) {  // synthetic calibration of the fitter
        std::vector<double> d = cfg.get_list("distances");
        PowerFit fit = fit_power_law(eps_list, d);
        CsvWriter sw(out_path(cfg, "sweep.csv"));
        sw.header({"eps", "d_uv", "d_vu", "dist"});
        for (std::size_t i = 0; i < eps_list.size(); ++i)
            sw.row({eps_list[i], d[i], d[i], d[i]});
        CsvWriter fw(out_path(cfg, "fit.csv"));
        fw.header({"Lambda", "phi", "r_squared"});
        fw.row({fit.Lambda, fit.phi, fit.r_squared});
        std::cout << "Lambda=" << fmt_g17(fit.Lambda) << " phi=" << fmt_g17(fit.phi)
                  << " r2=" << fmt_g17(fit.r_squared) << "\n";
        return kExitOk;
    }

    if (eps_list.size() < 3) {
        std::cerr << "robustness: eps_list needs at least 3 decreasing values\n";
        return kExitUsage;
    }
    PipelineConfig p = pipeline_from(cfg);
    const double eps_s = eps_s_search(p.delta, cfg.get_int("n_max", 64));
    for (double e : eps_list)
        if (e > eps_s) {
            std::cerr << "robustness: eps=" << e << " exceeds eps_s=" << eps_s << "\n";
            return kExitUsage;
        }

    // Singular-limit series on the compatibility window ( [0,1] when tau3=0 ).
    const SpectralField u0 = random_field(std::uint64_t(cfg.get_int("seed", 1)), p.n_modes,
                                          cfg.get_int("u0_modes", 4),
                                          cfg.get_double("u0_norm", 0.5));
    const double w0 = p.windows.tau3;
    const double w1 = w0 == 0.0 ? 1.0 : 2.0 * w0;
    ParabolicConfig pc{p.f, p.n_modes, p.dt, p.use_modified_nonlinearity, p.delta};
    CsvWriter sl(out_path(cfg, "singular.csv"));
    sl.header({"eps", "sup_norm", "window_start", "window_end"});
    for (double e : eps_list) {
        SingularLimitReport rep = run_singular_limit(lift(u0, p.f), e, w0, w1, pc);
        sl.row({e, rep.sup_t_norm, rep.window_start, rep.window_end});
    }

    ManifoldCloud m0 = build_parabolic_manifold(p);
    RobustnessFit fit = sweep_eps(m0, eps_list, p);

    CsvWriter sw(out_path(cfg, "sweep.csv"));
    sw.header({"eps", "d_uv", "d_vu", "dist"});
    for (std::size_t i = 0; i < fit.eps_values.size(); ++i)
        sw.row({fit.eps_values[i], fit.d_uv[i], fit.d_vu[i], fit.distances[i]});
    CsvWriter fw(out_path(cfg, "fit.csv"));
    fw.header({"Lambda", "phi", "r_squared"});
    fw.row({fit.fit.Lambda, fit.fit.phi, fit.fit.r_squared});
    std::cout << "Lambda=" << fmt_g17(fit.fit.Lambda) << " phi=" << fmt_g17(fit.fit.phi)
              << " r2=" << fmt_g17(fit.fit.r_squared) << "\n";
    return kExitOk;
}

int cmd_audit(const ExperimentConfig& cfg) {
    const int runs = cfg.get_int("runs", 5);
    const int n_modes = cfg.get_int("n_modes", 32);
    const double T = cfg.get_double("T", 5.0);
    const double dt = cfg.get_double("dt", 1e-3);
    const int every = cfg.get_int("record_every", 10);
    const SpectralField f = make_forcing(cfg, n_modes);
    ParabolicConfig pc{f, n_modes, dt, false, cfg.get_double("delta", 1.5)};
    ParabolicFlow flow(pc);

    CsvWriter cw(out_path(cfg, "audit.csv"));
    cw.header({"seed", "l2_violation", "lyap_rise", "h1_violation", "passed"});
    bool all_ok = true;
    const std::uint64_t seed0 = std::uint64_t(cfg.get_int("seed", 1));
    for (int r = 0; r < runs; ++r) {
        const std::uint64_t seed = seed0 + std::uint64_t(r);
        const SpectralField u0 = random_field(seed, n_modes, cfg.get_int("u0_modes", 8),
                                              cfg.get_double("u0_norm", 1.0));
        TrajectoryRecord rec = flow.evolve(u0, T, every);
        AuditReport a1 = check_L2_decay(rec, u0, f);
        AuditReport a2 = check_lyapunov_monotone(rec, 1e-6 * dt * every);
        AuditReport a3 = check_H1_absorbing(rec, u0, f);
        const bool ok = a1.passed && a2.passed && a3.passed;
        all_ok = all_ok && ok;
        cw.row({double(seed), a1.max_violation, a2.max_violation, a3.max_violation,
                ok ? 1.0 : 0.0});
    }
    std::cout << (all_ok ? "all audits passed" : "AUDIT FAILURES") << "\n";
    return all_ok ? kExitOk : kExitAuditFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compact inertial manifold laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key=value config file")->expected(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--set", overrides, "override key=value (repeatable)");
        sub->add_option("--seed", [&](const std::vector<std::string>& v) {
            overrides.push_back("seed=" + v[0]);
            return true;
        }, "rng seed");
        sub->add_option("--out", [&](const std::vector<std::string>& v) {
            overrides.push_back("out_dir=" + v[0]);
            return true;
        }, "output directory");
        sub->add_option("--delta", [&](const std::vector<std::string>& v) {
            overrides.push_back("delta=" + v[0]);
            return true;
        }, "cutoff parameter delta");
        sub->add_option("--eps-list", [&](const std::vector<std::string>& v) {
            overrides.push_back("eps_list=" + v[0]);
            return true;
        }, "comma-separated eps values");
        sub->add_option("--modes", [&](const std::vector<std::string>& v) {
            overrides.push_back("n_modes=" + v[0]);
            return true;
        }, "number of sine modes");
        sub->add_option("--dt", [&](const std::vector<std::string>& v) {
            overrides.push_back("dt=" + v[0]);
            return true;
        }, "time step");
    };

    CLI::App* c_certify = app.add_subcommand("certify", "spectral gap certification");
    CLI::App* c_simulate = app.add_subcommand("simulate", "integrate one trajectory with audits");
    CLI::App* c_manifold = app.add_subcommand("manifold", "build a compact manifold cloud");
    CLI::App* c_robustness = app.add_subcommand("robustness", "eps sweep and power-law fit");
    CLI::App* c_audit = app.add_subcommand("audit", "batch inequality audits");
    for (CLI::App* sub : {c_certify, c_simulate, c_manifold, c_robustness, c_audit})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg.load_file(config_path);
        cfg.apply_env();
        for (const std::string& ov : overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos) throw std::runtime_error("bad override: " + ov);
            cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_certify->parsed()) return cmd_certify(cfg);
        if (c_simulate->parsed()) return cmd_simulate(cfg);
        if (c_manifold->parsed()) return cmd_manifold(cfg);
        if (c_robustness->parsed()) return cmd_robustness(cfg);
        if (c_audit->parsed()) return cmd_audit(cfg);
    } catch (const IntegrationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

#include "trunclap/cli.hpp"

#include "trunclap/bounds.hpp"
#include "trunclap/eigensolver.hpp"
#include "trunclap/explorer.hpp"
#include "trunclap/parallel.hpp"
#include "trunclap/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace trunclap {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFailure = 2;

struct SolverArgs {
    double h = 1.0 / 64;
    int stencil = 4;
    double tol_bracket = 1e-6;
    double tol_inner = 1e-8;
    int max_outer = 200;
    long max_inner = 200000;
    double eta = 1e-3;
    bool policy = false;
    bool pseudo_time = false;
    bool no_shift = false;

    void add_to(CLI::App* app) {
        app->add_option("--h", h, "grid spacing")->capture_default_str();
        app->add_option("--stencil", stencil, "stencil width W")->capture_default_str();
        app->add_option("--tol-bracket", tol_bracket, "relative bracket tolerance")->capture_default_str();
        app->add_option("--tol-inner", tol_inner, "relative inner residual tolerance")->capture_default_str();
        app->add_option("--max-outer", max_outer)->capture_default_str();
        app->add_option("--max-inner", max_inner)->capture_default_str();
        app->add_option("--eta", eta, "Collatz-Wielandt floor relative to max u")->capture_default_str();
        auto* pi = app->add_flag("--policy-iteration", policy, "policy iteration inner solver (default)");
        app->add_flag("--pseudo-time", pseudo_time, "explicit pseudo-time inner solver")->excludes(pi);
        app->add_flag("--no-shift", no_shift, "disable the shift in the inner systems");
    }

    SolverConfig config() const {
        SolverConfig c;
        c.h = h;
        c.stencil_width = stencil;
        c.tol_bracket = tol_bracket;
        c.tol_inner = tol_inner;
        c.max_outer = max_outer;
        c.max_inner = max_inner;
        c.cw_floor = eta;
        c.inner = pseudo_time ? InnerMethod::PseudoTime : InnerMethod::PolicyIteration;
        c.shift = !no_shift;
        return c;
    }
};

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        std::size_t used = 0;
        out.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument("not an integer: " + item);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto slash = item.find('/');
        std::size_t used = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(item.substr(0, slash));
            const double den = std::stod(item.substr(slash + 1), &used);
            if (used != item.size() - slash - 1) throw std::invalid_argument("not a number: " + item);
            out.push_back(num / den);
        } else {
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("not a number: " + item);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

struct Io {
    std::ostream& out;
    std::ostream& err;
};

int emit_tables(const std::vector<Table>& tables, const std::string& out_dir, bool plot_data, Io io) {
    nlohmann::json all = nlohmann::json::array();
    for (const Table& t : tables) {
        if (!out_dir.empty()) {
            t.write(out_dir);
            if (plot_data) t.write_plot_data(out_dir);
        }
        all.push_back(t.to_json());
    }
    io.out << all.dump(2) << '\n';
    return kOk;
}

int cmd_solve(const std::string& domain_arg, const SolverArgs& sa, bool force_numeric, bool sweep,
              const std::string& sweep_hs, const std::string& sweep_ws, bool richardson_flag,
              const std::string& dump_u, const std::string& dump_grid, bool timings, Io io) {
    const DomainSpec domain = load_domain(domain_arg);
    const SolverConfig cfg = sa.config();
    cfg.validate();

    if (!force_numeric && !sweep && !richardson_flag) {
        if (const auto mu = analytic_mu(domain)) {
            nlohmann::json j = {{"domain", describe(domain)}, {"analytic", true}, {"mu", *mu},
                                {"mu_low", *mu},           {"mu_high", *mu}};
            io.out << j.dump(2) << '\n';
            return kOk;
        }
    }

    if (sweep) {
        const std::vector<double> hs = parse_doubles(sweep_hs);
        const std::vector<int> ws = sweep_ws.empty() ? std::vector<int>{sa.stencil} : parse_ints(sweep_ws);
        Table t("refinement", {"h", "W", "mu", "mu_low", "mu_high", "outer_iters", "inner_iters_total", "residual"});
        for (int W : ws)
            for (double h : hs) {
                SolverConfig c = cfg;
                c.h = h;
                c.stencil_width = W;
                const EigenEstimate e = solve(domain, c);
                t.add_row({h, static_cast<long long>(W), e.mu, e.mu_low, e.mu_high,
                           static_cast<long long>(e.outer_iters), static_cast<long long>(e.inner_iters_total),
                           e.residual});
            }
        t.metadata()["domain"] = describe(domain);
        if (const auto mu = analytic_mu(domain)) t.metadata()["analytic_mu"] = *mu;
        io.out << t.to_json().dump(2) << '\n';
        return kOk;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const EigenEstimate e = solve(domain, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json j = to_json(e);
    j["domain"] = describe(domain);
    j["analytic"] = false;
    j["inner_method"] = cfg.inner == InnerMethod::PolicyIteration ? "policy-iteration" : "pseudo-time";
    if (const auto mu = analytic_mu(domain)) j["analytic_mu"] = *mu;
    if (richardson_flag) {
        SolverConfig fine = cfg;
        fine.h = cfg.h / 2;
        const EigenEstimate f = solve(domain, fine);
        j["richardson"] = {{"h_fine", fine.h}, {"mu_fine", f.mu}, {"mu_extrapolated", richardson(e.mu, f.mu)}};
    }
    if (timings) j["seconds"] = secs;

    if (!dump_u.empty()) {
        std::ofstream f(dump_u);
        if (!f) throw std::runtime_error("cannot write " + dump_u);
        e.eigenfunction.write_csv(f);
    }
    if (!dump_grid.empty()) {
        std::filesystem::create_directories(dump_grid);
        std::ofstream mask(std::filesystem::path(dump_grid) / "mask.csv");
        std::ofstream arms(std::filesystem::path(dump_grid) / "arms.csv");
        if (!mask || !arms) throw std::runtime_error("cannot write into " + dump_grid);
        e.eigenfunction.grid().write_mask_csv(mask);
        e.eigenfunction.grid().write_arms_csv(arms);
    }
    io.out << j.dump(2) << '\n';
    return kOk;
}

int cmd_bounds(const std::string& domain_arg, int N, Io io) {
    const DomainSpec domain = load_domain(domain_arg);
    nlohmann::json j = to_json(bounds_report(domain, N));
    j["domain"] = describe(domain);
    if (const auto mu = analytic_mu(domain)) j["analytic_mu"] = *mu;
    io.out << j.dump(2) << '\n';
    return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int jobs, bool json, bool timings, Io io) {
    VerifyOptions o;
    o.seed = seed;
    o.jobs = jobs;
    if (!json)
        o.on_result = [&](const CheckResult& r) {
            io.out << format_result(r);
            if (timings) io.out << " (" << r.seconds << " s)";
            io.out << std::endl;
        };
    const auto results = run_suite(suite, o);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed;
    if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json e = {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
            if (timings) e["seconds"] = r.seconds;
            arr.push_back(e);
        }
        io.out << nlohmann::json{{"suite", suite}, {"passed", passed}, {"total", results.size()}, {"checks", arr}}.dump(2)
               << '\n';
    } else {
        io.out << "summary: " << passed << "/" << results.size() << " passed\n";
    }
    return passed == results.size() ? kOk : kFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Io io{out, err};
    CLI::App app{"Principal eigenvalue of the truncated Laplacian on convex domains", "trunclap"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int jobs = 0;
    bool timings = false;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "seed for random generators")->capture_default_str();
        sub->add_option("--jobs", jobs, "worker threads (default: TRUNCLAP_JOBS or all cores)");
        sub->add_flag("--timings", timings, "include wall-clock timings");
    };

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "compute mu_1 for one domain");
    std::string domain_arg;
    SolverArgs sa;
    bool force_numeric = false, sweep = false, richardson_flag = false;
    std::string sweep_hs = "1/32,1/64,1/128", sweep_ws, dump_u, dump_grid;
    solve_cmd->add_option("--domain", domain_arg, "domain JSON file or inline JSON")->required();
    sa.add_to(solve_cmd);
    solve_cmd->add_flag("--force-numeric", force_numeric, "solve even when a closed form exists");
    solve_cmd->add_flag("--sweep", sweep, "refinement table over --sweep-h x --sweep-W");
    solve_cmd->add_option("--sweep-h", sweep_hs, "comma-separated spacings, fractions allowed")->capture_default_str();
    solve_cmd->add_option("--sweep-W", sweep_ws, "comma-separated stencil widths (default: --stencil)");
    solve_cmd->add_flag("--richardson", richardson_flag, "also solve at h/2 and extrapolate assuming O(h^2)");
    solve_cmd->add_option("--dump-eigenfunction", dump_u, "write x,y,u CSV");
    solve_cmd->add_option("--dump-grid", dump_grid, "write mask.csv and arms.csv into this directory");
    common(solve_cmd);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bounds for one domain");
    int bounds_N = 0;
    bounds_cmd->add_option("--domain", domain_arg, "domain JSON file or inline JSON")->required();
    bounds_cmd->add_option("--N", bounds_N, "dimension (default: the domain's)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run acceptance checks");
    std::string suite = "all";
    bool verify_json = false;
    verify_cmd->add_option("--suite", suite, "analytic|inequalities|scheme|all")
        ->check(CLI::IsMember(suite_names()))
        ->capture_default_str();
    verify_cmd->add_flag("--json", verify_json, "machine-readable output");
    common(verify_cmd);

    // explore
    auto* explore_cmd = app.add_subcommand("explore", "limiting sequences and conjecture experiments");
    explore_cmd->require_subcommand(1);
    std::string out_dir;
    bool plot_data = false;
    SolverArgs ea;
    auto explore_common = [&](CLI::App* sub, bool solver) {
        sub->add_option("--out", out_dir, "directory for CSV and JSON tables");
        sub->add_flag("--plot-data", plot_data, "also write (x,y) series files");
        if (solver) ea.add_to(sub);
        common(sub);
    };
    auto* rect_cmd = explore_cmd->add_subcommand("rectangles", "degenerating rectangles (closed form)");
    std::string constraint = "volume", n_list = "1,2,4,8";
    double level = 1.0;
    rect_cmd->add_option("--constraint", constraint, "volume|perimeter")->capture_default_str();
    rect_cmd->add_option("--level", level, "constraint value")->capture_default_str();
    rect_cmd->add_option("--n", n_list, "comma-separated n")->capture_default_str();
    explore_common(rect_cmd, false);

    auto* shrink_cmd = explore_cmd->add_subcommand("shrinking", "thin domains of fixed length");
    double d = 1.0;
    std::string eps_list = "0.4,0.2,0.1", family = "rectangle";
    shrink_cmd->add_option("--d", d, "length")->capture_default_str();
    shrink_cmd->add_option("--eps", eps_list, "comma-separated thicknesses")->capture_default_str();
    shrink_cmd->add_option("--family", family, "rectangle|triangle")
        ->check(CLI::IsMember({"rectangle", "triangle"}))
        ->capture_default_str();
    explore_common(shrink_cmd, true);

    auto* reul_cmd = explore_cmd->add_subcommand("reuleaux", "Reuleaux polygons of fixed width");
    std::string reul_n = "3,5,7,9";
    int arc_samples = 64;
    reul_cmd->add_option("--d", d, "width")->capture_default_str();
    reul_cmd->add_option("--n", reul_n, "comma-separated odd n")->capture_default_str();
    reul_cmd->add_option("--arc-samples", arc_samples)->capture_default_str();
    explore_common(reul_cmd, true);

    auto* haus_cmd = explore_cmd->add_subcommand("hausdorff", "approximation of a target domain");
    std::string target = R"({"type":"ball","r":1,"dim":2})", haus_n = "8,16,32";
    int trials = 0;
    double delta = 0.05;
    haus_cmd->add_option("--target", target, "target domain (default unit disk)")->capture_default_str();
    haus_cmd->add_option("--n", haus_n, "inscribed regular n-gons (disk target) or scalings 1+1/n")
        ->capture_default_str();
    haus_cmd->add_option("--trials", trials, "random perturbation trials of the polygonal target");
    haus_cmd->add_option("--delta", delta, "perturbation size")->capture_default_str();
    explore_common(haus_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    const int workers = resolve_jobs(jobs > 0 ? std::optional<int>(jobs) : std::nullopt);
    try {
        if (*solve_cmd)
            return cmd_solve(domain_arg, sa, force_numeric, sweep, sweep_hs, sweep_ws, richardson_flag, dump_u,
                             dump_grid, timings, io);
        if (*bounds_cmd) return cmd_bounds(domain_arg, bounds_N, io);
        if (*verify_cmd) return cmd_verify(suite, seed, workers, verify_json, timings, io);

        const SolverConfig cfg = ea.config();
        if (*rect_cmd) {
            const Table t = degenerate_rectangles(parse_constraint(constraint), level, parse_ints(n_list));
            emit_tables({t}, out_dir, plot_data, io);
            return t.metadata().at("strictly_decreasing").get<bool>() ? kOk : kFailure;
        }
        cfg.validate();
        if (*shrink_cmd) {
            const Table t = shrinking_sequence(d, parse_doubles(eps_list), cfg,
                                               family == "triangle" ? ThinFamily::Triangle : ThinFamily::Rectangle,
                                               workers);
            return emit_tables({t}, out_dir, plot_data, io);
        }
        if (*reul_cmd) {
            const Table t = reuleaux_scan(d, parse_ints(reul_n), cfg, arc_samples, workers);
            emit_tables({t}, out_dir, plot_data, io);
            bool ok = true;
            for (std::size_t i = 0; i < t.size(); ++i) ok = ok && t.flag(i, "within_bounds");
            return ok ? kOk : kFailure;
        }
        if (*haus_cmd) {
            const DomainSpec tgt = load_domain(target);
            std::vector<ConvexPolygon> approximants;
            if (std::holds_alternative<BallSpec>(tgt)) {
                approximants = inscribed_polygons(parse_ints(haus_n), std::get<BallSpec>(tgt).radius);
            } else {
                const ConvexPolygon p = as_polygon(tgt);
                for (int n : parse_ints(haus_n)) {
                    approximants.push_back(scale(p, 1.0 + 1.0 / n));
                    approximants.push_back(scale(p, 1.0 - 1.0 / n));
                }
            }
            std::vector<Table> tables = {hausdorff_continuity_experiment(tgt, approximants, cfg, workers)};
            if (trials > 0) {
                if (std::holds_alternative<BallSpec>(tgt))
                    throw std::invalid_argument("perturbation trials need a polygonal target");
                tables.push_back(perturbation_trials(as_polygon(tgt), delta, trials, cfg, seed, workers));
            }
            emit_tables(tables, out_dir, plot_data, io);
            bool ok = true;
            for (std::size_t i = 0; i < tables[0].size(); ++i) ok = ok && tables[0].flag(i, "sandwich_ok");
            return ok ? kOk : kFailure;
        }
    } catch (const SolverError& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == SolverError::Kind::InvalidConfig ? kInputError : kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace trunclap

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "homog/diagnostics.hpp"
#include "homog/microstructure.hpp"
#include "homog/ratemap.hpp"
#include "homog/schemes.hpp"
#include "homog/series.hpp"

namespace homog::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

struct MicroSpec {
    bool from_file = false;
    MicroKind kind = MicroKind::obnosov;
    std::string path;
};

MicroSpec parse_micro(const std::string& s) {
    MicroSpec m;
    if (s.rfind("file:", 0) == 0) {
        m.from_file = true;
        m.path = s.substr(5);
        return m;
    }
    if (s == "obnosov")
        m.kind = MicroKind::obnosov;
    else if (s == "checkerboard")
        m.kind = MicroKind::checkerboard;
    else if (s == "four-disks")
        m.kind = MicroKind::four_disks;
    else
        throw CLI::ValidationError("--micro", "expected obnosov|checkerboard|four-disks|file:PATH");
    return m;
}

Microstructure realize_micro(const MicroSpec& spec, std::optional<int> n) {
    if (spec.from_file) return load_pgm(spec.path);
    if (!n) throw CLI::ValidationError("--n", "required for generated microstructures");
    return generate(spec.kind, *n);
}

SolveScheme parse_scheme(const std::string& s) {
    if (s == "b") return SolveScheme::B;
    if (s == "ms") return SolveScheme::MS;
    if (s == "em") return SolveScheme::EM;
    if (s == "em-pol") return SolveScheme::EMPolarization;
    throw CLI::ValidationError("--scheme", "expected b|ms|em|em-pol");
}

SchemeKind kind_of(SolveScheme s) {
    switch (s) {
        case SolveScheme::B: return SchemeKind::B;
        case SolveScheme::MS: return SchemeKind::MS;
        default: return SchemeKind::EM;
    }
}

GreenVariant parse_green(const std::string& s) {
    if (s == "continuous") return GreenVariant::continuous;
    if (s == "mueller") return GreenVariant::mueller;
    if (s == "willot") return GreenVariant::willot;
    throw CLI::ValidationError("--green", "expected continuous|mueller|willot");
}

StopCriterion parse_criterion(const std::string& s) {
    if (s == "div") return StopCriterion::div;
    if (s == "diff") return StopCriterion::diff;
    if (s == "coef") return StopCriterion::coef;
    throw CLI::ValidationError("--criterion", "expected div|diff|coef");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

const char* winner_label(Winner w) {
    switch (w) {
        case Winner::B: return "B";
        case Winner::MS: return "MS";
        case Winner::EM: return "EM";
        case Winner::Tie: return "TIE";
        case Winner::Undefined: return "UNDEF";
    }
    return "UNDEF";
}

int cmd_solve(const MicroSpec& micro_spec, std::optional<int> n, SolveScheme scheme,
              GreenVariant green, double z, StopCriterion criterion, double tol, int max_iter,
              const std::string& out_path) {
    const Microstructure micro = realize_micro(micro_spec, n);
    const SolveReport report = solve(scheme, micro, z, green, criterion, tol, max_iter);
    auto out = open_out(out_path);
    out << "k,delta1,delta2,coef_indicator,z_eff\n";
    for (const SolveRow& r : report.rows)
        out << r.k << "," << fmt(r.delta1) << "," << fmt(r.delta2) << "," << fmt(r.coef) << ","
            << fmt(r.z_eff) << "\n";
    if (!out) throw std::runtime_error("write failed for " + out_path);
    return report.status == SolveStatus::diverged ? kExitDiverged : kExitOk;
}

int cmd_series(const MicroSpec& micro_spec, std::optional<int> n, SolveScheme scheme,
               GreenVariant green, int K, bool compare_analytic, std::optional<int> knee_against,
               const std::string& out_path) {
    if (scheme == SolveScheme::EMPolarization)
        throw CLI::ValidationError("--scheme", "series supports b|ms|em");
    const SchemeKind kind = kind_of(scheme);
    const Microstructure micro = realize_micro(micro_spec, n);
    const SeriesCoefficients num = numerical_coefficients(kind, micro, green, K);

    std::optional<SeriesCoefficients> exact;
    if (compare_analytic) {
        if (micro_spec.from_file || micro_spec.kind != MicroKind::obnosov)
            throw CLI::ValidationError("--compare-analytic",
                                       "analytic series exist for --micro obnosov only");
        exact = analytic_obnosov(kind, K);
    }
    std::optional<KneeReport> knee;
    if (knee_against) {
        if (micro_spec.from_file)
            throw CLI::ValidationError("--knee-against",
                                       "requires a generated microstructure");
        if (*knee_against == *n)
            throw CLI::ValidationError("--knee-against", "resolutions must differ");
        const Microstructure other = generate(micro_spec.kind, *knee_against);
        const SeriesCoefficients num2 = numerical_coefficients(kind, other, green, K);
        knee = (*knee_against > *n) ? knee_detect(num, num2) : knee_detect(num2, num);
    }

    auto out = open_out(out_path);
    out << "k,b_num,d_num";
    if (exact) out << ",b_exact,d_exact,rel_dev";
    out << "\n";
    for (int k = 0; k <= K; ++k) {
        out << k << "," << fmt(num.b[k]) << "," << fmt(num.d[k]);
        if (exact) {
            const double dev = std::abs(num.d[k] - exact->d[k]) /
                               std::max(std::abs(exact->d[k]), 2.2204460492503131e-16);
            out << "," << fmt(exact->b[k]) << "," << fmt(exact->d[k]) << "," << fmt(dev);
        }
        out << "\n";
    }
    if (knee) out << "knee," << knee->K << "\n";
    if (!out) throw std::runtime_error("write failed for " + out_path);
    return kExitOk;
}

int cmd_ratemap(double beta_min, double beta_max, double z_min, double z_max, int grid,
                const std::string& out_path) {
    if (grid < 1) throw CLI::ValidationError("--grid", "must be >= 1");
    if (!(beta_min >= 1.0)) throw CLI::ValidationError("--beta-min", "beta must be >= 1");
    if (!(beta_max >= beta_min) || !(z_max >= z_min))
        throw CLI::ValidationError("--beta-max/--z-max", "axis bounds out of order");
    std::vector<double> betas(grid), zs(grid);
    for (int i = 0; i < grid; ++i) {
        const double f = grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1);
        betas[i] = beta_min + f * (beta_max - beta_min);
        zs[i] = z_min + f * (z_max - z_min);
    }
    const std::vector<RateCell> cells = best_scheme_grid(betas, zs);
    auto out = open_out(out_path);
    out << "beta,z,r_b,r_ms,r_em,winner\n";
    for (const RateCell& c : cells)
        out << fmt(c.beta) << "," << fmt(c.z) << "," << fmt(c.r.r_b) << "," << fmt(c.r.r_ms)
            << "," << fmt(c.r.r_em) << "," << winner_label(c.winner) << "\n";
    if (!out) throw std::runtime_error("write failed for " + out_path);
    return kExitOk;
}

int cmd_micro(const std::string& kind_str, int n, const std::string& out_path) {
    const MicroSpec spec = parse_micro(kind_str);
    if (spec.from_file) throw CLI::ValidationError("--kind", "expects a generated kind");
    save_pgm(generate(spec.kind, n), out_path);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"2D periodic two-phase conductivity: FFT fixed-point schemes, "
                 "Neumann-series coefficients and convergence-rate maps"};
    app.require_subcommand(1);

    std::string micro_str, scheme_str = "ms", green_str = "continuous", crit_str = "div";
    std::string out_path, kind_str;
    std::optional<int> n, knee_against;
    double z = 1.0, tol = 1e-8;
    int max_iter = 1000, K = 10, grid = 11;
    double beta_min = 1.0, beta_max = 10.0, z_min = 0.0, z_max = 10.0;
    bool compare_analytic = false;

    CLI::App* solve_cmd = app.add_subcommand("solve", "run a fixed-point scheme");
    solve_cmd->add_option("--micro", micro_str)->required();
    solve_cmd->add_option("--n", n);
    solve_cmd->add_option("--scheme", scheme_str);
    solve_cmd->add_option("--green", green_str);
    solve_cmd->add_option("--z", z)->required();
    solve_cmd->add_option("--criterion", crit_str);
    solve_cmd->add_option("--tol", tol);
    solve_cmd->add_option("--max-iter", max_iter);
    solve_cmd->add_option("--out", out_path)->required();

    CLI::App* series_cmd = app.add_subcommand("series", "extract series coefficients");
    series_cmd->add_option("--micro", micro_str)->required();
    series_cmd->add_option("--n", n);
    series_cmd->add_option("--scheme", scheme_str);
    series_cmd->add_option("--green", green_str);
    series_cmd->add_option("--k", K)->required();
    series_cmd->add_flag("--compare-analytic", compare_analytic);
    series_cmd->add_option("--knee-against", knee_against);
    series_cmd->add_option("--out", out_path)->required();

    CLI::App* ratemap_cmd = app.add_subcommand("ratemap", "theoretical rate map");
    ratemap_cmd->add_option("--beta-min", beta_min)->required();
    ratemap_cmd->add_option("--beta-max", beta_max)->required();
    ratemap_cmd->add_option("--z-min", z_min)->required();
    ratemap_cmd->add_option("--z-max", z_max)->required();
    ratemap_cmd->add_option("--grid", grid)->required();
    ratemap_cmd->add_option("--out", out_path)->required();

    CLI::App* micro_cmd = app.add_subcommand("micro", "write a microstructure as PGM");
    micro_cmd->add_option("--kind", kind_str)->required();
    micro_cmd->add_option("--n", n)->required();
    micro_cmd->add_option("--out", out_path)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e);
            return kExitOk;
        }
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return kExitUsage;
    }

    try {
        if (*solve_cmd)
            return cmd_solve(parse_micro(micro_str), n, parse_scheme(scheme_str),
                             parse_green(green_str), z, parse_criterion(crit_str), tol, max_iter,
                             out_path);
        if (*series_cmd)
            return cmd_series(parse_micro(micro_str), n, parse_scheme(scheme_str),
                              parse_green(green_str), K, compare_analytic, knee_against,
                              out_path);
        if (*ratemap_cmd)
            return cmd_ratemap(beta_min, beta_max, z_min, z_max, grid, out_path);
        if (*micro_cmd) return cmd_micro(kind_str, *n, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace homog::cli

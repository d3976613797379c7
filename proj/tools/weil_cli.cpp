// Command-line surface for the library: identity verification runs, bound and
// positivity sweeps, and zero-list management with optional caching.
//
// Exit codes: 0 success, 2 parse/config error, 3 quadrature failure,
// 4 identity residual above tolerance.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "weil/report.hpp"

namespace fs = std::filesystem;
using namespace weil;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "bump:R,C" (log radius R, log center C) or "convsq:R,C" for the
// multiplicative convolution square of such a bump.
TestFunction parse_testfn(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw UsageError("test function spec must be bump:R,C or convsq:R,C");
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    auto comma = args.find(',');
    if (comma == std::string::npos)
        throw UsageError("test function spec needs two numbers: " + spec);
    double r, c;
    try {
        r = std::stod(args.substr(0, comma));
        c = std::stod(args.substr(comma + 1));
    } catch (const std::exception&) {
        throw UsageError("bad number in test function spec: " + spec);
    }
    if (kind == "bump") return bump(r, c);
    if (kind == "convsq") return mult_convolve(bump(r, c));
    throw UsageError("unknown test function kind: " + kind);
}

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
        return cplx(std::stod(s.substr(0, comma)),
                    std::stod(s.substr(comma + 1)));
    } catch (const std::exception&) {
        throw UsageError("bad complex number (want re,im): " + s);
    }
}

// "compute:T_MAX" or "file:PATH"; computed lists go through the cache when a
// cache directory is configured.
ZeroList resolve_zeros(const std::string& source, const std::string& lfunction,
                       const std::string& cache_dir) {
    auto colon = source.find(':');
    if (colon == std::string::npos)
        throw UsageError("zero source must be compute:T_MAX or file:PATH");
    const std::string kind = source.substr(0, colon);
    const std::string arg = source.substr(colon + 1);
    if (kind == "file") {
        if (!fs::exists(arg)) throw UsageError("missing zeros file: " + arg);
        return load_zeros(arg, lfunction);
    }
    if (kind != "compute")
        throw UsageError("unknown zero source kind: " + kind);
    double t_max;
    try {
        t_max = std::stod(arg);
    } catch (const std::exception&) {
        throw UsageError("bad t_max in zero source: " + arg);
    }
    const std::string cache = zeros_cache_path(lfunction, cache_dir);
    if (!cache.empty() && fs::exists(cache)) {
        ZeroList zl = load_zeros(cache, lfunction);
        if (zl.height_limit >= t_max) {
            auto cut = std::upper_bound(zl.gammas.begin(), zl.gammas.end(),
                                        t_max);
            zl.gammas.erase(cut, zl.gammas.end());
            zl.height_limit = t_max;
            return zl;
        }
    }
    ZeroList zl = compute_zeros(lfunction, t_max);
    if (!cache.empty()) {
        fs::create_directories(fs::path(cache).parent_path());
        save_zeros(zl, cache);
    }
    return zl;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty() || output_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw UsageError("cannot write output file: " + output_path);
    out << text << "\n";
}

struct CommonOpts {
    std::string g_spec = "bump:2.0794415416798357,0";
    std::string zeros_source = "compute:200";
    std::string cache_dir;
    std::string output;
    std::string format = "json";
    double tolerance = 1e-5;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--g", o.g_spec,
                    "test function, bump:R,C or convsq:R,C (log coords)");
    cmd->add_option("--zeros", o.zeros_source,
                    "zero source, compute:T_MAX or file:PATH");
    cmd->add_option("--zeros-cache", o.cache_dir, "zero cache directory")
        ->envname("APP_CACHE");
    cmd->add_option("--output,-o", o.output, "output path (default stdout)");
    cmd->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tolerance", o.tolerance, "residual tolerance")
        ->check(CLI::PositiveNumber);
}

int finish_report(ExplicitFormulaReport rep, double lhs, const CommonOpts& o,
                  const char* lhs_name) {
    rep.residual = lhs - rep.rhs_total;
    std::string text = o.format == "csv"
                           ? report_csv_header() + "\n" + report_to_csv(rep)
                           : report_to_json(rep);
    emit(text, o.output);
    std::fprintf(stderr, "%s = %.12g, explicit side = %.12g, residual = %.3g\n",
                 lhs_name, lhs, rep.rhs_total, rep.residual);
    return std::fabs(rep.residual) <= o.tolerance ? 0 : 4;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> v;
    if (n < 1) throw UsageError("grid needs at least one point");
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : (double)i / (n - 1);
        v.push_back(lo * std::pow(hi / lo, f));
    }
    return v;
}

} // namespace

// Pull "--config FILE" out of the raw arguments and splice the file's flat
// key=value pairs in as trailing "--key value" tokens.  Combined with a
// take-first option policy this yields the precedence
// flags > config file > environment > defaults.
static std::vector<std::string> splice_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config") {
            if (std::next(it) == args.end())
                throw UsageError("--config needs a file argument");
            config_path = *std::next(it);
            it = args.erase(it, it + 2);
        } else if (it->rfind("--config=", 0) == 0) {
            config_path = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file: " + config_path);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=', first);
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(ln) +
                             " is not key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(first, eq - first));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError("config line " + std::to_string(ln) +
                                          " has an empty key");
        args.push_back("--" + key);
        if (!val.empty()) args.push_back(val);
    }
    return args;
}

int main(int argc, char** argv) {
    CLI::App app{"explicit-formula and spectral-identity verification"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeFirst);
    app.require_subcommand(1);

    // verify ...
    auto* verify = app.add_subcommand("verify", "run an identity check");
    verify->require_subcommand(1);

    auto* vz = verify->add_subcommand(
        "zeta-explicit", "continuous-spectrum term vs explicit side for zeta");
    CommonOpts vz_o;
    vz_o.tolerance = 1e-6;
    std::string vz_variant = "resolved";
    add_common(vz, vz_o);
    vz->add_option("--variant", vz_variant, "resolved or as-stated")
        ->check(CLI::IsMember({"resolved", "as-stated"}));

    auto* vh = verify->add_subcommand(
        "hecke-explicit", "zero sum vs explicit side for a Dirichlet character");
    CommonOpts vh_o;
    std::string vh_char = "4.1";
    add_common(vh, vh_o);
    vh->add_option("--character", vh_char, "character id q.index");

    auto* vg = verify->add_subcommand(
        "gauss-weil", "principal-value integral against -2 psi(s)");
    std::string vg_s = "1.5,1.0";
    double vg_cutoff = 1000.0, vg_tol = 1e-8;
    std::string vg_output;
    vg->add_option("--s", vg_s, "evaluation point re,im (Re s > 0)");
    vg->add_option("--cutoff", vg_cutoff, "regularization cutoff");
    vg->add_option("--tolerance", vg_tol, "agreement tolerance");
    vg->add_option("--output,-o", vg_output, "output path");

    auto* vm = verify->add_subcommand(
        "maass-selberg", "truncated inner product closed form and its limit");
    std::string vm_s = "0.3,2.0";
    double vm_T = 2.0, vm_tol = 1e-6;
    std::string vm_output;
    vm->add_option("--s", vm_s, "spectral parameter re,im");
    vm->add_option("--T", vm_T, "truncation height")->check(CLI::PositiveNumber);
    vm->add_option("--tolerance", vm_tol, "limit-consistency tolerance");
    vm->add_option("--output,-o", vm_output, "output path");

    // bound-sweep
    auto* bs = app.add_subcommand(
        "bound-sweep", "zero-sum lower bound over a log-spaced T grid");
    CommonOpts bs_o;
    bs_o.g_spec = "convsq:0.3,0";
    bs_o.format = "csv";
    bs_o.zeros_source = "compute:100";
    double bs_tmin = 0.9, bs_tmax = 100.0;
    int bs_count = 20;
    add_common(bs, bs_o);
    bs->add_option("--t-min", bs_tmin, "smallest T (> sqrt(3)/2)");
    bs->add_option("--t-max", bs_tmax, "largest T");
    bs->add_option("--t-count", bs_count, "grid size");

    // weil-positivity
    auto* wp = app.add_subcommand(
        "weil-positivity", "functional scan over additive support widths");
    CommonOpts wp_o;
    wp_o.format = "csv";
    double wp_smin = 0.1, wp_smax = std::log(2.0);
    int wp_count = 8;
    add_common(wp, wp_o);
    wp->add_option("--support-min", wp_smin, "smallest half-width");
    wp->add_option("--support-max", wp_smax, "largest half-width");
    wp->add_option("--support-count", wp_count, "grid size");

    // zeros ...
    auto* zc = app.add_subcommand("zeros", "zero-list management");
    zc->require_subcommand(1);
    std::string z_lfun = "zeta", z_cache, z_path;
    double z_tmax = 100.0;
    auto* zcompute = zc->add_subcommand("compute", "scan for zeros");
    zcompute->add_option("--lfunction", z_lfun, "zeta or dirichlet:q.index");
    zcompute->add_option("--t-max", z_tmax, "height limit (<= 1000)");
    zcompute->add_option("--zeros-cache", z_cache, "cache directory")
        ->envname("APP_CACHE");
    zcompute->add_option("--output,-o", z_path, "write the list here too");
    auto* zimport = zc->add_subcommand("import", "validate a file into cache");
    zimport->add_option("path", z_path, "zero file")->required();
    zimport->add_option("--lfunction", z_lfun);
    zimport->add_option("--zeros-cache", z_cache)->envname("APP_CACHE");
    auto* zexport = zc->add_subcommand("export", "write cached zeros to a file");
    zexport->add_option("path", z_path, "destination")->required();
    zexport->add_option("--lfunction", z_lfun);
    zexport->add_option("--zeros-cache", z_cache)->envname("APP_CACHE");

    // Environment-configurable working precision.
    if (const char* p = std::getenv("APP_PRECISION")) {
        try {
            precision().target_abs_error = std::stod(p);
        } catch (const std::exception&) {
            std::fprintf(stderr, "bad APP_PRECISION value: %s\n", p);
            return 2;
        }
    }

    try {
        auto args = splice_config(argc, argv);
        std::reverse(args.begin(), args.end()); // CLI11 takes reversed args
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (vz->parsed()) {
            const TestFunction g = parse_testfn(vz_o.g_spec);
            const ZeroList zl =
                resolve_zeros(vz_o.zeros_source, "zeta", vz_o.cache_dir);
            const double lhs = spectral_lhs_zeta(g);
            const auto variant = vz_variant == "resolved"
                                     ? FormulaVariant::thm_1_1_sign_resolved
                                     : FormulaVariant::thm_1_1_as_stated;
            return finish_report(weil_rhs_zeta(g, variant, zl), lhs, vz_o,
                                 "spectral term");
        }
        if (vh->parsed()) {
            const TestFunction g = parse_testfn(vh_o.g_spec);
            const auto chi = DirichletCharacter::parse(vh_char);
            const std::string id = "dirichlet:" + chi.id();
            const ZeroList zl =
                resolve_zeros(vh_o.zeros_source, id, vh_o.cache_dir);
            const auto zs = zero_sum(zl, g, (double)chi.modulus());
            auto rep = weil_rhs(g, chi);
            rep.zero_sum_side = zs.value;
            rep.zero_sum_tail = zs.tail_bound;
            return finish_report(rep, zs.value, vh_o, "zero sum");
        }
        if (vg->parsed()) {
            const cplx s = parse_complex(vg_s);
            const cplx pv = gauss_weil_pv(s, vg_cutoff);
            const cplx target = -2.0 * digamma(s);
            const double diff = std::abs(pv - target);
            JsonObject o;
            o.field("schema_version", schema_version)
                .field("s_re", s.real())
                .field("s_im", s.imag())
                .field("pv_re", pv.real())
                .field("pv_im", pv.imag())
                .field("minus_two_digamma_re", target.real())
                .field("minus_two_digamma_im", target.imag())
                .field("difference", diff);
            emit(o.str(), vg_output);
            return diff <= vg_tol ? 0 : 4;
        }
        if (vm->parsed()) {
            const cplx s = parse_complex(vm_s);
            const cplx lim = msr_limit(s, vm_T);
            double diffs[2];
            int i = 0;
            for (double h : {1e-3, 1e-4}) {
                MsrScalarState st{s + h, -s, 1.0, 1.0, vm_T};
                diffs[i++] = std::abs(msr_closed_form(st) - lim);
            }
            const double ratio = diffs[0] / diffs[1];
            JsonObject o;
            o.field("schema_version", schema_version)
                .field("s_re", s.real())
                .field("s_im", s.imag())
                .field("T", vm_T)
                .field("limit_re", lim.real())
                .field("limit_im", lim.imag())
                .field("diff_h_1e3", diffs[0])
                .field("diff_h_1e4", diffs[1])
                .field("convergence_ratio", ratio);
            emit(o.str(), vm_output);
            // First-order convergence: diff(h) = c h + O(h^2), so shrinking h
            // tenfold must shrink the diff tenfold up to the quadratic tail.
            const double slope_defect = std::abs(diffs[1] - diffs[0] / 10.0);
            const bool ok =
                slope_defect <= vm_tol * std::max(1.0, std::abs(lim)) &&
                ratio >= 8.0 && ratio <= 12.0;
            return ok ? 0 : 4;
        }
        if (bs->parsed()) {
            if (!(bs_tmin > std::sqrt(3.0) / 2.0))
                throw UsageError("bound-sweep: t-min must exceed sqrt(3)/2");
            const TestFunction g = parse_testfn(bs_o.g_spec);
            const ZeroList zl =
                resolve_zeros(bs_o.zeros_source, "zeta", bs_o.cache_dir);
            const auto zs = zero_sum(zl, g);
            std::ostringstream os;
            os << sweep_csv_header("T");
            double min_slack = std::numeric_limits<double>::infinity();
            for (double T : log_spaced(bs_tmin, bs_tmax, bs_count)) {
                SweepRow row;
                row.parameter = T;
                row.bound = lower_bound_rhs(g, T);
                row.zero_sum = zs.value;
                row.slack = zs.value - row.bound;
                row.detail = g.label;
                min_slack = std::min(min_slack, row.slack);
                os << "\n" << sweep_row_to_csv(row);
            }
            if (bs_o.format == "json") {
                JsonObject o;
                o.field("schema_version", schema_version)
                    .field("g_label", g.label)
                    .field("min_slack", min_slack)
                    .field("grid_size", bs_count);
                emit(o.str(), bs_o.output);
            } else {
                emit(os.str(), bs_o.output);
            }
            std::fprintf(stderr, "min slack over T grid: %.3g\n", min_slack);
            return min_slack >= -bs_o.tolerance ? 0 : 4;
        }
        if (wp->parsed()) {
            const ZeroList zl =
                resolve_zeros(wp_o.zeros_source, "zeta", wp_o.cache_dir);
            const auto table = positivity_scan(
                log_spaced(wp_smin, wp_smax, wp_count), zl);
            std::ostringstream os;
            os << sweep_csv_header("support");
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& row : table) {
                SweepRow r;
                r.parameter = row.support;
                r.bound = row.min_value;
                r.zero_sum = row.min_value;
                r.slack = row.min_value + row.tail_bound;
                r.detail = row.shape;
                worst = std::min(worst, r.slack);
                os << "\n" << sweep_row_to_csv(r);
            }
            if (wp_o.format == "json") {
                JsonObject o;
                o.field("schema_version", schema_version)
                    .field("min_value_plus_tail", worst)
                    .field("grid_size", (int)table.size());
                emit(o.str(), wp_o.output);
            } else {
                emit(os.str(), wp_o.output);
            }
            return worst >= -wp_o.tolerance ? 0 : 4;
        }
        if (zcompute->parsed()) {
            const ZeroList zl = resolve_zeros("compute:" + std::to_string(z_tmax),
                                              z_lfun, z_cache);
            if (!z_path.empty()) save_zeros(zl, z_path);
            std::printf("%zu zeros of %s up to height %g\n", zl.gammas.size(),
                        z_lfun.c_str(), z_tmax);
            return 0;
        }
        if (zimport->parsed()) {
            const ZeroList zl = load_zeros(z_path, z_lfun);
            const std::string cache = zeros_cache_path(z_lfun, z_cache);
            if (cache.empty())
                throw UsageError("import needs a cache directory "
                                 "(--zeros-cache or APP_CACHE)");
            fs::create_directories(fs::path(cache).parent_path());
            save_zeros(zl, cache);
            std::printf("imported %zu zeros for %s\n", zl.gammas.size(),
                        z_lfun.c_str());
            return 0;
        }
        if (zexport->parsed()) {
            const std::string cache = zeros_cache_path(z_lfun, z_cache);
            if (cache.empty() || !fs::exists(cache))
                throw UsageError("no cached zeros for " + z_lfun);
            const ZeroList zl = load_zeros(cache, z_lfun);
            save_zeros(zl, z_path);
            std::printf("exported %zu zeros for %s\n", zl.gammas.size(),
                        z_lfun.c_str());
            return 0;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ZeroFileError& e) {
        std::fprintf(stderr, "zero file error (line %d): %s\n", e.line,
                     e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const QuadratureError& e) {
        std::fprintf(stderr, "quadrature failure: %s\n", e.what());
        return 3;
    } catch (const LineIntegralError& e) {
        std::fprintf(stderr, "quadrature failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}

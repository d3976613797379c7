#pragma once
// Critical-line zeros of zeta and Dirichlet L-functions: sign-change scan of
// the rotated completed function, bisection refinement, count certification
// against the Riemann-von Mangoldt estimate, plain-text zero files, and sums
// of a Mellin transform over zeros with a measured tail bound.

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "characters.hpp"
#include "testfn.hpp"

namespace weil {

enum class ZeroSource { file, computed };

struct ZeroList {
    std::vector<double> gammas; // ascending positive imaginary parts
    std::string lfunction_id;   // "zeta" or "dirichlet:q.index"
    double height_limit = 0.0;
    ZeroSource source = ZeroSource::computed;
    bool rh_verified = true;
};

struct ZeroFileError : std::runtime_error {
    int line;
    ZeroFileError(const std::string& msg, int ln)
        : std::runtime_error(msg), line(ln) {}
};

struct ZeroScanError : std::runtime_error {
    double interval_lo, interval_hi;
    ZeroScanError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), interval_lo(lo), interval_hi(hi) {}
};

struct InsufficientHeightError : std::runtime_error {
    double needed_height;
    InsufficientHeightError(const std::string& msg, double h)
        : std::runtime_error(msg), needed_height(h) {}
};

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, so that
// Z(t) = e^{i theta(t)} zeta(1/2 + it) is real.
inline double riemann_siegel_theta(double t) {
    return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(M_PI);
}

inline double hardy_z(double t) {
    const cplx rot = std::exp(cplx(0.0, riemann_siegel_theta(t)));
    return (rot * zeta(cplx(0.5, t))).real();
}

// Expected zero count of zeta with 0 < gamma <= T.
inline double rvM_count(double T) {
    return T / (2.0 * M_PI) * std::log(T / (2.0 * M_PI * std::exp(1.0))) +
           7.0 / 8.0;
}

// Re[ W(chi)^{-1/2} * completed L(1/2 + it) ], real for primitive chi.
// Only the unimodular phase of the gamma factor is kept, so the rotated
// function neither decays nor underflows at large t.
class RotatedDirichlet {
public:
    explicit RotatedDirichlet(const DirichletCharacter& chi)
        : chi_(chi), rot_(std::pow(chi.root_number(), cplx(-0.5, 0.0))) {}
    double operator()(double t) const {
        const double a = chi_.parity_exponent();
        const double phase =
            0.5 * t * std::log((double)chi_.modulus() / M_PI) +
            log_gamma(cplx(0.25 + 0.5 * a, 0.5 * t)).imag();
        return (rot_ * std::exp(cplx(0.0, phase)) * chi_.L(cplx(0.5, t)))
            .real();
    }

private:
    DirichletCharacter chi_;
    cplx rot_;
};

namespace detail {

inline std::vector<double> scan_sign_changes(
    const std::function<double(double)>& Z, double t_lo, double t_hi,
    double step) {
    std::vector<double> out;
    double t = t_lo, zt = Z(t);
    while (t < t_hi) {
        const double tn = std::min(t + step, t_hi);
        const double zn = Z(tn);
        if ((zt < 0.0) != (zn < 0.0)) {
            double a = t, b = tn, za = zt;
            while (b - a > 1e-10) {
                const double m = 0.5 * (a + b), zm = Z(m);
                if ((za < 0.0) != (zm < 0.0)) b = m;
                else { a = m; za = zm; }
            }
            out.push_back(0.5 * (a + b));
        }
        t = tn;
        zt = zn;
    }
    return out;
}

} // namespace detail

// Scan for zeta zeros in (0, t_max], certify the count against the
// Riemann-von Mangoldt estimate, halving the grid step on a mismatch.
inline ZeroList compute_zeros_zeta(double t_max) {
    if (!(t_max > 0.0 && t_max <= 1000.0))
        throw std::invalid_argument("compute_zeros: need 0 < t_max <= 1000");
    ZeroList zl;
    zl.lfunction_id = "zeta";
    zl.height_limit = t_max;
    zl.source = ZeroSource::computed;
    if (t_max < 14.0) return zl;
    double step = 0.05;
    for (int attempt = 0; attempt < 3; ++attempt) {
        zl.gammas = detail::scan_sign_changes(hardy_z, 10.0, t_max, step);
        const double expected = rvM_count(t_max);
        if (std::fabs((double)zl.gammas.size() - expected) <= 1.0) return zl;
        step *= 0.5;
    }
    throw ZeroScanError("zero count disagrees with the counting estimate",
                        10.0, t_max);
}

inline ZeroList compute_zeros_dirichlet(const DirichletCharacter& chi,
                                        double t_max) {
    if (!(t_max > 0.0 && t_max <= 1000.0))
        throw std::invalid_argument("compute_zeros: need 0 < t_max <= 1000");
    if (chi.is_principal()) {
        ZeroList zl = compute_zeros_zeta(t_max);
        zl.lfunction_id = "dirichlet:" + chi.id();
        return zl;
    }
    if (!chi.is_primitive())
        throw std::invalid_argument(
            "compute_zeros: imprimitive character; use its primitive inducer");
    ZeroList zl;
    zl.lfunction_id = "dirichlet:" + chi.id();
    zl.height_limit = t_max;
    zl.source = ZeroSource::computed;
    RotatedDirichlet Z(chi);
    zl.gammas = detail::scan_sign_changes(Z, 1e-4, t_max, 0.025);
    return zl;
}

inline ZeroList compute_zeros(const std::string& lfunction_id, double t_max) {
    if (lfunction_id == "zeta") return compute_zeros_zeta(t_max);
    const std::string prefix = "dirichlet:";
    if (lfunction_id.rfind(prefix, 0) == 0) {
        auto chi = DirichletCharacter::parse(lfunction_id.substr(prefix.size()));
        return compute_zeros_dirichlet(chi, t_max);
    }
    throw std::invalid_argument("unknown L-function id: " + lfunction_id);
}

// Plain text, one ascending gamma per line; '#' starts a comment line.
inline ZeroList load_zeros(const std::string& path,
                           const std::string& lfunction_id) {
    std::ifstream in(path);
    if (!in) throw ZeroFileError("cannot open zero file: " + path, 0);
    ZeroList zl;
    zl.lfunction_id = lfunction_id;
    zl.source = ZeroSource::file;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t pos = 0;
        double g;
        try {
            g = std::stod(line.substr(first), &pos);
        } catch (const std::exception&) {
            throw ZeroFileError("malformed zero entry", ln);
        }
        const auto rest = line.find_first_not_of(" \t\r", first + pos);
        if (rest != std::string::npos) throw ZeroFileError("trailing junk", ln);
        if (!zl.gammas.empty() && g <= zl.gammas.back())
            throw ZeroFileError("zeros not strictly ascending", ln);
        zl.gammas.push_back(g);
    }
    zl.height_limit = zl.gammas.empty() ? 0.0 : zl.gammas.back();
    return zl;
}

inline void save_zeros(const ZeroList& zl, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write zero file: " + path);
    out << "# " << zl.lfunction_id << " zeros to height " << zl.height_limit
        << "\n";
    char buf[40];
    for (double g : zl.gammas) {
        std::snprintf(buf, sizeof buf, "%.10f\n", g);
        out << buf;
    }
}

struct ZeroSumResult {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Sum over zeros rho = 1/2 +- i gamma of the Mellin transform of g:
// sum_rho ghat(rho) = sum_{gamma>0} 2 Re ghat(1/2 + i gamma) for real g.
// The tail beyond height_limit is bounded by the zero density
// (1/pi) log(q t / 2 pi) per unit height times a sampled decay envelope of
// |ghat(1/2+it)| (factor 3 headroom on the envelope samples).
inline ZeroSumResult zero_sum(const ZeroList& zl, const TestFunction& g,
                              double modulus = 1.0) {
    if (!zl.rh_verified)
        throw std::invalid_argument("zero_sum: list not verified on-line");
    ZeroSumResult r;
    for (double gamma : zl.gammas)
        r.value += 2.0 * mellin(g, cplx(0.5, gamma)).value.real();

    const double H = std::max(zl.height_limit, 10.0);
    double tail = 0.0;
    double prev = std::abs(mellin(g, cplx(0.5, H)).value);
    for (double t = H + 1.0; t <= 3.0 * H + 60.0; t += 1.0) {
        const double cur = std::abs(mellin(g, cplx(0.5, t)).value);
        const double env = 3.0 * std::max(prev, cur);
        tail += env / M_PI *
                std::log(std::max(2.0, modulus * t / (2.0 * M_PI)));
        prev = cur;
        if (env < 1e-18) break;
    }
    r.tail_bound = tail;
    return r;
}

// Cache path $APP_CACHE/zeros/<lfunction_id>.txt (empty if no cache dir set).
inline std::string zeros_cache_path(const std::string& lfunction_id,
                                    const std::string& cache_dir_override = "") {
    std::string dir = cache_dir_override;
    if (dir.empty()) {
        const char* env = std::getenv("APP_CACHE");
        if (env) dir = env;
    }
    if (dir.empty()) return "";
    return dir + "/zeros/" + lfunction_id + ".txt";
}

} // namespace weil

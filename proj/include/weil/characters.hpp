#pragma once
// Dirichlet characters mod q built from an explicit basis of the unit group
// (CRT over prime powers; odd p^k gets a primitive root, 2^e >= 8 splits as
// <-1> x <5>), plus the associated L-function, conductor/primitivity tests,
// Gauss sum, root number, and a von Mangoldt helper.

#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "special.hpp"

namespace weil {

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::uint64_t primitive_root(std::uint64_t pk, std::uint64_t p) {
    // primitive root mod p^k for odd p: lift one mod p
    const std::uint64_t phi_p = p - 1;
    auto pf = factorize(phi_p);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto& [q, e] : pf)
            if (pow_mod(g, phi_p / q, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (pk == p) return g;
    // g or g + p is a primitive root mod p^k
    if (pow_mod(g, phi_p, p * p) == 1) g += p;
    return g % pk;
}

} // namespace detail

// A character chi mod q, represented by its value table chi(a) for a in [0, q).
class DirichletCharacter {
public:
    DirichletCharacter(std::uint64_t modulus, std::uint64_t index)
        : q_(modulus), index_(index) {
        if (modulus == 0) throw std::invalid_argument("character: modulus 0");
        build();
    }

    static DirichletCharacter parse(const std::string& id) {
        auto dot = id.find('.');
        if (dot == std::string::npos)
            throw std::invalid_argument("character id must look like 'q.index'");
        std::size_t p1 = 0, p2 = 0;
        const std::uint64_t q = std::stoull(id.substr(0, dot), &p1);
        const std::uint64_t idx = std::stoull(id.substr(dot + 1), &p2);
        if (p1 != dot || dot + 1 + p2 != id.size())
            throw std::invalid_argument("character id must look like 'q.index'");
        return DirichletCharacter(q, idx);
    }

    std::uint64_t modulus() const { return q_; }
    std::uint64_t index() const { return index_; }
    std::uint64_t group_order() const { return phi_; }
    std::string id() const {
        std::ostringstream os;
        os << q_ << '.' << index_;
        return os.str();
    }

    cplx operator()(std::uint64_t n) const { return table_[n % q_]; }

    bool is_principal() const { return index_ == 0 || phi_ == 1; }

    // chi(-1) = +1 (even) or -1 (odd); the "a" in the gamma factor.
    int parity_exponent() const {
        return table_[(q_ - 1) % q_].real() < 0.0 ? 1 : 0;
    }

    bool is_real() const {
        for (auto& v : table_)
            if (std::fabs(v.imag()) > 1e-12) return false;
        return true;
    }

    // Smallest d | q such that chi(a) = 1 whenever a = 1 (mod d), gcd(a,q) = 1.
    std::uint64_t conductor() const {
        for (std::uint64_t d = 1; d <= q_; ++d) {
            if (q_ % d) continue;
            bool ok = true;
            for (std::uint64_t a = 1; a < q_ && ok; ++a) {
                if (std::gcd(a, q_) != 1 || a % d != 1 % d) continue;
                if (std::abs(table_[a] - cplx(1.0, 0.0)) > 1e-9) ok = false;
            }
            if (ok) return d;
        }
        return q_;
    }

    bool is_primitive() const { return conductor() == q_; }

    cplx gauss_sum() const {
        cplx s{};
        for (std::uint64_t a = 0; a < q_; ++a)
            s += table_[a] *
                 std::exp(cplx(0.0, 2.0 * M_PI * (double)a / (double)q_));
        return s;
    }

    // Root number W(chi) = tau(chi) / (i^a sqrt(q)) for primitive chi.
    cplx root_number() const {
        const cplx ia = parity_exponent() ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
        return gauss_sum() / (ia * std::sqrt((double)q_));
    }

    // L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q); throws at the s = 1 pole
    // of the principal character.
    cplx L(cplx s) const {
        if (q_ == 1) return zeta(s);
        if (s == cplx(1.0, 0.0)) {
            if (is_principal())
                throw PoleError("L: principal character has a pole at s = 1");
            // the 1/(s-1) poles of the Hurwitz terms cancel in the character
            // sum; what remains is the finite part -psi(a/q)
            cplx sum{};
            for (std::uint64_t a = 1; a < q_; ++a) {
                if (std::gcd(a, q_) != 1) continue;
                sum -= table_[a] * digamma(cplx((double)a / q_, 0.0));
            }
            return sum / (double)q_;
        }
        cplx sum{};
        for (std::uint64_t a = 1; a < q_; ++a) {
            if (std::gcd(a, q_) != 1) continue;
            sum += table_[a] * hurwitz_zeta_with_deriv(s, (double)a / q_).value;
        }
        return std::exp(-s * std::log((double)q_)) * sum;
    }

    // Completed L-function (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi).
    cplx completed_L(cplx s) const {
        const double a = parity_exponent();
        return std::exp(0.5 * (s + a) * std::log((double)q_ / M_PI) +
                        log_gamma(0.5 * (s + a))) *
               L(s);
    }

private:
    void build() {
        table_.assign(q_, cplx{});
        if (q_ == 1) {
            table_[0] = 1.0;
            phi_ = 1;
            return;
        }
        // Basis of (Z/q)^*: per odd p^k one generator of order phi(p^k);
        // for 2^e >= 8 the pair (-1 mod 2^e, 5 mod 2^e) of orders (2, 2^{e-2}).
        struct Gen { std::uint64_t g; std::uint64_t order; };
        std::vector<Gen> gens;
        for (auto& [p, e] : detail::factorize(q_)) {
            std::uint64_t pk = 1;
            for (int i = 0; i < e; ++i) pk *= p;
            const std::uint64_t cof = q_ / pk;
            // lift x mod pk to q_: x + pk * t = 1 mod cof via CRT
            auto lift = [&](std::uint64_t x) -> std::uint64_t {
                if (cof == 1) return x % q_;
                for (std::uint64_t t = 0;; ++t) {
                    const std::uint64_t cand = (x % pk) + pk * t;
                    if (cand % cof == 1 % cof) return cand % q_;
                }
            };
            if (p == 2) {
                if (e == 1) continue;
                if (e == 2) {
                    gens.push_back({lift(3), 2});
                } else {
                    gens.push_back({lift(pk - 1), 2});
                    gens.push_back({lift(5), pk / 4});
                }
            } else {
                const std::uint64_t phi_pk = pk / p * (p - 1);
                gens.push_back({lift(detail::primitive_root(pk, p)), phi_pk});
            }
        }
        phi_ = 1;
        for (auto& g : gens) phi_ *= g.order;
        if (index_ >= std::max<std::uint64_t>(phi_, 1))
            throw std::invalid_argument("character index out of range");

        // Decompose index in mixed radix over generator orders; digit k gives
        // chi(g_k) = exp(2 pi i d_k / order_k).
        std::vector<std::uint64_t> digit(gens.size());
        {
            std::uint64_t r = index_;
            for (std::size_t k = 0; k < gens.size(); ++k) {
                digit[k] = r % gens[k].order;
                r /= gens[k].order;
            }
        }
        // Fill the table by walking the group: enumerate exponent vectors.
        std::vector<std::uint64_t> expo(gens.size(), 0);
        for (;;) {
            std::uint64_t a = 1;
            double ang = 0.0;
            for (std::size_t k = 0; k < gens.size(); ++k) {
                a = a * detail::pow_mod(gens[k].g, expo[k], q_) % q_;
                ang += 2.0 * M_PI * (double)digit[k] * (double)expo[k] /
                       (double)gens[k].order;
            }
            table_[a] = std::exp(cplx(0.0, ang));
            std::size_t k = 0;
            while (k < gens.size() && ++expo[k] == gens[k].order)
                expo[k++] = 0;
            if (k == gens.size()) break;
        }
        if (gens.empty()) table_[1 % q_] = 1.0; // q = 2
    }

    std::uint64_t q_, index_, phi_ = 1;
    std::vector<cplx> table_;
};

// Lambda(n): log p when n = p^k, else 0 (trial division).
inline double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? std::log((double)p) : 0.0;
        }
    }
    return std::log((double)n);
}

} // namespace weil

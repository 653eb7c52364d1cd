#include "drsim/zeta.hpp"

#include <cmath>
#include <stdexcept>

#include "drsim/kahan.hpp"

namespace drsim {
namespace {

// Euler-Maclaurin estimate of sum_{k=m+1..inf} k^(-beta) for beta > 1:
//   integral + boundary + Bernoulli corrections. With m >= 1000 the first
//   omitted term is below 1e-20 for every beta of interest.
double zeta_tail(double beta, double m) {
    const double im = 1.0 / m;
    const double mb = std::pow(m, -beta);
    double tail = m * mb / (beta - 1.0);                         // m^(1-beta)/(beta-1)
    tail -= 0.5 * mb;                                            // -m^(-beta)/2
    tail += beta * mb * im / 12.0;                               // +beta*m^(-beta-1)/12
    tail -= beta * (beta + 1.0) * (beta + 2.0) * mb * im * im * im / 720.0;
    return tail;
}

// Same expansion for a finite segment sum_{k=m+1..K} k^(-beta); valid for all
// beta > 0 since the divergent pieces cancel between the two endpoints.
double segment_tail(double beta, double m, double k) {
    auto endpoint = [beta](double x) {
        const double ix = 1.0 / x;
        const double xb = std::pow(x, -beta);
        double v = -0.5 * xb;
        v += beta * xb * ix / 12.0;
        v -= beta * (beta + 1.0) * (beta + 2.0) * xb * ix * ix * ix / 720.0;
        return v;
    };
    double integral;
    if (std::fabs(beta - 1.0) < 1e-12) {
        integral = std::log(k / m);
    } else {
        integral = (std::pow(m, 1.0 - beta) - std::pow(k, 1.0 - beta)) / (beta - 1.0);
    }
    // sum_{m+1..K} = integral_m^K + [corr(m) - corr(K)] where corr collects the
    // boundary and Bernoulli terms of the tail expansion at each endpoint.
    return integral + endpoint(m) - endpoint(k);
}

constexpr std::uint64_t kDirectCap = 1000;

}  // namespace

double riemann_zeta(double beta) {
    if (!(beta > 1.0 + 1e-9)) {
        throw std::domain_error("riemann_zeta: requires beta > 1");
    }
    KahanSum acc;
    std::uint64_t k = 1;
    for (; k <= kDirectCap; ++k) {
        const double term = std::pow(static_cast<double>(k), -beta);
        acc.add(term);
        if (k > 8 && term < 1e-16 * acc.sum) break;
    }
    const double m = static_cast<double>(k > kDirectCap ? kDirectCap : k);
    return acc.sum + zeta_tail(beta, m);
}

double truncated_zeta(double beta, std::uint64_t kmax) {
    if (!(beta > 0.0)) throw std::domain_error("truncated_zeta: requires beta > 0");
    if (kmax < 1) throw std::domain_error("truncated_zeta: requires kmax >= 1");
    KahanSum acc;
    const std::uint64_t direct = kmax < kDirectCap ? kmax : kDirectCap;
    for (std::uint64_t k = 1; k <= direct; ++k) {
        acc.add(std::pow(static_cast<double>(k), -beta));
    }
    if (kmax <= kDirectCap) return acc.sum;
    return acc.sum + segment_tail(beta, static_cast<double>(kDirectCap),
                                  static_cast<double>(kmax));
}

std::optional<double> try_inverse_zeta(double target) {
    constexpr double kLo = 1.0 + 1e-6;
    constexpr double kHi = 60.0;
    if (!(target > 1.0)) return std::nullopt;
    if (target > riemann_zeta(kLo) || target < riemann_zeta(kHi)) return std::nullopt;
    double lo = kLo, hi = kHi;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (riemann_zeta(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double inverse_zeta(double target) {
    if (!(target > 1.0)) {
        throw std::domain_error("inverse_zeta: target must exceed 1 (range of zeta)");
    }
    const auto result = try_inverse_zeta(target);
    if (!result) {
        throw std::range_error("inverse_zeta: target outside bracket (1+1e-6, 60]");
    }
    return *result;
}

std::optional<double> try_inverse_truncated_zeta(double target, std::uint64_t kmax) {
    constexpr double kLo = 1e-6;
    constexpr double kHi = 60.0;
    if (!(target > 1.0)) return std::nullopt;
    if (target > truncated_zeta(kLo, kmax) || target < truncated_zeta(kHi, kmax)) {
        return std::nullopt;
    }
    double lo = kLo, hi = kHi;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (truncated_zeta(mid, kmax) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace drsim

#pragma once

// Shared fixtures and independent oracles for the test suites. The
// oracles here (naive double-sum intensity, adaptive quadrature of the
// compensator, finite differences) deliberately avoid the recursions
// used by the library so they can validate them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hawkes/event_sequence.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/model.hpp"

namespace support {

inline hawkes::HawkesModel demo_model() {
    hawkes::HawkesModel m;
    m.k = 2;
    m.mu = {0.1, 0.2};
    m.alpha = {0.5, 0.1, 0.2, 0.6};
    m.beta = {0.3, 0.2, 0.8, 1.0};
    return m;
}

inline hawkes::HawkesModel poisson_model(double mu1, double mu2) {
    hawkes::HawkesModel m;
    m.k = 2;
    m.mu = {mu1, mu2};
    m.alpha = {0.0, 0.0, 0.0, 0.0};
    m.beta = {1.0, 1.0, 1.0, 1.0};
    return m;
}

// posterior-mean parameters of the reference bivariate fit, used as a
// realistic generating truth in recovery experiments
inline hawkes::HawkesModel reference_model() {
    hawkes::HawkesModel m;
    m.k = 2;
    m.mu = {0.004, 0.003};
    m.alpha = {0.139, 0.343, 0.018, 0.039};
    m.beta = {1.226, 0.050, 0.621, 0.963};
    return m;
}

// O(n^2) double-sum evaluation of lambda_i(t), the oracle for the
// recursive path.
inline double naive_intensity(const hawkes::HawkesModel& m, const hawkes::EventSequence& seq,
                              double t, int i) {
    double lam = m.mu[static_cast<std::size_t>(i)];
    for (std::size_t e = 0; e < seq.size(); ++e) {
        if (seq.times[e] >= t) break;
        const int j = seq.marks[e];
        lam += m.a(i, j) * m.b(i, j) * std::exp(-m.b(i, j) * (t - seq.times[e]));
    }
    return lam;
}

inline std::vector<double> naive_intensities_at_events(const hawkes::HawkesModel& m,
                                                       const hawkes::EventSequence& seq) {
    std::vector<double> out(seq.size());
    for (std::size_t e = 0; e < seq.size(); ++e) {
        out[e] = naive_intensity(m, seq, seq.times[e], seq.marks[e]);
    }
    return out;
}

// adaptive Simpson on one smooth piece
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, eps * 0.5, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, eps * 0.5, depth - 1);
}

// Quadrature of sum_i lambda_i (or one type) over [0, T], split at the
// event times where the integrand has kinks. Oracle for the closed-form
// compensator.
inline double quadrature_compensator(const hawkes::HawkesModel& m, const hawkes::EventSequence& seq,
                                     double upto, int type /* -1: all types */,
                                     double eps = 1e-10) {
    const auto integrand = [&](double t) {
        if (type >= 0) return naive_intensity(m, seq, t, type);
        double s = 0.0;
        for (int i = 0; i < m.k; ++i) s += naive_intensity(m, seq, t, i);
        return s;
    };
    std::vector<double> knots{0.0};
    for (double t : seq.times) {
        if (t < upto) knots.push_back(t);
    }
    knots.push_back(upto);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
        const double a = knots[s], b = knots[s + 1];
        if (b <= a) continue;
        // open the left endpoint a hair so the event at a is in-history
        const double a2 = std::nextafter(a, b);
        const double fa = integrand(a2), fb = integrand(b), fm = integrand(0.5 * (a2 + b));
        total += adaptive_simpson(integrand, a2, b, fa, fm, fb, eps, 40);
    }
    return total;
}

// stable random model with moderate rates, for property tests
inline hawkes::HawkesModel random_stable_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    hawkes::HawkesModel m;
    m.k = 2;
    while (true) {
        m.mu = {0.02 + 0.3 * u(rng), 0.02 + 0.3 * u(rng)};
        m.alpha = {0.6 * u(rng), 0.6 * u(rng), 0.6 * u(rng), 0.6 * u(rng)};
        m.beta = {0.05 + 2.0 * u(rng), 0.05 + 2.0 * u(rng), 0.05 + 2.0 * u(rng),
                  0.05 + 2.0 * u(rng)};
        if (m.spectral_radius() < 0.9) return m;
    }
}

// random event sequence (not itself Hawkes-distributed; fine for
// algebraic identities)
inline hawkes::EventSequence random_sequence(std::mt19937_64& rng, std::size_t n, double horizon) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> times(n);
    for (auto& t : times) t = u(rng) * horizon;
    std::sort(times.begin(), times.end());
    hawkes::EventSequence seq;
    seq.horizon = horizon;
    for (double t : times) {
        if (!seq.times.empty() && t <= seq.times.back()) continue;
        seq.times.push_back(t);
        seq.marks.push_back(u(rng) < 0.5 ? 0 : 1);
    }
    return seq;
}

// central finite differences of the transformed-scale log posterior
inline std::vector<double> fd_grad_transformed(const hawkes::HawkesModel& model,
                                               const hawkes::PriorSpec& priors,
                                               const hawkes::EventSequence& seq,
                                               hawkes::LikelihoodMode mode, double h = 1e-5) {
    const auto theta0 = hawkes::to_transformed(model.pack(), model.k);
    std::vector<double> g(theta0.size());
    for (std::size_t p = 0; p < theta0.size(); ++p) {
        auto up = theta0, dn = theta0;
        up[p] += h;
        dn[p] -= h;
        const double fu = hawkes::log_posterior(
            hawkes::HawkesModel::unpack(hawkes::from_transformed(up, model.k), model.k), priors,
            seq, mode);
        const double fd = hawkes::log_posterior(
            hawkes::HawkesModel::unpack(hawkes::from_transformed(dn, model.k), model.k), priors,
            seq, mode);
        g[p] = (fu - fd) / (2.0 * h);
    }
    return g;
}

}  // namespace support

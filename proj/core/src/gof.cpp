#include "hawkes/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

// Two-sided small-sample KS critical values (Miller 1956), alpha = 0.05
// and 0.01, n = 1..34. Above that the asymptotic c/sqrt(n) is accurate.
constexpr double kKs95[34] = {
    0.97500, 0.84189, 0.70760, 0.62394, 0.56328, 0.51926, 0.48342, 0.45427, 0.43001,
    0.40925, 0.39122, 0.37543, 0.36143, 0.34890, 0.33760, 0.32733, 0.31796, 0.30936,
    0.30143, 0.29408, 0.28724, 0.28087, 0.27490, 0.26931, 0.26404, 0.25907, 0.25438,
    0.24993, 0.24571, 0.24170, 0.23788, 0.23424, 0.23076, 0.22743};
constexpr double kKs99[34] = {
    0.99500, 0.92929, 0.82900, 0.73424, 0.66853, 0.61661, 0.57581, 0.54179, 0.51332,
    0.48893, 0.46770, 0.44905, 0.43247, 0.41762, 0.40420, 0.39201, 0.38086, 0.37062,
    0.36117, 0.35241, 0.34427, 0.33666, 0.32954, 0.32286, 0.31657, 0.31064, 0.30502,
    0.29971, 0.29466, 0.28987, 0.28530, 0.28094, 0.27677, 0.27279};

// Kolmogorov CDF K(c) = 1 - 2 sum (-1)^{k-1} exp(-2 k^2 c^2); inverted
// by bisection to get the asymptotic critical coefficient.
double kolmogorov_cdf(double c) {
    if (c <= 0.0) return 0.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * c * c);
        s += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return 1.0 - 2.0 * s;
}

double kolmogorov_critical(double level) {
    double lo = 0.2, hi = 4.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double compensator(const HawkesModel& model, const EventSequence& seq, double t, int type) {
    if (type < 0 || type >= model.k) {
        throw std::invalid_argument("compensator: type index out of range");
    }
    double lam_int = model.mu[static_cast<std::size_t>(type)] * t;
    for (std::size_t e = 0; e < seq.size() && seq.times[e] < t; ++e) {
        const int j = seq.marks[e];
        lam_int += model.a(type, j) *
                   (1.0 - std::exp(-model.b(type, j) * (t - seq.times[e])));
    }
    return lam_int;
}

std::vector<double> rescale_times(const HawkesModel& model, const EventSequence& seq, int type) {
    model.validate();
    seq.validate(model.k);
    if (type < 0 || type >= model.k) {
        throw std::invalid_argument("rescale_times: type index out of range");
    }
    const int k = model.k;
    std::vector<double> taus;
    // running kernel integral per source type: sum over past type-j
    // events of (1 - exp(-b_{type,j} (t - t_l))), kept incrementally via
    // the same decayed-exponential state as the intensity recursion
    std::vector<double> S(static_cast<std::size_t>(k), 0.0);  // sum exp(-b (t - t_l))
    std::vector<double> n_seen(static_cast<std::size_t>(k), 0.0);
    double prev_t = 0.0;
    for (std::size_t e = 0; e < seq.size(); ++e) {
        const double t = seq.times[e];
        const double dt = t - prev_t;
        if (dt > 0.0) {
            for (int j = 0; j < k; ++j) {
                S[static_cast<std::size_t>(j)] *= std::exp(-model.b(type, j) * dt);
            }
        }
        if (seq.marks[e] == type) {
            double tau = model.mu[static_cast<std::size_t>(type)] * t;
            for (int j = 0; j < k; ++j) {
                tau += model.a(type, j) *
                       (n_seen[static_cast<std::size_t>(j)] - S[static_cast<std::size_t>(j)]);
            }
            taus.push_back(tau);
        }
        const int m = seq.marks[e];
        S[static_cast<std::size_t>(m)] += 1.0;
        n_seen[static_cast<std::size_t>(m)] += 1.0;
        prev_t = t;
    }
    return taus;
}

double ks_band(std::size_t n, double level) {
    if (n < 1) throw std::invalid_argument("ks_band: n must be >= 1");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("ks_band: invalid level");
    if (n < 35) {
        if (std::abs(level - 0.95) < 1e-12) return kKs95[n - 1];
        if (std::abs(level - 0.99) < 1e-12) return kKs99[n - 1];
    }
    return kolmogorov_critical(level) / std::sqrt(static_cast<double>(n));
}

std::vector<GofReport> gof_report(const HawkesModel& model, const EventSequence& seq,
                                  double level) {
    model.validate();
    seq.validate(model.k);
    std::vector<GofReport> reports;
    for (int type = 0; type < model.k; ++type) {
        GofReport rep;
        rep.type = type;
        rep.taus = rescale_times(model, seq, type);
        rep.n = rep.taus.size();
        rep.tau_horizon = compensator(model, seq, seq.horizon, type);
        if (rep.n == 0) {
            rep.is_empty = true;
            reports.push_back(std::move(rep));
            continue;
        }
        const double n = static_cast<double>(rep.n);
        rep.deviation.resize(rep.n);
        rep.u.resize(rep.n);
        rep.normalized_deviation.resize(rep.n);
        double ks = 0.0;
        for (std::size_t i = 0; i < rep.n; ++i) {
            const double count = static_cast<double>(i + 1);
            rep.deviation[i] = count - rep.taus[i];
            const double u = rep.taus[i] / rep.tau_horizon;
            rep.u[i] = u;
            rep.normalized_deviation[i] = count / n - u;
            // both step corners of the empirical CDF
            ks = std::max({ks, std::abs(count / n - u), std::abs(u - static_cast<double>(i) / n)});
        }
        rep.ks_statistic = ks;
        rep.band_halfwidth = ks_band(rep.n, level);
        rep.within_band = rep.ks_statistic <= rep.band_halfwidth;
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace hawkes

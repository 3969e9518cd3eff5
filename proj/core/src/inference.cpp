#include "hawkes/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hawkes/simulate.hpp"  // stream_seed

namespace hawkes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kThetaBound = 25.0;  // box on transformed coordinates

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

void clamp_box(std::vector<double>& theta) {
    for (double& x : theta) x = std::clamp(x, -kThetaBound, kThetaBound);
}

// Objective on transformed coordinates. For MAP the target is the
// natural-scale log-posterior (no Jacobian: the stationary point is the
// natural-scale mode since the transform scales are positive). The
// sampler adds the Jacobian itself.
struct TransformedPosterior {
    const EventSequence& seq;
    const PriorSpec& priors;
    LikelihoodMode mode;
    int k;

    double value(const std::vector<double>& theta) const {
        const auto natural = from_transformed(theta, k);
        return log_posterior(HawkesModel::unpack(natural, k), priors, seq, mode);
    }

    // gradient of value() w.r.t. theta; only call where value is finite
    std::vector<double> gradient(const std::vector<double>& theta) const {
        const auto natural = from_transformed(theta, k);
        auto g = grad_log_posterior(HawkesModel::unpack(natural, k), priors, seq, mode);
        const auto scales = transform_scales(natural, k);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] *= scales[i];
        return g;
    }
};

// Projected gradient: zero components that push outside the box at a
// clamped coordinate (matters only in degenerate no-data fits).
std::vector<double> projected(const std::vector<double>& theta, std::vector<double> g) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if ((theta[i] <= -kThetaBound && g[i] < 0.0) || (theta[i] >= kThetaBound && g[i] > 0.0)) {
            g[i] = 0.0;
        }
    }
    return g;
}

struct BfgsOutcome {
    std::vector<double> theta;
    double value = kNegInf;
    double gradient_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

// BFGS ascent with Armijo backtracking on transformed coordinates.
BfgsOutcome bfgs_maximize(const TransformedPosterior& f, std::vector<double> theta,
                          int max_iterations, double tol) {
    const std::size_t d = theta.size();
    BfgsOutcome out;
    clamp_box(theta);
    double fv = f.value(theta);
    if (!std::isfinite(fv)) {
        out.theta = theta;
        return out;
    }
    std::vector<double> g = f.gradient(theta);

    // inverse-Hessian approximation, identity start
    std::vector<std::vector<double>> H(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) H[i][i] = 1.0;

    int iter = 0;
    int stalls = 0;
    for (; iter < max_iterations; ++iter) {
        const auto pg = projected(theta, g);
        if (norm2(pg) < tol) break;

        std::vector<double> p(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) p[i] += H[i][j] * g[j];
        }
        double slope = dot(p, g);
        if (slope <= 0.0) {  // reset on loss of ascent direction
            p = g;
            slope = dot(g, g);
            for (std::size_t i = 0; i < d; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
            }
        }

        double step = 1.0;
        std::vector<double> theta_new(d);
        double f_new = kNegInf;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < d; ++i) theta_new[i] = theta[i] + step * p[i];
            clamp_box(theta_new);
            f_new = f.value(theta_new);
            if (std::isfinite(f_new) && f_new >= fv + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        // stop once accepted steps no longer make measurable progress
        if (f_new - fv < 1e-13 * (1.0 + std::abs(fv))) {
            if (++stalls >= 5) {
                theta.swap(theta_new);
                fv = f_new;
                g = f.gradient(theta);
                ++iter;
                break;
            }
        } else {
            stalls = 0;
        }

        std::vector<double> g_new = f.gradient(theta_new);
        std::vector<double> s(d), y(d);
        for (std::size_t i = 0; i < d; ++i) {
            s[i] = theta_new[i] - theta[i];
            y[i] = g[i] - g_new[i];  // ascent: y of the negated objective
        }
        const double sy = dot(s, y);
        if (sy > 1e-12) {
            // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
            std::vector<double> Hy(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) Hy[i] += H[i][j] * y[j];
            }
            const double yHy = dot(y, Hy);
            const double c = (1.0 + yHy / sy) / sy;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    H[i][j] += c * s[i] * s[j] - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
                }
            }
        }
        theta.swap(theta_new);
        fv = f_new;
        g.swap(g_new);
    }

    out.theta = std::move(theta);
    out.value = fv;
    out.gradient_norm = norm2(projected(out.theta, g));
    out.converged = out.gradient_norm < tol;
    out.iterations = iter;
    return out;
}

std::vector<double> draw_from_priors(std::mt19937_64& rng, const PriorSpec& priors, int k) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<double> nat(HawkesModel::param_count(k));
        for (std::size_t i = 0; i < nk; ++i) {
            nat[i] = priors.mu_scale * std::tan(0.5 * std::numbers::pi * unif(rng));
        }
        for (std::size_t i = 0; i < kk; ++i) nat[nk + i] = unif(rng);
        for (std::size_t i = 0; i < kk; ++i) {
            nat[nk + kk + i] = priors.beta_scale * std::abs(normal(rng));
        }
        HawkesModel m = HawkesModel::unpack(nat, k);
        bool ok = m.spectral_radius() < 1.0;
        for (double v : nat) {
            if (!(v > 0.0) || !std::isfinite(v)) ok = false;
        }
        for (std::size_t i = 0; i < kk; ++i) {
            if (nat[nk + i] >= 1.0) ok = false;
        }
        if (ok) return nat;
    }
    throw std::runtime_error("draw_from_priors: no stable draw in 200 attempts");
}

// crude moment start: empirical rates, mild excitation
std::vector<double> heuristic_start(const EventSequence& seq, int k) {
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    std::vector<double> nat(HawkesModel::param_count(k));
    const auto counts = seq.counts(k);
    const double T = std::max(seq.horizon, 1.0);
    for (std::size_t i = 0; i < nk; ++i) {
        nat[i] = std::max(static_cast<double>(counts[i]) / T, 1e-6);
    }
    for (std::size_t i = 0; i < kk; ++i) nat[nk + i] = 0.1;
    for (std::size_t i = 0; i < kk; ++i) nat[nk + kk + i] = 1.0;
    return nat;
}

// lower-triangular Cholesky with diagonal jitter fallback
bool cholesky(const std::vector<std::vector<double>>& A, std::vector<std::vector<double>>& L) {
    const std::size_t d = A.size();
    L.assign(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = A[i][j];
            for (std::size_t c = 0; c < j; ++c) s -= L[i][c] * L[j][c];
            if (i == j) {
                if (s <= 0.0) return false;
                L[i][i] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    return true;
}

}  // namespace

MapResult fit_map(const EventSequence& seq, const PriorSpec& priors, const MapOptions& opts) {
    const int k = 2;  // dataset marks fix the type count
    seq.validate(k);
    TransformedPosterior f{seq, priors, opts.mode, k};

    MapResult result;
    const auto counts = seq.counts(k);
    for (int i = 0; i < k; ++i) {
        if (counts[static_cast<std::size_t>(i)] == 0) {
            result.warnings.push_back("type " + std::to_string(i + 1) +
                                      " has no events; mu shrinks toward the prior mode and its "
                                      "alpha column is unidentified");
        } else if (counts[static_cast<std::size_t>(i)] < 5) {
            result.warnings.push_back("type " + std::to_string(i + 1) +
                                      " has fewer than 5 events; alpha column for this source "
                                      "type is low-information");
        }
    }

    std::mt19937_64 rng(stream_seed(opts.seed, 0x4d4150ull));  // independent of sampler streams
    BfgsOutcome best;
    for (int s = 0; s < std::max(opts.n_starts, 1); ++s) {
        std::vector<double> start_nat =
            (s == 0) ? heuristic_start(seq, k) : draw_from_priors(rng, priors, k);
        auto outcome = bfgs_maximize(f, to_transformed(start_nat, k), opts.max_iterations,
                                     opts.gradient_tolerance);
        result.starts.push_back(
            {outcome.converged, outcome.value, outcome.gradient_norm, outcome.iterations});
        if (outcome.value > best.value ||
            (outcome.value == best.value && outcome.gradient_norm < best.gradient_norm)) {
            best = std::move(outcome);
        }
    }
    if (!std::isfinite(best.value)) {
        throw std::runtime_error("fit_map: all starts diverged");
    }
    result.model = HawkesModel::unpack(from_transformed(best.theta, 2), 2);
    result.log_posterior = best.value;
    result.gradient_norm = best.gradient_norm;
    result.converged = best.converged;
    if (!best.converged) {
        result.warnings.push_back("best start did not reach the gradient tolerance (norm " +
                                  std::to_string(best.gradient_norm) + ")");
    }
    return result;
}

namespace {

struct ChainRun {
    std::vector<std::vector<double>> draws;  // natural
    std::vector<double> log_posts;
    double acceptance = 0.0;
};

ChainRun run_chain(const TransformedPosterior& f, std::vector<double> theta, int n_warmup,
                   int n_keep, double target_acceptance, std::uint64_t seed) {
    const std::size_t d = theta.size();
    const int k = f.k;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const auto target = [&](const std::vector<double>& th, double& lp_natural) {
        lp_natural = f.value(th);
        if (!std::isfinite(lp_natural)) return kNegInf;
        return lp_natural + log_transform_jacobian(from_transformed(th, k), k);
    };

    double lp_nat;
    double t_curr = target(theta, lp_nat);
    if (!std::isfinite(t_curr)) throw std::runtime_error("run_chain: infeasible initial state");

    double log_scale = std::log(2.38 / std::sqrt(static_cast<double>(d)));
    std::vector<double> mean = theta;
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) cov[i][i] = 0.01;
    std::vector<std::vector<double>> chol;
    cholesky(cov, chol);

    // Covariance is estimated only after the first quarter of warmup so
    // the early adaptation transient does not inflate it.
    const int cov_collect_from = n_warmup / 4;
    constexpr long kCovMinObs = 150;
    long n_obs = 0;
    bool cov_installed = false;
    std::vector<std::vector<double>> m2(d, std::vector<double>(d, 0.0));

    ChainRun out;
    out.draws.reserve(static_cast<std::size_t>(n_keep));
    out.log_posts.reserve(static_cast<std::size_t>(n_keep));
    long accepted_kept = 0;

    std::vector<double> z(d), prop(d);
    const int total = n_warmup + n_keep;
    for (int iter = 0; iter < total; ++iter) {
        for (std::size_t i = 0; i < d; ++i) z[i] = normal(rng);
        const double s = std::exp(log_scale);
        for (std::size_t i = 0; i < d; ++i) {
            double step = 0.0;
            for (std::size_t j = 0; j <= i; ++j) step += chol[i][j] * z[j];
            prop[i] = theta[i] + s * step;
        }
        double lp_nat_prop;
        const double t_prop = target(prop, lp_nat_prop);
        const double log_ratio = t_prop - t_curr;
        const double acc_prob = std::isfinite(t_prop) ? std::min(1.0, std::exp(std::min(0.0, log_ratio))) : 0.0;
        const bool accept = unif(rng) < acc_prob;
        if (accept) {
            theta = prop;
            t_curr = t_prop;
            lp_nat = lp_nat_prop;
        }

        if (iter < n_warmup) {
            const double gamma = 2.0 / std::pow(iter + 1.0, 0.6);
            log_scale += gamma * (acc_prob - target_acceptance);
            log_scale = std::clamp(log_scale, std::log(1e-4), std::log(10.0));
            if (iter >= cov_collect_from) {
                // Welford update of the empirical covariance
                ++n_obs;
                std::vector<double> delta(d);
                for (std::size_t i = 0; i < d; ++i) delta[i] = theta[i] - mean[i];
                for (std::size_t i = 0; i < d; ++i) {
                    mean[i] += delta[i] / static_cast<double>(n_obs);
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double d2i = theta[i] - mean[i];
                    for (std::size_t j = 0; j <= i; ++j) {
                        m2[i][j] += delta[j] * d2i;
                    }
                }
                if (n_obs >= kCovMinObs && iter % 50 == 49) {
                    std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
                    for (std::size_t i = 0; i < d; ++i) {
                        for (std::size_t j = 0; j <= i; ++j) {
                            c[i][j] = c[j][i] = m2[i][j] / static_cast<double>(n_obs - 1);
                        }
                        c[i][i] += 1e-6;
                    }
                    std::vector<std::vector<double>> l;
                    if (cholesky(c, l)) {
                        chol = std::move(l);
                        if (!cov_installed) {
                            // step geometry changed; restart the scalar scale
                            log_scale = std::log(2.38 / std::sqrt(static_cast<double>(d)));
                            cov_installed = true;
                        }
                    }
                }
            }
        } else {
            if (accept) ++accepted_kept;
            out.draws.push_back(from_transformed(theta, k));
            out.log_posts.push_back(lp_nat);
        }
    }
    out.acceptance = n_keep > 0 ? static_cast<double>(accepted_kept) / n_keep : 0.0;
    return out;
}

}  // namespace

PosteriorChain sample_posterior(const EventSequence& seq, const PriorSpec& priors,
                                const SampleOptions& opts) {
    const int k = 2;
    seq.validate(k);
    TransformedPosterior f{seq, priors, opts.mode, k};

    HawkesModel init;
    if (opts.init) {
        init = *opts.init;
        init.validate();
    } else {
        MapOptions mo;
        mo.seed = opts.seed;
        mo.mode = opts.mode;
        init = fit_map(seq, priors, mo).model;
    }
    const auto theta0 = to_transformed(init.pack(), k);

    PosteriorChain chain;
    chain.k = k;
    chain.mode = opts.mode;
    chain.n_warmup = opts.n_warmup;

    const int n_chains = std::max(opts.n_chains, 1);
    double acc_sum = 0.0;
    for (int c = 0; c < n_chains; ++c) {
        int n_keep = opts.n_samples / n_chains + (c < opts.n_samples % n_chains ? 1 : 0);
        ChainRun run = run_chain(f, theta0, opts.n_warmup, n_keep, opts.target_acceptance,
                                 stream_seed(opts.seed, 0x6368u + static_cast<std::uint64_t>(c)));
        chain.per_chain_acceptance.push_back(run.acceptance);
        acc_sum += run.acceptance * n_keep;
        for (auto& d : run.draws) chain.draws.push_back(std::move(d));
        for (double lp : run.log_posts) chain.log_posts.push_back(lp);
    }
    chain.n_kept = static_cast<int>(chain.draws.size());
    chain.acceptance_rate = chain.n_kept > 0 ? acc_sum / chain.n_kept : 0.0;
    for (double a : chain.per_chain_acceptance) {
        if (a < 0.05 || a > 0.6) {
            chain.diagnostics_ok = false;
            chain.warnings.push_back("chain acceptance rate " + std::to_string(a) +
                                     " outside [0.05, 0.6] after adaptation");
        }
    }
    const auto counts = seq.counts(k);
    for (int i = 0; i < k; ++i) {
        if (counts[static_cast<std::size_t>(i)] < 5) {
            chain.warnings.push_back("type " + std::to_string(i + 1) +
                                     " has fewer than 5 events; alpha column for this source "
                                     "type is low-information");
        }
    }
    return chain;
}

double quantile_type7(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile_type7: empty sample");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile_type7: p outside [0,1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

ParamSummary summarize(const PosteriorChain& chain) {
    if (chain.n_kept < 100) {
        throw std::invalid_argument("summarize: need at least 100 kept draws");
    }
    const int k = chain.k;
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    const std::size_t dim = HawkesModel::param_count(k);
    const auto names = HawkesModel::param_names(k);

    ParamSummary s;
    std::vector<double> column(chain.draws.size());
    for (std::size_t p = 0; p < dim; ++p) {
        double mean = 0.0;
        for (std::size_t r = 0; r < chain.draws.size(); ++r) {
            column[r] = chain.draws[r][p];
            mean += column[r];
        }
        mean /= static_cast<double>(column.size());
        s.params.push_back({names[p], mean, quantile_type7(column, 0.025),
                            quantile_type7(column, 0.975)});
    }
    // timescales per (i,j) channel from the beta block
    for (std::size_t c = 0; c < kk; ++c) {
        const std::size_t p = nk + kk + c;
        double mean_inv = 0.0;
        for (const auto& draw : chain.draws) mean_inv += 1.0 / draw[p];
        mean_inv /= static_cast<double>(chain.draws.size());
        s.timescale_mean_inverse.push_back(mean_inv);
        s.timescale_inverse_mean.push_back(1.0 / s.params[p].mean);
    }
    // significance convention: lower bound rounding to 0.000
    for (std::size_t c = 0; c < kk; ++c) {
        const double q = s.params[nk + c].q025;
        s.alpha_significant.push_back(std::round(q * 1000.0) >= 1.0);
    }
    return s;
}

}  // namespace hawkes

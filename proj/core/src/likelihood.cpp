#include "hawkes/likelihood.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool in_support(const HawkesModel& model) {
    for (double m : model.mu) {
        if (!std::isfinite(m) || m <= 0.0) return false;
    }
    // alpha = 0 is allowed (beta(1,1) density is 1 there); 1 is not
    for (double v : model.alpha) {
        if (!std::isfinite(v) || v < 0.0 || v >= 1.0) return false;
    }
    for (double v : model.beta) {
        if (!std::isfinite(v) || v <= 0.0) return false;
    }
    return model.spectral_radius() < 1.0;
}

// Event-sum term and its per-parameter derivatives, shared by both
// likelihood modes. Maintains per-channel running states
//   S_ij(t) = sum_{l: t_l < t, m_l = j} exp(-b_ij (t - t_l))
//   D_ij(t) = sum_{l: t_l < t, m_l = j} (t - t_l) exp(-b_ij (t - t_l))
struct EventSum {
    double value = 0.0;
    std::vector<double> d_mu, d_alpha, d_beta;  // k, k*k, k*k
};

EventSum event_sum(const HawkesModel& model, const EventSequence& seq, bool with_gradient) {
    const int k = model.k;
    const std::size_t kk = static_cast<std::size_t>(k) * k;
    EventSum acc;
    if (with_gradient) {
        acc.d_mu.assign(static_cast<std::size_t>(k), 0.0);
        acc.d_alpha.assign(kk, 0.0);
        acc.d_beta.assign(kk, 0.0);
    }
    std::vector<double> S(kk, 0.0), D(kk, 0.0);
    double prev_t = 0.0;
    for (std::size_t e = 0; e < seq.size(); ++e) {
        const double t = seq.times[e];
        const double dt = t - prev_t;
        if (dt > 0.0) {
            for (std::size_t c = 0; c < kk; ++c) {
                const double decay = std::exp(-model.beta[c] * dt);
                D[c] = decay * (D[c] + dt * S[c]);
                S[c] *= decay;
            }
        }
        const int m = seq.marks[e];
        double lam = model.mu[static_cast<std::size_t>(m)];
        for (int j = 0; j < k; ++j) {
            lam += model.a(m, j) * model.b(m, j) * S[static_cast<std::size_t>(m) * k + j];
        }
        acc.value += std::log(lam);
        if (with_gradient) {
            const double inv = 1.0 / lam;
            acc.d_mu[static_cast<std::size_t>(m)] += inv;
            for (int j = 0; j < k; ++j) {
                const std::size_t c = static_cast<std::size_t>(m) * k + j;
                acc.d_alpha[c] += model.beta[c] * S[c] * inv;
                acc.d_beta[c] += model.alpha[c] * (S[c] - model.beta[c] * D[c]) * inv;
            }
        }
        for (int i = 0; i < k; ++i) S[static_cast<std::size_t>(i) * k + m] += 1.0;
        prev_t = t;
    }
    return acc;
}

}  // namespace

double log_likelihood_exact(const HawkesModel& model, const EventSequence& seq) {
    model.validate();
    seq.validate(model.k);
    const int k = model.k;
    double ll = event_sum(model, seq, false).value;
    for (int j = 0; j < k; ++j) ll -= model.mu[static_cast<std::size_t>(j)] * seq.horizon;
    for (std::size_t e = 0; e < seq.size(); ++e) {
        const int j = seq.marks[e];
        const double rem = seq.horizon - seq.times[e];
        for (int i = 0; i < k; ++i) {
            ll -= model.a(i, j) * (1.0 - std::exp(-model.b(i, j) * rem));
        }
    }
    return ll;
}

double log_likelihood_facilitated(const HawkesModel& model, const EventSequence& seq) {
    model.validate();
    seq.validate(model.k);
    const int k = model.k;
    double ll = event_sum(model, seq, false).value;
    for (int j = 0; j < k; ++j) ll -= model.mu[static_cast<std::size_t>(j)] * seq.horizon;
    const auto n = seq.counts(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            ll -= model.a(i, j) * static_cast<double>(n[static_cast<std::size_t>(j)]);
        }
    }
    return ll;
}

double log_likelihood(const HawkesModel& model, const EventSequence& seq, LikelihoodMode mode) {
    return mode == LikelihoodMode::Exact ? log_likelihood_exact(model, seq)
                                         : log_likelihood_facilitated(model, seq);
}

double log_prior(const HawkesModel& model, const PriorSpec& priors) {
    if (!in_support(model)) return kNegInf;
    const double sigma = priors.beta_scale;
    const double gamma = priors.mu_scale;
    double lp = 0.0;
    // half-normal(0, sigma)
    const double hn_const = std::log(2.0) - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(sigma);
    for (double b : model.beta) lp += hn_const - 0.5 * (b / sigma) * (b / sigma);
    // alpha ~ uniform(0,1): zero inside the support
    // half-Cauchy(0, gamma)
    const double hc_const = std::log(2.0) - std::log(std::numbers::pi) - std::log(gamma);
    for (double m : model.mu) lp += hc_const - std::log1p((m / gamma) * (m / gamma));
    return lp;
}

double log_posterior(const HawkesModel& model, const PriorSpec& priors, const EventSequence& seq,
                     LikelihoodMode mode) {
    const double lp = log_prior(model, priors);
    if (lp == kNegInf) return kNegInf;
    return lp + log_likelihood(model, seq, mode);
}

std::vector<double> grad_log_posterior(const HawkesModel& model, const PriorSpec& priors,
                                       const EventSequence& seq, LikelihoodMode mode) {
    if (!in_support(model)) {
        throw std::domain_error("grad_log_posterior: model outside prior support");
    }
    for (double v : model.alpha) {
        if (v == 0.0) throw std::domain_error("grad_log_posterior: alpha on support boundary");
    }
    seq.validate(model.k);
    const int k = model.k;
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;

    EventSum es = event_sum(model, seq, true);
    std::vector<double> g_mu = std::move(es.d_mu);
    std::vector<double> g_alpha = std::move(es.d_alpha);
    std::vector<double> g_beta = std::move(es.d_beta);

    // compensator derivatives
    for (std::size_t j = 0; j < nk; ++j) g_mu[j] -= seq.horizon;
    if (mode == LikelihoodMode::Facilitated) {
        const auto n = seq.counts(k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                g_alpha[static_cast<std::size_t>(i) * k + j] -=
                    static_cast<double>(n[static_cast<std::size_t>(j)]);
            }
        }
    } else {
        for (std::size_t e = 0; e < seq.size(); ++e) {
            const int j = seq.marks[e];
            const double rem = seq.horizon - seq.times[e];
            for (int i = 0; i < k; ++i) {
                const std::size_t c = static_cast<std::size_t>(i) * k + j;
                const double decay = std::exp(-model.beta[c] * rem);
                g_alpha[c] -= 1.0 - decay;
                g_beta[c] -= model.alpha[c] * rem * decay;
            }
        }
    }

    // priors: d/db half-normal = -b/sigma^2; alpha uniform contributes 0;
    // d/dm half-Cauchy = -2m / (gamma^2 + m^2)
    const double sigma2 = priors.beta_scale * priors.beta_scale;
    const double gamma2 = priors.mu_scale * priors.mu_scale;
    for (std::size_t c = 0; c < kk; ++c) g_beta[c] -= model.beta[c] / sigma2;
    for (std::size_t j = 0; j < nk; ++j) {
        g_mu[j] -= 2.0 * model.mu[j] / (gamma2 + model.mu[j] * model.mu[j]);
    }

    std::vector<double> grad;
    grad.reserve(HawkesModel::param_count(k));
    grad.insert(grad.end(), g_mu.begin(), g_mu.end());
    grad.insert(grad.end(), g_alpha.begin(), g_alpha.end());
    grad.insert(grad.end(), g_beta.begin(), g_beta.end());
    return grad;
}

// ---- transformed coordinates ----

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }
double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

std::vector<double> to_transformed(const std::vector<double>& natural, int k) {
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    std::vector<double> theta(natural.size());
    for (std::size_t i = 0; i < nk; ++i) theta[i] = std::log(natural[i]);
    for (std::size_t i = nk; i < nk + kk; ++i) theta[i] = logit(natural[i]);
    for (std::size_t i = nk + kk; i < natural.size(); ++i) theta[i] = std::log(natural[i]);
    return theta;
}

std::vector<double> from_transformed(const std::vector<double>& theta, int k) {
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    std::vector<double> natural(theta.size());
    for (std::size_t i = 0; i < nk; ++i) natural[i] = std::exp(theta[i]);
    for (std::size_t i = nk; i < nk + kk; ++i) natural[i] = sigmoid(theta[i]);
    for (std::size_t i = nk + kk; i < theta.size(); ++i) natural[i] = std::exp(theta[i]);
    return natural;
}

std::vector<double> transform_scales(const std::vector<double>& natural, int k) {
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    std::vector<double> s(natural.size());
    for (std::size_t i = 0; i < nk; ++i) s[i] = natural[i];
    for (std::size_t i = nk; i < nk + kk; ++i) s[i] = natural[i] * (1.0 - natural[i]);
    for (std::size_t i = nk + kk; i < natural.size(); ++i) s[i] = natural[i];
    return s;
}

double log_transform_jacobian(const std::vector<double>& natural, int k) {
    double lj = 0.0;
    for (double s : transform_scales(natural, k)) lj += std::log(s);
    return lj;
}

std::vector<double> grad_log_transform_jacobian(const std::vector<double>& natural, int k) {
    // d/dtheta log|J|: 1 for log blocks, 1 - 2*alpha for the logit block
    const std::size_t nk = static_cast<std::size_t>(k);
    const std::size_t kk = nk * nk;
    std::vector<double> g(natural.size(), 1.0);
    for (std::size_t i = nk; i < nk + kk; ++i) g[i] = 1.0 - 2.0 * natural[i];
    return g;
}

}  // namespace hawkes

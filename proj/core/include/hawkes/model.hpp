#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hawkes {

/// Parameters of a K-type mutually-exciting process with exponential
/// kernels: baseline rates mu (events/day), reproduction matrix alpha
/// (expected direct offspring counts, each in [0,1)), decay matrix
/// beta (1/days). Matrices are row-major; element (i,j) is the effect
/// of a type-j event on the type-i intensity.
struct HawkesModel {
    int k = 2;
    std::vector<double> mu;     // k
    std::vector<double> alpha;  // k*k
    std::vector<double> beta;   // k*k

    double a(int i, int j) const { return alpha[static_cast<std::size_t>(i) * k + j]; }
    double b(int i, int j) const { return beta[static_cast<std::size_t>(i) * k + j]; }
    double& a(int i, int j) { return alpha[static_cast<std::size_t>(i) * k + j]; }
    double& b(int i, int j) { return beta[static_cast<std::size_t>(i) * k + j]; }

    /// Largest eigenvalue magnitude of alpha. Closed form for k = 2,
    /// power iteration otherwise (alpha is entrywise non-negative).
    double spectral_radius() const;

    bool stable() const { return spectral_radius() < 1.0; }

    /// Throws std::invalid_argument on non-finite entries, mu <= 0,
    /// beta <= 0, alpha outside [0,1), or size mismatches. Does not
    /// check stability; call stable() where it matters.
    void validate() const;

    /// Flattened parameter vector in canonical order:
    /// mu_1..mu_k, alpha row-major, beta row-major.
    std::vector<double> pack() const;
    static HawkesModel unpack(const std::vector<double>& theta, int k);
    static std::size_t param_count(int k) { return static_cast<std::size_t>(k) + 2ul * k * k; }

    /// Canonical parameter names matching the chain CSV header
    /// (mu1, mu2, a11, a12, a21, a22, b11, ...). 1-based indices.
    static std::vector<std::string> param_names(int k);
};

/// Branching-structure diagnostics of a stable model.
struct BranchingSummary {
    double spectral_radius = 0.0;
    std::vector<double> expected_rates;  // stationary rates (I - alpha)^{-1} mu, events/day
    std::vector<double> timescales;      // k*k row-major, 1/beta_ij in days
};

/// Throws std::domain_error when spectral radius >= 1.
BranchingSummary branching_summary(const HawkesModel& model);

}  // namespace hawkes

#include "hawkes/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hawkes {

double HawkesModel::spectral_radius() const {
    const int n = k;
    if (n == 1) return std::abs(alpha[0]);
    if (n == 2) {
        // eigenvalues of [[a,b],[c,d]]; bc >= 0 so they are real
        const double a0 = a(0, 0), b0 = a(0, 1), c0 = a(1, 0), d0 = a(1, 1);
        const double tr = a0 + d0;
        const double disc = std::sqrt((a0 - d0) * (a0 - d0) + 4.0 * b0 * c0);
        return std::max(std::abs(0.5 * (tr + disc)), std::abs(0.5 * (tr - disc)));
    }
    // power iteration; alpha is entrywise non-negative
    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> w(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) w[i] += a(i, j) * v[j];
        }
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (double& x : w) x /= norm;
        const double next = norm;
        v.swap(w);
        if (iter > 10 && std::abs(next - lambda) < 1e-13 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

void HawkesModel::validate() const {
    const std::size_t n = static_cast<std::size_t>(k);
    if (k < 1) throw std::invalid_argument("HawkesModel: k must be >= 1");
    if (mu.size() != n || alpha.size() != n * n || beta.size() != n * n) {
        throw std::invalid_argument("HawkesModel: parameter vector size mismatch");
    }
    for (double m : mu) {
        if (!std::isfinite(m) || m <= 0.0) {
            throw std::invalid_argument("HawkesModel: mu entries must be finite and > 0");
        }
    }
    for (double v : alpha) {
        if (!std::isfinite(v) || v < 0.0 || v >= 1.0) {
            throw std::invalid_argument("HawkesModel: alpha entries must lie in [0, 1)");
        }
    }
    for (double v : beta) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument("HawkesModel: beta entries must be finite and > 0");
        }
    }
}

std::vector<double> HawkesModel::pack() const {
    std::vector<double> out;
    out.reserve(param_count(k));
    out.insert(out.end(), mu.begin(), mu.end());
    out.insert(out.end(), alpha.begin(), alpha.end());
    out.insert(out.end(), beta.begin(), beta.end());
    return out;
}

HawkesModel HawkesModel::unpack(const std::vector<double>& theta, int k) {
    const std::size_t n = static_cast<std::size_t>(k);
    if (theta.size() != param_count(k)) {
        throw std::invalid_argument("HawkesModel::unpack: wrong parameter count");
    }
    HawkesModel m;
    m.k = k;
    m.mu.assign(theta.begin(), theta.begin() + n);
    m.alpha.assign(theta.begin() + n, theta.begin() + n + n * n);
    m.beta.assign(theta.begin() + n + n * n, theta.end());
    return m;
}

std::vector<std::string> HawkesModel::param_names(int k) {
    std::vector<std::string> names;
    names.reserve(param_count(k));
    for (int i = 0; i < k; ++i) names.push_back("mu" + std::to_string(i + 1));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            names.push_back("a" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            names.push_back("b" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    }
    return names;
}

namespace {

// Solves (I - alpha) r = mu by Gaussian elimination with partial
// pivoting; k is small so dense is fine.
std::vector<double> stationary_rates(const HawkesModel& model) {
    const int n = model.k;
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            A[i][j] = (i == j ? 1.0 : 0.0) - model.a(i, j);
        }
        A[i][n] = model.mu[i];
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        }
        std::swap(A[col], A[pivot]);
        if (A[col][col] == 0.0) throw std::domain_error("stationary rates: singular system");
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (int c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
        }
    }
    std::vector<double> rates(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rates[i] = A[i][n] / A[i][i];
    return rates;
}

}  // namespace

BranchingSummary branching_summary(const HawkesModel& model) {
    model.validate();
    BranchingSummary out;
    out.spectral_radius = model.spectral_radius();
    if (out.spectral_radius >= 1.0) {
        throw std::domain_error("branching_summary: spectral radius " +
                                std::to_string(out.spectral_radius) +
                                " >= 1, process is unstable");
    }
    out.expected_rates = stationary_rates(model);
    out.timescales.resize(model.beta.size());
    for (std::size_t i = 0; i < model.beta.size(); ++i) out.timescales[i] = 1.0 / model.beta[i];
    return out;
}

}  // namespace hawkes

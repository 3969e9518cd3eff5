#include "hawkes/intensity.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkes {

double intensity(const HawkesModel& model, const EventSequence& seq, double t, int type) {
    model.validate();
    if (type < 0 || type >= model.k) {
        throw std::invalid_argument("intensity: type index out of range");
    }
    if (!std::isfinite(t) || t < 0.0 || t > seq.horizon) {
        throw std::invalid_argument("intensity: t outside [0, horizon]");
    }
    double lam = model.mu[static_cast<std::size_t>(type)];
    for (std::size_t e = 0; e < seq.times.size() && seq.times[e] < t; ++e) {
        const int j = seq.marks[e];
        const double aij = model.a(type, j);
        const double bij = model.b(type, j);
        lam += aij * bij * std::exp(-bij * (t - seq.times[e]));
    }
    return lam;
}

std::vector<double> intensities_at_events(const HawkesModel& model, const EventSequence& seq) {
    model.validate();
    seq.validate(model.k);
    const int k = model.k;
    const std::size_t n = seq.size();
    std::vector<double> out(n);
    // excitation[i*k + j] = sum over past type-j events of exp(-b_ij (t - t_l))
    std::vector<double> excitation(static_cast<std::size_t>(k) * k, 0.0);
    double prev_t = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
        const double t = seq.times[e];
        const double dt = t - prev_t;
        if (dt > 0.0) {
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    excitation[static_cast<std::size_t>(i) * k + j] *=
                        std::exp(-model.b(i, j) * dt);
                }
            }
        }
        const int mark = seq.marks[e];
        double lam = model.mu[static_cast<std::size_t>(mark)];
        for (int j = 0; j < k; ++j) {
            lam += model.a(mark, j) * model.b(mark, j) *
                   excitation[static_cast<std::size_t>(mark) * k + j];
        }
        out[e] = lam;
        for (int i = 0; i < k; ++i) {
            excitation[static_cast<std::size_t>(i) * k + mark] += 1.0;
        }
        prev_t = t;
    }
    return out;
}

}  // namespace hawkes

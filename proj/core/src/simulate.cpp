#include "hawkes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace hawkes {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void require_stable(const HawkesModel& model) {
    model.validate();
    const double rho = model.spectral_radius();
    if (rho >= 1.0) {
        throw std::domain_error("simulate: spectral radius " + std::to_string(rho) +
                                " >= 1, process is unstable");
    }
}

// next representable time strictly after t; ties have measure zero but
// floating-point collisions are nudged rather than rejected
double nudge_after(double t) { return std::nextafter(t, std::numeric_limits<double>::max()); }

}  // namespace

const char* rng_algorithm() { return "mt19937-64"; }

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate) {
    return splitmix64(seed ^ splitmix64(replicate + 1));
}

EventSequence simulate_thinning(const HawkesModel& model, const SimulationConfig& config) {
    require_stable(model);
    if (config.horizon <= 0.0) throw std::invalid_argument("simulate: horizon must be > 0");
    const int k = model.k;
    const std::size_t kk = static_cast<std::size_t>(k) * k;

    std::mt19937_64 rng(splitmix64(config.seed));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    EventSequence seq;
    seq.horizon = config.horizon;

    // excitation[i*k+j] = sum over accepted type-j events of exp(-b_ij (t - t_l))
    std::vector<double> excitation(kk, 0.0);
    std::vector<double> lambda(static_cast<std::size_t>(k), 0.0);
    double t = 0.0;

    const auto eval_lambda = [&](const std::vector<double>& exc) {
        double total = 0.0;
        for (int i = 0; i < k; ++i) {
            double lam = model.mu[static_cast<std::size_t>(i)];
            for (int j = 0; j < k; ++j) {
                lam += model.a(i, j) * model.b(i, j) * exc[static_cast<std::size_t>(i) * k + j];
            }
            lambda[static_cast<std::size_t>(i)] = lam;
            total += lam;
        }
        return total;
    };

    double bound = eval_lambda(excitation);
    while (true) {
        const double w = -std::log(1.0 - unif(rng)) / bound;
        double proposal = t + w;
        if (proposal > config.horizon) break;

        // decay the running state to the proposal time
        const double dt = proposal - t;
        for (std::size_t c = 0; c < kk; ++c) {
            excitation[c] *= std::exp(-model.beta[c] * dt);
        }
        const double total = eval_lambda(excitation);
        t = proposal;

        if (unif(rng) * bound <= total) {
            // accept; pick the type proportionally to lambda_i
            double u = unif(rng) * total;
            int type = k - 1;
            for (int i = 0; i < k; ++i) {
                u -= lambda[static_cast<std::size_t>(i)];
                if (u <= 0.0) {
                    type = i;
                    break;
                }
            }
            double event_time = t;
            if (!seq.times.empty() && event_time <= seq.times.back()) {
                event_time = nudge_after(seq.times.back());
                if (event_time > config.horizon) break;
            }
            seq.times.push_back(event_time);
            seq.marks.push_back(type);
            if (seq.times.size() > config.max_events) {
                throw std::runtime_error("simulate_thinning: max_events exceeded");
            }
            for (int i = 0; i < k; ++i) excitation[static_cast<std::size_t>(i) * k + type] += 1.0;
            bound = eval_lambda(excitation);
        } else {
            // rejected: intensity only decays until the next event, so
            // the current total remains a valid dominating rate
            bound = total;
        }
    }
    return seq;
}

EventSequence simulate_branching(const HawkesModel& model, const SimulationConfig& config) {
    require_stable(model);
    if (config.horizon <= 0.0) throw std::invalid_argument("simulate: horizon must be > 0");
    const int k = model.k;
    const double T = config.horizon;

    std::mt19937_64 rng(splitmix64(config.seed ^ 0xB5297A4D5C472DEAull));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    struct Pending {
        double t;
        int type;
    };
    std::vector<Pending> stack;
    std::vector<std::pair<double, int>> events;

    for (int i = 0; i < k; ++i) {
        std::poisson_distribution<long> pois(model.mu[static_cast<std::size_t>(i)] * T);
        const long n = pois(rng);
        for (long c = 0; c < n; ++c) stack.push_back({unif(rng) * T, i});
    }

    while (!stack.empty()) {
        const Pending ev = stack.back();
        stack.pop_back();
        events.emplace_back(ev.t, ev.type);
        if (events.size() > config.max_events) {
            throw std::runtime_error("simulate_branching: max_events exceeded");
        }
        const int j = ev.type;
        for (int i = 0; i < k; ++i) {
            std::poisson_distribution<long> pois(model.a(i, j));
            const long n_children = pois(rng);
            for (long c = 0; c < n_children; ++c) {
                const double lag = -std::log(1.0 - unif(rng)) / model.b(i, j);
                const double tc = ev.t + lag;
                if (tc < T) stack.push_back({tc, i});
            }
        }
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    EventSequence seq;
    seq.horizon = T;
    seq.times.reserve(events.size());
    seq.marks.reserve(events.size());
    for (const auto& [time, type] : events) {
        double et = time;
        if (!seq.times.empty() && et <= seq.times.back()) et = nudge_after(seq.times.back());
        if (et > T) continue;
        seq.times.push_back(et);
        seq.marks.push_back(type);
    }
    return seq;
}

std::vector<std::vector<double>> intensity_trace(const HawkesModel& model,
                                                 const EventSequence& seq, double grid_step) {
    model.validate();
    seq.validate(model.k);
    if (grid_step <= 0.0) throw std::invalid_argument("intensity_trace: grid_step must be > 0");
    const int k = model.k;
    const std::size_t kk = static_cast<std::size_t>(k) * k;

    std::vector<std::vector<double>> rows;
    std::vector<double> excitation(kk, 0.0);
    double state_t = 0.0;
    std::size_t next_event = 0;

    for (double t = 0.0; t <= seq.horizon + 0.5 * grid_step; t += grid_step) {
        const double tt = std::min(t, seq.horizon);
        // fold in events strictly before tt
        while (next_event < seq.size() && seq.times[next_event] < tt) {
            const double dt = seq.times[next_event] - state_t;
            for (std::size_t c = 0; c < kk; ++c) excitation[c] *= std::exp(-model.beta[c] * dt);
            const int m = seq.marks[next_event];
            for (int i = 0; i < k; ++i) excitation[static_cast<std::size_t>(i) * k + m] += 1.0;
            state_t = seq.times[next_event];
            ++next_event;
        }
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(k) + 1);
        row.push_back(tt);
        for (int i = 0; i < k; ++i) {
            double lam = model.mu[static_cast<std::size_t>(i)];
            for (int j = 0; j < k; ++j) {
                lam += model.a(i, j) * model.b(i, j) *
                       excitation[static_cast<std::size_t>(i) * k + j] *
                       std::exp(-model.b(i, j) * (tt - state_t));
            }
            row.push_back(lam);
        }
        rows.push_back(std::move(row));
        if (tt >= seq.horizon) break;
    }
    return rows;
}

}  // namespace hawkes

// Command-line front end: simulate | fit | gof | split | report.
// Exit codes: 0 success, 1 input error, 2 diagnostic failure.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hawkes/gof.hpp"
#include "hawkes/inference.hpp"
#include "hawkes/ingest.hpp"
#include "hawkes/intensity.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDiagnostic = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// deterministic run id: FNV-1a over the inputs that define the run
std::string run_id(const std::string& material) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : material) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string manifest_line(const std::string& id, std::uint64_t seed) {
    return "# hawkes-toolkit " + std::string(hawkes::version_string()) + " run_id=" + id +
           " seed=" + std::to_string(seed) + " rng=" + hawkes::rng_algorithm();
}

hawkes::HawkesModel model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file " + path);
    json j = json::parse(in);
    hawkes::HawkesModel m;
    m.mu = j.at("mu").get<std::vector<double>>();
    m.k = static_cast<int>(m.mu.size());
    for (const auto& row : j.at("alpha")) {
        for (const auto& v : row) m.alpha.push_back(v.get<double>());
    }
    for (const auto& row : j.at("beta")) {
        for (const auto& v : row) m.beta.push_back(v.get<double>());
    }
    m.validate();
    return m;
}

bool is_canonical_events_csv(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        return line.rfind("t_days", 0) == 0;
    }
    return false;
}

struct LoadedData {
    hawkes::EventSequence seq;
    std::vector<std::size_t> class_counts{0, 0};
    std::vector<std::string> log;
};

LoadedData load_data(const std::string& path, const std::string& outcome_map_path,
                     double horizon_override, const std::string& period,
                     const std::string& cutoff) {
    LoadedData out;
    if (is_canonical_events_csv(path)) {
        out.seq = hawkes::import_events_csv(path);
        if (horizon_override >= 0.0) out.seq.horizon = horizon_override;
    } else {
        hawkes::OutcomeMap map = outcome_map_path.empty()
                                     ? hawkes::OutcomeMap::builtin()
                                     : hawkes::OutcomeMap::load(outcome_map_path);
        hawkes::SchemaOptions schema;
        schema.horizon_override = horizon_override;
        auto res = hawkes::load_incidents(path, map, schema);
        out.seq = std::move(res.seq);
        out.log = std::move(res.log);
    }
    if (period == "pre2000" || period == "post2000") {
        auto [pre, post] = hawkes::split_period(out.seq, cutoff);
        out.seq = period == "pre2000" ? std::move(pre) : std::move(post);
    }
    const auto counts = out.seq.counts(2);
    out.class_counts = {counts[0], counts[1]};
    return out;
}

void write_trace_csv(const std::string& path, const hawkes::HawkesModel& model,
                     const hawkes::EventSequence& seq, double grid_step, const std::string& head) {
    const auto rows = hawkes::intensity_trace(model, seq, grid_step);
    std::ofstream out(path);
    out << head << "\n"
        << "t";
    for (int i = 0; i < model.k; ++i) out << ",lambda" << (i + 1);
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt6(row[c]);
        out << "\n";
    }
}

// bare-bones SVG polyline plot for --render
void render_svg(const std::string& path, const std::vector<std::vector<double>>& series_x,
                const std::vector<std::vector<double>>& series_y,
                const std::vector<std::string>& colors) {
    const double W = 800, H = 400, pad = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t s = 0; s < series_x.size(); ++s) {
        for (double v : series_x[s]) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : series_y[s]) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    std::ofstream out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t s = 0; s < series_x.size(); ++s) {
        out << "<polyline fill='none' stroke='" << colors[s % colors.size()]
            << "' stroke-width='1' points='";
        for (std::size_t i = 0; i < series_x[s].size(); ++i) {
            const double px = pad + (series_x[s][i] - xmin) / (xmax - xmin) * (W - 2 * pad);
            const double py = H - pad - (series_y[s][i] - ymin) / (ymax - ymin) * (H - 2 * pad);
            out << fmt6(px) << "," << fmt6(py) << " ";
        }
        out << "'/>\n";
    }
    out << "</svg>\n";
}

void write_gof_outputs(const fs::path& out_dir, const std::vector<hawkes::GofReport>& reports,
                       const std::string& head, bool render) {
    for (const auto& rep : reports) {
        const std::string name = "gof_type" + std::to_string(rep.type + 1) + ".csv";
        std::ofstream out(out_dir / name);
        out << head << "\n";
        out << "tau,deviation,band_upper,band_lower,u,normalized_deviation\n";
        for (std::size_t i = 0; i < rep.taus.size(); ++i) {
            out << fmt(rep.taus[i]) << "," << fmt(rep.deviation[i]) << ","
                << fmt6(rep.band_halfwidth) << "," << fmt6(-rep.band_halfwidth) << ","
                << fmt(rep.u[i]) << "," << fmt(rep.normalized_deviation[i]) << "\n";
        }
        if (render && !rep.is_empty) {
            render_svg((out_dir / ("gof_type" + std::to_string(rep.type + 1) + ".svg")).string(),
                       {rep.u, {0.0, 1.0}, {0.0, 1.0}},
                       {rep.normalized_deviation,
                        {rep.band_halfwidth, rep.band_halfwidth},
                        {-rep.band_halfwidth, -rep.band_halfwidth}},
                       {"steelblue", "gray", "gray"});
        }
    }
}

void write_summary(const fs::path& out_dir, const hawkes::ParamSummary& summary, bool as_json,
                   const std::string& head) {
    const int k = 2;
    if (as_json) {
        json j;
        j["quantile_rule"] = "type-7 linear interpolation";
        for (const auto& e : summary.params) {
            json row = {{"parameter", e.name}, {"mean", e.mean}, {"q2.5", e.q025},
                        {"q97.5", e.q975}};
            j["parameters"].push_back(row);
        }
        for (int c = 0; c < k * k; ++c) {
            const std::string ch = std::to_string(c / k + 1) + std::to_string(c % k + 1);
            j["timescales_days"][ch] = {
                {"mean_of_inverse_beta", summary.timescale_mean_inverse[c]},
                {"inverse_of_mean_beta", summary.timescale_inverse_mean[c]}};
            j["alpha_significant"]["a" + ch] = static_cast<bool>(summary.alpha_significant[c]);
        }
        std::ofstream out(out_dir / "summary.json");
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_dir / "summary.csv");
    out << head << "\n";
    out << "parameter,mean,q2.5,q97.5,timescale_mean_of_inv_beta,timescale_inv_of_mean_beta,"
           "significant\n";
    for (std::size_t p = 0; p < summary.params.size(); ++p) {
        const auto& e = summary.params[p];
        out << e.name << "," << fmt6(e.mean) << "," << fmt6(e.q025) << "," << fmt6(e.q975) << ",";
        const std::size_t beta_start = static_cast<std::size_t>(k) + k * k;
        if (p >= beta_start) {
            const std::size_t c = p - beta_start;
            out << fmt6(summary.timescale_mean_inverse[c]) << ","
                << fmt6(summary.timescale_inverse_mean[c]) << ",";
        } else {
            out << ",,";
        }
        if (p >= static_cast<std::size_t>(k) && p < beta_start) {
            out << (summary.alpha_significant[p - k] ? "yes" : "no");
        }
        out << "\n";
    }
}

int cmd_simulate(const std::string& params_path, double horizon, std::uint64_t seed,
                 const std::string& out_path, const std::string& trace_path, double grid_step,
                 int replicates, const std::string& counts_path, const std::string& method,
                 bool render) {
    hawkes::HawkesModel model;
    try {
        model = model_from_json_file(params_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    if (!model.stable()) {
        std::cerr << "error: unstable model, spectral radius " << model.spectral_radius()
                  << " >= 1\n";
        return kExitInput;
    }
    const std::string id = run_id(params_path + fmt(horizon) + std::to_string(seed) + method);
    const std::string head = manifest_line(id, seed);

    const auto simulate_one = [&](std::uint64_t s) {
        hawkes::SimulationConfig cfg;
        cfg.horizon = horizon;
        cfg.seed = s;
        return method == "branching" ? hawkes::simulate_branching(model, cfg)
                                     : hawkes::simulate_thinning(model, cfg);
    };

    hawkes::EventSequence first = simulate_one(hawkes::stream_seed(seed, 0));
    hawkes::export_events_csv(first, out_path, head);
    if (!trace_path.empty()) {
        write_trace_csv(trace_path, model, first, grid_step, head);
        if (render) {
            const auto rows = hawkes::intensity_trace(model, first, grid_step);
            std::vector<double> t;
            std::vector<std::vector<double>> ys(model.k);
            for (const auto& row : rows) {
                t.push_back(row[0]);
                for (int i = 0; i < model.k; ++i) ys[i].push_back(row[i + 1]);
            }
            std::vector<std::vector<double>> xs(model.k, t);
            render_svg(trace_path + ".svg", xs, ys, {"firebrick", "black"});
        }
    }
    if (replicates > 1 && !counts_path.empty()) {
        std::ofstream out(counts_path);
        out << head << "\n"
            << "replicate";
        for (int i = 0; i < model.k; ++i) out << ",n_type" << (i + 1);
        out << "\n";
        for (int r = 0; r < replicates; ++r) {
            const auto seq = r == 0 ? first : simulate_one(hawkes::stream_seed(seed, r));
            out << r;
            const auto counts = seq.counts(model.k);
            for (int i = 0; i < model.k; ++i) out << "," << counts[i];
            out << "\n";
        }
    }
    std::cout << "simulated " << first.size() << " events over " << horizon << " days -> "
              << out_path << "\n";
    return kExitOk;
}

int cmd_fit(const std::string& data_path, const std::string& out_dir_s, const std::string& period,
            const std::string& cutoff, int samples, int warmup, int chains, std::uint64_t seed,
            const std::string& mode_s, double horizon_override,
            const std::string& outcome_map_path, bool as_json, double gof_level, bool render) {
    const fs::path out_dir(out_dir_s);
    fs::create_directories(out_dir);

    LoadedData data;
    try {
        data = load_data(data_path, outcome_map_path, horizon_override, period, cutoff);
    } catch (const std::exception& e) {
        std::cerr << "ingest error: " << e.what() << "\n";
        return kExitInput;
    }
    if (data.seq.empty()) {
        std::cerr << "ingest error: no events in selected period\n";
        return kExitInput;
    }
    const hawkes::LikelihoodMode mode =
        mode_s == "exact" ? hawkes::LikelihoodMode::Exact : hawkes::LikelihoodMode::Facilitated;

    const std::string id = run_id(data_path + period + std::to_string(seed) +
                                  std::to_string(samples) + mode_s + fmt(horizon_override));
    const std::string head = manifest_line(id, seed);

    hawkes::PriorSpec priors;
    hawkes::SampleOptions opts;
    opts.n_samples = samples;
    opts.n_warmup = warmup;
    opts.n_chains = chains;
    opts.seed = seed;
    opts.mode = mode;
    hawkes::PosteriorChain chain = hawkes::sample_posterior(data.seq, priors, opts);

    // chain export
    {
        std::ofstream out(out_dir / "chain.csv");
        out << head << "\n";
        const auto names = hawkes::HawkesModel::param_names(chain.k);
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
        out << ",log_post\n";
        for (std::size_t r = 0; r < chain.draws.size(); ++r) {
            for (std::size_t c = 0; c < chain.draws[r].size(); ++c) {
                out << (c ? "," : "") << fmt(chain.draws[r][c]);
            }
            out << "," << fmt(chain.log_posts[r]) << "\n";
        }
    }

    const hawkes::ParamSummary summary = hawkes::summarize(chain);
    write_summary(out_dir, summary, as_json, head);

    // GOF at the posterior mean
    hawkes::HawkesModel post_mean;
    {
        std::vector<double> theta;
        for (const auto& e : summary.params) theta.push_back(e.mean);
        post_mean = hawkes::HawkesModel::unpack(theta, chain.k);
    }
    const auto reports = hawkes::gof_report(post_mean, data.seq, gof_level);
    write_gof_outputs(out_dir, reports, head, render);

    // run manifest
    json manifest;
    manifest["run_id"] = id;
    manifest["version"] = hawkes::version_string();
    manifest["seed"] = seed;
    manifest["rng"] = hawkes::rng_algorithm();
    manifest["input"] = data_path;
    manifest["period"] = period;
    manifest["mode"] = mode_s;
    manifest["horizon_days"] = data.seq.horizon;
    manifest["n_events"] = data.seq.size();
    manifest["counts"] = {{"die_at_scene", data.class_counts[0]},
                          {"live", data.class_counts[1]}};
    manifest["samples_kept"] = chain.n_kept;
    manifest["warmup_per_chain"] = chain.n_warmup;
    manifest["chains"] = chains;
    manifest["acceptance_rate"] = chain.acceptance_rate;
    manifest["per_chain_acceptance"] = chain.per_chain_acceptance;
    manifest["diagnostics_ok"] = chain.diagnostics_ok;
    manifest["warnings"] = chain.warnings;
    manifest["quantile_rule"] = "type-7 linear interpolation";
    for (const auto& line : data.log) manifest["ingest_log"].push_back(line);
    std::ofstream mf(out_dir / "manifest.json");
    mf << manifest.dump(2) << "\n";

    std::cout << "fit complete: " << data.seq.size() << " events (" << data.class_counts[0] << "/"
              << data.class_counts[1] << "), " << chain.n_kept << " draws, acceptance "
              << fmt6(chain.acceptance_rate) << " -> " << out_dir_s << "\n";
    for (const auto& w : chain.warnings) std::cout << "warning: " << w << "\n";
    return chain.diagnostics_ok ? kExitOk : kExitDiagnostic;
}

int cmd_gof(const std::string& data_path, const std::string& params_path,
            const std::string& out_dir_s, const std::string& period, const std::string& cutoff,
            double horizon_override, const std::string& outcome_map_path, double level,
            bool render) {
    const fs::path out_dir(out_dir_s);
    fs::create_directories(out_dir);
    hawkes::HawkesModel model;
    LoadedData data;
    try {
        model = model_from_json_file(params_path);
        data = load_data(data_path, outcome_map_path, horizon_override, period, cutoff);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const std::string id = run_id(data_path + params_path + period + fmt(level));
    const auto reports = hawkes::gof_report(model, data.seq, level);
    write_gof_outputs(out_dir, reports, manifest_line(id, 0), render);
    for (const auto& rep : reports) {
        std::cout << "type " << (rep.type + 1) << ": n=" << rep.n << " ks=" << fmt6(rep.ks_statistic)
                  << " band=" << fmt6(rep.band_halfwidth)
                  << (rep.is_empty ? " (empty)" : rep.within_band ? " within band" : " OUTSIDE band")
                  << "\n";
    }
    return kExitOk;
}

int cmd_split(const std::string& data_path, const std::string& cutoff,
              const std::string& out_pre, const std::string& out_post,
              const std::string& outcome_map_path) {
    LoadedData data;
    try {
        data = load_data(data_path, outcome_map_path, -1.0, "all", cutoff);
        auto [pre, post] = hawkes::split_period(data.seq, cutoff);
        const std::string head = manifest_line(run_id(data_path + cutoff), 0);
        hawkes::export_events_csv(pre, out_pre, head);
        hawkes::export_events_csv(post, out_post, head);
        const auto pc = pre.counts(2), qc = post.counts(2);
        std::cout << "pre: " << pre.size() << " events (" << pc[0] << "/" << pc[1] << ") -> "
                  << out_pre << "\n";
        std::cout << "post: " << post.size() << " events (" << qc[0] << "/" << qc[1] << ") -> "
                  << out_post << "\n";
        if (pre.empty() || post.empty()) {
            std::cout << "warning: cutoff " << cutoff << " outside the data range\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

int cmd_report(const std::string& chain_path, const std::string& out_dir_s, bool as_json) {
    const fs::path out_dir(out_dir_s);
    fs::create_directories(out_dir);
    hawkes::PosteriorChain chain;
    chain.k = 2;
    try {
        std::ifstream in(chain_path);
        if (!in) throw std::runtime_error("cannot open " + chain_path);
        std::string line;
        bool header_seen = false;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!header_seen) {
                header_seen = true;
                continue;
            }
            std::vector<double> row;
            std::size_t pos = 0;
            while (pos <= line.size()) {
                const auto next = line.find(',', pos);
                row.push_back(std::stod(line.substr(pos, next - pos)));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
            if (row.size() != hawkes::HawkesModel::param_count(2) + 1) {
                throw std::runtime_error("chain row with unexpected column count");
            }
            chain.log_posts.push_back(row.back());
            row.pop_back();
            chain.draws.push_back(std::move(row));
        }
        chain.n_kept = static_cast<int>(chain.draws.size());
        const auto summary = hawkes::summarize(chain);
        write_summary(out_dir, summary, as_json,
                      manifest_line(run_id(chain_path), 0));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    std::cout << "summary written to " << out_dir_s << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bivariate exponential-kernel Hawkes toolkit"};
    app.set_version_flag("--version", std::string(hawkes::version_string()));
    app.require_subcommand(1);

    // simulate
    std::string sim_params, sim_out = "events.csv", sim_trace, sim_counts, sim_method = "thinning";
    double sim_horizon = 0.0, sim_grid = 0.1;
    std::uint64_t sim_seed = 0;
    int sim_reps = 1;
    bool sim_render = false;
    auto* sim = app.add_subcommand("simulate", "draw a synthetic event sequence");
    sim->add_option("--params", sim_params, "model JSON (mu, alpha, beta)")->required();
    sim->add_option("--horizon", sim_horizon, "observation window in days")->required();
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--out", sim_out, "event CSV output path");
    sim->add_option("--trace", sim_trace, "intensity-trace CSV output path");
    sim->add_option("--grid-step", sim_grid, "trace grid step in days");
    sim->add_option("--replicates", sim_reps, "number of replicates for the counts file");
    sim->add_option("--counts", sim_counts, "per-replicate counts CSV path");
    sim->add_option("--method", sim_method, "thinning|branching")
        ->check(CLI::IsMember({"thinning", "branching"}));
    sim->add_flag("--render", sim_render, "also write SVG plots");

    // fit
    std::string fit_data, fit_out = "out", fit_period = "all", fit_cutoff = "2000-01-01";
    std::string fit_mode = "facilitated", fit_map_file;
    int fit_samples = 5000, fit_warmup = 5000, fit_chains = 4;
    std::uint64_t fit_seed = 0;
    double fit_horizon = -1.0, fit_level = 0.95;
    bool fit_json = false, fit_render = false;
    auto* fit = app.add_subcommand("fit", "posterior inference on incident data");
    fit->add_option("data", fit_data, "incident or event CSV")->required();
    fit->add_option("--out-dir", fit_out, "output directory");
    fit->add_option("--period", fit_period, "all|pre2000|post2000")
        ->check(CLI::IsMember({"all", "pre2000", "post2000"}));
    fit->add_option("--cutoff", fit_cutoff, "period cutoff date (ISO)");
    fit->add_option("--samples", fit_samples, "kept posterior draws (total)");
    fit->add_option("--warmup", fit_warmup, "warmup iterations per chain");
    fit->add_option("--chains", fit_chains, "number of chains");
    fit->add_option("--seed", fit_seed, "RNG seed");
    fit->add_option("--mode", fit_mode, "facilitated|exact likelihood")
        ->check(CLI::IsMember({"facilitated", "exact"}));
    fit->add_option("--horizon", fit_horizon, "override horizon in days");
    fit->add_option("--outcome-map", fit_map_file, "label,class mapping CSV");
    fit->add_option("--gof-level", fit_level, "KS band confidence level");
    fit->add_flag("--json", fit_json, "summary as JSON instead of CSV");
    fit->add_flag("--render", fit_render, "also write SVG plots");

    // gof
    std::string gof_data, gof_params, gof_out = "out", gof_period = "all",
                gof_cutoff = "2000-01-01", gof_map_file;
    double gof_horizon = -1.0, gof_level = 0.95;
    bool gof_render = false;
    auto* gof = app.add_subcommand("gof", "time-rescaling residual analysis");
    gof->add_option("data", gof_data, "incident or event CSV")->required();
    gof->add_option("--params", gof_params, "model JSON (mu, alpha, beta)")->required();
    gof->add_option("--out-dir", gof_out, "output directory");
    gof->add_option("--period", gof_period, "all|pre2000|post2000")
        ->check(CLI::IsMember({"all", "pre2000", "post2000"}));
    gof->add_option("--cutoff", gof_cutoff, "period cutoff date (ISO)");
    gof->add_option("--horizon", gof_horizon, "override horizon in days");
    gof->add_option("--outcome-map", gof_map_file, "label,class mapping CSV");
    gof->add_option("--level", gof_level, "KS band confidence level");
    gof->add_flag("--render", gof_render, "also write SVG plots");

    // split
    std::string split_data, split_cutoff = "2000-01-01", split_pre = "pre.csv",
                split_post = "post.csv", split_map_file;
    auto* split = app.add_subcommand("split", "split into pre/post-cutoff subsets");
    split->add_option("data", split_data, "incident or event CSV")->required();
    split->add_option("--cutoff", split_cutoff, "cutoff date (ISO)");
    split->add_option("--out-pre", split_pre, "pre-cutoff event CSV");
    split->add_option("--out-post", split_post, "post-cutoff event CSV");
    split->add_option("--outcome-map", split_map_file, "label,class mapping CSV");

    // report
    std::string rep_chain, rep_out = "out";
    bool rep_json = false;
    auto* rep = app.add_subcommand("report", "summaries from an existing chain CSV");
    rep->add_option("chain", rep_chain, "chain.csv from a fit run")->required();
    rep->add_option("--out-dir", rep_out, "output directory");
    rep->add_flag("--json", rep_json, "summary as JSON instead of CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            return cmd_simulate(sim_params, sim_horizon, sim_seed, sim_out, sim_trace, sim_grid,
                                sim_reps, sim_counts, sim_method, sim_render);
        }
        if (fit->parsed()) {
            return cmd_fit(fit_data, fit_out, fit_period, fit_cutoff, fit_samples, fit_warmup,
                           fit_chains, fit_seed, fit_mode, fit_horizon, fit_map_file, fit_json,
                           fit_level, fit_render);
        }
        if (gof->parsed()) {
            return cmd_gof(gof_data, gof_params, gof_out, gof_period, gof_cutoff, gof_horizon,
                           gof_map_file, gof_level, gof_render);
        }
        if (split->parsed()) {
            return cmd_split(split_data, split_cutoff, split_pre, split_post, split_map_file);
        }
        if (rep->parsed()) {
            return cmd_report(rep_chain, rep_out, rep_json);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

#include "fidgauss/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fidgauss/csv.hpp"
#include "fidgauss/estimate.hpp"
#include "fidgauss/model.hpp"
#include "fidgauss/rng.hpp"
#include "fidgauss/sampler.hpp"

namespace fidgauss::cli {
namespace {

namespace fs = std::filesystem;

// Replicate study i simulates from its own stream at seed + (i+1)*stride so
// data draws never alias the chain streams at seed + i.  The odd multiplier
// spreads consecutive studies across the seed space.
constexpr std::uint64_t kDataStreamStride = 0x9E3779B97F4A7C15ull;
// Distinguishes the optimizer's restart stream from the chain stream of the
// same run ("mle" in ASCII).
constexpr std::uint64_t kMleSeedSalt = 0x6d6c65ull;

constexpr int kHistogramBins = 20;

// ---------------------------------------------------------------------------
// config access
// ---------------------------------------------------------------------------

const json* find_node(const json& cfg, const std::string& dotted) {
    const json* cur = &cfg;
    std::size_t start = 0;
    for (;;) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos
                                                                              : dot - start);
        if (!cur->is_object() || !cur->contains(key)) return nullptr;
        cur = &cur->at(key);
        if (dot == std::string::npos) return cur;
        start = dot + 1;
    }
}

const json& require_node(const json& cfg, const std::string& dotted) {
    const json* n = find_node(cfg, dotted);
    if (!n) throw ConfigError("config: missing required key '" + dotted + "'");
    return *n;
}

double as_double(const json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigError("config: '" + what + "' must be a number");
    return j.get<double>();
}

long as_long(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ConfigError("config: '" + what + "' must be an integer");
    return j.get<long>();
}

std::string as_string(const json& j, const std::string& what) {
    if (!j.is_string()) throw ConfigError("config: '" + what + "' must be a string");
    return j.get<std::string>();
}

Vector as_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigError("config: '" + what + "' must be an array of numbers");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = as_double(j[i], what);
    return v;
}

double get_double(const json& cfg, const std::string& key, double fallback) {
    const json* n = find_node(cfg, key);
    return n ? as_double(*n, key) : fallback;
}

long get_long(const json& cfg, const std::string& key, long fallback) {
    const json* n = find_node(cfg, key);
    return n ? as_long(*n, key) : fallback;
}

std::string get_string(const json& cfg, const std::string& key, const std::string& fallback) {
    const json* n = find_node(cfg, key);
    return n ? as_string(*n, key) : fallback;
}

std::uint64_t get_seed(const json& cfg) {
    const json* n = find_node(cfg, "seed");
    if (!n) return 0;
    if (!n->is_number_integer() || (n->is_number_integer() && n->get<long long>() < 0))
        throw ConfigError("config: 'seed' must be a nonnegative integer");
    return n->get<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// plumbing shared by the commands
// ---------------------------------------------------------------------------

fs::path output_dir(const json& cfg) {
    const fs::path dir = get_string(cfg, "output_dir", ".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("config: cannot create output_dir '" + dir.string() + "'");
    return dir;
}

std::vector<Site> read_sites(const std::string& path) {
    if (!fs::exists(path)) throw ConfigError("config: sites_path '" + path + "' does not exist");
    CsvTable t;
    try {
        t = read_csv(path);
    } catch (const Error& e) {
        throw ConfigError("config: sites file '" + path + "': " + e.what());
    }
    if (t.values.cols() != 2)
        throw ConfigError("config: sites file '" + path + "' must have two columns (x, y)");
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(t.values.rows()));
    for (Index r = 0; r < t.values.rows(); ++r)
        sites.push_back({t.values(r, 0), t.values(r, 1)});
    return sites;
}

/*
 * Build the model named in the config.  Matern site precedence: an explicit
 * sites_path wins; otherwise, when grid_rng is given (commands that simulate),
 * a jittered grid is drawn from it; otherwise the sites are missing, which is
 * a config problem the user fixes with sites_path.  Sites drawn here are
 * reported via sites_out so the caller can persist them.
 */
ModelSpec build_model(const json& cfg, Rng* grid_rng, std::vector<Site>* sites_out = nullptr) {
    const std::string name = as_string(require_node(cfg, "model.name"), "model.name");
    if (name == "ma1") {
        const long d = as_long(require_node(cfg, "model.d"), "model.d");
        if (d < 2) throw ConfigError("config: 'model.d' must be at least 2");
        return make_ma1(static_cast<Index>(d));
    }
    if (name == "toy") return make_toy();
    if (name == "matern") {
        std::vector<Site> sites;
        if (find_node(cfg, "sites_path")) {
            sites = read_sites(as_string(require_node(cfg, "sites_path"), "sites_path"));
        } else if (grid_rng) {
            const long rows = get_long(cfg, "model.grid.rows", 5);
            const long cols = get_long(cfg, "model.grid.cols", 10);
            const double jitter = get_double(cfg, "model.grid.jitter", 0.1);
            if (rows < 1 || cols < 1)
                throw ConfigError("config: 'model.grid' rows and cols must be positive");
            if (jitter < 0 || jitter >= 0.5)
                throw ConfigError("config: 'model.grid.jitter' must lie in [0, 0.5)");
            sites = make_jittered_grid(static_cast<Index>(rows), static_cast<Index>(cols),
                                       jitter, *grid_rng);
        } else {
            throw ConfigError("config: matern model needs 'sites_path' for this command");
        }
        if (sites_out) *sites_out = sites;
        return make_matern(sites);
    }
    throw ConfigError("config: unknown model name '" + name + "' (expected ma1, matern, toy)");
}

Vector checked_theta(const json& cfg, const std::string& key, const ModelSpec& model) {
    const Vector theta = as_vector(require_node(cfg, key), key);
    try {
        if (!validate_params(model, theta))
            throw ConfigError("config: '" + key + "' lies outside the model's valid region");
    } catch (const DimensionMismatch& e) {
        throw ConfigError("config: '" + key + "': " + e.what());
    }
    return theta;
}

Dataset read_dataset(const json& cfg, const ModelSpec& model) {
    const std::string path = as_string(require_node(cfg, "data_path"), "data_path");
    if (!fs::exists(path)) throw ConfigError("config: data_path '" + path + "' does not exist");
    CsvTable t;
    try {
        t = read_csv(path);
    } catch (const Error& e) {
        throw ConfigError("config: data file '" + path + "': " + e.what());
    }
    if (t.values.cols() != model.d)
        throw ConfigError("config: data file '" + path + "' has " +
                          std::to_string(t.values.cols()) + " columns, model expects " +
                          std::to_string(model.d));
    if (t.values.rows() < 1)
        throw ConfigError("config: data file '" + path + "' contains no replicates");
    if (!t.values.allFinite())
        throw ConfigError("config: data file '" + path + "' contains non-finite entries");
    Dataset data;
    data.y = t.values;
    data.sites = model.sites;
    return data;
}

SamplerConfig build_sampler_config(const json& cfg, const ModelSpec& model) {
    SamplerConfig sc;
    sc.k = static_cast<int>(get_long(cfg, "sampler.k", sc.k));
    sc.q = static_cast<int>(get_long(cfg, "sampler.q", sc.q));
    sc.steps = get_long(cfg, "sampler.steps", sc.steps);
    sc.burn_in = get_long(cfg, "sampler.burn_in", sc.burn_in);
    sc.max_init_tries = static_cast<int>(get_long(cfg, "sampler.max_init_tries", sc.max_init_tries));
    if (const json* n = find_node(cfg, "sampler.step_stds"))
        sc.step_stds = as_vector(*n, "sampler.step_stds");
    const std::string mode = get_string(cfg, "sampler.mode", "joint");
    if (mode == "joint")
        sc.mode = ProposalMode::joint;
    else if (mode == "cyclic")
        sc.mode = ProposalMode::cyclic;
    else
        throw ConfigError("config: 'sampler.mode' must be \"joint\" or \"cyclic\"");
    const std::string path = get_string(cfg, "sampler.path", "fast");
    if (path == "fast")
        sc.path = JacobianPath::fast;
    else if (path == "reference")
        sc.path = JacobianPath::reference;
    else
        throw ConfigError("config: 'sampler.path' must be \"fast\" or \"reference\"");
    sc = resolve_defaults(sc, model);
    try {
        validate_config(sc, model.p);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return sc;
}

// ---------------------------------------------------------------------------
// serialization helpers
// ---------------------------------------------------------------------------

std::vector<std::string> numbered_header(const std::string& stem, Index n) {
    std::vector<std::string> h;
    h.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) h.push_back(stem + std::to_string(i + 1));
    return h;
}

void write_dataset_csv(const fs::path& path, const Matrix& y) {
    write_csv(path.string(), y, numbered_header("y", y.cols()));
}

void write_sites_csv(const fs::path& path, const std::vector<Site>& sites) {
    Matrix m(static_cast<Index>(sites.size()), 2);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        m(static_cast<Index>(i), 0) = sites[i].x;
        m(static_cast<Index>(i), 1) = sites[i].y;
    }
    write_csv(path.string(), m, {"x", "y"});
}

void write_chain_csv(const fs::path& path, const ChainRecord& record) {
    const Index steps = record.steps();
    const Index p = record.theta.cols();
    Matrix m(steps, p + 5);
    for (Index i = 0; i < steps; ++i) {
        m(i, 0) = static_cast<double>(i + 1);
        m.row(i).segment(1, p) = record.theta.row(i);
        m(i, p + 1) = record.log_like(i);
        m(i, p + 2) = record.log_j_sum(i);
        m(i, p + 3) = record.accepted[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        m(i, p + 4) = static_cast<double>(record.n_permissible[static_cast<std::size_t>(i)]);
    }
    std::vector<std::string> header{"iter"};
    for (const auto& name : numbered_header("theta_", p)) header.push_back(name);
    header.insert(header.end(), {"log_like", "log_j_sum", "accepted", "n_permissible"});
    write_csv(path.string(), m, header);
}

json vector_to_json(const Vector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json summary_to_json(const ChainSummary& s) {
    return json{{"mean", vector_to_json(s.mean)},
                {"q025", vector_to_json(s.q025)},
                {"q975", vector_to_json(s.q975)},
                {"acceptance_rate", s.acceptance_rate},
                {"n_kept", s.n_kept}};
}

json coverage_to_json(const CoverageReport& c) {
    return json{{"per_param", vector_to_json(c.per_param)},
                {"joint", c.joint},
                {"n_runs", c.n_runs}};
}

json warnings_to_json(const GcfdWarnings& w) {
    return json{{"degenerate_eigengap", w.degenerate_eigengap},
                {"numerically_excluded", w.numerically_excluded}};
}

json sampler_to_json(const SamplerConfig& sc) {
    return json{{"k", sc.k},
                {"q", sc.q},
                {"steps", sc.steps},
                {"burn_in", sc.burn_in},
                {"step_stds", vector_to_json(sc.step_stds)},
                {"mode", sc.mode == ProposalMode::joint ? "joint" : "cyclic"},
                {"path", sc.path == JacobianPath::fast ? "fast" : "reference"},
                {"max_init_tries", sc.max_init_tries}};
}

// Echo of the merged config with the sampler block replaced by its fully
// resolved values, so the summary records what actually ran.
json config_echo(const json& cfg, const SamplerConfig& sc) {
    json echo = cfg;
    echo["sampler"] = sampler_to_json(sc);
    return echo;
}

void write_json_file(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// replicate-study machinery
// ---------------------------------------------------------------------------

struct RunOutcome {
    bool failed = false;
    std::string error;
    ChainSummary summary;
    MleResult mle;
    GcfdWarnings warnings;
};

std::string run_file_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "chain_%03zu.csv", i);
    return buf;
}

/*
 * Histogram rows for one (parameter, source) layer: 20 equal-width bins over
 * the observed range, last bin closed.  A degenerate range gets a unit-wide
 * bin centered on the value so counts are still well-defined.
 */
void append_histogram(std::ofstream& out, const std::string& param, const std::string& source,
                      const std::vector<double>& values) {
    if (values.empty()) return;
    double lo = values.front(), hi = values.front();
    for (const double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / kHistogramBins;
    std::vector<long> counts(kHistogramBins, 0);
    for (const double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::max(0, std::min(kHistogramBins - 1, b));
        ++counts[static_cast<std::size_t>(b)];
    }
    for (int b = 0; b < kHistogramBins; ++b) {
        out << param << ',' << source << ',' << format_double(lo + b * width) << ','
            << format_double(lo + (b + 1) * width) << ',' << counts[static_cast<std::size_t>(b)]
            << '\n';
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// public API
// ---------------------------------------------------------------------------

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

void apply_overrides(json& cfg, const std::vector<std::string>& overrides) {
    for (std::string kv : overrides) {
        if (kv.rfind("--", 0) == 0) kv.erase(0, 2);
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override '" + kv + "' must look like key.path=value");
        std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        for (char& c : key)
            if (c == '.') c = '/';
        json parsed = json::parse(value, nullptr, false);
        if (parsed.is_discarded()) parsed = value;
        cfg[json::json_pointer("/" + key)] = parsed;
    }
}

void cmd_simulate(const json& cfg) {
    const std::uint64_t seed = get_seed(cfg);
    // Same stream as replicate study 0, so simulate-then-fit reproduces the
    // first replicate run's data exactly.
    Rng data_rng(seed + kDataStreamStride);
    std::vector<Site> drawn_sites;
    const ModelSpec model = build_model(cfg, &data_rng, &drawn_sites);
    const Vector theta = checked_theta(cfg, "theta_true", model);
    const long m = as_long(require_node(cfg, "m"), "m");
    if (m < 0) throw ConfigError("config: 'm' must be nonnegative");
    const fs::path dir = output_dir(cfg);

    const Dataset data = simulate(model, theta, static_cast<Index>(m), data_rng);
    write_dataset_csv(dir / "data.csv", data.y);
    if (!drawn_sites.empty()) write_sites_csv(dir / "sites.csv", drawn_sites);
}

void cmd_fit(const json& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = get_seed(cfg);
    const ModelSpec model = build_model(cfg, nullptr);
    const Dataset data = read_dataset(cfg, model);
    const Vector theta0 = checked_theta(cfg, "theta0", model);
    SamplerConfig sc = build_sampler_config(cfg, model);
    sc.seed = seed;
    const fs::path dir = output_dir(cfg);

    const ChainRecord record = run_chain(theta0, data, model, sc);
    const ChainSummary summary = summarize_chain(record, sc.burn_in);
    write_chain_csv(dir / "chain.csv", record);

    json doc{{"config", config_echo(cfg, sc)},
             {"seed", seed},
             {"run", summary_to_json(summary)},
             {"warnings", warnings_to_json(record.warnings)}};
    if (find_node(cfg, "theta_true")) {
        const Vector theta_true = checked_theta(cfg, "theta_true", model);
        doc["coverage"] = coverage_to_json(coverage({summary}, theta_true));
    }
    doc["wall_clock_seconds"] = elapsed_seconds(start);
    write_json_file(dir / "summary.json", doc);
}

void cmd_mle(const json& cfg) {
    const std::uint64_t seed = get_seed(cfg);
    const ModelSpec model = build_model(cfg, nullptr);
    const Dataset data = read_dataset(cfg, model);
    const Vector theta0 = checked_theta(cfg, "theta0", model);
    const fs::path dir = output_dir(cfg);

    const MleResult mle = mle_fit(data, model, theta0, seed ^ kMleSeedSalt);
    // Non-convergence is reported in the output, not via the exit code: the
    // best-so-far point is still useful.
    write_json_file(dir / "mle.json", json{{"theta", vector_to_json(mle.theta)},
                                           {"log_lik", mle.log_lik},
                                           {"converged", mle.converged},
                                           {"n_evals", mle.n_evals},
                                           {"seed", seed}});
}

void cmd_split(const json& cfg) {
    const std::string path = as_string(require_node(cfg, "data_path"), "data_path");
    if (!fs::exists(path)) throw ConfigError("config: data_path '" + path + "' does not exist");
    const long w = as_long(require_node(cfg, "window"), "window");
    if (w < 2) throw ConfigError("config: 'window' must be at least 2");
    const fs::path dir = output_dir(cfg);

    CsvTable t;
    try {
        t = read_csv(path);
    } catch (const Error& e) {
        throw ConfigError("config: data file '" + path + "': " + e.what());
    }
    Dataset data;
    data.y = t.values;
    const Dataset split = composite_split(data, static_cast<Index>(w));
    write_dataset_csv(dir / "split.csv", split.y);
}

void cmd_replicate(const json& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = get_seed(cfg);
    const long runs = get_long(cfg, "runs", 1);
    if (runs < 1) throw ConfigError("config: 'runs' must be at least 1");
    const long threads = get_long(cfg, "threads", 4);
    if (threads < 1) throw ConfigError("config: 'threads' must be at least 1");
    const long m = as_long(require_node(cfg, "m"), "m");
    if (m < 1) throw ConfigError("config: 'm' must be at least 1");

    // Validate the model/sampler blocks once up front so config mistakes fail
    // fast with exit 2 instead of surfacing as per-run failures.  A throwaway
    // stream keeps this validation from touching the per-run streams.  The
    // resolved sampler settings are identical across runs except for the
    // seed, so the probe's copy doubles as the summary echo.
    Rng probe(0);
    const ModelSpec probe_model = build_model(cfg, &probe);
    checked_theta(cfg, "theta_true", probe_model);
    checked_theta(cfg, "theta0", probe_model);
    SamplerConfig echo_sc = build_sampler_config(cfg, probe_model);
    echo_sc.seed = seed;
    const fs::path dir = output_dir(cfg);

    const auto n_runs = static_cast<std::size_t>(runs);
    std::vector<RunOutcome> outcomes(n_runs);
    std::atomic<std::size_t> next{0};

    const auto run_one = [&](std::size_t i) {
        RunOutcome& out = outcomes[i];
        try {
            // Fresh experiment per run: new sites (when the model owns a
            // grid), new data, new chain and optimizer streams.
            Rng data_rng(seed + (static_cast<std::uint64_t>(i) + 1) * kDataStreamStride);
            const ModelSpec model = build_model(cfg, &data_rng);
            const Vector theta_true = checked_theta(cfg, "theta_true", model);
            const Vector theta0 = checked_theta(cfg, "theta0", model);
            SamplerConfig sc = build_sampler_config(cfg, model);
            sc.seed = seed + static_cast<std::uint64_t>(i);

            const Dataset data = simulate(model, theta_true, static_cast<Index>(m), data_rng);
            const ChainRecord record = run_chain(theta0, data, model, sc);
            out.summary = summarize_chain(record, sc.burn_in);
            out.warnings = record.warnings;
            out.mle = mle_fit(data, model, theta0, sc.seed ^ kMleSeedSalt);
            write_chain_csv(dir / run_file_name(i), record);
        } catch (const std::exception& e) {
            out.failed = true;
            out.error = e.what();
        }
    };

    const std::size_t n_workers = std::min(static_cast<std::size_t>(threads), n_runs);
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < n_runs; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n_runs) return;
                    run_one(i);
                }
            });
        for (auto& t : pool) t.join();
    }

    // Aggregation is single-threaded and in run order, so every output file
    // is byte-identical whatever the thread count was.
    const Index p = probe_model.p;
    std::vector<ChainSummary> ok_summaries;
    std::vector<std::size_t> ok_runs;
    for (std::size_t i = 0; i < n_runs; ++i)
        if (!outcomes[i].failed) {
            ok_summaries.push_back(outcomes[i].summary);
            ok_runs.push_back(i);
        }

    Matrix est(static_cast<Index>(ok_runs.size()), 1 + 2 * p + 1);
    for (std::size_t r = 0; r < ok_runs.size(); ++r) {
        const RunOutcome& out = outcomes[ok_runs[r]];
        const auto row = static_cast<Index>(r);
        est(row, 0) = static_cast<double>(ok_runs[r]);
        est.row(row).segment(1, p) = out.summary.mean.transpose();
        est.row(row).segment(1 + p, p) = out.mle.theta.transpose();
        est(row, 1 + 2 * p) = out.summary.acceptance_rate;
    }
    std::vector<std::string> est_header{"run"};
    for (const auto& h : numbered_header("mean_theta_", p)) est_header.push_back(h);
    for (const auto& h : numbered_header("mle_theta_", p)) est_header.push_back(h);
    est_header.push_back("acceptance_rate");
    write_csv((dir / "estimates.csv").string(), est, est_header);

    {
        std::ofstream hist(dir / "histograms.csv");
        if (!hist) throw Error("cannot open '" + (dir / "histograms.csv").string() + "'");
        hist << "param,source,bin_lo,bin_hi,count\n";
        for (Index k = 0; k < p; ++k) {
            std::vector<double> means, mles;
            for (const std::size_t i : ok_runs) {
                means.push_back(outcomes[i].summary.mean(k));
                mles.push_back(outcomes[i].mle.theta(k));
            }
            const std::string param = "theta_" + std::to_string(k + 1);
            append_histogram(hist, param, "mcmc_mean", means);
            append_histogram(hist, param, "mle", mles);
        }
        if (!hist) throw Error("failed writing histograms.csv");
    }

    json runs_json = json::array();
    for (std::size_t i = 0; i < n_runs; ++i) {
        const RunOutcome& out = outcomes[i];
        json entry{{"run", i}, {"failed", out.failed}};
        if (out.failed) {
            entry["error"] = out.error;
        } else {
            entry["summary"] = summary_to_json(out.summary);
            entry["mle"] = json{{"theta", vector_to_json(out.mle.theta)},
                                {"log_lik", out.mle.log_lik},
                                {"converged", out.mle.converged}};
            entry["warnings"] = warnings_to_json(out.warnings);
        }
        runs_json.push_back(entry);
    }
    json doc{{"config", config_echo(cfg, echo_sc)},
             {"seed", seed},
             {"runs", runs_json},
             {"n_failed", n_runs - ok_runs.size()}};
    if (!ok_summaries.empty())
        doc["coverage"] =
            coverage_to_json(coverage(ok_summaries, checked_theta(cfg, "theta_true", probe_model)));
    doc["wall_clock_seconds"] = elapsed_seconds(start);
    write_json_file(dir / "summary.json", doc);

    if (ok_runs.size() < n_runs)
        throw Error("replicate: " + std::to_string(n_runs - ok_runs.size()) + " of " +
                    std::to_string(n_runs) + " runs failed (see summary.json)");
}

int run_command(const std::string& name, const json& cfg) {
    try {
        if (name == "simulate")
            cmd_simulate(cfg);
        else if (name == "fit")
            cmd_fit(cfg);
        else if (name == "mle")
            cmd_mle(cfg);
        else if (name == "split")
            cmd_split(cfg);
        else if (name == "replicate")
            cmd_replicate(cfg);
        else
            throw ConfigError("unknown command '" + name + "'");
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace fidgauss::cli

#include "bifbm/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "bifbm/analysis.hpp"
#include "bifbm/format.hpp"
#include "bifbm/gram.hpp"
#include "bifbm/kernels.hpp"
#include "bifbm/oracles.hpp"
#include "bifbm/region.hpp"
#include "bifbm/report_io.hpp"
#include "bifbm/sampler.hpp"

namespace bifbm::cli {

namespace {

using io::json;

struct OptionDef {
    const char* name;
    const char* help;
    const char* fallback;  // nullptr: no default
};

// clang-format off
const std::vector<OptionDef> kOptions = {
    {"kernel",     "bifbm | fbm | cgamma | qgamma | lei-nualart | min", "bifbm"},
    {"H",          "Hurst-type parameter H", nullptr},
    {"K",          "bifractional parameter K", nullptr},
    {"gamma",      "exponent of C_gamma / Q_gamma", nullptr},
    {"s",          "first time argument", nullptr},
    {"t",          "second time argument", nullptr},
    {"grid",       "uniform:a:b:n | geom:a:b:n | list:t1,t2,...", nullptr},
    {"rel-tol",    "PSD tolerance relative to the largest variance", "1e-10"},
    {"tol",        "pass threshold of the check", nullptr},
    {"abs-tol",    "absolute pass threshold", "1e-6"},
    {"format",     "json | csv", "json"},
    {"out",        "output file (default: standard output)", nullptr},
    {"seed",       "master seed of all random streams", "20240613"},
    {"threads",    "worker threads, 0 = all cores; output does not depend on it", "1"},
    {"paths",      "number of sample paths", "1000"},
    {"method",     "direct | bifbm-sum | fbm-decomposed | brownian", "direct"},
    {"a",          "scale factor / counterexample argument", nullptr},
    {"lags",       "comma-separated Lamperti lags", "0.5,1,2"},
    {"bases",      "comma-separated Lamperti base points", "-2,-1,0,1,2"},
    {"T",          "comma-separated shift times", "10,100,1000,10000"},
    {"p",          "variation exponent", "2"},
    {"levels",     "dyadic levels (grid has 2^levels+1 points on [0,1])", "10"},
    {"resolution", "bisection bracket width in K", "0.001"},
    {"H-list",     "comma-separated increasing H values > 1", "1.5,2,4,8"},
    {"H-range",    "lo:hi range of H", "0.25:4"},
    {"K-range",    "lo:hi range of K", "0.05:1"},
    {"steps",      "lattice points nH:nK", "20:20"},
};

struct CommandDef {
    std::vector<std::string> path;
    const char* help;
    std::vector<std::string> options;
};

const std::vector<std::string> kKernelFlags = {"kernel", "H", "K", "gamma"};

std::vector<std::string> with_kernel(std::vector<std::string> extra) {
    extra.insert(extra.begin(), kKernelFlags.begin(), kKernelFlags.end());
    return extra;
}

const std::vector<CommandDef> kCommands = {
    {{"eval"}, "evaluate a kernel at (s,t)", with_kernel({"s", "t", "out"})},
    {{"gram"}, "Gram matrix of a kernel on a grid", with_kernel({"grid", "format", "out", "threads"})},
    {{"psd-check"}, "minimum-eigenvalue PSD verdict (exit 1 if NotPSD)",
     with_kernel({"grid", "rel-tol", "out", "threads"})},
    {{"chol"}, "jittered Cholesky factor (exit 1 if NotPSD)", with_kernel({"grid", "format", "out"})},
    {{"sample"}, "simulate Gaussian paths",
     with_kernel({"method", "grid", "paths", "seed", "threads", "format", "out"})},
    {{"verify-decomp"}, "check the sum decomposition and the fBm identities",
     {"H", "K", "grid", "tol", "out"}},
    {{"oracle-compare"}, "closed forms against quadrature of the integral representations",
     {"gamma", "grid", "abs-tol", "rel-tol", "out"}},
    {{"analyze", "self-sim"}, "self-similarity deviation", {"H", "K", "a", "grid", "tol", "out"}},
    {{"analyze", "lamperti"}, "stationarity of the Lamperti transform",
     {"H", "K", "lags", "bases", "tol", "out"}},
    {{"analyze", "quasihelix"}, "increment-variance bounds", {"H", "K", "grid", "out"}},
    {{"analyze", "increment-limit"}, "covariance distance of shifted increments to fBm",
     {"H", "K", "T", "grid", "tol", "out"}},
    {{"analyze", "p-variation"}, "dyadic p-variation sums of a sampled path",
     with_kernel({"p", "levels", "seed", "format", "out"})},
    {{"analyze", "counterexample"}, "witness a with 1 + 2a^g - (1+a)^g < 0", {"gamma", "a", "out"}},
    {{"region"}, "PSD verdicts over an (H,K) lattice",
     {"H-range", "K-range", "steps", "grid", "rel-tol", "threads", "format", "out"}},
    {{"critical-k"}, "bracket the PSD -> NotPSD transition in K",
     {"H", "grid", "resolution", "rel-tol", "threads", "out"}},
    {{"hk-trend"}, "2HK at the critical K along increasing H",
     {"H-list", "grid", "resolution", "rel-tol", "threads", "out"}},
};
// clang-format on

const OptionDef& option_def(const std::string& name) {
    for (const auto& o : kOptions)
        if (name == o.name) return o;
    throw std::logic_error("unknown option " + name);
}

class HelpRequested : public std::exception {
public:
    explicit HelpRequested(std::string text) : text_(std::move(text)) {}
    [[nodiscard]] const std::string& text() const { return text_; }

private:
    std::string text_;
};

// ---------------------------------------------------------------------------
// Typed access to options with defaults.

class Options {
public:
    explicit Options(const RunConfig& cfg) : cfg_(cfg) {}

    [[nodiscard]] bool has(const std::string& name) const {
        return cfg_.options.count(name) > 0;
    }

    [[nodiscard]] std::string str(const std::string& name) const {
        if (auto it = cfg_.options.find(name); it != cfg_.options.end()) return it->second;
        const auto& def = option_def(name);
        if (def.fallback == nullptr) throw UsageError("missing required option --" + name);
        return def.fallback;
    }

    [[nodiscard]] std::string str_or(const std::string& name, std::string fallback) const {
        return has(name) ? str(name) : std::move(fallback);
    }

    [[nodiscard]] double real(const std::string& name) const { return to_real(name, str(name)); }

    [[nodiscard]] double real_or(const std::string& name, double fallback) const {
        return has(name) ? real(name) : fallback;
    }

    [[nodiscard]] std::uint64_t integer(const std::string& name) const {
        const auto text = str(name);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw UsageError("--" + name + ": expected a nonnegative integer, got '" + text + "'");
        return v;
    }

    [[nodiscard]] std::vector<double> reals(const std::string& name) const {
        std::vector<double> out;
        std::stringstream ss(str(name));
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_real(name, item));
        if (out.empty()) throw UsageError("--" + name + ": expected a comma-separated list");
        return out;
    }

    [[nodiscard]] std::pair<double, double> pair(const std::string& name) const {
        const auto text = str(name);
        const auto colon = text.find(':');
        if (colon == std::string::npos) throw UsageError("--" + name + ": expected lo:hi");
        return {to_real(name, text.substr(0, colon)), to_real(name, text.substr(colon + 1))};
    }

    [[nodiscard]] TimeGrid grid(const std::string& fallback) const {
        if (!has("grid") && fallback.empty()) return default_exploration_grid();
        return TimeGrid::parse(str_or("grid", fallback));
    }

    [[nodiscard]] unsigned threads() const { return static_cast<unsigned>(integer("threads")); }

    [[nodiscard]] KernelSpec kernel() const {
        const auto name = str("kernel");
        if (name == "bifbm") return KernelSpec::bifbm(real("H"), real("K"));
        if (name == "fbm") return KernelSpec::fbm(real("H"));
        if (name == "cgamma") return KernelSpec::c_gamma(real("gamma"));
        if (name == "qgamma") return KernelSpec::q_gamma(real("gamma"));
        if (name == "lei-nualart") return KernelSpec::lei_nualart_remainder(real("H"), real("K"));
        if (name == "min") return KernelSpec::min();
        throw UsageError("--kernel: unknown kernel '" + name + "'");
    }

    [[nodiscard]] bool csv() const {
        const auto f = str("format");
        if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
        return f == "csv";
    }

private:
    static double to_real(const std::string& name, const std::string& text) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
            throw UsageError("--" + name + ": expected a number, got '" + text + "'");
        return v;
    }

    const RunConfig& cfg_;
};

// ---------------------------------------------------------------------------
// Output.

class Sink {
public:
    Sink(const Options& opts, std::ostream& out) : out_(out) {
        if (opts.has("out")) path_ = opts.str("out");
    }

    void write(const std::string& bytes) const {
        if (path_.empty()) {
            out_ << bytes;
            return;
        }
        write_file(path_, bytes);
    }

    void write(const json& value) const { write(io::dump_json(value)); }

    [[nodiscard]] const std::string& path() const { return path_; }

    static void write_file(const std::string& path, const std::string& bytes) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot open output file '" + path + "'");
        f << bytes;
        if (!f) throw UsageError("cannot write output file '" + path + "'");
    }

private:
    std::ostream& out_;
    std::string path_;
};

const std::string kDefaultGrid = "geom:0.015625:64:24";

// ---------------------------------------------------------------------------
// Subcommands. Each returns an exit code.

int run_eval(const Options& o, const Sink& sink) {
    const auto spec = o.kernel();
    const double s = o.real("s");
    const double t = o.real("t");
    sink.write(json{{"kernel", spec.describe()}, {"s", s}, {"t", t}, {"value", eval_kernel(spec, s, t)}});
    return kSuccess;
}

int run_gram(const Options& o, const Sink& sink) {
    const auto gram = build_gram(o.kernel(), o.grid(kDefaultGrid), o.threads());
    if (o.csv())
        sink.write(io::matrix_csv(gram.values));
    else
        sink.write(io::to_json(gram));
    return kSuccess;
}

int run_psd_check(const Options& o, const Sink& sink) {
    const auto report = psd_check(build_gram(o.kernel(), o.grid(kDefaultGrid), o.threads()), o.real("rel-tol"));
    sink.write(io::to_json(report));
    return report.verdict == PsdVerdict::PSD ? kSuccess : kCheckFailed;
}

int run_chol(const Options& o, const Sink& sink) {
    const auto chol = cholesky_psd(build_gram(o.kernel(), o.grid(kDefaultGrid)));
    if (o.csv())
        sink.write(io::matrix_csv(chol.lower));
    else
        sink.write(io::to_json(chol));
    return kSuccess;
}

int run_sample(const Options& o, const Sink& sink) {
    const auto grid = o.grid(kDefaultGrid);
    const auto n = static_cast<std::size_t>(o.integer("paths"));
    const SeedSpec seed{o.integer("seed"), 0};
    const auto method = o.str("method");
    const unsigned threads = o.threads();

    const auto paths = [&] {
        if (method == "direct") return sample_gaussian(o.kernel(), grid, n, seed, threads);
        if (method == "bifbm-sum") return sample_bifbm_sum(o.real("H"), o.real("K"), grid, n, seed, threads);
        if (method == "fbm-decomposed") return sample_fbm_decomposed(o.real("H"), grid, n, seed, threads);
        if (method == "brownian") return sample_brownian(grid, n, seed, threads);
        throw UsageError("--method: unknown method '" + method + "'");
    }();

    if (o.csv())
        sink.write(io::paths_csv(paths));
    else
        sink.write(io::to_json(paths));
    if (!sink.path().empty())
        Sink::write_file(sink.path() + ".meta.json", io::dump_json(io::sample_metadata(paths)));
    return kSuccess;
}

int run_verify_decomp(const Options& o, const Sink& sink) {
    const double H = o.real("H");
    const double K = o.real("K");
    const double tol = o.real_or("tol", 1e-12);
    const auto grid = o.grid(kDefaultGrid);
    const auto bif = KernelSpec::bifbm(H, K);
    const auto [c_part, q_part] = bifbm_sum_components(H, K);
    const auto fbm_hk = KernelSpec::fbm(H * K);
    const auto remainder = KernelSpec::lei_nualart_remainder(H, K);
    const double weight = std::exp2(K - 1.0);

    double decomp = 0.0;
    double lei = 0.0;
    double fbm_split = 0.0;
    const bool split_applies = H * K <= 0.5;
    const auto q2h = KernelSpec::q_gamma(2.0 * H * K);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double s = grid[i];
            const double t = grid[j];
            const double r = eval_kernel(bif, s, t);
            decomp = std::max(decomp, std::abs(r - eval_kernel(c_part, s, t) - eval_kernel(q_part, s, t)) /
                                          (1.0 + std::abs(r)));
            const double f = eval_kernel(fbm_hk, s, t);
            lei = std::max(lei, std::abs(f - weight * r - eval_kernel(remainder, s, t)) / (1.0 + std::abs(f)));
            if (split_applies) {
                const double half = 0.5 * (eval_kernel(q2h, s, t) + power0(std::min(s, t), 2.0 * H * K));
                fbm_split = std::max(fbm_split, std::abs(f - half));
            }
        }
    }
    const bool pass = decomp <= tol && lei <= tol && fbm_split <= tol;
    json report{{"H", H},
                {"K", K},
                {"grid", io::to_json(grid)},
                {"tolerance", tol},
                {"decomposition_max_rel", decomp},
                {"lei_nualart_max_rel", lei},
                {"pass", pass}};
    if (split_applies) report["fbm_split_max_abs"] = fbm_split;
    sink.write(report);
    return pass ? kSuccess : kCheckFailed;
}

int run_oracle_compare(const Options& o, const Sink& sink) {
    const auto report = oracle_report(o.real("gamma"), o.grid("geom:0.25:4:8"), QuadratureConfig{},
                                      o.real("abs-tol"), o.real_or("rel-tol", 1e-6));
    sink.write(io::to_json(report));
    return report.pass() ? kSuccess : kCheckFailed;
}

int run_self_sim(const Options& o, const Sink& sink) {
    const auto r = self_similarity_deviation(o.real("H"), o.real("K"), o.real_or("a", 2.0),
                                             o.grid("geom:0.25:4:8"), o.real_or("tol", 1e-12));
    sink.write(io::to_json(r));
    return r.pass ? kSuccess : kCheckFailed;
}

int run_lamperti(const Options& o, const Sink& sink) {
    const auto lags = o.reals("lags");
    const auto bases = o.reals("bases");
    const auto r = lamperti_stationarity(o.real("H"), o.real("K"), lags, bases, o.real_or("tol", 1e-10));
    sink.write(io::to_json(r));
    return r.pass ? kSuccess : kCheckFailed;
}

int run_quasihelix(const Options& o, const Sink& sink) {
    const auto r = quasihelix_report(o.real("H"), o.real("K"), o.grid(kDefaultGrid));
    sink.write(io::to_json(r));
    return r.pass ? kSuccess : kCheckFailed;
}

int run_increment_limit(const Options& o, const Sink& sink) {
    const double H = o.real("H");
    const double K = o.real("K");
    const auto shifts = o.reals("T");
    const auto grid = o.grid("uniform:0:1:11");
    json rows = json::array();
    bool nonincreasing = true;
    double previous = INFINITY;
    double last = 0.0;
    for (double T : shifts) {
        last = increment_limit_error(H, K, T, grid);
        nonincreasing = nonincreasing && last <= previous;
        previous = last;
        rows.push_back({{"T", T}, {"error", last}});
    }
    bool pass = nonincreasing;
    if (o.has("tol")) pass = pass && last <= o.real("tol");
    sink.write(json{{"errors", rows}, {"nonincreasing", nonincreasing}, {"pass", pass}});
    return pass ? kSuccess : kCheckFailed;
}

int run_p_variation(const Options& o, const Sink& sink) {
    const auto levels = static_cast<int>(o.integer("levels"));
    if (levels > 24) throw UsageError("--levels must be at most 24");
    const auto grid = TimeGrid::uniform(0.0, 1.0, (std::size_t{1} << levels) + 1);
    const SeedSpec seed{o.integer("seed"), 0};
    const auto spec = o.kernel();
    const bool brownian = std::holds_alternative<kernel::Min>(spec.variant());
    if (!brownian && levels > 12) throw UsageError("--levels above 12 is only supported for --kernel min");
    const auto paths = brownian ? sample_brownian(grid, 1, seed) : sample_gaussian(spec, grid, 1, seed);
    const std::span<const double> path(paths.values.data(), static_cast<std::size_t>(paths.values.cols()));
    const auto sums = p_variation(path, grid, o.real("p"), levels);
    if (o.csv()) {
        sink.write(io::variation_csv(sums));
    } else {
        json rows = json::array();
        for (std::size_t l = 0; l < sums.size(); ++l) rows.push_back({{"level", l}, {"sum", sums[l]}});
        sink.write(json{{"kernel", spec.describe()}, {"p", o.real("p")}, {"sums", rows}});
    }
    return kSuccess;
}

int run_counterexample(const Options& o, const Sink& sink) {
    const double gamma = o.real("gamma");
    json report{{"gamma", gamma}};
    const double witness = find_negative_a(gamma);
    report["witness_a"] = witness;
    report["f_at_witness"] = f_counterexample(gamma, witness);
    if (o.has("a")) report["f_at_a"] = f_counterexample(gamma, o.real("a"));
    sink.write(report);
    return kSuccess;
}

int run_region(const Options& o, const Sink& sink) {
    const auto [h_lo, h_hi] = o.pair("H-range");
    const auto [k_lo, k_hi] = o.pair("K-range");
    const auto steps = o.pair("steps");
    const auto scan = scan_region({h_lo, h_hi}, {k_lo, k_hi},
                                  {static_cast<std::size_t>(steps.first), static_cast<std::size_t>(steps.second)},
                                  o.grid(""), o.real("rel-tol"), o.threads());
    if (o.csv())
        sink.write(io::region_csv(scan));
    else
        sink.write(io::to_json(scan));
    return kSuccess;
}

int run_critical_k(const Options& o, const Sink& sink) {
    const auto est = critical_k(o.real("H"), o.grid(""), o.real("resolution"), o.real("rel-tol"), o.threads());
    sink.write(io::to_json(est));
    return kSuccess;
}

int run_hk_trend(const Options& o, const Sink& sink) {
    const auto hs = o.reals("H-list");
    const auto trend = hk_trend(hs, o.grid(""), o.real("resolution"), o.real("rel-tol"), o.threads());
    sink.write(io::to_json(trend));
    return kSuccess;
}

using Runner = std::function<int(const Options&, const Sink&)>;

Runner runner_for(const std::vector<std::string>& path) {
    const std::string key = path.size() == 1 ? path[0] : path[0] + " " + path[1];
    static const std::map<std::string, Runner> table = {
        {"eval", run_eval},
        {"gram", run_gram},
        {"psd-check", run_psd_check},
        {"chol", run_chol},
        {"sample", run_sample},
        {"verify-decomp", run_verify_decomp},
        {"oracle-compare", run_oracle_compare},
        {"analyze self-sim", run_self_sim},
        {"analyze lamperti", run_lamperti},
        {"analyze quasihelix", run_quasihelix},
        {"analyze increment-limit", run_increment_limit},
        {"analyze p-variation", run_p_variation},
        {"analyze counterexample", run_counterexample},
        {"region", run_region},
        {"critical-k", run_critical_k},
        {"hk-trend", run_hk_trend},
    };
    return table.at(key);
}

}  // namespace

std::vector<std::string> RunConfig::canonical_args() const {
    std::vector<std::string> args = commands;
    for (const auto& [name, value] : options) args.push_back("--" + name + "=" + value);
    return args;
}

std::string RunConfig::canonical_string() const {
    std::string out;
    for (const auto& a : canonical_args()) {
        if (!out.empty()) out += ' ';
        out += a;
    }
    return out;
}

RunConfig parse_run_config(std::span<const std::string> args) {
    CLI::App app{"Bifractional Brownian motion covariance toolkit", "bifbm"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    struct Bound {
        std::vector<std::string> path;
        std::string name;
        CLI::Option* option;
        std::string* storage;
    };
    std::deque<std::string> storage;
    std::vector<Bound> bound;
    std::vector<std::pair<std::vector<std::string>, CLI::App*>> leaves;
    std::map<std::string, CLI::App*> groups;

    for (const auto& cmd : kCommands) {
        CLI::App* parent = &app;
        if (cmd.path.size() == 2) {
            auto& group = groups[cmd.path[0]];
            if (group == nullptr) {
                group = app.add_subcommand(cmd.path[0], "structural analyses (see subcommands)");
                group->require_subcommand(1);
            }
            parent = group;
        }
        CLI::App* sub = parent->add_subcommand(cmd.path.back(), cmd.help);
        for (const auto& name : cmd.options) {
            const auto& def = option_def(name);
            std::string help = def.help;
            if (def.fallback != nullptr) help += std::string(" [default: ") + def.fallback + "]";
            auto& slot = storage.emplace_back();
            auto* opt = sub->add_option("--" + name, slot, help);
            bound.push_back({cmd.path, name, opt, &slot});
        }
        leaves.emplace_back(cmd.path, sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n\n" + app.help());
    }

    RunConfig cfg;
    for (const auto& [path, sub] : leaves) {
        if (sub->parsed()) cfg.commands = path;
    }
    for (const auto& b : bound) {
        if (b.path == cfg.commands && b.option->count() > 0) cfg.options[b.name] = *b.storage;
    }
    return cfg;
}

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_run_config(args);
    } catch (const HelpRequested& h) {
        out << h.text();
        return kSuccess;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        const Options opts(cfg);
        const Sink sink(opts, out);
        return runner_for(cfg.commands)(opts, sink);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const GridError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    }
}

}  // namespace bifbm::cli

#include "tropreg/cli.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "tropreg/layer_io.hpp"
#include "tropreg/oracle.hpp"
#include "tropreg/parallel.hpp"

namespace tropreg::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json bound_json(const BigInt& b)
{
    if (b <= std::numeric_limits<std::int64_t>::max()) {
        return b.convert_to<std::int64_t>();
    }
    return b.str();
}

std::string fmt_double(double v)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string fmt_ms(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
}

template <class T>
json opt_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

MethodEntry bound_entry(const std::string& method, const BoundReport& r, double elapsed)
{
    MethodEntry e;
    e.method = method;
    e.bound = r.bound;
    e.branch = to_string(r.branch);
    e.elapsed_ms = elapsed;
    return e;
}

/// Closed-form bounds that apply to a whole layer, if its units are homogeneous.
std::vector<MethodEntry> layer_bound_entries(const LayerSpec& layer)
{
    const auto n = static_cast<std::int64_t>(layer.input_dim());
    const auto m = static_cast<std::int64_t>(layer.size());
    const auto& units = layer.units();
    auto all = [&](auto pred) { return std::all_of(units.begin(), units.end(), pred); };
    std::vector<MethodEntry> out;
    const auto t0 = Clock::now();
    if (all([](const Unit& u) { return u.kind == UnitKind::relu || u.kind == UnitKind::leaky_relu; })) {
        out.push_back(bound_entry("relu_bound", relu_layer_bound(n, m), ms_since(t0)));
    } else if (all([](const Unit& u) { return u.kind == UnitKind::maxout; })) {
        const auto k = units.front().poly.rank();
        if (k >= 2 && all([&](const Unit& u) { return u.poly.rank() == k; })) {
            out.push_back(bound_entry("maxout_bound", maxout_layer_bound(n, m, static_cast<std::int64_t>(k)), ms_since(t0)));
            if (k == 2) {
                out.push_back(bound_entry("relu_bound", relu_layer_bound(n, m), ms_since(t0)));
            }
        }
    }
    return out;
}

struct Options {
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
    std::string format = "human";
    std::size_t cap = kDefaultCap;
    double delta = 0.01;
    unsigned threads = 1;

    std::string kind = "relu";
    std::int64_t n = 0, m = 0, k = 0, d = 0, p = 0, face = 0;
    double alpha = 0.1;
    std::string output;

    std::string layer_path;
    std::size_t K = 1000;
    bool full_mode = false;
    bool auto_k = false;
    std::size_t angle_samples = 100000;
    double scale = 10.0;
};

RunReport run_bounds(const Options& o)
{
    RunReport r;
    const auto t0 = Clock::now();
    if (o.kind == "relu" || o.kind == "lrelu") {
        r.entries.push_back(bound_entry("relu_bound", relu_layer_bound(o.n, o.m), ms_since(t0)));
    } else if (o.kind == "maxout") {
        r.entries.push_back(bound_entry("maxout_bound", maxout_layer_bound(o.n, o.m, o.k), ms_since(t0)));
        if (o.k == 2) {
            r.entries.push_back(bound_entry("relu_bound", relu_layer_bound(o.n, o.m), ms_since(t0)));
        }
    } else if (o.kind == "conv") {
        r.entries.push_back(bound_entry("conv_bound", conv_layer_bound(o.d, o.k, o.p), ms_since(t0)));
    } else if (o.kind == "zonotope") {
        BoundReport b;
        b.bound = zonotope_face_bound(o.m, o.d, o.face);
        r.entries.push_back(bound_entry("zonotope_face_bound", b, ms_since(t0)));
    } else {
        throw ValidationError("bounds: unknown --kind \"" + o.kind + "\"");
    }
    return r;
}

RunReport run_count(const std::string& method, const Options& o, unsigned threads)
{
    RunReport r;
    const auto layer = parse_layer(o.layer_path);
    const CountOptions copts{.tol = o.tol, .cap = o.cap, .threads = threads};
    const auto t0 = Clock::now();
    MethodEntry e;
    e.method = method;
    if (method == "exact") {
        const auto res = count_regions_exact(layer, copts);
        e.count = res.count;
        e.degenerate = res.degenerate;
    } else if (method == "arrangement") {
        e.count = count_arrangement_regions(layer, copts);
    } else if (method == "sample") {
        SamplePlan plan{.K = o.K, .delta = o.delta, .mode = o.full_mode ? SampleMode::full : SampleMode::upper,
                        .seed = o.seed};
        if (o.auto_k) {
            const auto ts = Clock::now();
            const auto up = plan_upper_samples(layer, o.angle_samples, o.delta, o.seed, o.tol, o.cap, threads);
            plan.K = up.K;
            MethodEntry a;
            a.method = "required_samples_upper";
            a.count = up.N;
            a.K = up.K;
            a.delta = o.delta;
            a.seed = o.seed;
            a.elapsed_ms = ms_since(ts);
            r.entries.push_back(a);
        }
        const auto res = sample_configurations(layer, plan, o.tol, threads);
        e.method = o.full_mode ? "sample_full" : "sample_upper";
        e.count = res.configurations.size();
        e.degenerate = res.degenerate_ties;
        e.K = plan.K;
        e.delta = o.delta;
        e.seed = o.seed;
    } else if (method == "input-sample") {
        e.method = "input_sample";
        e.count = count_by_input_sampling(layer, o.K, o.seed, o.scale, o.tol, threads);
        e.K = o.K;
        e.seed = o.seed;
    }
    e.elapsed_ms = ms_since(t0);
    r.entries.push_back(e);
    for (auto& b : layer_bound_entries(layer)) {
        r.entries.push_back(std::move(b));
    }
    return r;
}

RunReport run_angles(const Options& o, unsigned threads)
{
    RunReport r;
    const auto layer = parse_layer(o.layer_path);
    auto t0 = Clock::now();
    const auto P = layer_sum_polytope(layer, o.tol, o.cap);
    const auto upper = upper_hull_vertices(P, o.tol);
    MethodEntry verts;
    verts.method = "sum_vertices";
    verts.count = P.size();
    verts.elapsed_ms = ms_since(t0);
    MethodEntry up;
    up.method = "upper_hull_vertices";
    up.count = upper.size();
    up.elapsed_ms = verts.elapsed_ms;
    r.entries.push_back(verts);
    r.entries.push_back(up);

    t0 = Clock::now();
    const auto spectrum = estimate_solid_angles(P, P.points(), o.angle_samples, o.seed, o.tol, threads);
    const double angle_ms = ms_since(t0);

    std::vector<AngleRow> rows;
    AngleSpectrum upper_spec;
    upper_spec.samples = spectrum.samples;
    for (std::size_t k = 0; k < P.size(); ++k) {
        AngleRow row{P.point(k), false, spectrum.full[k], spectrum.upper[k]};
        for (const auto& v : upper) {
            if ((v - P.point(k)).lpNorm<Eigen::Infinity>() <= o.tol) {
                row.upper_hull = true;
            }
        }
        if (row.upper_hull) {
            upper_spec.upper.push_back(spectrum.upper[k]);
        }
        rows.push_back(std::move(row));
    }
    r.angles = std::move(rows);
    r.angle_samples = spectrum.samples;

    auto k_entry = [&](const std::string& method, auto compute) {
        MethodEntry e;
        e.method = method;
        e.delta = o.delta;
        e.seed = o.seed;
        e.elapsed_ms = angle_ms;
        try {
            e.K = compute();
        } catch (const UnboundedSampleSize&) {
            // left null: some cone was never hit
        }
        r.entries.push_back(e);
    };
    k_entry("required_samples_full", [&] { return required_samples_full(spectrum, P.size(), o.delta); });
    k_entry("required_samples_upper", [&] { return required_samples_upper(upper_spec, upper.size(), o.delta); });
    return r;
}

} // namespace

json to_json(const RunReport& report)
{
    json results = json::array();
    for (const auto& e : report.entries) {
        results.push_back({
            {"method", e.method},
            {"count", opt_json(e.count)},
            {"bound", e.bound ? bound_json(*e.bound) : json(nullptr)},
            {"branch", opt_json(e.branch)},
            {"seed", opt_json(e.seed)},
            {"degenerate", opt_json(e.degenerate)},
            {"K", opt_json(e.K)},
            {"delta", opt_json(e.delta)},
            {"elapsed_ms", e.elapsed_ms},
        });
    }
    json doc = {{"command", report.command}, {"seed", report.seed}, {"results", std::move(results)}};
    if (report.angles) {
        json rows = json::array();
        for (const auto& a : *report.angles) {
            rows.push_back({{"point", std::vector<double>(a.point.data(), a.point.data() + a.point.size())},
                            {"upper_hull", a.upper_hull},
                            {"full", a.full},
                            {"upper", a.upper}});
        }
        doc["angles"] = {{"samples", report.angle_samples}, {"vertices", std::move(rows)}};
    }
    return doc;
}

std::string to_csv(const RunReport& report)
{
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& e : report.entries) {
        os << e.method << ',';
        if (e.count) os << *e.count;
        os << ',';
        if (e.bound) os << e.bound->str();
        os << ',';
        if (e.branch) os << *e.branch;
        os << ',';
        if (e.seed) os << *e.seed;
        os << ',';
        if (e.degenerate) os << *e.degenerate;
        os << ',';
        if (e.K) os << *e.K;
        os << ',';
        if (e.delta) os << fmt_double(*e.delta);
        os << ',' << fmt_ms(e.elapsed_ms) << '\n';
    }
    return os.str();
}

std::string to_human(const RunReport& report)
{
    std::ostringstream os;
    for (const auto& e : report.entries) {
        os << e.method << ':';
        if (e.count) os << ' ' << *e.count;
        if (e.bound) os << ' ' << e.bound->str();
        if (e.branch) os << " [" << *e.branch << ']';
        if (e.K) os << " K=" << *e.K;
        if (e.delta) os << " delta=" << *e.delta;
        if (e.degenerate) os << " degenerate=" << *e.degenerate;
        if (e.seed) os << " seed=" << *e.seed;
        os << " (" << std::fixed << std::setprecision(2) << e.elapsed_ms << " ms)" << std::defaultfloat << '\n';
    }
    if (report.angles) {
        os << "angles over " << report.angle_samples << " samples (point | full | upper | upper-hull):\n";
        for (const auto& a : *report.angles) {
            os << "  (";
            for (Eigen::Index i = 0; i < a.point.size(); ++i) {
                os << (i ? ", " : "") << a.point(i);
            }
            os << ") | " << a.full << " | " << a.upper << " | " << (a.upper_hull ? "yes" : "no") << '\n';
        }
    }
    return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Linear-region counting for piecewise-linear layers via tropical geometry", "tropreg"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--tol", o.tol, "Absolute tolerance for ties and strict margins")->check(CLI::NonNegativeNumber);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
    app.add_option("--cap", o.cap, "Enumeration cap on candidate configurations")->check(CLI::PositiveNumber);
    app.add_option("--delta", o.delta, "Failure probability for sample-size calculations")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--threads", o.threads, "Worker threads (TROPICAL_REGIONS_THREADS overrides)");

    auto* bounds = app.add_subcommand("bounds", "Closed-form region bounds");
    bounds->fallthrough();
    bounds->add_option("--kind", o.kind, "relu | lrelu | maxout | conv | zonotope")
        ->check(CLI::IsMember({"relu", "lrelu", "maxout", "conv", "zonotope"}));
    bounds->add_option("-n", o.n, "Input dimension");
    bounds->add_option("-m", o.m, "Output units (zonotope: generators)");
    bounds->add_option("-k", o.k, "Maxout rank / conv filter size");
    bounds->add_option("-d", o.d, "Conv image side / zonotope ambient dimension");
    bounds->add_option("-p", o.p, "Conv padding");
    bounds->add_option("--face", o.face, "Zonotope face dimension");

    auto* count = app.add_subcommand("count", "Count linear regions of a layer file");
    count->fallthrough();
    count->require_subcommand(1);
    std::string count_method;
    for (const char* name : {"exact", "arrangement", "sample", "input-sample"}) {
        auto* sub = count->add_subcommand(name);
        sub->fallthrough();
        sub->add_option("layer", o.layer_path, "Layer JSON file")->required()->check(CLI::ExistingFile);
        sub->callback([&count_method, name] { count_method = name; });
        if (std::string(name) == "sample" || std::string(name) == "input-sample") {
            sub->add_option("-K", o.K, "Number of samples")->check(CLI::PositiveNumber);
        }
        if (std::string(name) == "sample") {
            auto* full = sub->add_flag("--full", o.full_mode, "Max and min per direction (all vertices)");
            sub->add_flag("--upper", "Reflect directions into the upper half space (default)")->excludes(full);
            sub->add_flag("--auto-k", o.auto_k, "Choose K from angle estimates at confidence 1 - delta");
            sub->add_option("--angle-samples", o.angle_samples, "Monte-Carlo samples for --auto-k");
        }
        if (std::string(name) == "input-sample") {
            sub->add_option("--scale", o.scale, "Standard deviation of sampled inputs")->check(CLI::PositiveNumber);
        }
    }

    auto* angles = app.add_subcommand("angles", "Normal-cone solid angles of the layer's sum polytope");
    angles->fallthrough();
    angles->add_option("layer", o.layer_path, "Layer JSON file")->required()->check(CLI::ExistingFile);
    angles->add_option("--samples", o.angle_samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("gen", "Generate a random layer file");
    gen->fallthrough();
    std::string gen_kind = "relu";
    gen->add_option("--kind", gen_kind, "relu | lrelu | maxout")->check(CLI::IsMember({"relu", "lrelu", "maxout"}));
    gen->add_option("-n", o.n, "Input dimension")->required();
    gen->add_option("-m", o.m, "Units")->required();
    gen->add_option("-k", o.k, "Maxout rank");
    gen->add_option("--alpha", o.alpha, "Leaky ReLU slope");
    gen->add_option("-o,--output", o.output, "Output path (stdout if omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return ExitCode::validation;
    }

    const unsigned threads = resolve_threads(o.threads);
    std::string command;
    for (const auto& a : args) {
        command += (command.empty() ? "" : " ") + a;
    }

    try {
        RunReport report;
        if (bounds->parsed()) {
            report = run_bounds(o);
        } else if (count->parsed()) {
            report = run_count(count_method, o, threads);
        } else if (angles->parsed()) {
            report = run_angles(o, threads);
        } else if (gen->parsed()) {
            if (o.n < 1 || o.m < 1) {
                throw ValidationError("gen: -n and -m must be at least 1");
            }
            const auto t0 = Clock::now();
            const auto layer = generate_layer(parse_unit_kind(gen_kind), static_cast<std::size_t>(o.n),
                                              static_cast<std::size_t>(o.m), static_cast<std::size_t>(o.k), o.seed,
                                              o.alpha);
            if (o.output.empty()) {
                out << serialize_layer(layer);
                return ExitCode::ok;
            }
            write_layer(o.output, layer);
            MethodEntry e;
            e.method = "gen";
            e.count = layer.size();
            e.seed = o.seed;
            e.elapsed_ms = ms_since(t0);
            report.entries.push_back(e);
        }
        report.command = command;
        report.seed = o.seed;
        if (o.format == "json") {
            out << to_json(report).dump(2) << '\n';
        } else if (o.format == "csv") {
            out << to_csv(report);
        } else {
            out << to_human(report);
        }
        return ExitCode::ok;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::cap_exceeded;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::validation;
    } catch (const UnboundedSampleSize& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::failure;
    }
}

} // namespace tropreg::cli

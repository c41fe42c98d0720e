#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermi/chart.hpp"
#include "fermi/cosmology.hpp"
#include "fermi/errors.hpp"
#include "fermi/geodesics.hpp"
#include "fermi/kinematics.hpp"
#include "fermi/metric.hpp"
#include "fermi/table_io.hpp"
#include "fermi/verification.hpp"

namespace fermi::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::string model = "milne";
    double alpha = kNaN;
    double h0 = 1.0;
    std::string table;
    std::optional<int> k;
    std::string format = "csv";
    std::string output;
    bool meta = false;
    NumericsConfig numerics;
    std::string command_line;
};

struct Row {
    std::vector<double> values;
    std::string error;
};

struct Table {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<Row> rows;
    bool with_error = false;
};

Cosmology build_cosmology(const RunConfig& rc) {
    const auto pick_k = [&](int fallback) { return rc.k.value_or(fallback); };
    if (rc.model == "milne") return make_cosmology(make_power_law(1.0), pick_k(-1), "milne");
    if (rc.model == "radiation") return make_cosmology(make_power_law(0.5), pick_k(0), "radiation");
    if (rc.model == "matter") return make_cosmology(make_power_law(2.0 / 3.0), pick_k(0), "matter");
    if (rc.model == "de-sitter") return make_cosmology(make_exponential(rc.h0), pick_k(0), "de-sitter");
    if (rc.model == "power-law") {
        if (std::isnan(rc.alpha)) throw DomainError("--model power-law needs --alpha");
        return make_cosmology(make_power_law(rc.alpha), pick_k(0), "power-law");
    }
    if (rc.model == "tabulated") {
        if (rc.table.empty()) throw DomainError("--model tabulated needs --table");
        const std::vector<ScaleSample> samples = load_samples(rc.table);
        return make_cosmology(make_tabulated(samples), pick_k(0), "tabulated");
    }
    throw DomainError("unknown model '" + rc.model + "'");
}

std::string number(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

nlohmann::json model_header(const RunConfig& rc, const Cosmology& cosmo) {
    nlohmann::json m{{"name", rc.model}, {"k", cosmo.k}};
    switch (cosmo.model.family()) {
        case ModelFamily::power_law: m["alpha"] = cosmo.model.parameter(); break;
        case ModelFamily::exponential: m["h0"] = cosmo.model.parameter(); break;
        case ModelFamily::tabulated: m["table"] = rc.table; break;
    }
    m["global_chart"] = cosmo.model.global_chart();
    return m;
}

std::string render(const Table& table, const RunConfig& rc, const Cosmology& cosmo) {
    std::ostringstream os;
    if (rc.format == "json") {
        nlohmann::json cols = table.columns;
        if (table.with_error) cols.push_back("error");
        nlohmann::json doc{{"schema", {{"kind", table.kind}, {"version", kSchemaVersion}, {"columns", cols}}},
                           {"model", model_header(rc, cosmo)}};
        if (rc.meta) doc["meta"] = {{"command", rc.command_line}, {"generated", timestamp()}};
        nlohmann::json records = nlohmann::json::array();
        for (const Row& row : table.rows) {
            nlohmann::json rec = nlohmann::json::object();
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
                const double v = row.values[i];
                rec[table.columns[i]] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
            }
            if (table.with_error) {
                rec["error"] = row.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(row.error);
            }
            records.push_back(std::move(rec));
        }
        doc["records"] = std::move(records);
        os << doc.dump(2) << '\n';
        return os.str();
    }
    if (rc.meta) {
        os << "# command: " << rc.command_line << '\n';
        os << "# generated: " << timestamp() << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    if (table.with_error) os << ",error";
    os << '\n';
    for (const Row& row : table.rows) {
        for (std::size_t i = 0; i < row.values.size(); ++i) os << (i ? "," : "") << number(row.values[i]);
        if (table.with_error) os << ',' << csv_field(row.error);
        os << '\n';
    }
    return os.str();
}

void emit(const std::string& text, const RunConfig& rc, std::ostream& out) {
    if (rc.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(rc.output, std::ios::binary);
    if (!file) throw DomainError("cannot open output file " + rc.output);
    file << text;
}

// Transform commands.

struct TransformArgs {
    double t = kNaN, chi = kNaN, tau = kNaN, rho = kNaN, theta = 0.0, phi = 0.0;
};

Table to_fermi(const Cosmology& cosmo, const TransformArgs& a, const NumericsConfig& cfg) {
    const FermiEvent ev = fermi_from_rw(cosmo, {a.t, a.chi, a.theta, a.phi}, cfg);
    const double ratio = cosmo.model.a(ev.tau) / cosmo.model.a(a.t);
    return {"transform-to-fermi",
            {"t", "chi", "theta", "phi", "tau", "rho", "sigma", "rho_slice"},
            {{{a.t, a.chi, a.theta, a.phi, ev.tau, ev.rho, ratio * ratio, slice_radius(cosmo, ev.tau, cfg)}, {}}}};
}

Table to_rw(const Cosmology& cosmo, const TransformArgs& a, const NumericsConfig& cfg) {
    const double u = u_of_rho(cosmo, a.tau, a.rho, cfg);
    const RWEvent ev{t_of_u(cosmo, a.tau, u), chi_of_u(cosmo, a.tau, u, cfg), a.theta, a.phi};
    return {"transform-to-rw",
            {"tau", "rho", "theta", "phi", "t", "chi", "sigma", "rho_slice"},
            {{{a.tau, a.rho, a.theta, a.phi, ev.t, ev.chi, 1.0 + u * u, slice_radius(cosmo, a.tau, cfg)}, {}}}};
}

// Sweep commands.

struct SweepArgs {
    double tau = 1.0;
    double from = kNaN;
    double to = kNaN;
    int n = 50;
    std::string spacing = "linear";
};

std::vector<double> sweep_grid(const SweepArgs& s) {
    if (s.n < 2) throw DomainError("sweep needs --n >= 2");
    std::vector<double> grid(s.n);
    const bool geometric = s.spacing == "geometric";
    if (geometric && !(s.from > 0.0 && s.to > 0.0)) {
        throw DomainError("geometric spacing needs positive --from and --to");
    }
    for (int i = 0; i < s.n; ++i) {
        const double f = static_cast<double>(i) / (s.n - 1);
        grid[i] = geometric ? s.from * std::pow(s.to / s.from, f) : s.from + (s.to - s.from) * f;
    }
    grid.back() = s.to;
    return grid;
}

Table sweep(const std::string& quantity, const Cosmology& cosmo, const SweepArgs& s,
            const NumericsConfig& cfg) {
    using RowFn = std::function<std::vector<double>(double)>;
    Table table;
    table.kind = "sweep-" + quantity;
    table.with_error = true;
    RowFn fn;
    if (quantity == "geodesic") {
        table.columns = {"sigma", "t", "chi", "rho"};
        fn = [&](double sigma) -> std::vector<double> {
            check_sigma(cosmo, s.tau, sigma);
            const double u = std::sqrt(sigma - 1.0);
            return {sigma, t_of_u(cosmo, s.tau, u), chi_of_u(cosmo, s.tau, u, cfg), rho_of_u(cosmo, s.tau, u, cfg)};
        };
    } else if (quantity == "metric") {
        table.columns = {"rho", "sigma", "g_tau_tau", "g_rho_rho", "ang", "lambda"};
        fn = [&](double rho) -> std::vector<double> {
            const double u = u_of_rho(cosmo, s.tau, rho, cfg);
            const PolarMetric g = metric_polar_u(cosmo, s.tau, u, cfg);
            return {rho, 1.0 + u * u, g.g_tau_tau, g.g_rho_rho, g.ang, lambda_k(cosmo, s.tau, rho, cfg)};
        };
    } else if (quantity == "velocity") {
        table.columns = {"chi0", "sigma0", "rho", "v_fermi", "v_hubble"};
        fn = [&](double chi0) -> std::vector<double> {
            const VelocityReport r = fermi_speed(cosmo, s.tau, chi0, cfg);
            return {chi0, r.sigma0, r.rho, r.v_fermi, r.v_hubble};
        };
    } else {
        table.columns = {"tau", "rho_slice", "hubble_radius"};
        fn = [&](double tau) -> std::vector<double> {
            return {tau, proper_radius(cosmo, tau, cfg), 1.0 / hubble(cosmo, tau)};
        };
    }
    for (double x : sweep_grid(s)) {
        Row row;
        try {
            row.values = fn(x);
        } catch (const Error& e) {
            row.values.assign(table.columns.size(), kNaN);
            row.values[0] = x;
            row.error = e.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// Verification report.

int report(const std::vector<verify::CheckResult>& results, const std::string& format, const RunConfig& rc,
           std::ostream& out) {
    int failures = 0;
    for (const auto& r : results) failures += r.passed ? 0 : 1;
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& r : results) {
            checks.push_back({{"name", r.name},
                              {"passed", r.passed},
                              {"max_residual", std::isfinite(r.max_residual) ? nlohmann::json(r.max_residual)
                                                                             : nlohmann::json(nullptr)},
                              {"tolerance", r.tolerance},
                              {"detail", r.detail}});
        }
        nlohmann::json doc{{"schema", {{"kind", "verify"}, {"version", kSchemaVersion}}},
                           {"checks", checks},
                           {"passed", failures == 0}};
        os << doc.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            char line[256];
            std::snprintf(line, sizeof line, "%s  %-34s max_residual=%-12.4g tolerance=%.1g", r.passed ? "PASS" : "FAIL",
                          r.name.c_str(), r.max_residual, r.tolerance);
            os << line;
            if (!r.detail.empty()) os << "  (" << r.detail << ')';
            os << '\n';
        }
        os << results.size() - failures << '/' << results.size() << " checks passed\n";
    }
    emit(os.str(), rc, out);
    return failures == 0 ? kOk : kVerifyFailed;
}

void add_model_options(CLI::App* cmd, RunConfig& rc) {
    cmd->add_option("--model", rc.model, "Cosmology")
        ->check(CLI::IsMember({"milne", "de-sitter", "power-law", "radiation", "matter", "tabulated"}))
        ->capture_default_str();
    cmd->add_option("--alpha", rc.alpha, "Power-law exponent, a(t) = t^alpha");
    cmd->add_option("--h0", rc.h0, "de Sitter Hubble constant")->capture_default_str();
    cmd->add_option("--table", rc.table, "Sampled scale factor (CSV t,a or JSON [[t,a],...])");
    cmd->add_option("--k", rc.k, "Spatial curvature sign (0 or -1); Milne defaults to -1");
    cmd->add_option("--quad-rel-tol", rc.numerics.quad_rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--root-tol", rc.numerics.root_tol, "Root-finder tolerance");
    cmd->add_option("--max-iter", rc.numerics.max_iter, "Quadrature and root-finder iteration cap");
    cmd->add_option("-o,--output", rc.output, "Write to this file instead of standard output");
}

void add_table_options(CLI::App* cmd, RunConfig& rc) {
    add_model_options(cmd, rc);
    cmd->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_flag("--meta", rc.meta, "Add command and timestamp headers");
}

int classify(const std::exception& e, std::ostream& err) {
    err << "fermi: " << e.what() << '\n';
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ValidationError*>(&e)) return kDomain;
    return kAccuracy;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fermi coordinates for comoving observers in Robertson-Walker cosmologies", "fermi"};
    app.require_subcommand(1);
    RunConfig rc;
    for (int i = 0; i < argc; ++i) rc.command_line += (i ? " " : "") + std::string(argv[i]);

    TransformArgs targs;
    auto* transform = app.add_subcommand("transform", "Map a single event between charts");
    transform->require_subcommand(1);
    auto* to_fermi_cmd = transform->add_subcommand("to-fermi", "Robertson-Walker (t, chi) to Fermi (tau, rho)");
    add_table_options(to_fermi_cmd, rc);
    to_fermi_cmd->add_option("--t", targs.t, "Synchronous time")->required();
    to_fermi_cmd->add_option("--chi", targs.chi, "Comoving radial coordinate")->required();
    to_fermi_cmd->add_option("--theta", targs.theta);
    to_fermi_cmd->add_option("--phi", targs.phi);
    auto* to_rw_cmd = transform->add_subcommand("to-rw", "Fermi (tau, rho) to Robertson-Walker (t, chi)");
    add_table_options(to_rw_cmd, rc);
    to_rw_cmd->add_option("--tau", targs.tau, "Fermi time")->required();
    to_rw_cmd->add_option("--rho", targs.rho, "Proper distance")->required();
    to_rw_cmd->add_option("--theta", targs.theta);
    to_rw_cmd->add_option("--phi", targs.phi);

    SweepArgs sargs;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate a quantity over a range");
    sweep_cmd->require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> quantities{
        {"geodesic", "t, chi, rho against sigma at fixed tau"},
        {"metric", "polar metric and lambda_k against rho at fixed tau"},
        {"velocity", "Fermi and Hubble speeds against chi0 at fixed tau"},
        {"radius", "slice radius and Hubble radius against tau"}};
    for (const auto& [name, help] : quantities) {
        auto* q = sweep_cmd->add_subcommand(name, help);
        add_table_options(q, rc);
        if (name != "radius") q->add_option("--tau", sargs.tau, "Fermi time")->capture_default_str();
        q->add_option("--from", sargs.from, "First sample")->required();
        q->add_option("--to", sargs.to, "Last sample")->required();
        q->add_option("--n", sargs.n, "Number of samples")->check(CLI::Range(2, 10000000))->capture_default_str();
        q->add_option("--spacing", sargs.spacing, "Grid spacing")
            ->check(CLI::IsMember({"linear", "geometric"}))
            ->capture_default_str();
    }

    std::string suite = "all";
    std::string verify_format = "text";
    bool verify_model = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run built-in verification suites");
    verify_cmd->add_option("suite", suite, "closed-forms, ode-oracle, invariants or all")
        ->check(CLI::IsMember({"closed-forms", "ode-oracle", "invariants", "all"}))
        ->capture_default_str();
    add_model_options(verify_cmd, rc);
    verify_cmd->add_option("--format", verify_format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (verify_cmd->parsed()) verify_model = verify_cmd->count("--model") > 0;

    try {
        rc.numerics.validate();
        if (verify_cmd->parsed()) {
            std::optional<Cosmology> model;
            if (verify_model) model = build_cosmology(rc);
            return report(verify::run_suite(suite, model, rc.numerics), verify_format, rc, out);
        }
        const Cosmology cosmo = build_cosmology(rc);
        Table table;
        if (to_fermi_cmd->parsed()) {
            table = to_fermi(cosmo, targs, rc.numerics);
        } else if (to_rw_cmd->parsed()) {
            table = to_rw(cosmo, targs, rc.numerics);
        } else {
            for (auto* q : sweep_cmd->get_subcommands()) {
                if (q->parsed()) table = sweep(q->get_name(), cosmo, sargs, rc.numerics);
            }
        }
        emit(render(table, rc, cosmo), rc, out);
        return kOk;
    } catch (const Error& e) {
        return classify(e, err);
    }
}

}  // namespace fermi::cli

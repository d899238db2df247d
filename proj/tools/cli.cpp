#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperseries/eigen_recursion.hpp"
#include "hyperseries/polynomial_guard.hpp"
#include "hyperseries/temporal.hpp"
#include "hyperseries/verification.hpp"

namespace hyperseries::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double residual_contract = 1e-10;
constexpr double temporal_contract = 1e-10;

// A failure that is already fully described by its message and exit code.
struct Exit {
    int code;
    std::string message;
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

complex parse_complex(const std::string &text, const std::string &what)
{
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char sep = 0;
    in >> re;
    if (in && in >> sep) {
        if (sep != ',' || !(in >> im)) {
            throw Exit{invalid_input, what + ": expected RE or RE,IM, got '" + text + "'"};
        }
    }
    if (in.fail() && !in.eof()) {
        throw Exit{invalid_input, what + ": expected RE or RE,IM, got '" + text + "'"};
    }
    std::string rest;
    if (std::getline(in, rest) && !rest.empty()) {
        throw Exit{invalid_input, what + ": trailing characters in '" + text + "'"};
    }
    return {re, im};
}

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

// --params-json: a JSON object whose keys are long option names. Values fill
// options not given on the command line; numbers and strings are passed
// through, [re, im] pairs become "re,im", true enables a flag.
void expand_params_json(std::vector<std::string> &args)
{
    std::optional<std::string> blob;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--params-json" && i + 1 < args.size()) {
            blob = args[i + 1];
        } else if (args[i].rfind("--params-json=", 0) == 0) {
            blob = args[i].substr(14);
        }
    }
    if (!blob) {
        return;
    }
    std::string text = *blob;
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) {
            throw Exit{invalid_input, "cannot read params file " + text.substr(1)};
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    json params;
    try {
        params = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Exit{invalid_input, std::string("--params-json: ") + e.what()};
    }
    if (!params.is_object()) {
        throw Exit{invalid_input, "--params-json must be a JSON object"};
    }
    auto given = [&](const std::string &flag) {
        return std::any_of(args.begin(), args.end(),
                           [&](const std::string &a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    std::vector<std::string> extra;
    for (const auto &[key, value] : params.items()) {
        const std::string flag = "--" + key;
        if (given(flag)) {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                extra.push_back(flag);
            }
        } else if (value.is_number_integer()) {
            extra.insert(extra.end(), {flag, std::to_string(value.get<long long>())});
        } else if (value.is_number()) {
            extra.insert(extra.end(), {flag, num(value.get<double>())});
        } else if (value.is_string()) {
            extra.insert(extra.end(), {flag, value.get<std::string>()});
        } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
            extra.insert(extra.end(), {flag, num(value[0].get<double>()) + "," + num(value[1].get<double>())});
        } else {
            throw Exit{invalid_input, "--params-json: unsupported value for '" + key + "'"};
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
}

struct Output {
    std::string path;
    std::string format = "json";
};

struct EigenFlags {
    EigenParams p;
    int order = 32;
};

struct Grid {
    std::optional<double> lo, hi;
    int count = 20;

    std::vector<double> points(double default_lo, double default_hi) const
    {
        const double a = lo.value_or(default_lo);
        const double b = hi.value_or(default_hi);
        if (count < 1 || (count > 1 && !(b > a))) {
            throw Exit{invalid_input, "grid needs count >= 1 and max > min"};
        }
        std::vector<double> xs(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            xs[static_cast<std::size_t>(i)] = count == 1 ? a : a + (b - a) * i / (count - 1);
        }
        return xs;
    }
};

void add_output(CLI::App *cmd, Output &o)
{
    cmd->add_option("--out", o.path, "Write the data document to PATH instead of stdout");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--params-json", "JSON object of option values (or @file)");
}

void add_eigen(CLI::App *cmd, EigenFlags &f)
{
    cmd->add_option("--n", f.p.n, "Nonlinearity exponent n >= 2")->capture_default_str();
    cmd->add_option("--lambda", f.p.lambda, "Eigenvalue (nonzero)")->capture_default_str();
    cmd->add_option("--delta", f.p.delta_prime, "delta' > 0")->capture_default_str();
    cmd->add_option("--a0", f.p.a0, "u(center)")->capture_default_str();
    cmd->add_option("--a1", f.p.a1, "u'(center)")->capture_default_str();
    cmd->add_option("--center", f.p.center, "Expansion center")->capture_default_str();
    cmd->add_option("--order", f.order, "Truncation order N >= 2")->capture_default_str();
}

void add_grid(CLI::App *cmd, const std::string &name, Grid &g)
{
    cmd->add_option("--" + name + "-min", g.lo, "First " + name + " grid point");
    cmd->add_option("--" + name + "-max", g.hi, "Last " + name + " grid point");
    cmd->add_option("--" + name + "-count", g.count, "Number of " + name + " grid points")->capture_default_str();
}

json eigen_json(const EigenFlags &f)
{
    return {{"n", f.p.n},          {"lambda", f.p.lambda}, {"delta_prime", f.p.delta_prime}, {"a0", f.p.a0},
            {"a1", f.p.a1},        {"center", f.p.center}, {"order", f.order}};
}

void check_eigen(const EigenFlags &f)
{
    if (f.order < 2) {
        throw Exit{invalid_input, "order must be >= 2"};
    }
    validate(f.p);
}

// Either JSON or CSV text for the data document, plus an optional summary
// printed on stdout when the document goes to a file.
struct Document {
    json data;
    std::string csv;
    json summary;
    int code = ok;
};

void emit(const Document &doc, const Output &o, std::ostream &out)
{
    const std::string text = o.format == "csv" ? doc.csv : doc.data.dump(2) + "\n";
    if (o.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.path, std::ios::binary);
    if (!file || !(file << text)) {
        throw Exit{invalid_input, "cannot write " + o.path};
    }
    if (!doc.summary.is_null()) {
        out << doc.summary.dump() << "\n";
    }
}

Document cmd_coeffs(const EigenFlags &f)
{
    check_eigen(f);
    const auto s = eigen_coefficients(f.p, f.order);
    const auto r = eigen_residual(s, f.p);

    Document doc;
    doc.data["command"] = "coeffs";
    doc.data["params"] = eigen_json(f);
    doc.data["coefficients"] = std::vector<double>(s.coeffs().begin(), s.coeffs().end());
    if (f.order >= 8) {
        doc.data["radius_estimate"] = radius_estimate(s);
        doc.data["effective_radius"] = effective_radius(s, f.p);
    } else {
        doc.data["radius_estimate"] = nullptr;
        doc.data["effective_radius"] = nullptr;
    }
    doc.data["residual_max"] = r.max_abs;
    doc.data["residual_scale"] = r.scale;
    doc.data["residual_tolerance"] = residual_contract * r.scale;
    doc.data["contract_ok"] = r.within(residual_contract);
    doc.code = r.within(residual_contract) ? ok : contract_violation;

    doc.csv = "index,coefficient\n";
    for (Eigen::Index i = 0; i <= s.order(); ++i) {
        doc.csv += std::to_string(i) + "," + num(s[i]) + "\n";
    }
    doc.summary = {{"command", "coeffs"}, {"residual_max", r.max_abs}, {"contract_ok", r.within(residual_contract)}};
    return doc;
}

Document cmd_verify(std::uint64_t seed, bool tamper)
{
    const auto checks = run_verification({seed, tamper});
    Document doc;
    doc.data["command"] = "verify";
    doc.data["seed"] = seed;
    doc.data["tamper"] = tamper;
    doc.data["checks"] = json::array();
    doc.csv = "name,max_error,tolerance,pass\n";
    bool all = true;
    for (const auto &c : checks) {
        doc.data["checks"].push_back(
            {{"name", c.name}, {"max_error", c.max_error}, {"tolerance", c.tolerance}, {"pass", c.pass}, {"detail", c.detail}});
        doc.csv += c.name + "," + num(c.max_error) + "," + num(c.tolerance) + "," + (c.pass ? "true" : "false") + "\n";
        all = all && c.pass;
    }
    doc.data["all_pass"] = all;
    doc.summary = {{"command", "verify"}, {"all_pass", all}};
    doc.code = all ? ok : contract_violation;
    return doc;
}

Document cmd_eigenfun(const EigenFlags &f, const Grid &grid, std::ostream &err)
{
    check_eigen(f);
    const auto s = eigen_coefficients(f.p, f.order);
    const double trusted = 0.5 * effective_radius(s, f.p);
    const auto op = f.p.op();

    double lo = 0.0, hi = 0.0;
    if (!grid.lo || !grid.hi) {
        const auto range = trusted_eta_range(f.p, f.order);
        if (!range) {
            throw Exit{invalid_input, "no eta lies in the trusted disk of this center; pass --eta-min and --eta-max"};
        }
        std::tie(lo, hi) = *range;
    }
    const auto etas = grid.points(lo, hi);

    Document doc;
    doc.data["command"] = "eigenfun";
    doc.data["params"] = eigen_json(f);
    doc.data["trusted_radius"] = trusted;
    doc.data["rows"] = json::array();
    doc.csv = "eta,z,u,trusted\n";
    int untrusted = 0;
    for (double eta : etas) {
        const auto v = eval_in_eta(s, op, eta, trusted);
        untrusted += v.trusted ? 0 : 1;
        doc.data["rows"].push_back({{"eta", eta}, {"z", v.z}, {"u", v.value}, {"trusted", v.trusted}});
        doc.csv += num(eta) + "," + num(v.z) + "," + num(v.value) + "," + (v.trusted ? "true" : "false") + "\n";
    }
    doc.data["untrusted_count"] = untrusted;
    if (untrusted > 0) {
        err << "warning: " << untrusted << " of " << etas.size() << " rows lie outside the trusted radius\n";
    }
    doc.summary = {{"command", "eigenfun"}, {"rows", etas.size()}, {"untrusted_count", untrusted}};
    return doc;
}

struct TemporalFlags {
    std::optional<std::string> A1;
    std::string A2 = "-1";
    std::optional<double> omega_over_alpha;
    std::optional<std::string> c;
    std::string f0 = "0.5";
    std::optional<int> branch;
    bool real = false;
};

complex rate(const TemporalFlags &t)
{
    return t.omega_over_alpha ? periodic_rate(*t.omega_over_alpha) : parse_complex(t.A2, "--A2");
}

// c given directly, or inverted from f0 with a branch that reproduces it.
TemporalParams temporal_params(int n, complex A1, const TemporalFlags &t)
{
    const complex A2 = rate(t);
    TemporalParams p;
    if (t.c) {
        p = {n, A1, A2, parse_complex(*t.c, "--c"), 0};
        validate(p);
    } else {
        p = with_initial_value(n, A1, A2, parse_complex(t.f0, "--f0"));
    }
    if (t.branch) {
        p.branch = *t.branch;
    }
    return p;
}

json temporal_json(const TemporalParams &p)
{
    return {{"n", p.n}, {"A1", complex_json(p.A1)}, {"A2", complex_json(p.A2)}, {"c", complex_json(p.c)}, {"branch", p.branch}};
}

Document cmd_pde(const EigenFlags &f, const TemporalFlags &tf, const Grid &eta_grid, const Grid &t_grid,
                 double step_scale)
{
    check_eigen(f);
    const complex A1 = tf.A1 ? parse_complex(*tf.A1, "--A1") : complex(f.p.lambda);
    const auto tp = temporal_params(f.p.n, A1, tf);

    double lo = 0.0, hi = 0.0;
    if (!eta_grid.lo || !eta_grid.hi) {
        const auto range = trusted_eta_range(f.p, f.order);
        if (!range) {
            throw Exit{invalid_input, "no eta lies in the trusted disk of this center; pass --eta-min and --eta-max"};
        }
        std::tie(lo, hi) = *range;
    }
    const auto etas = eta_grid.points(lo, hi);
    const auto ts = t_grid.points(0.0, 1.0);
    const auto sol = separable_solution(tp, f.p, etas, ts, {f.order, step_scale});
    const bool pass = sol.residual_max <= sol.tolerance_budget;

    Document doc;
    doc.data["command"] = "pde";
    doc.data["eigen"] = eigen_json(f);
    doc.data["temporal"] = temporal_json(tp);
    doc.data["eta_grid"] = etas;
    doc.data["t_grid"] = ts;
    json values = json::array(), residual = json::array();
    doc.csv = "eta,t,re,im,residual\n";
    for (Eigen::Index i = 0; i < sol.values.rows(); ++i) {
        json vrow = json::array(), rrow = json::array();
        for (Eigen::Index j = 0; j < sol.values.cols(); ++j) {
            vrow.push_back(complex_json(sol.values(i, j)));
            rrow.push_back(sol.residual(i, j));
            doc.csv += num(etas[static_cast<std::size_t>(i)]) + "," + num(ts[static_cast<std::size_t>(j)]) + ","
                       + num(sol.values(i, j).real()) + "," + num(sol.values(i, j).imag()) + ","
                       + num(sol.residual(i, j)) + "\n";
        }
        values.push_back(std::move(vrow));
        residual.push_back(std::move(rrow));
    }
    doc.data["values"] = std::move(values);
    doc.data["residual"] = std::move(residual);
    doc.data["residual_max"] = sol.residual_max;
    doc.data["truncation_bound"] = sol.truncation_bound;
    doc.data["stencil_bound"] = sol.stencil_bound;
    doc.data["tolerance_budget"] = sol.tolerance_budget;
    doc.data["trusted_radius"] = sol.trusted_radius;
    doc.data["pass"] = pass;
    doc.summary = {{"command", "pde"},
                   {"residual_max", sol.residual_max},
                   {"tolerance_budget", sol.tolerance_budget},
                   {"pass", pass}};
    doc.code = pass ? ok : contract_violation;
    return doc;
}

struct GuardFlags {
    std::optional<std::string> poly;
    int n = 2;
    double delta = 1.0;
    double lambda = 1.0;
    std::uint64_t seed = 20240601;
    int count = 500;
    int max_degree = 5;
};

Document cmd_guard(const GuardFlags &g)
{
    Document doc;
    doc.data["command"] = "guard";
    doc.csv = "key,value\n";
    auto row = [&](const std::string &key, const std::string &value) { doc.csv += key + "," + value + "\n"; };
    if (g.poly) {
        std::vector<double> c;
        std::stringstream in(*g.poly);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                std::size_t used = 0;
                c.push_back(std::stod(item, &used));
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
            } catch (const std::logic_error &) {
                throw Exit{invalid_input, "--poly: '" + item + "' is not a number"};
            }
        }
        if (c.empty()) {
            throw Exit{invalid_input, "--poly needs at least two coefficients"};
        }
        const Poly p(Coefficients<double>(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()))));
        const OperatorParams op{g.n, g.delta};
        validate(op);
        validate_guard_polynomial(p);
        const auto degree = operator_degree_law(p, op);
        const auto lead = leading_coeff_law(p, op);
        const double witness = nonexistence_witness(p, op, g.lambda);
        const double floor = std::abs(lead.rhs) * (1.0 - 1e-12);
        const bool pass = degree.computed == degree.predicted
                          && std::abs(lead.lhs - lead.rhs) <= 1e-12 * std::abs(lead.rhs) && std::abs(witness) >= floor;
        doc.data["mode"] = "single";
        doc.data["polynomial"] = c;
        doc.data["params"] = {{"n", g.n}, {"delta_prime", g.delta}, {"lambda", g.lambda}};
        doc.data["degree_law"] = {{"computed", degree.computed}, {"predicted", degree.predicted}};
        doc.data["leading_coeff_law"] = {{"lhs", lead.lhs}, {"rhs", lead.rhs}};
        doc.data["witness"] = witness;
        doc.data["pass"] = pass;
        row("computed_degree", std::to_string(degree.computed));
        row("predicted_degree", std::to_string(degree.predicted));
        row("leading_lhs", num(lead.lhs));
        row("leading_rhs", num(lead.rhs));
        row("witness", num(witness));
        row("pass", pass ? "true" : "false");
        doc.code = pass ? ok : contract_violation;
    } else {
        if (g.count < 1 || g.max_degree < 1) {
            throw Exit{invalid_input, "count and max-degree must be >= 1"};
        }
        const auto r = guard_sweep(g.seed, g.count, g.max_degree);
        const bool pass = r.degree_failures == 0 && r.zero_witnesses == 0 && r.max_leading_rel_error <= 1e-12
                          && r.max_witness_rel_error <= 1e-12;
        doc.data["mode"] = "sweep";
        doc.data["seed"] = g.seed;
        doc.data["polynomials"] = r.polynomials;
        doc.data["degree_failures"] = r.degree_failures;
        doc.data["zero_witnesses"] = r.zero_witnesses;
        doc.data["max_leading_rel_error"] = r.max_leading_rel_error;
        doc.data["max_witness_rel_error"] = r.max_witness_rel_error;
        doc.data["min_witness_ratio"] = r.min_witness_ratio;
        doc.data["pass"] = pass;
        row("polynomials", std::to_string(r.polynomials));
        row("degree_failures", std::to_string(r.degree_failures));
        row("zero_witnesses", std::to_string(r.zero_witnesses));
        row("max_leading_rel_error", num(r.max_leading_rel_error));
        row("max_witness_rel_error", num(r.max_witness_rel_error));
        row("min_witness_ratio", num(r.min_witness_ratio));
        row("pass", pass ? "true" : "false");
        doc.code = pass ? ok : contract_violation;
    }
    doc.summary = {{"command", "guard"}, {"pass", doc.data["pass"]}};
    return doc;
}

Document cmd_temporal(int n, const TemporalFlags &tf, const Grid &grid)
{
    const complex A1 = parse_complex(tf.A1.value_or("1"), "--A1");
    const auto p = temporal_params(n, A1, tf);
    const auto ts = grid.points(0.0, 3.0);

    Document doc;
    doc.data["command"] = "temporal";
    doc.data["params"] = temporal_json(p);
    doc.data["real_mode"] = tf.real;
    if (const auto tp = pole_time(p)) {
        doc.data["pole_time"] = complex_json(*tp);
    } else {
        doc.data["pole_time"] = nullptr;
    }
    doc.data["rows"] = json::array();
    doc.data["excluded_times"] = json::array();
    doc.csv = "t,f_re,f_im,df_re,df_im,residual\n";
    double worst = 0.0;
    for (double t : ts) {
        complex f, df;
        try {
            f = tf.real ? complex(f_closed_form_real(p, t)) : f_closed_form(p, t);
            df = f_derivative(p, t);
            if (tf.real) {
                // The derivative inherits the real branch through f' = [..] f.
                df = complex((df / f_closed_form(p, t) * f).real());
            }
        } catch (const Error &e) {
            if (e.code() != Errc::pole) {
                throw;
            }
            doc.data["excluded_times"].push_back(t);
            continue;
        }
        const complex fn = std::pow(f, n);
        const double residual = std::abs(df - p.A1 * fn - p.A2 * f);
        worst = std::max(worst, residual / std::max(1.0, std::abs(fn)));
        doc.data["rows"].push_back({{"t", t}, {"f", complex_json(f)}, {"df", complex_json(df)}, {"residual", residual}});
        doc.csv += num(t) + "," + num(f.real()) + "," + num(f.imag()) + "," + num(df.real()) + "," + num(df.imag()) + ","
                   + num(residual) + "\n";
    }
    const bool pass = worst <= temporal_contract;
    doc.data["max_scaled_residual"] = worst;
    doc.data["pass"] = pass;
    doc.summary = {{"command", "temporal"}, {"max_scaled_residual", worst}, {"pass", pass}};
    doc.code = pass ? ok : contract_violation;
    return doc;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Power-series eigenfunctions of the radial hyperbolic operator d/dz[(z^2 - d^2) d(u^n)/dz]",
                 "hyperseries"};
    app.require_subcommand(1);

    Output o;
    EigenFlags eigen;
    TemporalFlags temporal;
    GuardFlags guard;
    Grid eta_grid, t_grid;
    std::uint64_t seed = 20240601;
    bool tamper = false;
    double step_scale = 1e-4;
    int temporal_n = 2;

    auto *coeffs = app.add_subcommand("coeffs", "Eigenfunction Taylor coefficients with residual check");
    add_eigen(coeffs, eigen);
    add_output(coeffs, o);

    auto *verify = app.add_subcommand("verify", "Run the full verification suite");
    verify->add_option("--seed", seed, "Seed for the randomized checks")->capture_default_str();
    verify->add_flag("--tamper", tamper)->group("");
    add_output(verify, o);

    auto *eigenfun = app.add_subcommand("eigenfun", "Evaluate the eigenfunction on an eta grid");
    add_eigen(eigenfun, eigen);
    add_grid(eigenfun, "eta", eta_grid);
    add_output(eigenfun, o);

    auto add_temporal = [&](CLI::App *cmd) {
        cmd->add_option("--A1", temporal.A1, "A1 as RE or RE,IM");
        auto *a2 = cmd->add_option("--A2", temporal.A2, "A2 as RE or RE,IM")->capture_default_str();
        cmd->add_option("--omega-over-alpha", temporal.omega_over_alpha, "Periodic case: A2 = i omega/alpha")
            ->excludes(a2);
        auto *c = cmd->add_option("--c", temporal.c, "Integration constant as RE or RE,IM");
        cmd->add_option("--f0", temporal.f0, "Initial value f(0) as RE or RE,IM")->capture_default_str()->excludes(c);
        cmd->add_option("--branch", temporal.branch, "Root branch index");
    };

    auto *pde = app.add_subcommand("pde", "Separable solution u = f(t) g(eta) with PDE residual report");
    add_eigen(pde, eigen);
    add_temporal(pde);
    add_grid(pde, "eta", eta_grid);
    add_grid(pde, "t", t_grid);
    pde->add_option("--step-scale", step_scale, "Finite-difference step factor")->capture_default_str();
    add_output(pde, o);

    auto *guard_cmd = app.add_subcommand("guard", "Degree and leading-coefficient laws on polynomials");
    guard_cmd->add_option("--poly", guard.poly, "Coefficients c0,c1,...,cm of a single polynomial");
    guard_cmd->add_option("--n", guard.n, "Exponent n")->capture_default_str();
    guard_cmd->add_option("--delta", guard.delta, "delta'")->capture_default_str();
    guard_cmd->add_option("--lambda", guard.lambda, "lambda for the witness")->capture_default_str();
    guard_cmd->add_option("--seed", guard.seed, "Sweep seed")->capture_default_str();
    guard_cmd->add_option("--count", guard.count, "Sweep size")->capture_default_str();
    guard_cmd->add_option("--max-degree", guard.max_degree, "Largest degree in the sweep")->capture_default_str();
    add_output(guard_cmd, o);

    auto *temporal_cmd = app.add_subcommand("temporal", "Closed-form f(t) of f' = A1 f^n + A2 f");
    temporal_cmd->add_option("--n", temporal_n, "Exponent n")->capture_default_str();
    add_temporal(temporal_cmd);
    temporal_cmd->add_flag("--real", temporal.real, "Real-valued roots only");
    add_grid(temporal_cmd, "t", t_grid);
    add_output(temporal_cmd, o);

    try {
        expand_params_json(args);
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::CallForHelp &) {
            out << app.help();
            return ok;
        } catch (const CLI::CallForAllHelp &) {
            out << app.help("", CLI::AppFormatMode::All);
            return ok;
        } catch (const CLI::ParseError &e) {
            throw Exit{invalid_input, e.what()};
        }

        Document doc;
        if (*coeffs) {
            doc = cmd_coeffs(eigen);
        } else if (*verify) {
            doc = cmd_verify(seed, tamper);
        } else if (*eigenfun) {
            doc = cmd_eigenfun(eigen, eta_grid, err);
        } else if (*pde) {
            doc = cmd_pde(eigen, temporal, eta_grid, t_grid, step_scale);
        } else if (*guard_cmd) {
            doc = cmd_guard(guard);
        } else {
            doc = cmd_temporal(temporal_n, temporal, t_grid);
        }
        emit(doc, o, out);
        return doc.code;
    } catch (const Exit &e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(error_class(e.code()));
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return numeric_failure;
    }
}

} // namespace hyperseries::cli

// triadne: command-line driver for the counting, Gauss-sum, arc, oscillatory,
// singular-series and operator computations.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "triadne/arcs.hpp"
#include "triadne/gauss.hpp"
#include "triadne/lattice.hpp"
#include "triadne/operators.hpp"
#include "triadne/oscillatory.hpp"
#include "triadne/singular.hpp"

using namespace triadne;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    int d = 7;
    std::string lambda = "2";
    std::string range = "0..4";
    i64 N = 16;
    i64 P = 0;
    int qmax = 32;
    u64 seed = 1;
    int threads = 0;
    double tol = 0.05;
    std::string out;
    std::string format = "json";
    int samples = 1000;
    std::string xi;
    std::string state;
};

std::vector<i64> parse_range(const std::string& s) {
    std::vector<i64> out;
    auto dots = s.find("..");
    try {
        if (dots != std::string::npos) {
            i64 a = std::stoll(s.substr(0, dots)), b = std::stoll(s.substr(dots + 2));
            if (b < a) throw argument_error("empty range " + s);
            for (i64 v = a; v <= b; ++v) out.push_back(v);
            return out;
        }
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    } catch (const std::logic_error&) {
        throw argument_error("cannot parse integer range '" + s + "'");
    }
    if (out.empty()) throw argument_error("empty range");
    return out;
}

std::vector<double> parse_vector(const std::string& s, int d) {
    std::vector<double> v(static_cast<size_t>(d), 0.0);
    if (s.empty()) return v;
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    try {
        while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    } catch (const std::logic_error&) {
        throw argument_error("cannot parse vector '" + s + "'");
    }
    if (vals.size() == 1)
        std::fill(v.begin(), v.end(), vals[0]);
    else if (vals.size() == size_t(d))
        v = vals;
    else
        throw argument_error("vector must have 1 or d entries");
    return v;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw argument_error("cannot open output file " + cfg.out);
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

json envelope(const std::string& command) {
    json j;
    j["schema"] = schema_tag;
    j["command"] = command;
    return j;
}

// emits reports; returns whether every hard check passed
bool emit_reports(const RunConfig& cfg, const std::string& command, const std::vector<VerificationReport>& reps,
                  json extra = json::object()) {
    bool ok = true;
    for (const auto& r : reps) ok = ok && r.passed();
    if (cfg.format == "csv") {
        std::string text;
        for (size_t i = 0; i < reps.size(); ++i) {
            std::string csv = reps[i].to_csv();
            if (i) csv = csv.substr(csv.find('\n') + 1);  // one header row
            text += csv;
        }
        emit(cfg, text);
    } else {
        json j = envelope(command);
        j["passed"] = ok;
        j["reports"] = json::array();
        for (const auto& r : reps) j["reports"].push_back(r.to_json());
        for (auto& [k, v] : extra.items()) j[k] = v;
        emit(cfg, j.dump(2));
    }
    return ok;
}

std::string table_out(const RunConfig& cfg, const std::string& command, const CsvTable& t, const json& rows) {
    if (cfg.format == "csv") return t.str();
    json j = envelope(command);
    j["rows"] = rows;
    return j.dump(2);
}

// ---------------------------------------------------------------- count

struct CountState {
    int d = 0;
    std::vector<i64> lambdas;
    json rows = json::array();
};

void save_state(const std::string& path, const CountState& st) {
    json j = envelope("count-state");
    j["d"] = st.d;
    j["lambdas"] = st.lambdas;
    j["rows"] = st.rows;
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        os << j.dump();
    }
    fs::rename(tmp, path);
}

int cmd_count(const RunConfig& cfg) {
    CountState st;
    st.d = cfg.d;
    st.lambdas = parse_range(cfg.lambda);
    for (i64 lam : st.lambdas)
        if (lam < 0) throw argument_error("lambda must be >= 0");
    const std::string state_path = !cfg.state.empty() ? cfg.state : (cfg.out.empty() ? "" : cfg.out + ".state");
    if (!state_path.empty() && fs::exists(state_path)) {
        std::ifstream is(state_path);
        json j = json::parse(is, nullptr, false);
        if (!j.is_discarded() && j.value("d", -1) == st.d && j.value("lambdas", json()) == json(st.lambdas)) {
            st.rows = j["rows"];
            std::cerr << "resuming from " << state_path << " with " << st.rows.size() << " rows\n";
        }
    }
    auto last = std::chrono::steady_clock::now();
    for (size_t i = st.rows.size(); i < st.lambdas.size(); ++i) {
        i64 lam = st.lambdas[i];
        u128 c = count_triangle_pairs(lam, cfg.d).count;
        double norm = lam > 0 ? to_double(c) / std::pow(double(lam), cfg.d - 3) : 0.0;
        st.rows.push_back({{"lambda", lam}, {"count", to_string(c)}, {"normalized", norm}});
        if (!state_path.empty() && std::chrono::steady_clock::now() - last > std::chrono::seconds(60)) {
            save_state(state_path, st);
            last = std::chrono::steady_clock::now();
        }
    }
    CsvTable t({"lambda", "count", "count/lambda^(d-3)"});
    for (const auto& r : st.rows)
        t.row({std::to_string(r["lambda"].get<i64>()), r["count"].get<std::string>(),
               fmt_double(r["normalized"].get<double>())});
    json rows = st.rows;
    std::string text = table_out(cfg, "count", t, rows);
    emit(cfg, text);
    if (!state_path.empty() && fs::exists(state_path)) fs::remove(state_path);
    return 0;
}

// ---------------------------------------------------------------- other subcommands

int cmd_triangles_box(const RunConfig& cfg) {
    CsvTable t({"n", "d", "triangles"});
    json rows = json::array();
    for (i64 n : parse_range(cfg.range)) {
        std::string c = to_string(triangles_in_box(n, cfg.d));
        t.row({std::to_string(n), std::to_string(cfg.d), c});
        rows.push_back({{"n", n}, {"d", cfg.d}, {"triangles", c}});
    }
    emit(cfg, table_out(cfg, "triangles-box", t, rows));
    return 0;
}

int cmd_gauss_verify(const RunConfig& cfg) {
    std::vector<VerificationReport> reps;
    for (int q = 1; q <= cfg.qmax; ++q) {
        reps.push_back(verify_lemma1(u64(q), 5, cfg.seed));
        reps.push_back(verify_lemma2(u64(q), 2));
        reps.push_back(verify_lemma2(u64(q), 4));
    }
    return emit_reports(cfg, "gauss-verify", reps) ? 0 : 1;
}

int cmd_arcs_scan(const RunConfig& cfg) {
    i64 P = cfg.P > 0 ? cfg.P : std::max<i64>(1, i64(std::floor(std::pow(double(cfg.N), 2.0 / 7))));
    auto scan = minor_arc_scan(cfg.N, P, cfg.samples, cfg.seed, true);
    auto scan_eta = minor_arc_scan(cfg.N, P, std::max(1, cfg.samples / 10), cfg.seed + 1, false);
    auto l4 = lemma4_sweep(cfg.samples, cfg.seed);
    return emit_reports(cfg, "arcs-scan", {scan.report, scan_eta.report, l4}) ? 0 : 1;
}

int cmd_lemma9(const RunConfig& cfg) {
    QuadratureSpec spec;
    spec.tol = cfg.tol;
    auto xi = parse_vector(cfg.xi, cfg.d);
    double lam = double(parse_range(cfg.lambda).front());
    auto rep = check_lemma9(double(cfg.N), lam, xi, spec);
    return emit_reports(cfg, "lemma9", {rep}) ? 0 : 1;
}

int cmd_singular(const RunConfig& cfg) {
    bool ok = true;
    json all = envelope("singular");
    all["results"] = json::array();
    for (i64 lam : parse_range(cfg.lambda)) {
        auto series = singular_series_sigma(lam, cfg.d, cfg.qmax);
        std::vector<LocalFactorEstimate> factors;
        for (u64 p : {2, 3, 5, 7})
            if (cfg.d >= 7) factors.push_back(local_factor_T(p, lam, cfg.d, default_t_max(p)));
        json j = singular_json(lam, cfg.d, series, factors);
        std::vector<VerificationReport> reps;
        if (cfg.d >= 3) {
            reps.push_back(check_multiplicativity(lam, 2, 3, cfg.d));
            reps.push_back(check_orthogonality(2, 2, lam, cfg.d));
        }
        if (lam % 2 == 0 && cfg.d >= 7) {
            auto h = hensel_lower_bound_check(3, 2, lam, cfg.d);
            reps.push_back(h.report);
        }
        j["checks"] = json::array();
        for (const auto& r : reps) {
            ok = ok && r.passed();
            j["checks"].push_back(r.to_json());
        }
        all["results"].push_back(j);
    }
    all["passed"] = ok;
    if (cfg.format == "csv") {
        CsvTable t({"lambda", "d", "q_max", "sigma", "tail_bound"});
        for (const auto& r : all["results"])
            t.row({r["lambda"].dump(), std::to_string(cfg.d), std::to_string(cfg.qmax), r["sigma"].dump(),
                   r["tail_bound"].dump()});
        emit(cfg, t.str());
    } else {
        emit(cfg, all.dump(2));
    }
    return ok ? 0 : 1;
}

int cmd_multiplier(const RunConfig& cfg) {
    if (cfg.d < 7) throw argument_error("multiplier: d must be >= 7");
    std::vector<double> zero(static_cast<size_t>(cfg.d), 0.0);
    auto xi = parse_vector(cfg.xi, cfg.d);
    const double I0 = singular_integral_I(1.0, zero, zero).value.real();
    CsvTable t({"lambda", "T_hat_0", "sigma", "I_0", "ratio", "M_hat_0", "T_hat_xi", "M_hat_xi"});
    json rows = json::array();
    for (i64 lam : parse_range(cfg.lambda)) {
        if (lam <= 0 || lam % 2) continue;
        double T0 = multiplier_T_hat(lam, zero, zero, cfg.d).real();
        double S = singular_series_euler(lam, cfg.d, 100).value;
        MainTermMultiplier M(lam, cfg.d, cfg.qmax);
        double M0 = M(zero);
        double Tx = multiplier_T_hat(lam, xi, zero, cfg.d).real();
        double Mx = M(xi);
        t.row({std::to_string(lam), fmt_double(T0), fmt_double(S), fmt_double(I0), fmt_double(T0 / (S * I0)),
               fmt_double(M0), fmt_double(Tx), fmt_double(Mx)});
        rows.push_back({{"lambda", lam}, {"T_hat_0", T0}, {"sigma", S}, {"I_0", I0}, {"ratio", T0 / (S * I0)},
                        {"M_hat_0", M0}, {"T_hat_xi", Tx}, {"M_hat_xi", Mx}});
    }
    emit(cfg, table_out(cfg, "multiplier", t, rows));
    return 0;
}

int cmd_operator(const RunConfig& cfg) {
    auto lambdas = parse_range(cfg.lambda);
    const i64 Lambda = lambdas.back();
    GridFunction f = GridFunction::delta(cfg.d);
    std::vector<double> ps{1, 1.5, 2, 4, std::numeric_limits<double>::infinity()};
    if (cfg.d >= 7) ps.insert(ps.begin() + 1, theory_constants(cfg.d).p0);
    CsvTable t({"lambda", "operator", "p", "norm"});
    json rows = json::array();
    auto add = [&](i64 lam, const std::string& op, const GridFunction& g) {
        for (double p : ps) {
            double n = lp_norm(g, p);
            t.row({std::to_string(lam), op, fmt_double(p), fmt_double(n)});
            rows.push_back({{"lambda", lam}, {"operator", op}, {"p", std::isinf(p) ? json("inf") : json(p)},
                            {"norm", n}});
        }
    };
    for (i64 lam : lambdas) add(lam, "linearized_T", linearized_T(lam, f));
    if (Lambda >= 2) add(Lambda, "dyadic_maximal", dyadic_maximal(Lambda, f));
    emit(cfg, table_out(cfg, "operator", t, rows));
    return 0;
}

int cmd_moments(const RunConfig& cfg) {
    CsvTable t({"N", "J1", "J2", "J3", "J4", "T", "quadrature"});
    json rows = json::array();
    for (i64 N = 1; N <= cfg.N; ++N) {
        std::vector<std::string> cells{std::to_string(N)};
        json row{{"N", N}};
        for (int s = 1; s <= 4; ++s) {
            std::string v = (s <= 3 || N <= 8) ? to_string(vinogradov_count(s, N)) : "";
            cells.push_back(v);
            row["J" + std::to_string(s)] = v;
        }
        std::string T = N <= 16 ? to_string(sixth_moment_count(N)) : "";
        std::string Q = N <= 4 ? fmt_double(sixth_moment_quadrature(N)) : "";
        cells.push_back(T);
        cells.push_back(Q);
        row["T"] = T;
        row["quadrature"] = Q;
        t.row(cells);
        rows.push_back(row);
    }
    emit(cfg, table_out(cfg, "moments", t, rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice equilateral triangles: counts, Gauss sums, arcs, singular series and operators"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* s) {
        s->add_option("--d", cfg.d, "dimension");
        s->add_option("--lambda", cfg.lambda, "lambda, a..b or comma list");
        s->add_option("--range", cfg.range, "integer range a..b");
        s->add_option("--N", cfg.N, "box size N");
        s->add_option("--P", cfg.P, "arc parameter P (default floor(N^(2/7)))");
        s->add_option("--qmax", cfg.qmax, "largest modulus q");
        s->add_option("--seed", cfg.seed, "random seed");
        s->add_option("--threads", cfg.threads, "OpenMP threads (0: runtime default)");
        s->add_option("--tol", cfg.tol, "relative quadrature tolerance");
        s->add_option("--out", cfg.out, "output path (stdout when absent)");
        s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--samples", cfg.samples, "sample count for sweeps");
        s->add_option("--xi", cfg.xi, "frequency: one value or d comma-separated values");
        s->add_option("--state", cfg.state, "checkpoint file for count sweeps");
    };
    std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> cmds = {
        {app.add_subcommand("count", "triangle pair counts #V_lambda over a lambda range"), cmd_count},
        {app.add_subcommand("triangles-box", "equilateral triangles with vertices in [0,n]^d"), cmd_triangles_box},
        {app.add_subcommand("gauss-verify", "Gauss-sum bound and weight-sum inequality for q <= qmax"),
         cmd_gauss_verify},
        {app.add_subcommand("arcs-scan", "minor-arc Weyl sum scan and major-arc residual sweep"), cmd_arcs_scan},
        {app.add_subcommand("lemma9", "singular integral against c_d times the sphere transform"), cmd_lemma9},
        {app.add_subcommand("singular", "singular series, local factors and local checks"), cmd_singular},
        {app.add_subcommand("multiplier", "T_hat against the singular series and main-term multiplier"),
         cmd_multiplier},
        {app.add_subcommand("operator", "l^p norms of T_lambda delta_0 and its dyadic maximal function"),
         cmd_operator},
        {app.add_subcommand("moments", "J_{s,2,2}(N), T(N) and the sixth-moment quadrature"), cmd_moments},
    };
    for (auto& [s, fn] : cmds) common(s);
    CLI11_PARSE(app, argc, argv);
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    try {
        for (auto& [s, fn] : cmds)
            if (s->parsed()) return fn(cfg);
    } catch (const argument_error& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}

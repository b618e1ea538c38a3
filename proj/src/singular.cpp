#include "triadne/singular.hpp"

#include <algorithm>
#include <cmath>

#include "triadne/gauss.hpp"

namespace triadne {

namespace {

struct Step {
    u64 a, b, c;
    u64 mult;
};

// law of (x^2, xy, y^2) mod q over (x, y) in Z_q^2
std::vector<Step> coordinate_steps(u64 q) {
    std::vector<u64> cnt(q * q * q, 0);
    for (u64 x = 0; x < q; ++x)
        for (u64 y = 0; y < q; ++y) ++cnt[((x * x % q) * q + x * y % q) * q + y * y % q];
    std::vector<Step> out;
    for (u64 i = 0; i < cnt.size(); ++i)
        if (cnt[i]) out.push_back({i / (q * q), (i / q) % q, i % q, cnt[i]});
    return out;
}

double dp_cost(u64 q, int d) { return double(std::max(d - 2, 1)) * std::pow(double(q), 5); }

}  // namespace

bool local_count_within_budget(u64 q, int d) {
    if (q == 0 || d < 1) return false;
    // q^{2d} must fit comfortably in 128 bits
    if (2.0 * d * std::log2(double(q)) > 126) return false;
    return q <= 64 && dp_cost(q, d) <= 4e9;
}

u128 local_count_mod(u64 q, i64 lambda, int d, bool parallel) {
    if (q == 0) throw argument_error("local count: modulus must be positive");
    if (d < 1) throw argument_error("local count: d must be >= 1");
    if (!local_count_within_budget(q, d)) throw resource_error("local count: modulus beyond DP budget");
    const u64 L = u64(mod(lambda % i64(q), i64(q)));
    const auto steps = coordinate_steps(q);
    auto ok_mid = [&](u64 b) { return (2 * b) % q == L; };

    if (d == 1) {
        u128 tot = 0;
        for (const auto& s : steps)
            if (s.a == L && s.c == L && ok_mid(s.b)) tot += s.mult;
        return tot;
    }

    const u64 q2 = q * q;
    std::vector<u128> cur(q2 * q, 0), nxt(q2 * q, 0);
    for (const auto& s : steps) cur[(s.a * q + s.b) * q + s.c] = s.mult;

    for (int round = 2; round < d; ++round) {
#pragma omp parallel for schedule(static) if (parallel)
        for (u64 A = 0; A < q; ++A) {
            u128* out = nxt.data() + A * q2;
            std::fill(out, out + q2, u128(0));
            for (const auto& s : steps) {
                const u128* src = cur.data() + ((A + q - s.a) % q) * q2;
                for (u64 B = 0; B < q; ++B) {
                    const u128* row = src + ((B + q - s.b) % q) * q;
                    u128* dst = out + B * q;
                    const u64 shift = s.c;
                    for (u64 C = 0; C < shift; ++C) dst[C] += row[C + q - shift] * s.mult;
                    for (u64 C = shift; C < q; ++C) dst[C] += row[C - shift] * s.mult;
                }
            }
        }
        std::swap(cur, nxt);
    }

    u128 tot = 0;
    for (u64 B = 0; B < q; ++B) {
        if (!ok_mid(B)) continue;
        for (const auto& s : steps)
            tot += cur[(((L + q - s.a) % q) * q + (B + q - s.b) % q) * q + (L + q - s.c) % q] * s.mult;
    }
    return tot;
}

u128 local_count_nu_d(u64 p, int t, i64 lambda, int d) {
    if (!is_prime(p)) throw argument_error("local_count_nu_d: p must be prime");
    if (t < 0) throw argument_error("local_count_nu_d: t must be >= 0");
    return local_count_mod(checked_pow(p, t), lambda, d);
}

namespace ref {

u128 local_count_mod(u64 q, i64 lambda, int d) {
    if (q == 0 || d < 1) throw argument_error("local count: bad arguments");
    if (2.0 * d * std::log(double(q)) > std::log(6e7)) throw resource_error("local count: brute force beyond budget");
    const i64 L = mod(lambda, i64(q));
    std::vector<u64> x(2 * size_t(d), 0);
    u128 cnt = 0;
    while (true) {
        u64 A = 0, B = 0, C = 0;
        for (int i = 0; i < d; ++i) {
            A += x[i] * x[i];
            B += 2 * x[i] * x[d + i];
            C += x[d + i] * x[d + i];
        }
        if (i64(A % q) == L && i64(B % q) == L && i64(C % q) == L) ++cnt;
        size_t k = 0;
        while (k < x.size() && ++x[k] == q) x[k++] = 0;
        if (k == x.size()) break;
    }
    return cnt;
}

}  // namespace ref

int default_t_max(u64 p) { return p == 2 || p == 3 ? 3 : 2; }

LocalFactorEstimate local_factor_T(u64 p, i64 lambda, int d, int t_max, double tol) {
    if (!is_prime(p)) throw argument_error("local_factor_T: p must be prime");
    if (d < 7) throw argument_error("local_factor_T: d must be >= 7");
    if (t_max < 1) throw argument_error("local_factor_T: t_max must be >= 1");
    LocalFactorEstimate est;
    est.p = p;
    est.t_max = t_max;
    est.exact_lift = mod(6 * (lambda % i64(p)), i64(p)) != 0;

    auto normalized_dp = [&](int t) {
        u128 nu = local_count_nu_d(p, t, lambda, d);
        return to_double(nu) / std::pow(double(p), double((2 * d - 3) * t));
    };
    double gauss_partial = 1.0;
    int gauss_j = 0;
    auto gauss_route = [&](int t) {
        while (gauss_j < t) {
            ++gauss_j;
            gauss_partial += big_G_zero(lambda, checked_pow(p, gauss_j), d).real();
        }
        return gauss_partial;
    };
    auto value_at = [&](int t) {
        u64 q = checked_pow(p, t);
        if (local_count_within_budget(q, d) && dp_cost(q, d) <= 2e8) return normalized_dp(t);
        return gauss_route(t);
    };

    if (est.exact_lift) {
        double v1 = value_at(1);
        est.values.assign(size_t(t_max), v1);
        est.stabilized = true;
    } else {
        for (int t = 1; t <= t_max; ++t) est.values.push_back(value_at(t));
        est.stabilized = t_max >= 2 && std::abs(est.values[size_t(t_max - 1)] - est.values[size_t(t_max - 2)]) <= tol;
    }
    est.value = est.values.back();
    return est;
}

SingularSeries singular_series_sigma(i64 lambda, int d, int q_max) {
    if (d < 7) throw argument_error("singular series: d must be >= 7");
    if (q_max < 1) throw argument_error("singular series: q_max must be >= 1");
    SingularSeries s;
    s.q_max = q_max;
    const double expo = 0.5 * d - 2.25;
    std::vector<double> re, im;
    for (int q = 1; q <= q_max; ++q) {
        cplx g = big_G_zero(lambda, u64(q), d);
        s.terms.push_back(g);
        re.push_back(g.real());
        im.push_back(g.imag());
        s.tail_constant = std::max(s.tail_constant, std::abs(g) * std::pow(double(q), expo));
    }
    s.value = canonical_sum(re);
    s.imag = canonical_sum(im);
    double partial = 0;
    for (int q = q_max; q >= 1; --q) partial += std::pow(double(q), -expo);
    s.tail_bound = s.tail_constant * std::max(0.0, std::riemann_zeta(expo) - partial);
    return s;
}

EulerProduct singular_series_euler(i64 lambda, int d, u64 p_max, double tol) {
    if (d < 7) throw argument_error("Euler product: d must be >= 7");
    EulerProduct e;
    e.p_max = p_max;
    e.value = 1;
    double env = 0;
    for (u64 p : primes_up_to(p_max)) {
        int v = lambda == 0 ? 6 : valuation(lambda, p);
        int t = v + (p == 2 ? 4 : p == 3 ? 3 : 2);
        while (t > 1 && checked_pow(p, t) > 1024) --t;
        LocalFactorEstimate f = local_factor_T(p, lambda, d, t, tol);
        e.value *= f.value;
        if (f.exact_lift && p > 3) env = std::max(env, std::abs(f.value - 1) * std::pow(double(p), 0.5 * d - 2));
        e.factors.push_back(std::move(f));
        if (e.value == 0) break;
    }
    if (e.value != 0) {
        double s = 0.5 * d - 2, partial = 0;
        for (u64 n = p_max; n >= 1; --n) partial += std::pow(double(n), -s);
        e.tail_estimate = env * std::max(0.0, std::riemann_zeta(s) - partial);
    }
    return e;
}

VerificationReport check_multiplicativity(i64 lambda, u64 q1, u64 q2, int d) {
    if (q1 == 0 || q2 == 0) throw argument_error("multiplicativity: moduli must be positive");
    if (gcd_u(q1, q2) != 1) throw argument_error("multiplicativity: moduli must be coprime");
    VerificationReport rep;
    rep.name = "multiplicativity";
    rep.anchor = "is multiplicative in q";
    rep.inputs = {{"lambda", lambda}, {"q1", q1}, {"q2", q2}, {"d", d}};
    cplx g1 = big_G_zero(lambda, q1, d), g2 = big_G_zero(lambda, q2, d), g12 = big_G_zero(lambda, q1 * q2, d);
    cplx prod = g1 * g2;
    double diff = std::abs(g12 - prod);
    rep.add_le("|G(q1 q2) - G(q1) G(q2)|", diff, 1e-8 * (1 + std::abs(prod)));
    rep.data = {{"G_q1", {g1.real(), g1.imag()}}, {"G_q2", {g2.real(), g2.imag()}}, {"G_q1q2", {g12.real(), g12.imag()}}};
    return rep;
}

VerificationReport check_orthogonality(u64 p, int t, i64 lambda, int d) {
    if (!is_prime(p)) throw argument_error("orthogonality: p must be prime");
    VerificationReport rep;
    rep.name = "local_density_orthogonality";
    rep.anchor = "p^{t(2d-3)} sum_{j<=t} G(p^j; 0, 0) = nu_d(p^t; lambda)";
    rep.inputs = {{"p", p}, {"t", t}, {"lambda", lambda}, {"d", d}};
    u128 nu = local_count_nu_d(p, t, lambda, d);
    double series = 0;
    for (int j = 0; j <= t; ++j) series += big_G_zero(lambda, checked_pow(p, j), d).real();
    double scale = std::pow(double(p), double(t * (2 * d - 3)));
    rep.add_close("normalized: sum_j G(p^j) vs nu / p^{t(2d-3)}", series, to_double(nu) / scale, 1e-6);
    rep.data = {{"nu", to_string(nu)}, {"series", series}};
    return rep;
}

HenselResult hensel_lower_bound_check(u64 p, int t, i64 lambda, int d) {
    if (!is_prime(p)) throw argument_error("hensel: p must be prime");
    if (t < 1) throw argument_error("hensel: t must be >= 1");
    HenselResult res;
    VerificationReport& rep = res.report;
    rep.name = "hensel_lower_bound";
    rep.anchor = p == 2 ? "nu_d(2^t; lambda) >= 8 2^{(t-2)(2d-3)}" : "nu_d(p^t; lambda) >= p^{(t-1)(2d-3)} if p > 2";
    rep.inputs = {{"p", p}, {"t", t}, {"lambda", lambda}, {"d", d}};
    if (lambda % 2 != 0 || d < 7) {
        res.status = HenselStatus::hypothesis_not_met;
        rep.notes.push_back("hypothesis not met: requires lambda even and d >= 7");
        return res;
    }
    int t_run = t;
    if (!local_count_within_budget(checked_pow(p, t), d)) {
        t_run = std::min(t, 2);
        rep.notes.push_back("budget-limited: modulus p^" + std::to_string(t) + " exceeds the DP budget, ran t=" +
                            std::to_string(t_run) + " report-only");
    }
    u128 nu = local_count_nu_d(p, t_run, lambda, d);
    double log_bound = p == 2 ? 3 * std::log(2.0) + (t_run - 2) * (2 * d - 3) * std::log(2.0)
                              : (t_run - 1) * (2 * d - 3) * std::log(double(p));
    bool pass = nu > 0 && std::log(to_double(nu)) >= log_bound - 1e-12;
    // exact comparison whenever the bound is an integer
    int e = p == 2 ? (t_run - 2) * (2 * d - 3) : (t_run - 1) * (2 * d - 3);
    if (e >= 0 && e * std::log2(double(p)) < 120) {
        u128 b = 1;
        for (int i = 0; i < e; ++i) b *= p;
        if (p == 2) b *= 8;
        pass = nu >= b;
    }
    bool hard = t_run >= 3 && t_run == t;
    rep.add("log nu_d(p^t) >= log bound", std::log(std::max(to_double(nu), 1e-300)), log_bound, 0, pass, hard);
    rep.data = {{"nu", to_string(nu)}, {"t_run", t_run}};
    return res;
}

json singular_json(i64 lambda, int d, const SingularSeries& s, const std::vector<LocalFactorEstimate>& factors) {
    json j;
    j["schema"] = schema_tag;
    j["lambda"] = lambda;
    j["d"] = d;
    j["q_max"] = s.q_max;
    j["sigma"] = s.value;
    j["tail_bound"] = s.tail_bound;
    j["factors"] = json::array();
    for (const auto& f : factors)
        j["factors"].push_back({{"p", f.p}, {"t_max", f.t_max}, {"value", f.value}, {"stabilized", f.stabilized}});
    return j;
}

}  // namespace triadne

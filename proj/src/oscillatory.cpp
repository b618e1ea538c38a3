#include "triadne/oscillatory.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace triadne {

namespace {

template <int P>
void base_rule(std::vector<double>& x, std::vector<double>& w) {
    using G = boost::math::quadrature::gauss<double, P>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            x.push_back(0);
            w.push_back(wt[i]);
        } else {
            x.push_back(-a[i]);
            w.push_back(wt[i]);
            x.push_back(a[i]);
            w.push_back(wt[i]);
        }
    }
}

struct BaseRule {
    std::vector<double> x, w;  // on [-1,1], ascending
};

const BaseRule& base_rule(int order) {
    static const std::map<int, BaseRule> rules = [] {
        std::map<int, BaseRule> m;
        auto add = [&](int n, auto fn) {
            BaseRule r;
            fn(r.x, r.w);
            std::vector<size_t> idx(r.x.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return r.x[a] < r.x[b]; });
            BaseRule s;
            for (size_t i : idx) {
                s.x.push_back(r.x[i]);
                s.w.push_back(r.w[i]);
            }
            m[n] = s;
        };
        add(4, base_rule<4>);
        add(6, base_rule<6>);
        add(8, base_rule<8>);
        add(10, base_rule<10>);
        add(12, base_rule<12>);
        add(20, base_rule<20>);
        return m;
    }();
    auto it = rules.find(order);
    if (it == rules.end()) throw argument_error("gauss_legendre: supported orders are 4, 6, 8, 10, 12, 20");
    return it->second;
}

double max_abs(const Real3& b) { return std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2])}); }

}  // namespace

QuadRule gauss_legendre(int order, int panels, double a, double b) {
    if (panels < 1) throw argument_error("gauss_legendre: panels must be >= 1");
    const BaseRule& br = base_rule(order);
    QuadRule r;
    r.x.reserve(size_t(panels) * br.x.size());
    r.w.reserve(size_t(panels) * br.x.size());
    const double H = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * H;
        for (size_t k = 0; k < br.x.size(); ++k) {
            r.x.push_back(lo + 0.5 * H * (br.x[k] + 1));
            r.w.push_back(0.5 * H * br.w[k]);
        }
    }
    return r;
}

// ---------------------------------------------------------------- V_N

namespace {

struct FresnelGrid {
    int px, py;
    bool capped = false;
};

FresnelGrid fresnel_grid(double N, const Real3& beta, double xi, double eta, const QuadratureSpec& spec) {
    if (!(N > 0)) throw argument_error("fresnel_V: N must be positive");
    if (spec.gl_order < 1 || spec.min_panels < 1 || !(spec.panels_per_cycle > 0))
        throw argument_error("fresnel_V: invalid quadrature spec");
    double cx = 4 * N * N * (std::abs(beta[0]) + std::abs(beta[1])) + 2 * N * std::abs(xi);
    double cy = 4 * N * N * (std::abs(beta[1]) + std::abs(beta[2])) + 2 * N * std::abs(eta);
    FresnelGrid g;
    double px = std::max<double>(spec.min_panels, std::ceil(spec.panels_per_cycle * cx));
    double py = std::max<double>(spec.min_panels, std::ceil(spec.panels_per_cycle * cy));
    double cap = double(spec.max_nodes / size_t(spec.gl_order));
    if (px > cap || py > cap) g.capped = true;
    g.px = int(std::min(px, cap));
    g.py = int(std::min(py, cap));
    return g;
}

}  // namespace

cplx fresnel_V(double N, const Real3& beta, double xi, double eta, const QuadratureSpec& spec) {
    FresnelGrid grid = fresnel_grid(N, beta, xi, eta, spec);
    const int ord = spec.gl_order;
    QuadRule rx = gauss_legendre(ord, grid.px, -N, N);
    QuadRule ry = gauss_legendre(ord, grid.py, -N, N);
    const size_t nx = rx.x.size();

    // h[j][k] = w e(beta3 y^2 + eta y) at node k of panel j
    std::vector<cplx> h(ry.x.size());
    for (size_t b = 0; b < h.size(); ++b) h[b] = ry.w[b] * expi(beta[2] * ry.x[b] * ry.x[b] + eta * ry.x[b]);

    cplx result;
    if (beta[1] == 0) {
        std::vector<cplx> fx(nx);
        for (size_t a = 0; a < nx; ++a) fx[a] = rx.w[a] * expi(beta[0] * rx.x[a] * rx.x[a] + xi * rx.x[a]);
        result = canonical_sum(fx) * canonical_sum(h);
    } else {
        const double H = 2 * N / grid.py;
        std::vector<double> off(static_cast<size_t>(ord));
        for (int k = 0; k < ord; ++k) off[size_t(k)] = ry.x[size_t(k)] + N;
        std::vector<cplx> rows(nx);
#pragma omp parallel for schedule(static)
        for (size_t a = 0; a < nx; ++a) {
            const double x = rx.x[a];
            const double c = 2 * beta[1] * x;
            const cplx R = expi(c * H);
            cplx inner = 0;
            for (int k = 0; k < ord; ++k) {
                // Horner in R over panels j
                cplx p = 0;
                for (int j = grid.py - 1; j >= 0; --j) p = p * R + h[size_t(j) * size_t(ord) + size_t(k)];
                inner += expi(c * (off[size_t(k)] - N)) * p;
            }
            rows[a] = rx.w[a] * expi(beta[0] * x * x + xi * x) * inner;
        }
        result = canonical_sum(rows);
    }
    if (grid.capped) throw quadrature_error("fresnel_V: node budget exceeded", result);
    return result;
}

namespace ref {

cplx fresnel_V(double N, const Real3& beta, double xi, double eta, const QuadratureSpec& spec) {
    FresnelGrid grid = fresnel_grid(N, beta, xi, eta, spec);
    QuadRule rx = gauss_legendre(spec.gl_order, grid.px, -N, N);
    QuadRule ry = gauss_legendre(spec.gl_order, grid.py, -N, N);
    std::vector<cplx> rows(rx.x.size());
    for (size_t a = 0; a < rx.x.size(); ++a) {
        const double x = rx.x[a];
        cplx acc = 0;
        for (size_t b = 0; b < ry.x.size(); ++b) {
            const double y = ry.x[b];
            acc += ry.w[b] * expi(beta[0] * x * x + 2 * beta[1] * x * y + beta[2] * y * y + xi * x + eta * y);
        }
        rows[a] = rx.w[a] * acc;
    }
    cplx result = canonical_sum(rows);
    if (grid.capped) throw quadrature_error("fresnel_V: node budget exceeded", result);
    return result;
}

}  // namespace ref

double delta_envelope(double x) {
    if (x < 0 || std::isnan(x)) throw argument_error("delta_envelope: x must be >= 0");
    if (x == 0) return 0;
    return std::log1p(x) / std::sqrt(x);
}

// ---------------------------------------------------------------- spheres

double sphere_area(int m) {
    if (m < 0) throw argument_error("sphere_area: dimension must be >= 0");
    double k = 0.5 * (m + 1);
    return 2 * std::pow(M_PI, k) / std::tgamma(k);
}

double sphere_ft_radial(int d, double r) {
    if (d < 2) throw argument_error("sphere_ft: d must be >= 2");
    r = std::abs(r);
    // t = sin(theta): area(S^{d-2}) int cos^{d-2}(theta) cos(2 pi r sin theta) d theta
    int panels = 2 + int(std::ceil(r));
    QuadRule q = gauss_legendre(20, panels, -M_PI / 2, M_PI / 2);
    std::vector<double> terms(q.x.size());
    for (size_t i = 0; i < q.x.size(); ++i)
        terms[i] = q.w[i] * std::pow(std::cos(q.x[i]), d - 2) * std::cos(two_pi * r * std::sin(q.x[i]));
    return sphere_area(d - 2) * canonical_sum(terms);
}

namespace ref {
// 2 pi r^{1-d/2} J_{d/2-1}(2 pi r)
double sphere_ft_radial(int d, double r) {
    if (d < 2) throw argument_error("sphere_ft: d must be >= 2");
    r = std::abs(r);
    if (r < 1e-9) return sphere_area(d - 1);
    const double nu = 0.5 * d - 1;
    return two_pi * std::pow(r, -nu) * std::cyl_bessel_j(nu, two_pi * r);
}
}  // namespace ref

double sphere_ft(int d, std::span<const double> xi) {
    if (xi.size() != size_t(d)) throw argument_error("sphere_ft: xi must be a d-vector");
    double s = 0;
    for (double v : xi) s += v * v;
    return sphere_ft_radial(d, std::sqrt(s));
}

namespace {
constexpr double triangle_radius = 0.86602540378443864676;  // sqrt(3)/2
}

double compute_c_d(int d) {
    if (d < 3) throw argument_error("c_d: d must be >= 3");
    // (1/4) int_{|w| <= R, w in R^{d-2}} (R^2 - |w|^2)^{-1/2} dw, w = R sin(theta) radially
    QuadRule q = gauss_legendre(20, 8, 0, M_PI / 2);
    std::vector<double> terms(q.x.size());
    for (size_t i = 0; i < q.x.size(); ++i) terms[i] = q.w[i] * std::pow(std::sin(q.x[i]), d - 3);
    return 0.25 * sphere_area(d - 3) * std::pow(triangle_radius, d - 3) * canonical_sum(terms);
}

double c_d_closed_form(int d) {
    if (d < 3) throw argument_error("c_d: d must be >= 3");
    return 0.125 * sphere_area(d - 3) * std::pow(triangle_radius, d - 3) * std::beta(0.5 * (d - 2), 0.5);
}

// ---------------------------------------------------------------- beta integrals

namespace {

struct Axis {
    std::vector<double> g, w;
    double max_abs() const {
        double m = 0;
        for (double v : g) m = std::max(m, std::abs(v));
        return m;
    }
};

Axis lattice_axis(double G, double rate) {
    Axis a;
    if (G == 0) {
        a.g = {0};
        a.w = {0};
        return a;
    }
    long K = long(std::ceil(G * rate));
    double h = G / double(K);
    for (long i = -K; i <= K; ++i) {
        a.g.push_back(i * h);
        a.w.push_back(std::abs(i) == K ? 0.5 * h : h);
    }
    return a;
}

Axis gl_axis(double lo, double hi, double bandwidth) {
    Axis a;
    if (hi == lo) {
        a.g = {lo};
        a.w = {0};
        return a;
    }
    int panels = int(std::ceil((hi - lo) * bandwidth)) + 1;
    QuadRule q = gauss_legendre(8, panels, lo, hi);
    a.g = q.x;
    a.w = q.w;
    return a;
}

struct Group {
    double xi, eta;
    int mult;
};

std::vector<Group> frequency_groups(std::span<const double> xi, std::span<const double> eta, double scale) {
    if (xi.size() != eta.size() || xi.empty()) throw argument_error("beta integral: xi and eta must be d-vectors");
    std::map<std::pair<double, double>, int> cnt;
    for (size_t j = 0; j < xi.size(); ++j) {
        double a = scale * xi[j], b = scale * eta[j];
        // V_1(gamma; xi, eta) = V_1(gamma; -xi, -eta)
        if (a < 0 || (a == 0 && b < 0)) {
            a = -a;
            b = -b;
        }
        ++cnt[{a + 0.0, b + 0.0}];
    }
    std::vector<Group> out;
    for (auto& [k, m] : cnt) out.push_back({k.first, k.second, m});
    return out;
}

// sum over the tensor grid of w1 w2 w3 prod_g V_1(gamma; xi_g, eta_g)^{m_g} e(-tau s(gamma))
cplx beta_integral(const Axis& a1, const Axis& a2, const Axis& a3, const std::vector<Group>& groups, double tau,
                   bool symmetric, bool parallel) {
    using Mat = Eigen::MatrixXcd;
    double fmax = 0;
    for (const auto& g : groups) fmax = std::max({fmax, std::abs(g.xi), std::abs(g.eta)});
    double cycles = 4 * (std::max(a1.max_abs(), a3.max_abs()) + a2.max_abs()) + 2 * fmax;
    QuadRule r = gauss_legendre(8, int(std::ceil(cycles)) + 1, -1, 1);
    const Eigen::Index n = Eigen::Index(r.x.size());
    const Eigen::Index K1 = Eigen::Index(a1.g.size()), K2 = Eigen::Index(a2.g.size()), K3 = Eigen::Index(a3.g.size());
    const double bytes = 16.0 * (double(groups.size()) * double(K1) * double(n) + double(n) * double(K3) +
                                 double(omp_get_max_threads()) * (double(n) * double(n + K3) + 2.0 * double(K1) * double(K3)));
    if (bytes > 2e9) throw resource_error("beta integral: quadrature grid needs " + fmt_double(bytes / 1e9) + " GB");

    std::vector<Mat> A(groups.size(), Mat(K1, n));
    for (size_t gi = 0; gi < groups.size(); ++gi)
        for (Eigen::Index k = 0; k < K1; ++k)
            for (Eigen::Index a = 0; a < n; ++a)
                A[gi](k, a) = r.w[size_t(a)] * expi(a1.g[size_t(k)] * r.x[size_t(a)] * r.x[size_t(a)] + groups[gi].xi * r.x[size_t(a)]);
    Mat Q(n, K3);
    for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index k = 0; k < K3; ++k) Q(b, k) = expi(a3.g[size_t(k)] * r.x[size_t(b)] * r.x[size_t(b)]);
    Eigen::VectorXcd e1(K1), e3(K3);
    for (Eigen::Index k = 0; k < K1; ++k) e1(k) = a1.w[size_t(k)] * expi(-tau * a1.g[size_t(k)]);
    for (Eigen::Index k = 0; k < K3; ++k) e3(k) = a3.w[size_t(k)] * expi(-tau * a3.g[size_t(k)]);

    const Eigen::Index start = symmetric ? K2 / 2 : 0;
    std::vector<cplx> slice(size_t(K2), 0);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (Eigen::Index k2 = start; k2 < K2; ++k2) {
        const double g2 = a2.g[size_t(k2)];
        Mat prod = Mat::Ones(K1, K3);
        Mat P(n, n);
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            for (Eigen::Index b = 0; b < n; ++b) {
                const double y = r.x[size_t(b)];
                const cplx wy = r.w[size_t(b)] * expi(groups[gi].eta * y);
                for (Eigen::Index a = 0; a < n; ++a) P(a, b) = wy * expi(2 * g2 * r.x[size_t(a)] * y);
            }
            Mat V = A[gi] * (P * Q);
            for (int m = 0; m < groups[gi].mult; ++m) prod = prod.cwiseProduct(V);
        }
        cplx s = e1.transpose() * prod * e3;
        slice[size_t(k2)] = a2.w[size_t(k2)] * expi(-tau * g2) * s;
    }
    if (symmetric) {
        // F(-gamma) = conj F(gamma) on a grid symmetric about 0
        double tot = slice[size_t(K2 / 2)].real();
        for (Eigen::Index k2 = K2 / 2 + 1; k2 < K2; ++k2) tot += 2 * slice[size_t(k2)].real();
        return tot;
    }
    cplx tot = 0;
    for (const cplx& v : slice) tot += v;
    return tot;
}

}  // namespace

cplx truncated_I_N(double N, double lambda, std::span<const double> xi, std::span<const double> eta, double B,
                   bool parallel) {
    if (!(N > 0) || !(B >= 0)) throw argument_error("truncated_I_N: N > 0 and B >= 0 required");
    const int d = int(xi.size());
    auto groups = frequency_groups(xi, eta, N);
    const double tau = lambda / (N * N);
    const double G = N * N * B;
    Axis a1 = lattice_axis(G, std::floor(std::max(d - tau, std::abs(tau))) + 2);
    Axis a2 = lattice_axis(G, std::floor(2 * d + std::abs(tau)) + 2);
    cplx v = beta_integral(a1, a2, a1, groups, tau, true, parallel);
    return v * std::pow(N, 2 * d - 6);
}

SingularIntegral singular_integral_I(double lambda, std::span<const double> xi, std::span<const double> eta,
                                     const QuadratureSpec& spec) {
    const int d = int(xi.size());
    if (d < 7) throw argument_error("singular_integral_I: d must be >= 7");
    if (!(lambda > 0)) throw argument_error("singular_integral_I: lambda must be positive");
    std::vector<double> sx(xi.begin(), xi.end()), se(eta.begin(), eta.end());
    const double s = std::sqrt(lambda);
    for (auto& v : sx) v *= s;
    for (auto& v : se) v *= s;
    SingularIntegral out;
    out.tail_exponent = 0.5 * (d - 6);
    for (int k = 0; k < 3; ++k) {
        double B = spec.box * double(1 << k);
        out.boxes.push_back(B);
        out.truncated.push_back(truncated_I_N(1, 1, sx, se, B));
    }
    const double f = std::pow(2.0, out.tail_exponent);
    cplx r0 = (f * out.truncated[1] - out.truncated[0]) / (f - 1);
    cplx r1 = (f * out.truncated[2] - out.truncated[1]) / (f - 1);
    out.value = r1;
    out.error_estimate = std::abs(r1 - r0);
    if (out.error_estimate > spec.tol * std::max(std::abs(r1), 1e-300))
        throw quadrature_error("singular_integral_I: tail estimate exceeds tolerance", r1);
    return out;
}

cplx restricted_J(double lambda, std::span<const double> xi, const BetaBox& box, double N) {
    if (!(N > 0)) throw argument_error("restricted_J: N must be positive");
    for (int i = 0; i < 3; ++i)
        if (!(box.lo[size_t(i)] <= box.hi[size_t(i)])) throw argument_error("restricted_J: empty or inverted box");
    const int d = int(xi.size());
    std::vector<double> eta(xi.size(), 0.0);
    auto groups = frequency_groups(xi, eta, N);
    const double n2 = N * N, tau = lambda / n2;
    Axis a1 = gl_axis(n2 * box.lo[0], n2 * box.hi[0], d + std::abs(tau));
    Axis a2 = gl_axis(n2 * box.lo[1], n2 * box.hi[1], 2 * d + std::abs(tau));
    Axis a3 = gl_axis(n2 * box.lo[2], n2 * box.hi[2], d + std::abs(tau));
    cplx v = beta_integral(a1, a2, a3, groups, tau, false, true);
    return v * std::pow(N, 2 * d - 6);
}

VerificationReport check_lemma9(double N, double lambda, std::span<const double> xi, const QuadratureSpec& spec) {
    const int d = int(xi.size());
    if (d < 7) throw argument_error("check_lemma9: d must be >= 7");
    if (!(N * N >= lambda)) throw argument_error("check_lemma9: requires N^2 >= lambda");
    VerificationReport rep;
    rep.name = "lemma9_identity";
    rep.anchor = "I_N(lambda; xi) = c_d lambda^{d-3} dS(lambda^{1/2} xi)";
    rep.inputs = {{"N", N}, {"lambda", lambda}, {"xi", std::vector<double>(xi.begin(), xi.end())}, {"d", d}};
    std::vector<double> eta(xi.size(), 0.0);

    // (a) same beta truncation at N and 2N
    cplx ia = truncated_I_N(N, lambda, xi, eta, spec.box);
    cplx ib = truncated_I_N(2 * N, lambda, xi, eta, spec.box);
    rep.add_close("truncated I_N vs I_2N, |beta|_inf <= B0", ib.real(), ia.real(), 1e-6);

    // (b) extrapolated identity
    std::vector<cplx> tr;
    std::vector<double> boxes;
    for (int k = 0; k < 3; ++k) {
        boxes.push_back(spec.box * double(1 << k));
        tr.push_back(truncated_I_N(N, lambda, xi, eta, boxes.back()));
    }
    const double p = 0.5 * (d - 6), f = std::pow(2.0, p);
    cplx r0 = (f * tr[1] - tr[0]) / (f - 1), r1 = (f * tr[2] - tr[1]) / (f - 1);
    std::vector<double> sx(xi.begin(), xi.end());
    for (auto& v : sx) v *= std::sqrt(lambda);
    const double rhs = c_d_closed_form(d) * std::pow(lambda, d - 3) * sphere_ft(d, sx);
    rep.add("extrapolated I_N vs c_d lambda^{d-3} dS, 5% relative", r1.real(), rhs, 0.05,
            std::abs(r1.real() - rhs) <= 0.05 * std::abs(rhs));
    rep.add_le("imaginary part of I_N", std::abs(r1.imag()), 1e-9 * std::max(1.0, std::abs(rhs)), 0, false);
    json tj = json::array();
    for (size_t k = 0; k < tr.size(); ++k) tj.push_back({{"B", boxes[k]}, {"value", tr[k].real()}});
    rep.data = {{"truncated_N", ia.real()},
                {"truncated_2N", ib.real()},
                {"boxes", tj},
                {"tail_exponent", p},
                {"extrapolated", r1.real()},
                {"error_estimate", std::abs(r1 - r0)},
                {"c_d", c_d_closed_form(d)},
                {"rhs", rhs}};
    rep.notes.push_back("tail model B^{-(d-6)/2} with exponent " + fmt_double(p));
    return rep;
}

VerificationReport lemma3_sweep(int samples, u64 seed, double guard, const QuadratureSpec& spec) {
    VerificationReport rep;
    rep.name = "lemma3_envelope";
    rep.anchor = "Delta(x) = x^{-1/2} log(x+1)";
    rep.inputs = {{"samples", samples}, {"seed", seed}, {"guard", guard}};
    std::vector<double> ratio(size_t(std::max(samples, 0)));
    auto log_uniform = [](std::mt19937_64& g, double lo, double hi) {
        return lo * std::pow(hi / lo, uniform01(g));
    };
    auto sign = [](std::mt19937_64& g) { return (g() & 1) ? 1.0 : -1.0; };
    for (int i = 0; i < samples; ++i) {
        auto g = stream_for(seed, u64(i));
        double N = double(4 + g() % 61);
        double kb = log_uniform(g, 1e-3, 8);
        Real3 beta;
        size_t top = g() % 3;
        for (size_t k = 0; k < 3; ++k) beta[k] = sign(g) * (k == top ? 1.0 : uniform01(g)) * kb / (N * N);
        double xi = sign(g) * log_uniform(g, 1e-3, 8) / N;
        double eta = sign(g) * log_uniform(g, 1e-3, 8) / N;
        cplx v = fresnel_V(N, beta, xi, eta, spec);
        double env = N * N * delta_envelope(1 + N * N * max_abs(beta) + N * std::abs(xi) + N * std::abs(eta));
        ratio[size_t(i)] = std::abs(v) / env;
    }
    double worst = ratio.empty() ? 0 : *std::max_element(ratio.begin(), ratio.end());
    rep.add_le("max |V_N| / (N^2 Delta(1 + N^2|beta| + N|xi| + N|eta|))", worst, guard);
    rep.data = {{"max_ratio", worst}};
    return rep;
}

}  // namespace triadne

#include "triadne/operators.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <bit>
#include <boost/rational.hpp>
#include <cmath>
#include <mutex>
#include <sstream>

#include "triadne/lattice.hpp"
#include "triadne/oscillatory.hpp"

namespace triadne {

namespace {

double lambda_weight(i64 lambda, int d) { return std::pow(double(lambda), 3 - d); }

constexpr size_t pair_block = 4096;

std::mutex& fftw_mutex() {
    static std::mutex mu;
    return mu;
}

// sum over the distinct signed permutations w of a of e(xi.w), as a permanent
// of the cosine matrix divided by the stabilizer order
double orbit_character(const LatticeVector& canon, std::span<const double> xi) {
    const int d = int(canon.size());
    std::vector<double> M(size_t(d) * d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) M[size_t(j) * d + i] = 2 * std::cos(two_pi * xi[j] * double(canon[i]));
    // Ryser with Gray code
    std::vector<double> rows(d, 0.0);
    double perm = 0;
    u64 prev = 0;
    for (u64 k = 1; k < (u64(1) << d); ++k) {
        u64 gray = k ^ (k >> 1);
        u64 diff = gray ^ prev;
        int col = std::countr_zero(diff);
        double sgn = (gray & diff) ? 1.0 : -1.0;
        for (int j = 0; j < d; ++j) rows[j] += sgn * M[size_t(j) * d + col];
        prev = gray;
        double p = 1;
        for (int j = 0; j < d; ++j) p *= rows[j];
        perm += ((d - std::popcount(gray)) % 2 ? -1.0 : 1.0) * p;
    }
    double stab = 1;
    int zeros = 0;
    for (int i = 0; i < d;) {
        int j = i;
        while (j < d && canon[j] == canon[i]) ++j;
        stab *= std::tgamma(double(j - i) + 1);
        if (canon[i] == 0) zeros = j - i;
        i = j;
    }
    stab *= std::ldexp(1.0, zeros);
    return perm / stab;
}

struct OrbitWeights {
    std::vector<LatticeVector> canon;
    std::vector<double> weight;  // completions per point of the orbit
    std::vector<u64> size;
};

OrbitWeights orbit_weights(i64 lambda, int d) {
    OrbitWeights w;
    for (auto& o : triangle_orbits(lambda, d)) {
        size_t c = o.completion_count(d);
        if (!c) continue;
        w.canon.push_back(o.canon);
        w.weight.push_back(double(c));
        w.size.push_back(o.orbit_size);
    }
    return w;
}

cplx T_hat_from_orbits(const OrbitWeights& w, std::span<const double> xi, double scale) {
    std::vector<double> terms(w.canon.size());
    for (size_t k = 0; k < w.canon.size(); ++k) terms[k] = w.weight[k] * orbit_character(w.canon[k], xi);
    return scale * canonical_sum(terms);
}

}  // namespace

// ---------------------------------------------------------------- T_lambda

GridFunction triangle_average_T(i64 lambda, const GridFunction& f, const GridFunction& g, bool parallel) {
    const int d = f.dim();
    if (g.dim() != d) throw argument_error("triangle_average_T: dimension mismatch");
    if (lambda < 0) throw argument_error("triangle_average_T: lambda must be >= 0");
    GridFunction out(d);
    if (lambda % 2 || lambda == 0 || f.empty() || g.empty()) return out;

    TrianglePairSet V = count_triangle_pairs(lambda, d, true);
    SparseAccumulator gmap;
    gmap.reserve(g.size());
    for (const auto& [x, v] : g.entries()) gmap.emplace(x, v);
    std::vector<std::pair<LatticeVector, cplx>> fs(f.entries().begin(), f.entries().end());

    const size_t npairs = V.size();
    const size_t nblocks = (npairs + pair_block - 1) / pair_block;
    std::vector<SparseAccumulator> partial(nblocks);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (size_t b = 0; b < nblocks; ++b) {
        SparseAccumulator& acc = partial[b];
        LatticeVector x(static_cast<size_t>(d)), w(static_cast<size_t>(d));
        const size_t hi = std::min(npairs, (b + 1) * pair_block);
        for (size_t i = b * pair_block; i < hi; ++i) {
            auto u = V.u(i), v = V.v(i);
            for (const auto& [y, fy] : fs) {
                for (int k = 0; k < d; ++k) {
                    x[k] = y[k] + u[k];
                    w[k] = x[k] - v[k];
                }
                auto it = gmap.find(w);
                if (it != gmap.end()) acc[x] += fy * it->second;
            }
        }
    }
    // block order merge into canonical key order
    std::map<LatticeVector, cplx> merged;
    for (const auto& acc : partial) {
        std::vector<std::pair<LatticeVector, cplx>> items(acc.begin(), acc.end());
        std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [x, v] : items) merged[x] += v;
    }
    const double s = lambda_weight(lambda, d);
    for (auto& [x, v] : merged) out.set(x, s * v);
    return out;
}

GridFunction linearized_T(i64 lambda, const GridFunction& f) {
    const int d = f.dim();
    if (lambda < 0) throw argument_error("linearized_T: lambda must be >= 0");
    GridFunction out(d);
    if (lambda % 2 || lambda == 0 || f.empty()) return out;
    CompletionTable ct = completion_counts(lambda, d);
    const double s = lambda_weight(lambda, d);
    std::map<LatticeVector, cplx> acc;
    LatticeVector x(static_cast<size_t>(d));
    for (const auto& [y, fy] : f.entries()) {
        for (size_t i = 0; i < ct.reps.size(); ++i) {
            if (!ct.c[i]) continue;
            auto u = ct.reps[i];
            for (int k = 0; k < d; ++k) x[k] = y[k] + u[k];
            acc[x] += double(ct.c[i]) * fy;
        }
    }
    for (auto& [x, v] : acc) out.set(x, s * v);
    return out;
}

GridFunction maximal_over(const std::vector<i64>& lambdas, const GridFunction& f, const GridFunction* g) {
    std::map<LatticeVector, double> sup;
    for (i64 lam : lambdas) {
        GridFunction t = g ? triangle_average_T(lam, f, *g) : linearized_T(lam, f);
        for (const auto& [x, v] : t.entries()) {
            double& s = sup[x];
            s = std::max(s, std::abs(v));
        }
    }
    GridFunction out(f.dim());
    for (auto& [x, v] : sup) out.set(x, v);
    return out;
}

std::vector<i64> dyadic_window(i64 Lambda) {
    if (Lambda < 2) throw argument_error("dyadic_maximal: Lambda must be >= 2");
    std::vector<i64> out;
    for (i64 lam = (Lambda + 1) / 2; lam < Lambda; ++lam)
        if (lam % 2 == 0) out.push_back(lam);
    return out;
}

GridFunction dyadic_maximal(i64 Lambda, const GridFunction& f, const std::optional<GridFunction>& g) {
    return maximal_over(dyadic_window(Lambda), f, g ? &*g : nullptr);
}

// ---------------------------------------------------------------- multipliers

cplx multiplier_T_hat(i64 lambda, std::span<const double> xi, std::span<const double> eta, int d) {
    if (xi.size() != size_t(d) || eta.size() != size_t(d))
        throw argument_error("multiplier_T_hat: xi and eta must be d-vectors");
    if (lambda < 0) throw argument_error("multiplier_T_hat: lambda must be >= 0");
    if (lambda % 2 || lambda == 0) return {};
    const double s = lambda_weight(lambda, d);
    bool xi0 = std::all_of(xi.begin(), xi.end(), [](double v) { return v == 0; });
    bool eta0 = std::all_of(eta.begin(), eta.end(), [](double v) { return v == 0; });
    if (xi0 && eta0) return s * to_double(count_triangle_pairs(lambda, d).count);
    if (eta0) return T_hat_from_orbits(orbit_weights(lambda, d), xi, s);
    if (xi0) return T_hat_from_orbits(orbit_weights(lambda, d), eta, s);  // V_lambda is symmetric in (u, v)

    // general frequency: stream every orbit image
    auto orbits = triangle_orbits(lambda, d);
    std::vector<cplx> per_orbit(orbits.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (size_t k = 0; k < orbits.size(); ++k) {
        const auto& o = orbits[k];
        const size_t nc = o.completion_count(d);
        if (!nc) continue;
        std::vector<cplx> terms;
        LatticeVector gu(static_cast<size_t>(d)), gv(static_cast<size_t>(d));
        for (const auto& g : orbit_transforms(o.canon)) {
            g.apply(o.canon, gu.data());
            double pu = 0;
            for (int i = 0; i < d; ++i) pu += xi[i] * double(gu[i]);
            cplx inner = 0;
            for (size_t c = 0; c < nc; ++c) {
                g.apply(std::span<const i64>(o.completions.data() + c * d, size_t(d)), gv.data());
                double pv = 0;
                for (int i = 0; i < d; ++i) pv += eta[i] * double(gv[i]);
                inner += expi(pv);
            }
            terms.push_back(expi(pu) * inner);
        }
        per_orbit[k] = canonical_sum(terms);
    }
    return s * canonical_sum(per_orbit);
}

MainTermMultiplier::MainTermMultiplier(i64 lambda, int d, int q_max)
    : lambda_(lambda), d_(d), q_max_(q_max), c_d_(0), cache_(std::make_shared<BigGCache>()) {
    if (d < 7) throw argument_error("main_term_multiplier_M_hat: d must be >= 7");
    if (q_max < 1) throw argument_error("main_term_multiplier_M_hat: q_max must be >= 1");
    c_d_ = c_d_closed_form(d);
}

double MainTermMultiplier::operator()(std::span<const double> xi) const {
    if (xi.size() != size_t(d_)) throw argument_error("main_term_multiplier_M_hat: xi must be a d-vector");
    const double rl = std::sqrt(double(lambda_));
    std::vector<i64> m(static_cast<size_t>(d_));
    std::vector<double> off(static_cast<size_t>(d_)), arg(static_cast<size_t>(d_));
    std::vector<double> terms;
    for (int q = 1; q <= q_max_; ++q) {
        double t = 0;
        for (int j = 0; j < d_; ++j) {
            double x = q * xi[j];
            m[j] = i64(std::nearbyint(x));
            off[j] = x - double(m[j]);
            t = std::max(t, std::abs(off[j]));
        }
        double phi = cutoff_profile(t);
        if (phi == 0) continue;
        cplx G = cache_->get(lambda_, u64(q), m);
        for (int j = 0; j < d_; ++j) arg[j] = rl * off[j] / q;
        terms.push_back(G.real() * phi * sphere_ft(d_, arg));
    }
    return c_d_ * canonical_sum(terms);
}

double main_term_multiplier_M_hat(i64 lambda, std::span<const double> xi, int d, int q_max) {
    MainTermMultiplier M(lambda, d, q_max);
    return M(xi);
}

GridFunction apply_main_term_M(i64 lambda, const GridFunction& f, i64 L, int q_max) {
    const int d = f.dim();
    if (d < 7) throw argument_error("apply_main_term_M: d must be >= 7");
    const i64 r = i64(std::ceil(std::sqrt(double(lambda))));
    if (double(L) <= 2 * f.diameter() + 4 * double(r))
        throw argument_error("apply_main_term_M: box size " + std::to_string(L) +
                             " violates the periodization guard L > 2 diam(f) + 4 ceil(sqrt(lambda))");
    double total = std::pow(double(L), d);
    if (total > 2e7) throw resource_error("apply_main_term_M: L^d = " + fmt_double(total) + " exceeds the budget");
    GridFunction out(d);
    if (f.empty()) return out;

    const size_t n = size_t(total);
    fftw_complex* buf = fftw_alloc_complex(n);
    std::fill(reinterpret_cast<double*>(buf), reinterpret_cast<double*>(buf) + 2 * n, 0.0);
    std::vector<int> dims(d, int(L));
    fftw_plan fwd, inv;
    {
        std::lock_guard lk(fftw_mutex());
        fwd = fftw_plan_dft(d, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        inv = fftw_plan_dft(d, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    auto index = [&](const LatticeVector& x) {
        size_t id = 0;
        for (int k = 0; k < d; ++k) id = id * size_t(L) + size_t(mod(x[k], L));
        return id;
    };
    for (const auto& [x, v] : f.entries()) {
        size_t id = index(x);
        buf[id][0] += v.real();
        buf[id][1] += v.imag();
    }
    fftw_execute(fwd);  // sum_x f(x) e(k.x / L)

    MainTermMultiplier M(lambda, d, q_max);
#pragma omp parallel
    {
        std::vector<double> xi(static_cast<size_t>(d));
#pragma omp for schedule(static)
        for (size_t id = 0; id < n; ++id) {
            size_t rem = id;
            for (int k = d - 1; k >= 0; --k) {
                xi[k] = double(rem % size_t(L)) / double(L);
                rem /= size_t(L);
            }
            double mult = M(xi);
            buf[id][0] *= mult;
            buf[id][1] *= mult;
        }
    }
    fftw_execute(inv);

    // window: the bounding box of supp f widened by ceil(sqrt(lambda))
    LatticeVector lo(d, std::numeric_limits<i64>::max()), hi(d, std::numeric_limits<i64>::min());
    for (const auto& [x, v] : f.entries())
        for (int k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], x[k] - r);
            hi[k] = std::max(hi[k], x[k] + r);
        }
    double peak = 0;
    for (size_t id = 0; id < n; ++id) peak = std::max(peak, std::hypot(buf[id][0], buf[id][1]));
    const double floor_v = 1e-14 * peak * total;
    LatticeVector x = lo;
    while (true) {
        size_t id = index(x);
        cplx v(buf[id][0], buf[id][1]);
        if (std::abs(v) > floor_v) out.set(x, v / total);
        int k = d - 1;
        while (k >= 0 && x[k] == hi[k]) {
            x[k] = lo[k];
            --k;
        }
        if (k < 0) break;
        ++x[k];
    }
    {
        std::lock_guard lk(fftw_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(buf);
    return out;
}

Discrepancy main_term_discrepancy(i64 lambda, int d, i64 L, size_t samples, u64 seed, int q_max) {
    if (d < 7) throw argument_error("main_term_discrepancy: d must be >= 7");
    if (lambda <= 0 || lambda % 2) throw argument_error("main_term_discrepancy: lambda must be even and positive");
    const i64 r = i64(std::ceil(std::sqrt(double(lambda))));
    if (L <= 4 * r) throw argument_error("main_term_discrepancy: L must exceed 4 ceil(sqrt(lambda))");

    OrbitWeights w = orbit_weights(lambda, d);
    const double s = lambda_weight(lambda, d);
    std::vector<double> sq(w.canon.size());
    for (size_t k = 0; k < w.canon.size(); ++k) sq[k] = double(w.size[k]) * w.weight[k] * w.weight[k];
    Discrepancy out;
    out.reference_norm = s * std::sqrt(canonical_sum(sq));

    const double total = std::pow(double(L), d);
    out.exact = samples == 0 || double(samples) >= total;
    if (out.exact && total > 2e7) throw resource_error("main_term_discrepancy: L^d too large for exact enumeration");
    const size_t n = out.exact ? size_t(total) : samples;
    out.frequencies = n;

    const MainTermMultiplier M(lambda, d, q_max);
    std::vector<double> err2(n);
#pragma omp parallel
    {
        std::vector<double> xi(static_cast<size_t>(d));
#pragma omp for schedule(dynamic, 256)
        for (size_t i = 0; i < n; ++i) {
            if (out.exact) {
                size_t rem = i;
                for (int k = d - 1; k >= 0; --k) {
                    xi[k] = double(rem % size_t(L)) / double(L);
                    rem /= size_t(L);
                }
            } else {
                auto gen = stream_for(seed, i);
                std::uniform_int_distribution<i64> pick(0, L - 1);
                for (int k = 0; k < d; ++k) xi[k] = double(pick(gen)) / double(L);
            }
            double t = T_hat_from_orbits(w, xi, s).real();
            double m = M(xi);
            err2[i] = (t - m) * (t - m);
        }
    }
    double mean = canonical_sum(err2) / double(n);
    out.absolute = std::sqrt(mean);
    out.relative = out.absolute / out.reference_norm;
    if (!out.exact && n > 1) {
        std::vector<double> dev(n);
        for (size_t i = 0; i < n; ++i) dev[i] = (err2[i] - mean) * (err2[i] - mean);
        double se_mean = std::sqrt(canonical_sum(dev) / double(n - 1) / double(n));
        out.standard_error = mean > 0 ? se_mean / (2 * std::sqrt(mean) * out.reference_norm) : 0;
    }
    return out;
}

std::string multiplier_box_csv(i64 lambda, int d, i64 L, int q_max, size_t limit) {
    if (L < 1) throw argument_error("multiplier_box_csv: L must be >= 1");
    const double total = std::pow(double(L), d);
    if (total > double(limit)) throw resource_error("multiplier_box_csv: L^d exceeds the row limit");
    const size_t n = size_t(total);
    OrbitWeights w = orbit_weights(lambda, d);
    const double s = lambda_weight(lambda, d);
    std::unique_ptr<MainTermMultiplier> M;
    if (d >= 7) M = std::make_unique<MainTermMultiplier>(lambda, d, q_max);
    std::ostringstream os;
    os << "L,d,lambda\n" << L << ',' << d << ',' << lambda << "\nk,T_hat,M_hat\n";
    std::vector<double> xi(static_cast<size_t>(d));
    std::vector<i64> k(static_cast<size_t>(d));
    for (size_t id = 0; id < n; ++id) {
        size_t rem = id;
        for (int j = d - 1; j >= 0; --j) {
            k[j] = i64(rem % size_t(L));
            xi[j] = double(k[j]) / double(L);
            rem /= size_t(L);
        }
        std::string key;
        for (int j = 0; j < d; ++j) key += (j ? ":" : "") + std::to_string(k[j]);
        os << key << ',' << fmt_double(T_hat_from_orbits(w, xi, s).real()) << ','
           << (M ? fmt_double((*M)(xi)) : std::string("")) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- norms and constants

double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1)) throw argument_error("lp_norm: p must be >= 1");
    if (f.empty()) return 0;
    double peak = f.sup_norm();
    if (std::isinf(p)) return peak;
    std::vector<double> terms;
    terms.reserve(f.size());
    for (const auto& [x, v] : f.entries()) terms.push_back(std::pow(std::abs(v) / peak, p));
    return peak * std::pow(canonical_sum(terms), 1 / p);
}

TheoryConstants theory_constants(int d) {
    if (d < 7) throw argument_error("theory_constants: d must be >= 7");
    using R = boost::rational<i64>;
    R p0 = std::max(R(32, d + 8), R(d + 4, d - 2));
    R delta2 = std::min(R(1, 4), R(d - 8, 8));
    auto str = [](R r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); };
    TheoryConstants c;
    c.d = d;
    c.p0 = boost::rational_cast<double>(p0);
    c.delta2 = boost::rational_cast<double>(delta2);
    c.p0_exact = str(p0);
    c.delta2_exact = str(delta2);
    c.in_range = d >= 9;
    return c;
}

}  // namespace triadne

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "triadne/gauss.hpp"
#include "triadne/lattice.hpp"
#include "triadne/operators.hpp"
#include "triadne/oscillatory.hpp"

using namespace triadne;

namespace {

GridFunction random_function(int d, i64 radius, int points, u64 seed) {
    auto g = stream_for(seed, 0);
    std::uniform_int_distribution<i64> coord(-radius, radius);
    GridFunction f(d);
    for (int i = 0; i < points; ++i) {
        LatticeVector x(d);
        for (auto& c : x) c = coord(g);
        f.set(x, {2 * uniform01(g) - 1, 2 * uniform01(g) - 1});
    }
    return f;
}

GridFunction box_indicator(int d, i64 lo, i64 hi) {
    GridFunction g(d);
    LatticeVector x(d, lo);
    while (true) {
        g.set(x, 1.0);
        int k = d - 1;
        while (k >= 0 && x[k] == hi) x[k--] = lo;
        if (k < 0) break;
        ++x[k];
    }
    return g;
}

// lambda^{3-d} sum over materialized pairs, straight from the definition
GridFunction direct_T(i64 lambda, const GridFunction& f, const GridFunction& g) {
    const int d = f.dim();
    auto V = count_triangle_pairs(lambda, d, true);
    GridFunction out(d);
    double s = std::pow(double(lambda), 3 - d);
    for (size_t i = 0; i < V.size(); ++i) {
        auto u = V.u(i), v = V.v(i);
        for (const auto& [y, fy] : f.entries()) {
            LatticeVector x(d), xv(d);
            for (int j = 0; j < d; ++j) {
                x[j] = y[j] + u[j];
                xv[j] = x[j] - v[j];
            }
            cplx gv = g.at(xv);
            if (gv != cplx{}) out.add(x, s * fy * gv);
        }
    }
    return out;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0;
    for (const auto& [x, v] : a.entries()) m = std::max(m, std::abs(v - b.at(x)));
    for (const auto& [x, v] : b.entries()) m = std::max(m, std::abs(v - a.at(x)));
    return m;
}

cplx direct_T_hat(i64 lambda, int d, std::span<const double> xi, std::span<const double> eta) {
    auto V = count_triangle_pairs(lambda, d, true);
    cplx s{};
    for (size_t i = 0; i < V.size(); ++i) {
        double p = 0;
        for (int j = 0; j < d; ++j) p += xi[j] * double(V.u(i)[j]) + eta[j] * double(V.v(i)[j]);
        s += std::exp(cplx(0, two_pi * p));
    }
    return s * std::pow(double(lambda), 3 - d);
}

}  // namespace

TEST_CASE("odd lambda annihilates") {
    auto f = random_function(4, 1, 5, 1);
    auto g = random_function(4, 1, 5, 2);
    CHECK(triangle_average_T(3, f, g).empty());
    CHECK(linearized_T(5, f).empty());
    std::vector<double> xi{0.1, 0.2, 0.3, 0.4}, zero(4, 0.0);
    CHECK(multiplier_T_hat(7, xi, zero, 4) == cplx{});
}

TEST_CASE("point masses") {
    const int d = 4;
    const i64 lam = 2;
    auto V = count_triangle_pairs(lam, d, true);
    REQUIRE(V.size() > 0);
    LatticeVector w(d);
    for (int j = 0; j < d; ++j) w[j] = V.u(0)[j] - V.v(0)[j];
    auto T = triangle_average_T(lam, GridFunction::delta(d), GridFunction::delta(d, w));
    std::set<LatticeVector> expect;
    for (size_t i = 0; i < V.size(); ++i) {
        LatticeVector diff(d);
        for (int j = 0; j < d; ++j) diff[j] = V.u(i)[j] - V.v(i)[j];
        if (diff == w) expect.insert(LatticeVector(V.u(i).begin(), V.u(i).end()));
    }
    CHECK(T.size() == expect.size());
    for (const auto& [x, v] : T.entries()) {
        CHECK(expect.count(x) == 1);
        CHECK(std::abs(v - std::pow(double(lam), 3 - d)) < 1e-15);
    }
}

TEST_CASE("wide box reproduces completion counts") {
    for (auto [d, lam] : {std::pair<int, i64>{4, 2}, {4, 4}, {5, 2}}) {
        i64 r = i64(std::ceil(std::sqrt(double(lam))));
        auto box = box_indicator(d, -2 * r, 2 * r);
        auto T = triangle_average_T(lam, GridFunction::delta(d), box);
        auto L = linearized_T(lam, GridFunction::delta(d));
        auto C = completion_counts(lam, d);
        double s = std::pow(double(lam), 3 - d);
        size_t nonzero = 0;
        cplx total{};
        for (size_t i = 0; i < C.reps.size(); ++i) {
            LatticeVector x(C.reps[i].begin(), C.reps[i].end());
            CHECK(std::abs(T.at(x) - s * double(C.c[i])) < 1e-14);
            CHECK(std::abs(L.at(x) - s * double(C.c[i])) < 1e-14);
            nonzero += C.c[i] > 0;
        }
        CHECK(T.size() == nonzero);
        CHECK(L.size() == nonzero);
        for (const auto& [x, v] : L.entries()) total += v;
        CHECK(std::abs(total.real() - s * to_double(count_triangle_pairs(lam, d).count)) < 1e-12);
    }
}

TEST_CASE("linearized operator matches a wide box on interior points") {
    const int d = 4;
    for (i64 lam : {2, 4}) {
        i64 r = i64(std::ceil(std::sqrt(double(lam))));
        auto f = random_function(d, 1, 6, 10 + lam);
        auto box = box_indicator(d, -1 - 2 * r, 1 + 2 * r);
        CHECK(max_diff(linearized_T(lam, f), triangle_average_T(lam, f, box)) < 1e-13);
    }
}

TEST_CASE("bilinear kernel against the definition") {
    for (auto [d, lam] : {std::pair<int, i64>{4, 2}, {4, 6}, {7, 2}}) {
        auto f = random_function(d, 2, 8, 20 + lam);
        auto g = random_function(d, 2, 8, 30 + lam);
        auto T = triangle_average_T(lam, f, g);
        CHECK(max_diff(T, direct_T(lam, f, g)) < 1e-13);
        CHECK(max_diff(T, triangle_average_T(lam, f, g, false)) == 0);
    }
}

TEST_CASE("bilinearity and translation equivariance") {
    const int d = 4;
    const i64 lam = 4;
    auto f1 = random_function(d, 2, 7, 41), f2 = random_function(d, 2, 7, 42);
    auto g1 = random_function(d, 2, 7, 43), g2 = random_function(d, 2, 7, 44);
    cplx a{0.7, -1.3}, b{-2.1, 0.4};
    auto lhs = triangle_average_T(lam, f1.scaled(a) + f2.scaled(b), g1);
    auto rhs = triangle_average_T(lam, f1, g1).scaled(a) + triangle_average_T(lam, f2, g1).scaled(b);
    CHECK(max_diff(lhs, rhs) < 1e-12);
    lhs = triangle_average_T(lam, f1, g1.scaled(a) + g2.scaled(b));
    rhs = triangle_average_T(lam, f1, g1).scaled(a) + triangle_average_T(lam, f1, g2).scaled(b);
    CHECK(max_diff(lhs, rhs) < 1e-12);
    LatticeVector w{3, -1, 0, 5};
    CHECK(max_diff(triangle_average_T(lam, f1.translated(w), g1.translated(w)),
                   triangle_average_T(lam, f1, g1).translated(w)) < 1e-12);
    CHECK(max_diff(linearized_T(lam, f1.translated(w)), linearized_T(lam, f1).translated(w)) < 1e-12);
}

TEST_CASE("maximal functions") {
    CHECK_THROWS_AS(dyadic_window(1), argument_error);
    CHECK(dyadic_window(2).empty());
    CHECK(dyadic_window(8) == std::vector<i64>{4, 6});
    CHECK(dyadic_window(9) == std::vector<i64>{6, 8});
    CHECK(dyadic_window(5) == std::vector<i64>{4});
    const int d = 4;
    auto f = random_function(d, 1, 5, 51);
    auto g = random_function(d, 1, 5, 52);
    CHECK(max_diff(dyadic_maximal(5, f, g), triangle_average_T(4, f, g).abs()) < 1e-15);
    auto small = maximal_over({4}, f, &g), big = maximal_over({2, 4, 6}, f, &g);
    for (const auto& [x, v] : small.entries()) CHECK(big.at(x).real() >= v.real());
    // sup |T(f,g)| <= |g|_inf sup T(|f|, 1)
    for (u64 s = 0; s < 10; ++s) {
        auto fs = random_function(d, 2, 6, 100 + s), gs = random_function(d, 2, 6, 200 + s);
        auto lhs = dyadic_maximal(12, fs, gs);
        auto rhs = dyadic_maximal(12, fs.abs());
        double gi = gs.sup_norm();
        for (const auto& [x, v] : lhs.entries()) CHECK(v.real() <= gi * rhs.at(x).real() * (1 + 1e-12));
    }
}

TEST_CASE("multiplier T_hat") {
    for (auto [d, lam] : {std::pair<int, i64>{7, 4}, {7, 6}, {5, 8}}) {
        std::vector<double> zero(d, 0.0);
        cplx t0 = multiplier_T_hat(lam, zero, zero, d);
        double count = to_double(count_triangle_pairs(lam, d).count);
        CHECK(std::abs(t0.real() * std::pow(double(lam), d - 3) - count) <= 1e-9 * count);
        CHECK(t0.imag() == 0);
        auto g = stream_for(7, u64(lam));
        std::vector<double> xi(d), eta(d), xs(d), es(d);
        for (int rep = 0; rep < 3; ++rep) {
            for (int j = 0; j < d; ++j) {
                xi[j] = uniform01(g) - 0.5;
                eta[j] = uniform01(g) - 0.5;
                xs[j] = xi[j] + double(j % 3 - 1);
                es[j] = eta[j] - 2.0 * (j % 2);
            }
            CHECK(std::abs(multiplier_T_hat(lam, xi, eta, d) - direct_T_hat(lam, d, xi, eta)) < 1e-10);
            CHECK(std::abs(multiplier_T_hat(lam, xi, zero, d) - direct_T_hat(lam, d, xi, zero)) < 1e-10);
            CHECK(std::abs(multiplier_T_hat(lam, zero, eta, d) - direct_T_hat(lam, d, zero, eta)) < 1e-10);
            CHECK(std::abs(multiplier_T_hat(lam, xs, es, d) - multiplier_T_hat(lam, xi, eta, d)) < 1e-10);
            CHECK(std::abs(multiplier_T_hat(lam, xs, zero, d) - multiplier_T_hat(lam, xi, zero, d)) < 1e-10);
        }
    }
}

TEST_CASE("DFT of the linearized operator on a period box") {
    const int d = 4;
    const i64 lam = 2, L = 5;
    auto T = linearized_T(lam, GridFunction::delta(d));
    std::vector<double> xi(d), zero(d, 0.0);
    LatticeVector k(d, 0);
    double worst = 0;
    while (true) {
        for (int j = 0; j < d; ++j) xi[j] = double(k[j]) / double(L);
        cplx s{};
        for (const auto& [x, v] : T.entries()) {
            double p = 0;
            for (int j = 0; j < d; ++j) p += double(k[j] * mod(x[j], L)) / double(L);
            s += v * expi(p);
        }
        worst = std::max(worst, std::abs(s - multiplier_T_hat(lam, xi, zero, d)));
        int j = d - 1;
        while (j >= 0 && k[j] == L - 1) k[j--] = 0;
        if (j < 0) break;
        ++k[j];
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("main-term multiplier") {
    const int d = 7;
    CHECK_THROWS_AS(MainTermMultiplier(4, 6), argument_error);
    for (i64 lam : {2, 6}) {
        const int qm = 12;
        MainTermMultiplier M(lam, d, qm);
        std::vector<double> zero(d, 0.0), m0(d, 0);
        std::vector<double> terms;
        std::vector<i64> mz(d, 0);
        for (u64 q = 1; q <= u64(qm); ++q) terms.push_back(big_G(lam, q, mz, mz).real());
        double expect = c_d_closed_form(d) * canonical_sum(terms) * sphere_ft(d, zero);
        CHECK(M(zero) == doctest::Approx(expect).epsilon(1e-9));
        CHECK(main_term_multiplier_M_hat(lam, zero, d, qm) == doctest::Approx(M(zero)).epsilon(1e-15));
        auto g = stream_for(3, u64(lam));
        std::vector<double> xi(d), xs(d);
        for (int rep = 0; rep < 4; ++rep) {
            for (int j = 0; j < d; ++j) {
                xi[j] = uniform01(g) - 0.5;
                xs[j] = xi[j] + double((j * 5) % 3) - 1.0;
            }
            CHECK(std::abs(M(xs) - M(xi)) <= 1e-9 * (1 + std::abs(M(xi))));
        }
        MainTermMultiplier copy = M;
        CHECK(copy(xi) == M(xi));
    }
}

TEST_CASE("main term against T_hat at zero frequency") {
    const int d = 7;
    const i64 lam = 20;
    std::vector<double> zero(d, 0.0);
    double t = multiplier_T_hat(lam, zero, zero, d).real();
    double m = main_term_multiplier_M_hat(lam, zero, d, 32);
    MESSAGE("lambda=20: T_hat(0,0)=", t, " M_hat(0)=", m);
    CHECK(std::abs(m - t) <= 0.25 * t);
}

TEST_CASE("main-term operator on a period box") {
    const int d = 7;
    const i64 lam = 2, L = 9;
    const int qm = 8;
    GridFunction zero(d);
    CHECK(apply_main_term_M(lam, zero, L, qm).empty());
    CHECK_THROWS_AS(apply_main_term_M(lam, GridFunction::delta(d), 8, qm), argument_error);
    CHECK_THROWS_AS(apply_main_term_M(lam, GridFunction::delta(d), 12, qm), resource_error);
    GridFunction wide(d);
    wide.set(LatticeVector(d, 0), 1.0);
    wide.set(LatticeVector{1, 0, 0, 0, 0, 0, 0}, 1.0);
    CHECK_THROWS_AS(apply_main_term_M(lam, wide, L, qm), argument_error);

    auto Md = apply_main_term_M(lam, GridFunction::delta(d), L, qm);
    cplx c{0.3, -1.7};
    CHECK(max_diff(apply_main_term_M(lam, GridFunction::delta(d).scaled(c), L, qm), Md.scaled(c)) < 1e-12);

    // direct inverse transform at x = 0 and x = e_1
    MainTermMultiplier M(lam, d, qm);
    std::vector<double> xi(d);
    LatticeVector k(d, 0);
    std::vector<double> at0, at1re;
    const size_t n = size_t(std::pow(double(L), d));
    at0.reserve(n);
    at1re.reserve(n);
    while (true) {
        for (int j = 0; j < d; ++j) xi[j] = double(k[j]) / double(L);
        double mv = M(xi);
        at0.push_back(mv);
        at1re.push_back(mv * std::cos(two_pi * xi[0]));
        int j = d - 1;
        while (j >= 0 && k[j] == L - 1) k[j--] = 0;
        if (j < 0) break;
        ++k[j];
    }
    double v0 = canonical_sum(at0) / double(n), v1 = canonical_sum(at1re) / double(n);
    LatticeVector e1(d, 0);
    e1[0] = 1;
    CHECK(std::abs(Md.at(LatticeVector(d, 0)) - v0) < 1e-10);
    CHECK(std::abs(Md.at(e1) - v1) < 1e-10);
}

TEST_CASE("discrepancy estimator") {
    auto a = main_term_discrepancy(2, 7, 9, 400, 11, 4);
    auto b = main_term_discrepancy(2, 7, 9, 400, 11, 4);
    CHECK(a.relative == b.relative);
    CHECK_FALSE(a.exact);
    CHECK(a.frequencies == 400);
    CHECK(std::isfinite(a.relative));
    CHECK(a.standard_error > 0);
    // exact norm of T delta_0 from the pair count and completions
    auto C = completion_counts(2, 7);
    double ss = 0;
    for (auto c : C.c) ss += double(c) * double(c);
    CHECK(a.reference_norm == doctest::Approx(std::pow(2.0, -4) * std::sqrt(ss)).epsilon(1e-12));
    CHECK_THROWS_AS(main_term_discrepancy(3, 7, 9, 10, 1, 4), argument_error);
    CHECK_THROWS_AS(main_term_discrepancy(2, 7, 8, 10, 1, 4), argument_error);
}

TEST_CASE("box csv") {
    auto csv = multiplier_box_csv(2, 4, 3);
    CHECK(csv.rfind("L,d,lambda\n3,4,2\nk,T_hat,M_hat\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3 + 81);
    CHECK_THROWS_AS(multiplier_box_csv(2, 7, 9, 8, 1000), resource_error);
}

TEST_CASE("lp norms") {
    auto d0 = GridFunction::delta(5);
    for (double p : {1.0, 1.5, 2.0, 7.0, std::numeric_limits<double>::infinity()}) CHECK(lp_norm(d0, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(lp_norm(d0, 0.5), argument_error);
    auto f = random_function(4, 3, 20, 77);
    cplx c{-3, 4};
    for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(f.scaled(c), p) == doctest::Approx(5 * lp_norm(f, p)).epsilon(1e-13));
    double prev = lp_norm(f, 1);
    for (double p : {1.2, 1.5, 2.0, 3.0, 8.0, std::numeric_limits<double>::infinity()}) {
        double cur = lp_norm(f, p);
        CHECK(cur <= prev * (1 + 1e-14));
        prev = cur;
    }
    double s = 0;
    for (const auto& [x, v] : f.entries()) s += std::norm(v);
    CHECK(lp_norm(f, 2) == doctest::Approx(std::sqrt(s)).epsilon(1e-13));
    CHECK(lp_norm(GridFunction(4), 2) == 0);
}

TEST_CASE("theory constants") {
    auto t9 = theory_constants(9);
    CHECK(t9.p0_exact == "32/17");
    CHECK(t9.p0 == doctest::Approx(32.0 / 17));
    CHECK(t9.delta2_exact == "1/8");
    CHECK(t9.in_range);
    auto t12 = theory_constants(12);
    CHECK(t12.delta2_exact == "1/4");
    CHECK(t12.p0_exact == "8/5");
    auto t7 = theory_constants(7);
    CHECK_FALSE(t7.in_range);
    CHECK(t7.p0_exact == "11/5");
    CHECK_THROWS_AS(theory_constants(6), argument_error);
    for (int d = 9; d <= 40; ++d) {
        auto t = theory_constants(d);
        CHECK(t.p0 == doctest::Approx(std::max(32.0 / (d + 8), double(d + 4) / (d - 2))));
        CHECK(t.delta2 == doctest::Approx(std::min(0.25, (d - 8) / 8.0)));
    }
}

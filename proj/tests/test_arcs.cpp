#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "triadne/arcs.hpp"
#include "triadne/lattice.hpp"

using namespace triadne;

namespace {

cplx naive_S(i64 N, const Real3& a, double xi, double eta) {
    cplx s = 0;
    for (i64 x = -N; x <= N; ++x)
        for (i64 y = -N; y <= N; ++y) {
            double ph = a[0] * double(x * x) + 2 * a[1] * double(x * y) + a[2] * double(y * y) + xi * double(x) +
                        eta * double(y);
            s += std::polar(1.0, two_pi * ph);
        }
    return s;
}

Real3 random_alpha(std::mt19937_64& g) { return {uniform01(g), uniform01(g), uniform01(g)}; }

}  // namespace

TEST_CASE("Weyl sums") {
    for (i64 N : {1, 3, 10}) CHECK(std::abs(weyl_sum_S(N, {0, 0, 0}, 0, 0) - double((2 * N + 1) * (2 * N + 1))) < 1e-9);
    // x-sum over {-1, 0, 1} of e(x^2/2) is -1 + 1 - 1, the y-sum is 3
    CHECK(std::abs(weyl_sum_S(1, {0.5, 0, 0}, 0, 0) - (-3.0)) < 1e-12);
    std::mt19937_64 g(1);
    for (int i = 0; i < 60; ++i) {
        i64 N = 1 + i64(g() % 40);
        Real3 a = random_alpha(g);
        double xi = uniform01(g) - 0.5, eta = uniform01(g) - 0.5;
        cplx s = weyl_sum_S(N, a, xi, eta);
        CHECK(std::abs(s - naive_S(N, a, xi, eta)) < 1e-8 * double(N * N));
        CHECK(std::abs(s - weyl_sum_fast(N, a, xi, eta)) < 1e-9 * double(N * N));
        CHECK(std::abs(s - weyl_sum_fast(N, a, xi, eta, false)) < 1e-9 * double(N * N));
        CHECK(std::abs(std::conj(s) - weyl_sum_S(N, {-a[0], -a[1], -a[2]}, -xi, -eta)) < 1e-9 * double(N * N));
        CHECK(std::abs(s - weyl_sum_S(N, {a[0] + 1, a[1] - 2, a[2] + 3}, xi + 1, eta - 4)) < 1e-8 * double(N * N));
    }
    CHECK(std::abs(weyl_sum_fast(2000, {0.1234567, 0.3, 0.7654321}, 0.1, 0.2) -
                   weyl_sum_S(2000, {0.1234567, 0.3, 0.7654321}, 0.1, 0.2)) < 1e-6 * 4e6);
}

TEST_CASE("Dirichlet approximation") {
    auto f = dirichlet_approx(1.0 / 3, 10, 2);
    CHECK(f.q == 3);
    CHECK(f.a == 1);
    auto z = dirichlet_approx(0.0, 10, 2);
    CHECK(z.q == 1);
    CHECK(z.a == 1);
    CHECK_THROWS_AS(dirichlet_approx(0.3, 10, 11), argument_error);
    std::mt19937_64 g(2);
    for (int i = 0; i < 1000; ++i) {
        double a = uniform01(g);
        i64 N = 2 + i64(g() % 300);
        i64 P = 1 + i64(g() % u64(N));
        auto r = dirichlet_approx(a, N, P);
        CHECK(r.q >= 1);
        CHECK(double(r.q) <= double(N * N) / double(P));
        // a/q and (a - q)/q are the same point of the torus
        double err = std::min(std::abs(double(r.q) * a - double(r.a)), std::abs(double(r.q) * a - double(r.a) + double(r.q)));
        CHECK(err <= double(P) / double(N * N) + 1e-12);
        CHECK(r.a >= 1);
        CHECK(u64(r.a) <= r.q);
        CHECK(std::gcd(r.a, i64(r.q)) == 1);
    }
}

TEST_CASE("rational points") {
    auto p = make_rational_point({1, 1, 3}, {2, 3, 4});
    CHECK(p.q == 12);
    CHECK(p.b == std::array<i64, 3>{6, 4, 9});
    auto j = rational_point_joint({6, 4, 9}, 12);
    CHECK(j.qi == std::array<u64, 3>{2, 3, 4});
    CHECK(j.a == std::array<i64, 3>{1, 1, 3});
    CHECK_THROWS_AS(rational_point_joint({2, 4, 6}, 8), argument_error);
}

TEST_CASE("arc classification") {
    for (auto sys : {ArcSystem::M, ArcSystem::N}) {
        auto l = classify_arc({0, 0, 0}, 64, 4, sys);
        CHECK(l.status == ArcStatus::major);
        REQUIRE(l.center);
        CHECK(l.center->q == 1);
        // far from every rational with small denominator
        auto m = classify_arc({0.6180339887498949, 0.4142135623730951, 0.1415926535897932}, 64, 2, sys);
        CHECK(m.status == ArcStatus::minor);
        CHECK_FALSE(m.center);
    }
    std::mt19937_64 g(3);
    int majors = 0;
    for (int i = 0; i < 4000; ++i) {
        i64 N = 8 + i64(g() % 24), P = 1 + i64(g() % 3);
        // bias toward major arcs: perturb a random rational point
        u64 q = 1 + g() % u64(P);
        Real3 a;
        for (auto& v : a) v = double(g() % q) / double(q) + (uniform01(g) - 0.5) * 2.2 * double(P) / double(q * N * N);
        for (auto& v : a) v -= std::floor(v);
        auto lm = classify_arc(a, N, P, ArcSystem::M);
        auto ln = classify_arc(a, N, P, ArcSystem::N);
        CHECK((lm.status == ArcStatus::major) == bool(lm.center));
        if (lm.status == ArcStatus::major) {
            ++majors;
            CHECK(ln.status == ArcStatus::major);
            const auto& c = *lm.center;
            CHECK(c.q <= u64(P));
            for (int k = 0; k < 3; ++k) {
                double dist = std::abs(a[k] - double(c.b[k]) / double(c.q));
                dist = std::min(dist, 1 - dist);
                CHECK(dist <= double(P) / double(c.q * N * N) * (1 + 1e-12));
            }
        }
        if (ln.status == ArcStatus::major) {
            const auto& c = *ln.center;
            for (int k = 0; k < 3; ++k) {
                CHECK(c.qi[k] <= u64(P));
                double dist = std::abs(a[k] - double(c.a[k]) / double(c.qi[k]));
                dist = std::min(dist, 1 - dist);
                CHECK(dist <= double(P) / double(c.qi[k] * N * N) * (1 + 1e-12));
            }
        }
    }
    CHECK(majors > 500);
}

TEST_CASE("major arc approximation") {
    for (i64 N : {16, 32, 64}) {
        auto c = make_rational_point({1, 1, 1}, {1, 1, 1});
        auto r = major_arc_approx(N, c, {0, 0, 0}, 0, 0);
        CHECK(r.approx.real() == doctest::Approx(4.0 * N * N).epsilon(1e-9));
        CHECK(r.residual == doctest::Approx(4.0 * N + 1).epsilon(1e-6));
        CHECK(r.bound == doctest::Approx(double(N)));
    }
    auto c = make_rational_point({1, 1, 2}, {3, 2, 3});
    CHECK_THROWS_AS(major_arc_approx(16, c, {1.0 / 3, 0.5, 2.0 / 3}, 0.0, 0.0, 3, 0), argument_error);
    std::mt19937_64 g(4);
    for (int i = 0; i < 20; ++i) {
        Real3 a{double(c.a[0]) / 3 + 1e-4 * uniform01(g), 0.5 - 1e-4 * uniform01(g), 2.0 / 3};
        auto r = major_arc_approx(24, c, a, uniform01(g), uniform01(g));
        CHECK(r.residual <= 2 * std::abs(r.approx) + 2 * (2 * 24 + 1) * (2 * 24 + 1));
        CHECK(r.residual <= 8 * r.bound);
    }
    auto rep = lemma4_sweep(300, 5);
    CHECK(rep.passed());
}

TEST_CASE("minor arc scans") {
    auto s = minor_arc_scan(64, 2, 200, 7, true);
    CHECK(s.report.passed());
    CHECK(s.rows.size() == 200);
    for (const auto& row : s.rows) CHECK(row["ratio"].get<double>() >= 0);
    auto s1 = minor_arc_scan(32, 1, 50, 7, false, ArcSystem::N);
    CHECK(s1.rows.size() == 50);
    auto again = minor_arc_scan(64, 2, 200, 7, true);
    CHECK(again.rows == s.rows);
}

TEST_CASE("bilinear sum") {
    GridFunction d0 = GridFunction::delta(3);
    auto F = bilinear_sum_F(2, {0, 0, 0}, d0, d0);
    CHECK(F.size() == sum_of_squares_reps(0, 3).size() + 6 + 12 + 8 + 6);  // points with |x|^2 <= 4
    for (const auto& [x, v] : F.entries()) CHECK(std::abs(v - 1.0) < 1e-15);
    // f = delta_a, g = delta_b: F(x) = e(alpha.phi(x-a, x-b)) on the intersection of the balls
    Real3 al{0.123, 0.377, 0.71};
    LatticeVector a{1, 0, -1}, b{0, 2, 0};
    auto G = bilinear_sum_F(3, al, GridFunction::delta(3, a), GridFunction::delta(3, b));
    size_t expected = 0;
    for (i64 x = -4; x <= 4; ++x)
        for (i64 y = -4; y <= 4; ++y)
            for (i64 z = -4; z <= 4; ++z) {
                LatticeVector p{x, y, z}, u{x - a[0], y - a[1], z - a[2]}, v{x - b[0], y - b[1], z - b[2]};
                Triple t = quadratic_triple(u, v);
                bool in = t.a <= 9 && t.c <= 9;
                if (!in) continue;
                ++expected;
                cplx e = std::polar(1.0, two_pi * (al[0] * double(t.a) + al[1] * double(t.b) + al[2] * double(t.c)));
                CHECK(std::abs(G.at(p) - e) < 1e-12);
            }
    CHECK(G.size() == expected);
    // linearity in f
    GridFunction f1 = GridFunction::delta(3, a), f2 = GridFunction::delta(3, {0, 0, 1}).scaled(cplx(0.5, -2));
    GridFunction g1 = GridFunction::delta(3, b);
    auto lhs = bilinear_sum_F(2, al, f1 + f2, g1);
    auto rhs = bilinear_sum_F(2, al, f1, g1) + bilinear_sum_F(2, al, f2, g1);
    for (const auto& [x, v] : rhs.entries()) CHECK(std::abs(lhs.at(x) - v) < 1e-12);
    CHECK_THROWS_AS(bilinear_sum_F(2, al, GridFunction::delta(2), d0), argument_error);
}

TEST_CASE("sixth moment quadrature is exact") {
    for (i64 N = 1; N <= 3; ++N)
        CHECK(sixth_moment_quadrature(N) == doctest::Approx(to_double(sixth_moment_count(N))).epsilon(1e-9));
}

#pragma once

// Weyl sums S_N(alpha; xi, eta) over [-N,N]^2, rational approximation, the
// two major/minor arc systems and the empirical sweeps built on them.

#include <array>
#include <optional>

#include "triadne/core.hpp"
#include "triadne/grid.hpp"
#include "triadne/oscillatory.hpp"
#include "triadne/report.hpp"

namespace triadne {

// sum_{|x|,|y| <= N} e(alpha1 x^2 + 2 alpha2 x y + alpha3 y^2 + xi x + eta y)
cplx weyl_sum_S(i64 N, const Real3& alpha, double xi, double eta);
// row recurrences, re-anchored every 32 steps
cplx weyl_sum_fast(i64 N, const Real3& alpha, double xi, double eta, bool parallel = true);

struct Fraction {
    i64 a = 1;
    u64 q = 1;
};
// a/q reduced with 1 <= a <= q, q <= N^2/P and |q alpha - a| <= P/N^2
Fraction dirichlet_approx(double alpha, i64 N, i64 P);

struct RationalPoint3 {
    std::array<i64, 3> a{1, 1, 1};
    std::array<u64, 3> qi{1, 1, 1};
    u64 q = 1;
    std::array<i64, 3> b{1, 1, 1};  // b_i = a_i q / q_i
};
RationalPoint3 make_rational_point(std::array<i64, 3> a, std::array<u64, 3> qi);
// common-denominator form (b_1, b_2, b_3)/q with (q, b) = 1
RationalPoint3 rational_point_joint(std::array<i64, 3> b, u64 q);

enum class ArcSystem { M, N };
enum class ArcStatus { major, minor };

struct ArcLabel {
    ArcSystem system = ArcSystem::M;
    ArcStatus status = ArcStatus::minor;
    std::optional<RationalPoint3> center;
    i64 P = 1;
    i64 N = 1;
};

// exact membership test on the binary expansion of alpha
ArcLabel classify_arc(const Real3& alpha, i64 N, i64 P, ArcSystem system);

struct MajorArcApprox {
    cplx approx;
    double residual = 0;
    double bound = 0;
    i64 m = 0, n = 0;
    Real3 beta{};
    double theta1 = 0, theta2 = 0;
};
// g(q; b, m, n) V_N(beta; theta1, theta2) with m, n nearest to q xi, q eta
MajorArcApprox major_arc_approx(i64 N, const RationalPoint3& center, const Real3& alpha, double xi, double eta);
MajorArcApprox major_arc_approx(i64 N, const RationalPoint3& center, const Real3& alpha, double xi, double eta, i64 m,
                                i64 n);

// residual <= guard q N (1 + N^2 |beta|_inf) over a seeded sweep
VerificationReport lemma4_sweep(int samples, u64 seed, double guard = 8);

struct MinorArcScan {
    VerificationReport report;
    json rows = json::array();  // {alpha, xi, eta, abs_S, ratio}
};
MinorArcScan minor_arc_scan(i64 N, i64 P, int samples, u64 seed, bool eta_zero, ArcSystem system = ArcSystem::M);

// x -> sum_{|u|,|v| <= N} e(alpha.phi(u,v)) f(x-u) g(x-v), Euclidean balls in Z^d
GridFunction bilinear_sum_F(i64 N, const Real3& alpha, const GridFunction& f, const GridFunction& g,
                            size_t max_support = 2'000'000);

// Riemann sum of |S_N(alpha; 0, 0)|^6 on a grid fine enough to be exact
double sixth_moment_quadrature(i64 N);

}  // namespace triadne

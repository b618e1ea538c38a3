#pragma once

// Local densities nu_d(q; lambda) of the triangle congruence system
//   |x|^2 = lambda, 2x.y = lambda, |y|^2 = lambda  (mod q),  x, y in Z_q^d,
// the local factors T(p), the singular series and its checks.

#include <vector>

#include "triadne/core.hpp"
#include "triadne/report.hpp"

namespace triadne {

// coordinate DP over (sum x^2, sum xy, sum y^2) mod q; any modulus q >= 1
u128 local_count_mod(u64 q, i64 lambda, int d, bool parallel = true);
u128 local_count_nu_d(u64 p, int t, i64 lambda, int d);
bool local_count_within_budget(u64 q, int d);

namespace ref {
// direct scan of Z_q^{2d}
u128 local_count_mod(u64 q, i64 lambda, int d);
}

struct LocalFactorEstimate {
    u64 p = 0;
    int t_max = 0;
    std::vector<double> values;  // p^{(3-2d)t} nu_d(p^t; lambda), t = 1..t_max
    bool stabilized = false;
    double value = 0;
    bool exact_lift = false;  // p does not divide 6 lambda: every solution mod p lifts
};

int default_t_max(u64 p);
LocalFactorEstimate local_factor_T(u64 p, i64 lambda, int d, int t_max, double tol = 1e-3);

struct SingularSeries {
    double value = 0;
    double imag = 0;
    double tail_bound = 0;
    double tail_constant = 0;  // max |G(q)| q^{d/2 - 2.25} over the computed range
    int q_max = 0;
    std::vector<cplx> terms;   // G_lambda(q; 0, 0), q = 1..q_max
};
SingularSeries singular_series_sigma(i64 lambda, int d, int q_max);

struct EulerProduct {
    double value = 0;
    u64 p_max = 0;
    double tail_estimate = 0;  // sum over p > p_max of the fitted |G(p)| envelope
    std::vector<LocalFactorEstimate> factors;
};
EulerProduct singular_series_euler(i64 lambda, int d, u64 p_max, double tol = 1e-9);

VerificationReport check_multiplicativity(i64 lambda, u64 q1, u64 q2, int d);
// p^{t(2d-3)} sum_{j<=t} G(p^j; 0, 0) against the DP count
VerificationReport check_orthogonality(u64 p, int t, i64 lambda, int d);

enum class HenselStatus { checked, hypothesis_not_met };
struct HenselResult {
    HenselStatus status = HenselStatus::checked;
    VerificationReport report;
};
HenselResult hensel_lower_bound_check(u64 p, int t, i64 lambda, int d);

json singular_json(i64 lambda, int d, const SingularSeries& s, const std::vector<LocalFactorEstimate>& factors);

}  // namespace triadne

#pragma once

// The bilinear triangle average
//   T_lambda(f,g)(x) = lambda^{3-d} sum_{(u,v) in V_lambda} f(x-u) g(x-v),
// its linearization, maximal functions, the multiplier T^_lambda and the
// main-term multiplier M^_lambda.

#include <memory>
#include <optional>
#include <vector>

#include "triadne/core.hpp"
#include "triadne/gauss.hpp"
#include "triadne/grid.hpp"
#include "triadne/report.hpp"

namespace triadne {

GridFunction triangle_average_T(i64 lambda, const GridFunction& f, const GridFunction& g, bool parallel = true);
// T_lambda(f, 1) through completion counts c_lambda(u)
GridFunction linearized_T(i64 lambda, const GridFunction& f);

// pointwise sup of |T_lambda(f,g)| (or |T_lambda f| without g) over the given lambdas
GridFunction maximal_over(const std::vector<i64>& lambdas, const GridFunction& f, const GridFunction* g = nullptr);
// window: even lambda in [Lambda/2, Lambda)
std::vector<i64> dyadic_window(i64 Lambda);
GridFunction dyadic_maximal(i64 Lambda, const GridFunction& f, const std::optional<GridFunction>& g = std::nullopt);

cplx multiplier_T_hat(i64 lambda, std::span<const double> xi, std::span<const double> eta, int d);

// c_d sum_{q <= q_max} G_lambda(q; m, 0) Phi(q xi - m) dS(lambda^{1/2}(xi - m/q)), m nearest to q xi
class MainTermMultiplier {
  public:
    // copies share the Gauss-sum memo, which is thread safe
    MainTermMultiplier(i64 lambda, int d, int q_max = 32);
    double operator()(std::span<const double> xi) const;
    i64 lambda() const { return lambda_; }
    int dim() const { return d_; }

  private:
    i64 lambda_;
    int d_;
    int q_max_;
    double c_d_;
    std::shared_ptr<BigGCache> cache_;
};
double main_term_multiplier_M_hat(i64 lambda, std::span<const double> xi, int d, int q_max = 32);

// periodize on a box of side L, multiply the DFT by M^(k/L), invert
GridFunction apply_main_term_M(i64 lambda, const GridFunction& f, i64 L, int q_max = 32);

// relative l^2 distance between T_lambda delta_0 and M_lambda delta_0 on the period box,
// by Parseval over the frequencies k/L: all of them, or a seeded uniform sample
struct Discrepancy {
    double absolute = 0;
    double relative = 0;
    double reference_norm = 0;   // ||T_lambda delta_0||_2
    double standard_error = 0;   // of the relative value; 0 when exact
    bool exact = false;
    size_t frequencies = 0;
};
Discrepancy main_term_discrepancy(i64 lambda, int d, i64 L, size_t samples, u64 seed, int q_max = 32);

// k, T^(k/L, 0), M^(k/L) over the box; header row carries L, d, lambda
std::string multiplier_box_csv(i64 lambda, int d, i64 L, int q_max = 32, size_t limit = 100000);

double lp_norm(const GridFunction& f, double p);

struct TheoryConstants {
    int d = 0;
    double p0 = 0;
    double delta2 = 0;
    std::string p0_exact, delta2_exact;
    bool in_range = false;  // the bounds are asserted for d >= 9
};
TheoryConstants theory_constants(int d);

}  // namespace triadne

#pragma once

// Oscillatory integrals attached to phi:
//   V_N(beta; xi, eta) = int_{[-N,N]^2} e(beta.phi(x,y) + xi x + eta y) dx dy,
// the singular integral over beta in R^3, the Fourier transform of the unit
// sphere measure and the constant c_d.

#include <array>
#include <vector>

#include "triadne/core.hpp"
#include "triadne/report.hpp"

namespace triadne {

using Real3 = std::array<double, 3>;

struct QuadratureSpec {
    int gl_order = 6;               // Gauss-Legendre nodes per panel for V_N
    double panels_per_cycle = 4;    // refinement: at most a quarter period per panel
    int min_panels = 2;             // per-axis floor
    size_t max_nodes = 200000;      // per-axis budget
    double box = 1.5;               // B0, the first beta truncation for improper integrals
    double tol = 0.05;              // relative bound on the extrapolation error estimate
};

struct quadrature_error : resource_error {
    cplx best;
    quadrature_error(const std::string& what, cplx best_estimate) : resource_error(what), best(best_estimate) {}
};

// composite Gauss-Legendre rule on [a,b] with equal panels
struct QuadRule {
    std::vector<double> x, w;
};
QuadRule gauss_legendre(int order, int panels, double a, double b);

cplx fresnel_V(double N, const Real3& beta, double xi, double eta, const QuadratureSpec& spec = {});
namespace ref {
// plain double loop over the tensor grid, no recurrences
cplx fresnel_V(double N, const Real3& beta, double xi, double eta, const QuadratureSpec& spec = {});
}

double delta_envelope(double x);

// area of the unit sphere S^m in R^{m+1}
double sphere_area(int m);
// int_{S^{d-1}} e(xi.x) dS
double sphere_ft(int d, std::span<const double> xi);
double sphere_ft_radial(int d, double r);
namespace ref {
// Bessel closed form 2 pi r^{1-d/2} J_{d/2-1}(2 pi r)
double sphere_ft_radial(int d, double r);
}

// c_d by radial quadrature and by the Beta-function closed form
double compute_c_d(int d);
double c_d_closed_form(int d);

// beta-box truncation of
//   I_N(lambda; xi, eta) = int prod_j V_N(beta; xi_j, eta_j) e(-lambda s(beta)) d beta
// on a Nyquist lattice with half weights on the faces of |beta|_inf <= B
cplx truncated_I_N(double N, double lambda, std::span<const double> xi, std::span<const double> eta, double B,
                   bool parallel = true);

struct SingularIntegral {
    cplx value;
    double error_estimate = 0;
    double tail_exponent = 0;
    std::vector<double> boxes;
    std::vector<cplx> truncated;
};
// int_{R^3} prod_j V_1(beta; lambda^{1/2} xi_j, lambda^{1/2} eta_j) e(-s(beta)) d beta
SingularIntegral singular_integral_I(double lambda, std::span<const double> xi, std::span<const double> eta,
                                     const QuadratureSpec& spec = {});

struct BetaBox {
    Real3 lo, hi;
};
// int_box prod_j V_N(beta; xi_j, 0) e(-lambda s(beta)) d beta, Gauss-Legendre in beta
cplx restricted_J(double lambda, std::span<const double> xi, const BetaBox& box, double N);

VerificationReport check_lemma9(double N, double lambda, std::span<const double> xi, const QuadratureSpec& spec = {});

// |V_N| <= C N^2 Delta(1 + N^2|beta|_inf + N|xi| + N|eta|) over a seeded sweep
VerificationReport lemma3_sweep(int samples, u64 seed, double guard = 12, const QuadratureSpec& spec = {});

}  // namespace triadne

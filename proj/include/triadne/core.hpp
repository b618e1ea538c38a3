#pragma once

// Shared primitives: exact integer helpers, roots of unity, the quadratic
// triple phi(x,y) = (|x|^2, 2x.y, |y|^2), the cutoff Phi and deterministic
// floating point reduction.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace triadne {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;
using cplx = std::complex<double>;

struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using LatticeVector = std::vector<i64>;

constexpr double two_pi = 6.283185307179586476925286766559;

u64 gcd_many(std::span<const i64> values);
inline u64 gcd_many(std::initializer_list<i64> v) { return gcd_many(std::span<const i64>(v.begin(), v.size())); }
u64 gcd_u(u64 a, u64 b);
u64 lcm_u(u64 a, u64 b);
u64 tau(u64 q);

// e^{2 pi i k / q}, k reduced mod q first; exact at multiples of q/4
cplx root_of_unity(u64 q, i64 k);

// e(x) = e^{2 pi i x}, argument reduced to [-1/2, 1/2] before evaluation
inline cplx expi(double x) {
    double r = x - std::nearbyint(x);
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

struct Triple {
    i128 a, b, c;
    bool operator==(const Triple&) const = default;
};
Triple quadratic_triple(std::span<const i64> x, std::span<const i64> y);

i128 sum_components(std::span<const i64> x);
double sum_components(std::span<const double> x);

// B((1/4 - t)/(1/8)) with t = max |xi_j|
double cutoff_profile(double t);
double cutoff_phi(std::span<const double> xi);

double pairwise_sum(std::span<const double> x);
// sort by (magnitude, sign, bits), then pairwise
double canonical_sum(std::vector<double> x);
cplx canonical_sum(std::span<const cplx> x);

// nonnegative residue
inline i64 mod(i64 a, i64 q) {
    i64 r = a % q;
    return r < 0 ? r + q : r;
}
inline i64 mod128(i128 a, i64 q) {
    i128 r = a % q;
    return static_cast<i64>(r < 0 ? r + q : r);
}

u128 checked_add(u128 a, u128 b);
u128 checked_mul(u128 a, u128 b);
u64 checked_pow(u64 p, int t);
std::string to_string(u128 v);
std::string to_string(i128 v);
double to_double(u128 v);

bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);
// (prime, exponent) pairs in increasing prime order
std::vector<std::pair<u64, int>> factorize(u64 n);
int valuation(i64 n, u64 p);

// counter-based stream: stream i of a given seed is independent of how the
// indices are distributed over threads
std::mt19937_64 stream_for(u64 seed, u64 index);
double uniform01(std::mt19937_64& g);

}  // namespace triadne

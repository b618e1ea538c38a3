#pragma once

// Exact lattice counting: representations by sums of squares, the triangle
// pair set V_lambda = {(u,v) : |u|^2 = |v|^2 = 2u.v = lambda}, Gram pair
// counts, r_3, the quadratic Vinogradov-type count J_{s,2,2}(N), the sixth
// moment count T(N) and equilateral triangles in boxes.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "triadne/core.hpp"

namespace triadne {

struct RepList {
    i64 lambda = 0;
    int d = 0;
    std::vector<i64> coords;  // size() * d, lexicographic order

    size_t size() const { return d ? coords.size() / size_t(d) : 0; }
    std::span<const i64> operator[](size_t i) const { return {coords.data() + i * size_t(d), size_t(d)}; }
};

inline constexpr size_t default_rep_budget = 60'000'000;

// bound >= 0 restricts every coordinate to |x_i| <= bound
RepList sum_of_squares_reps(i64 lambda, int d, i64 bound = -1, size_t max_reps = default_rep_budget);

// binary cache: "TRIA", version u32, lambda u64, d u32, count u64, count*d i64 (little endian)
void write_rep_cache(const std::string& path, const RepList& reps);
RepList read_rep_cache(const std::string& path);
// consults $TRIADNE_CACHE_DIR when set
RepList cached_reps(i64 lambda, int d);

struct TrianglePairSet {
    i64 lambda = 0;
    int d = 0;
    u128 count = 0;
    bool materialized = false;
    std::vector<i64> pairs;  // per pair: u then v, 2d entries

    size_t size() const { return d ? pairs.size() / size_t(2 * d) : 0; }
    std::span<const i64> u(size_t i) const { return {pairs.data() + i * 2 * size_t(d), size_t(d)}; }
    std::span<const i64> v(size_t i) const { return {pairs.data() + (i * 2 + 1) * size_t(d), size_t(d)}; }
};

inline constexpr size_t default_pair_budget = 40'000'000;

TrianglePairSet count_triangle_pairs(i64 lambda, int d, bool materialize = false,
                                     size_t max_pairs = default_pair_budget);
u128 count_triangle_pairs_dp(i64 lambda, int d, bool parallel = true);

// Signed permutation g with (g w)[pos[k]] = sign[k] * w[k].
struct SignedPerm {
    std::vector<int> pos;
    std::vector<int> sign;
    void apply(std::span<const i64> w, i64* out) const {
        for (size_t k = 0; k < pos.size(); ++k) out[pos[k]] = sign[k] * w[k];
    }
};

// One orbit of V_lambda under the hyperoctahedral group acting diagonally:
// canon is the nonincreasing nonnegative representative of u, completions
// lists every v with (canon, v) in V_lambda.
struct TriangleOrbit {
    LatticeVector canon;
    u64 orbit_size = 0;
    std::vector<i64> completions;
    size_t completion_count(int d) const { return completions.size() / size_t(d); }
};

std::vector<TriangleOrbit> triangle_orbits(i64 lambda, int d);
// every distinct image g(canon), each with one transform realizing it
std::vector<SignedPerm> orbit_transforms(const LatticeVector& canon);
LatticeVector canonical_form(std::span<const i64> u);
u64 orbit_size(const LatticeVector& canon);

// c_lambda(u) = #{v : (u,v) in V_lambda} for every u on the sphere |u|^2 = lambda
struct CompletionTable {
    RepList reps;
    std::vector<u64> c;
};
CompletionTable completion_counts(i64 lambda, int d);

u64 nu_gram(i64 a, i64 b, i64 c);
u64 r3(i64 n);

// sparse measure on integer tuples
struct MomentDistribution {
    std::map<std::vector<i64>, u128> support;
    u128 mass() const;
};
// law of (sum x, sum y, sum x^2, sum xy, sum y^2) over s points of [-N,N]^2
MomentDistribution vinogradov_distribution(int s, i64 N);

u128 vinogradov_count(int s, i64 N, bool parallel = true);
u128 sixth_moment_count(i64 N);
u128 triangles_in_box(i64 n, int d);

// serial references, direct from the definitions
namespace ref {
u128 count_triangle_pairs(i64 lambda, int d);
u128 triangles_in_box(i64 n, int d);
u128 vinogradov_count(int s, i64 N);
u128 sixth_moment_count(i64 N);
}  // namespace ref

}  // namespace triadne

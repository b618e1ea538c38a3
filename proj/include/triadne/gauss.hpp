#pragma once

// Complete Gauss sums attached to phi:
//   g(q; a, m, n) = q^-2 sum_{r,s mod q} e_q(a1 r^2 + 2 a2 r s + a3 s^2 + m r + n s)
// and the assembled G_lambda(q; m, n).

#include <array>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

#include "triadne/core.hpp"
#include "triadne/report.hpp"

namespace triadne {

using Triple3 = std::array<i64, 3>;

struct GaussSumKey {
    u64 q = 1;
    std::array<u64, 3> a{1, 1, 1};  // 1 <= a_i <= q
    u64 m = 0, n = 0;               // reduced mod q
    bool primitive = true;
};

GaussSumKey make_gauss_key(u64 q, Triple3 a, i64 m, i64 n);
cplx gauss_g(const GaussSumKey& key);

// #{(h,k) mod q : a1 h + a2 k = a2 h + a3 k = 0 mod q}, by direct scan
u64 congruence_count_nu(u64 q, Triple3 a);
// same count from the Smith form of [[a1,a2],[a2,a3]]
u64 congruence_count_nu_smith(u64 q, Triple3 a);
// gcd(q, a1 a3 - a2^2) on the exact 128-bit value
u64 weight_gcd(u64 q, Triple3 a);
double weight_w(u64 q, Triple3 a);

// Row-factored evaluation of g for a fixed modulus: g is computed for all a1
// at once with a length-q DFT over the values of r^2 mod q.
class GaussRows {
  public:
    explicit GaussRows(u64 q);
    ~GaussRows();
    GaussRows(const GaussRows&) = delete;
    GaussRows& operator=(const GaussRows&) = delete;

    u64 modulus() const { return q_; }
    // out[a1] = g(q; (a1, a2, a3), m, n) for a1 = 0..q-1
    void over_a1(u64 a2, u64 a3, u64 m, u64 n, cplx* out) const;
    cplx g(u64 a1, u64 a2, u64 a3, u64 m, u64 n) const;

  private:
    u64 q_;
    std::vector<cplx> e_;  // e_q(k)
    std::vector<cplx> H_;  // H[a3][b] = sum_s e_q(a3 s^2 + b s)
    std::vector<u64> sq_;  // r^2 mod q
    void* plan_ = nullptr;
};

// sum over primitive a in [1,q]^3 of e_q(-lambda s(a)) prod_j g(q; a, m_j, n_j)
cplx big_G(i64 lambda, u64 q, std::span<const i64> m, std::span<const i64> n, bool parallel = true);
cplx big_G_zero(i64 lambda, u64 q, int d);

namespace ref {
cplx big_G(i64 lambda, u64 q, std::span<const i64> m, std::span<const i64> n);
}

// memo for G_lambda(q; m, 0); G is symmetric in the coordinates, so keys use
// the sorted residues of m
class BigGCache {
  public:
    cplx get(i64 lambda, u64 q, std::span<const i64> m);
    size_t size() const;

  private:
    mutable std::shared_mutex mu_;
    std::map<std::vector<i64>, cplx> memo_;
};

VerificationReport verify_lemma1(u64 q, int samples_per_a = 5, u64 seed = 1);
// sum over primitive a of w_q(a)^s, assembled from prime-power scans
double lemma2_lhs(u64 q, double s);
VerificationReport verify_lemma2(u64 q, double s);

}  // namespace triadne

#include "triadne/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>
#include <omp.h>

namespace triadne {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuf {
    fftw_complex* p;
    explicit FftwBuf(size_t n) : p(fftw_alloc_complex(n)) {}
    ~FftwBuf() { fftw_free(p); }
    cplx* c() { return reinterpret_cast<cplx*>(p); }
};

u64 umod(i128 a, u64 q) {
    i128 r = a % i128(q);
    return u64(r < 0 ? r + q : r);
}

}  // namespace

GaussSumKey make_gauss_key(u64 q, Triple3 a, i64 m, i64 n) {
    if (q == 0) throw argument_error("GaussSumKey: q must be positive");
    GaussSumKey k;
    k.q = q;
    for (int i = 0; i < 3; ++i) {
        u64 r = umod(a[i], q);
        k.a[i] = r == 0 ? q : r;
    }
    k.m = umod(m, q);
    k.n = umod(n, q);
    k.primitive = gcd_many({i64(q), i64(k.a[0]), i64(k.a[1]), i64(k.a[2])}) == 1;
    return k;
}

cplx gauss_g(const GaussSumKey& key) {
    const u64 q = key.q;
    std::vector<cplx> e(q);
    for (u64 k = 0; k < q; ++k) e[k] = root_of_unity(q, i64(k));
    const u64 a1 = key.a[0] % q, a2 = key.a[1] % q, a3 = key.a[2] % q;
    std::vector<cplx> rows(q);
    for (u64 r = 1; r <= q; ++r) {
        cplx acc = 0;
        for (u64 s = 1; s <= q; ++s) {
            u128 ph = u128(a1) * r * r + u128(2 * a2) * r * s + u128(a3) * s * s + u128(key.m) * r + u128(key.n) * s;
            acc += e[u64(ph % q)];
        }
        rows[r - 1] = acc;
    }
    return canonical_sum(rows) / (double(q) * double(q));
}

u64 congruence_count_nu(u64 q, Triple3 a) {
    if (q == 0) throw argument_error("congruence_count_nu: q must be positive");
    u64 a1 = umod(a[0], q), a2 = umod(a[1], q), a3 = umod(a[2], q);
    u64 cnt = 0;
    for (u64 h = 0; h < q; ++h)
        for (u64 k = 0; k < q; ++k)
            if ((u128(a1) * h + u128(a2) * k) % q == 0 && (u128(a2) * h + u128(a3) * k) % q == 0) ++cnt;
    return cnt;
}

u64 congruence_count_nu_smith(u64 q, Triple3 a) {
    if (q == 0) throw argument_error("congruence_count_nu: q must be positive");
    u64 e1 = gcd_many({a[0], a[1], a[2]});
    if (e1 == 0) return q * q;
    i128 det = i128(a[0]) * a[2] - i128(a[1]) * a[1];
    i128 e2 = det / i128(e1);
    if (e2 < 0) e2 = -e2;
    u64 g2 = e2 == 0 ? q : u64(gcd_u(q, u64(e2 % i128(q))) == 0 ? q : gcd_u(q, u64(e2 % i128(q))));
    return gcd_u(q, e1) * g2;
}

u64 weight_gcd(u64 q, Triple3 a) {
    i128 det = i128(a[0]) * a[2] - i128(a[1]) * a[1];
    u64 r = umod(det, q);
    return r == 0 ? q : gcd_u(q, r);
}

double weight_w(u64 q, Triple3 a) { return std::sqrt(double(weight_gcd(q, a))); }

// ---------------------------------------------------------------- GaussRows

GaussRows::GaussRows(u64 q) : q_(q) {
    if (q == 0) throw argument_error("GaussRows: q must be positive");
    e_.resize(q);
    sq_.resize(q);
    for (u64 k = 0; k < q; ++k) {
        e_[k] = root_of_unity(q, i64(k));
        sq_[k] = u64(u128(k) * k % q);
    }
    FftwBuf in(q), out(q);
    {
        std::lock_guard<std::mutex> lk(planner_mutex());
        plan_ = fftw_plan_dft_1d(int(q), in.p, out.p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    H_.resize(q * q);
    for (u64 a3 = 0; a3 < q; ++a3) {
        for (u64 s = 0; s < q; ++s) in.c()[s] = e_[u64(u128(a3) * sq_[s] % q)];
        fftw_execute_dft(static_cast<fftw_plan>(plan_), in.p, out.p);
        std::copy_n(out.c(), q, H_.begin() + a3 * q);
    }
}

GaussRows::~GaussRows() {
    std::lock_guard<std::mutex> lk(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void GaussRows::over_a1(u64 a2, u64 a3, u64 m, u64 n, cplx* out) const {
    const u64 q = q_;
    a2 %= q;
    a3 %= q;
    m %= q;
    n %= q;
    FftwBuf u(q), o(q);
    std::fill_n(u.c(), q, cplx{});
    const cplx* Hrow = H_.data() + a3 * q;
    for (u64 r = 0; r < q; ++r) {
        u64 b = u64((u128(2 * a2) * r + n) % q);
        u.c()[sq_[r]] += e_[u64(u128(m) * r % q)] * Hrow[b];
    }
    fftw_execute_dft(static_cast<fftw_plan>(plan_), u.p, o.p);
    const double s = 1.0 / (double(q) * double(q));
    for (u64 k = 0; k < q; ++k) out[k] = o.c()[k] * s;
}

cplx GaussRows::g(u64 a1, u64 a2, u64 a3, u64 m, u64 n) const {
    const u64 q = q_;
    a1 %= q;
    a2 %= q;
    a3 %= q;
    m %= q;
    n %= q;
    const cplx* Hrow = H_.data() + a3 * q;
    cplx acc = 0;
    for (u64 r = 0; r < q; ++r) {
        u64 ph = u64((u128(a1) * sq_[r] + u128(m) * r) % q);
        u64 b = u64((u128(2 * a2) * r + n) % q);
        acc += e_[ph] * Hrow[b];
    }
    return acc / (double(q) * double(q));
}

// ---------------------------------------------------------------- G_lambda

namespace {

struct PairMult {
    u64 m, n;
    int mult;
};

std::vector<PairMult> residue_pairs(u64 q, std::span<const i64> m, std::span<const i64> n) {
    if (m.size() != n.size() || m.empty()) throw argument_error("big_G: m and n must be nonempty d-vectors");
    std::map<std::pair<u64, u64>, int> cnt;
    for (size_t j = 0; j < m.size(); ++j) ++cnt[{umod(m[j], q), umod(n[j], q)}];
    std::vector<PairMult> out;
    for (auto& [k, c] : cnt) out.push_back({k.first, k.second, c});
    return out;
}

}  // namespace

cplx big_G(i64 lambda, u64 q, std::span<const i64> m, std::span<const i64> n, bool parallel) {
    if (q == 0) throw argument_error("big_G: q must be positive");
    if (q > 4096) throw resource_error("big_G: modulus beyond budget");
    auto pairs = residue_pairs(q, m, n);
    if (q == 1) return 1.0;
    GaussRows rows(q);
    std::vector<cplx> e(q);
    for (u64 k = 0; k < q; ++k) e[k] = root_of_unity(q, i64(k));
    const u64 lam = umod(lambda, q);
    std::vector<cplx> partial(q);

#pragma omp parallel if (parallel)
    {
        std::vector<cplx> gv(pairs.size() * q);
        std::vector<cplx> terms(q);
#pragma omp for schedule(dynamic, 1)
        for (u64 a2 = 0; a2 < q; ++a2) {
            cplx acc_a2 = 0;
            for (u64 a3 = 0; a3 < q; ++a3) {
                u64 g23 = gcd_u(q, gcd_u(a2 == 0 ? q : a2, a3 == 0 ? q : a3));
                for (size_t p = 0; p < pairs.size(); ++p) rows.over_a1(a2, a3, pairs[p].m, pairs[p].n, gv.data() + p * q);
                cplx acc = 0;
                for (u64 a1 = 0; a1 < q; ++a1) {
                    if (gcd_u(g23, a1 == 0 ? q : a1) != 1) continue;
                    cplx prod = e[u64((u128(q - lam) * ((a1 + a2 + a3) % q)) % q)];
                    for (size_t p = 0; p < pairs.size(); ++p) {
                        cplx g = gv[p * q + a1];
                        for (int t = 0; t < pairs[p].mult; ++t) prod *= g;
                    }
                    acc += prod;
                }
                acc_a2 += acc;
            }
            partial[a2] = acc_a2;
        }
    }
    cplx total = 0;
    for (const cplx& v : partial) total += v;
    return total;
}

cplx big_G_zero(i64 lambda, u64 q, int d) {
    std::vector<i64> z(size_t(d), 0);
    return big_G(lambda, q, z, z);
}

namespace ref {

cplx big_G(i64 lambda, u64 q, std::span<const i64> m, std::span<const i64> n) {
    if (q == 0) throw argument_error("big_G: q must be positive");
    if (m.size() != n.size() || m.empty()) throw argument_error("big_G: m and n must be nonempty d-vectors");
    cplx total = 0;
    for (u64 a1 = 1; a1 <= q; ++a1)
        for (u64 a2 = 1; a2 <= q; ++a2)
            for (u64 a3 = 1; a3 <= q; ++a3) {
                if (gcd_many({i64(q), i64(a1), i64(a2), i64(a3)}) != 1) continue;
                cplx prod = root_of_unity(q, -i64(umod(i128(lambda) * i128(a1 + a2 + a3), q)));
                for (size_t j = 0; j < m.size(); ++j)
                    prod *= gauss_g(make_gauss_key(q, {i64(a1), i64(a2), i64(a3)}, m[j], n[j]));
                total += prod;
            }
    return total;
}

}  // namespace ref

cplx BigGCache::get(i64 lambda, u64 q, std::span<const i64> m) {
    std::vector<i64> key{i64(q), i64(umod(lambda, q))};
    std::vector<i64> res;
    for (i64 v : m) res.push_back(i64(umod(v, q)));
    std::sort(res.begin(), res.end());
    key.insert(key.end(), res.begin(), res.end());
    {
        std::shared_lock lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    std::vector<i64> zeros(res.size(), 0);
    cplx v = big_G(lambda, q, res, zeros);
    std::unique_lock lk(mu_);
    memo_.emplace(std::move(key), v);
    return v;
}

size_t BigGCache::size() const {
    std::shared_lock lk(mu_);
    return memo_.size();
}

// ---------------------------------------------------------------- Gauss-sum bound and weight sums

VerificationReport verify_lemma1(u64 q, int samples_per_a, u64 seed) {
    VerificationReport rep;
    rep.name = "lemma1_chain";
    rep.anchor = "q^4|g(q; a, m, n)|^2 <= q^2 nu(q; 2a)";
    rep.inputs = {{"q", q}, {"samples_per_a", samples_per_a}, {"seed", seed}};
    if (q == 0) {
        rep.add("q >= 1", 0, 1, 0, false);
        return rep;
    }
    GaussRows rows(q);
    const bool prime_power = factorize(q).size() == 1;
    u64 checked = 0, violations = 0, nu_checked = 0, nu_violations = 0;
    double worst = 0, worst_c = 0;
    u64 idx = 0;
    for (u64 a1 = 1; a1 <= q; ++a1)
        for (u64 a2 = 1; a2 <= q; ++a2)
            for (u64 a3 = 1; a3 <= q; ++a3, ++idx) {
                if (gcd_many({i64(q), i64(a1), i64(a2), i64(a3)}) != 1) continue;
                Triple3 a{i64(a1), i64(a2), i64(a3)};
                Triple3 a2x{2 * i64(a1), 2 * i64(a2), 2 * i64(a3)};
                double rhs = double(congruence_count_nu_smith(q, a2x)) / (double(q) * double(q));
                double w = weight_w(q, a);
                auto rng = stream_for(seed, q * 0x100000000ull + idx);
                for (int t = 0; t < samples_per_a; ++t) {
                    u64 m = rng() % q, n = rng() % q;
                    double lhs = std::norm(rows.g(a1, a2, a3, m, n));
                    ++checked;
                    if (lhs > rhs + 1e-9) ++violations;
                    worst = std::max(worst, rhs > 0 ? lhs / rhs : (lhs > 1e-9 ? INFINITY : 0));
                    worst_c = std::max(worst_c, std::sqrt(lhs) * double(q) / w);
                }
                if (prime_power) {
                    ++nu_checked;
                    if (congruence_count_nu_smith(q, a) > weight_gcd(q, a)) ++nu_violations;
                }
            }
    rep.add("violations of |g|^2 <= q^-2 nu(q;2a) + 1e-9", double(violations), 0, 0, violations == 0);
    rep.add_le("max |g|^2 / (q^-2 nu(q;2a))", worst, 1.0, 1e-9);
    rep.add("constant C in |g| <= C q^-1 w_q(a) (report only)", worst_c, 1.01, 0, worst_c <= 1.01, false);
    if (prime_power)
        rep.add("violations of nu(p^r;a) <= (p^r, a1a3-a2^2)", double(nu_violations), 0, 0, nu_violations == 0);
    rep.data = {{"checked", checked}, {"nu_checked", nu_checked}};
    return rep;
}

namespace {

// counts of primitive a mod p^k by j = min(v_p(a1a3 - a2^2), k)
const std::vector<u64>& prime_power_weight_counts(u64 p, int k) {
    static std::mutex mu;
    static std::map<std::pair<u64, int>, std::vector<u64>> memo;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find({p, k});
        if (it != memo.end()) return it->second;
    }
    const u64 q = checked_pow(p, k);
    std::vector<u64> cnt(size_t(k + 1), 0);
    for (u64 a1 = 0; a1 < q; ++a1)
        for (u64 a2 = 0; a2 < q; ++a2) {
            bool p12 = a1 % p == 0 && a2 % p == 0;
            i64 sq = i64(a2 * a2 % q);
            for (u64 a3 = 0; a3 < q; ++a3) {
                if (p12 && a3 % p == 0) continue;
                i64 det = i64(a1 * a3 % q) - sq;
                if (det < 0) det += i64(q);
                int j = 0;
                if (det == 0)
                    j = k;
                else
                    while (det % i64(p) == 0) {
                        det /= i64(p);
                        ++j;
                    }
                ++cnt[size_t(j)];
            }
        }
    std::lock_guard<std::mutex> lk(mu);
    return memo.emplace(std::make_pair(p, k), std::move(cnt)).first->second;
}

}  // namespace

double lemma2_lhs(u64 q, double s) {
    if (q == 0) throw argument_error("lemma2: q must be positive");
    double lhs = 1;
    for (auto [p, k] : factorize(q)) {
        const auto& cnt = prime_power_weight_counts(p, k);
        double f = 0;
        for (int j = 0; j <= k; ++j) f += double(cnt[size_t(j)]) * std::pow(double(p), 0.5 * s * j);
        lhs *= f;
    }
    return lhs;
}

VerificationReport verify_lemma2(u64 q, double s) {
    VerificationReport rep;
    rep.name = "lemma2_weight_sum";
    rep.anchor = "tau(q)^2 q^{s/2 + 2}";
    rep.inputs = {{"q", q}, {"s", s}};
    double lhs = lemma2_lhs(q, s);
    double t = double(tau(q));
    double rhs = t * t * std::pow(double(q), s / 2 + 2);
    rep.add("sum_a w_q(a)^s <= tau(q)^2 q^(s/2+2)", lhs, rhs, 1e-9 * rhs, lhs <= rhs * (1 + 1e-9));
    return rep;
}

}  // namespace triadne

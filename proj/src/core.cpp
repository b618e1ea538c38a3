#include "triadne/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

namespace triadne {

u64 gcd_u(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm_u(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u(a, b) * b;
}

u64 gcd_many(std::span<const i64> values) {
    if (values.empty()) throw argument_error("gcd_many: empty input");
    u64 g = 0;
    for (i64 v : values) g = gcd_u(g, v < 0 ? u64(-(v + 1)) + 1 : u64(v));
    return g;
}

u64 tau(u64 q) {
    if (q == 0) throw argument_error("tau: q must be positive");
    u64 r = 1;
    for (auto [p, e] : factorize(q)) r *= u64(e + 1);
    return r;
}

cplx root_of_unity(u64 q, i64 k) {
    if (q == 0) throw argument_error("root_of_unity: q must be positive");
    i64 r = mod(k, i64(q));
    if ((u128(r) * 4) % q == 0) {
        switch (int(u128(r) * 4 / q)) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    // center the residue so the angle stays in [-pi, pi]
    i64 c = (2 * r > i64(q)) ? r - i64(q) : r;
    double t = two_pi * double(c) / double(q);
    return {std::cos(t), std::sin(t)};
}

Triple quadratic_triple(std::span<const i64> x, std::span<const i64> y) {
    if (x.size() != y.size()) throw argument_error("quadratic_triple: dimension mismatch");
    Triple t{0, 0, 0};
    for (size_t i = 0; i < x.size(); ++i) {
        t.a += i128(x[i]) * x[i];
        t.b += i128(x[i]) * y[i];
        t.c += i128(y[i]) * y[i];
    }
    t.b *= 2;
    return t;
}

i128 sum_components(std::span<const i64> x) {
    i128 s = 0;
    for (i64 v : x) s += v;
    return s;
}

double sum_components(std::span<const double> x) { return canonical_sum(std::vector<double>(x.begin(), x.end())); }

static double sigma_exp(double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; }

double cutoff_profile(double t) {
    double s = (0.25 - t) / 0.125;
    if (s >= 1) return 1.0;
    if (s <= 0) return 0.0;
    double a = sigma_exp(s), b = sigma_exp(1 - s);
    return a / (a + b);
}

double cutoff_phi(std::span<const double> xi) {
    double t = 0;
    for (double v : xi) t = std::max(t, std::abs(v));
    return cutoff_profile(t);
}

static double pairwise_rec(const double* p, size_t n) {
    if (n <= 8) {
        double s = 0;
        for (size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise_rec(p, h) + pairwise_rec(p + h, n - h);
}

double pairwise_sum(std::span<const double> x) { return pairwise_rec(x.data(), x.size()); }

double canonical_sum(std::vector<double> x) {
    std::sort(x.begin(), x.end(), [](double a, double b) {
        double fa = std::abs(a), fb = std::abs(b);
        if (fa != fb) return fa < fb;
        if (std::signbit(a) != std::signbit(b)) return std::signbit(a) < std::signbit(b);
        return std::bit_cast<u64>(a) < std::bit_cast<u64>(b);
    });
    return pairwise_sum(x);
}

cplx canonical_sum(std::span<const cplx> x) {
    std::vector<double> re(x.size()), im(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        re[i] = x[i].real();
        im[i] = x[i].imag();
    }
    return {canonical_sum(std::move(re)), canonical_sum(std::move(im))};
}

u128 checked_add(u128 a, u128 b) {
    u128 r = a + b;
    if (r < a) throw resource_error("exact count overflow (add)");
    return r;
}

u128 checked_mul(u128 a, u128 b) {
    if (a == 0 || b == 0) return 0;
    u128 r = a * b;
    if (r / b != a) throw resource_error("exact count overflow (mul)");
    return r;
}

u64 checked_pow(u64 p, int t) {
    u128 r = 1;
    for (int i = 0; i < t; ++i) {
        r *= p;
        if (r > std::numeric_limits<u64>::max()) throw resource_error("prime power overflow");
    }
    return u64(r);
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(u128(-(v + 1)) + 1);
    return to_string(u128(v));
}

double to_double(u128 v) { return double(u64(v >> 64)) * 18446744073709551616.0 + double(u64(v)); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<char> comp(n + 1, 0);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return out;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> f;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

int valuation(i64 n, u64 p) {
    if (n == 0) return std::numeric_limits<int>::max();
    u64 m = n < 0 ? u64(-n) : u64(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

std::mt19937_64 stream_for(u64 seed, u64 index) {
    std::seed_seq seq{u32(seed), u32(seed >> 32), u32(index), u32(index >> 32), 0x7472u};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& g) {
    // 53 random bits, independent of the library's distribution algorithms
    return double(g() >> 11) * 0x1.0p-53;
}

}  // namespace triadne

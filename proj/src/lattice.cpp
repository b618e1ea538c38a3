#include "triadne/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <omp.h>

namespace triadne {

static i64 isqrt(i64 n) {
    if (n < 0) return -1;
    i64 r = i64(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// ---------------------------------------------------------------- reps

namespace {
struct RepGen {
    int d;
    i64 bound;
    size_t max_reps;
    std::vector<i64> cur;
    std::vector<i64>& out;

    void run(int i, i64 rem) {
        int left = d - i - 1;
        if (left == 0) {
            i64 r = isqrt(rem);
            if (r * r != rem || r > bound) return;
            for (i64 x : {-r, r}) {
                cur[i] = x;
                emit();
                if (r == 0) break;
            }
            return;
        }
        i64 lim = std::min(isqrt(rem), bound);
        for (i64 x = -lim; x <= lim; ++x) {
            i64 r2 = rem - x * x;
            if (bound < (i64(1) << 31) && r2 > i64(left) * bound * bound) continue;
            cur[i] = x;
            run(i + 1, r2);
        }
    }
    void emit() {
        if (out.size() / size_t(d) >= max_reps) throw resource_error("sum_of_squares_reps: rep list exceeds budget");
        out.insert(out.end(), cur.begin(), cur.end());
    }
};
}  // namespace

RepList sum_of_squares_reps(i64 lambda, int d, i64 bound, size_t max_reps) {
    if (lambda < 0) throw argument_error("sum_of_squares_reps: lambda must be >= 0");
    if (d < 1) throw argument_error("sum_of_squares_reps: d must be >= 1");
    RepList r;
    r.lambda = lambda;
    r.d = d;
    if (bound < 0) bound = isqrt(lambda);
    RepGen g{d, bound, max_reps, std::vector<i64>(d, 0), r.coords};
    g.run(0, lambda);
    return r;
}

// ---------------------------------------------------------------- orbits

LatticeVector canonical_form(std::span<const i64> u) {
    LatticeVector c(u.size());
    for (size_t i = 0; i < u.size(); ++i) c[i] = u[i] < 0 ? -u[i] : u[i];
    std::sort(c.begin(), c.end(), std::greater<>());
    return c;
}

u64 orbit_size(const LatticeVector& canon) {
    // multinomial(d; multiplicities) * 2^(nonzero entries)
    u128 r = 1;
    int nz = 0;
    size_t i = 0, n = canon.size();
    u64 k = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && canon[j] == canon[i]) ++j;
        for (size_t t = 0; t < j - i; ++t) {
            ++k;
            r = r * k / (t + 1);
        }
        if (canon[i] != 0) nz += int(j - i);
        i = j;
    }
    return u64(r << nz);
}

std::vector<SignedPerm> orbit_transforms(const LatticeVector& canon) {
    int d = int(canon.size());
    std::vector<SignedPerm> out;
    std::vector<i64> arr = canon;  // nonincreasing: largest arrangement
    std::vector<int> nzidx;
    for (int k = 0; k < d; ++k)
        if (canon[k] != 0) nzidx.push_back(k);
    do {
        SignedPerm g;
        g.pos.assign(d, -1);
        g.sign.assign(d, 1);
        std::vector<char> used(d, 0);
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                if (!used[i] && arr[i] == canon[k]) {
                    used[i] = 1;
                    g.pos[k] = i;
                    break;
                }
        for (u64 mask = 0; mask < (u64(1) << nzidx.size()); ++mask) {
            for (size_t b = 0; b < nzidx.size(); ++b) g.sign[nzidx[b]] = (mask >> b & 1) ? -1 : 1;
            out.push_back(g);
        }
    } while (std::prev_permutation(arr.begin(), arr.end()));
    return out;
}

static void canon_rec(int i, int d, i64 rem, i64 maxv, LatticeVector& cur, std::vector<LatticeVector>& out) {
    if (i == d) {
        if (rem == 0) out.push_back(cur);
        return;
    }
    for (i64 x = std::min(maxv, isqrt(rem)); x >= 0; --x) {
        if (rem - x * x > i64(d - i - 1) * x * x) break;
        cur[i] = x;
        canon_rec(i + 1, d, rem - x * x, x, cur, out);
    }
}

static std::vector<LatticeVector> canonical_reps(i64 lambda, int d) {
    std::vector<LatticeVector> out;
    LatticeVector cur(d, 0);
    canon_rec(0, d, lambda, isqrt(lambda), cur, out);
    return out;
}

std::vector<TriangleOrbit> triangle_orbits(i64 lambda, int d) {
    if (lambda < 0) throw argument_error("triangle_orbits: lambda must be >= 0");
    if (d < 1) throw argument_error("triangle_orbits: d must be >= 1");
    std::vector<TriangleOrbit> orbits;
    if (lambda % 2) return orbits;
    RepList reps = cached_reps(lambda, d);
    auto canon = canonical_reps(lambda, d);
    orbits.resize(canon.size());
    const i64 half = lambda / 2;
    const size_t n = reps.size();
#pragma omp parallel for schedule(dynamic, 1)
    for (size_t k = 0; k < canon.size(); ++k) {
        TriangleOrbit& o = orbits[k];
        o.canon = canon[k];
        o.orbit_size = orbit_size(o.canon);
        const i64* c = o.canon.data();
        for (size_t j = 0; j < n; ++j) {
            const i64* v = reps.coords.data() + j * size_t(d);
            i64 dot = 0;
            for (int i = 0; i < d; ++i) dot += c[i] * v[i];
            if (dot == half) o.completions.insert(o.completions.end(), v, v + d);
        }
    }
    return orbits;
}

// ---------------------------------------------------------------- V_lambda

TrianglePairSet count_triangle_pairs(i64 lambda, int d, bool materialize, size_t max_pairs) {
    if (lambda < 0) throw argument_error("count_triangle_pairs: lambda must be >= 0");
    TrianglePairSet s;
    s.lambda = lambda;
    s.d = d;
    s.materialized = materialize;
    if (lambda % 2) return s;
    auto orbits = triangle_orbits(lambda, d);
    for (const auto& o : orbits)
        s.count = checked_add(s.count, checked_mul(o.orbit_size, o.completion_count(d)));
    if (!materialize) return s;
    if (s.count > max_pairs) throw resource_error("count_triangle_pairs: pair set exceeds materialization budget");

    std::vector<i64> raw;
    raw.reserve(size_t(s.count) * 2 * size_t(d));
    std::vector<i64> buf(2 * size_t(d));
    for (const auto& o : orbits) {
        size_t nc = o.completion_count(d);
        if (nc == 0) continue;
        for (const auto& g : orbit_transforms(o.canon)) {
            g.apply(o.canon, buf.data());
            for (size_t j = 0; j < nc; ++j) {
                g.apply({o.completions.data() + j * size_t(d), size_t(d)}, buf.data() + d);
                raw.insert(raw.end(), buf.begin(), buf.end());
            }
        }
    }
    size_t m = raw.size() / (2 * size_t(d));
    std::vector<size_t> idx(m);
    std::iota(idx.begin(), idx.end(), size_t(0));
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return std::lexicographical_compare(raw.begin() + a * 2 * d, raw.begin() + (a + 1) * 2 * d,
                                            raw.begin() + b * 2 * d, raw.begin() + (b + 1) * 2 * d);
    });
    s.pairs.resize(raw.size());
    for (size_t i = 0; i < m; ++i)
        std::copy_n(raw.begin() + idx[i] * 2 * d, 2 * d, s.pairs.begin() + i * 2 * d);
    return s;
}

u128 count_triangle_pairs_dp(i64 lambda, int d, bool parallel) {
    if (lambda < 0) throw argument_error("count_triangle_pairs_dp: lambda must be >= 0");
    if (d < 1) throw argument_error("count_triangle_pairs_dp: d must be >= 1");
    if (lambda % 2) return 0;
    if (lambda == 0) return 1;
    const i64 R = isqrt(lambda);
    struct K {
        i64 a, b, c;
        u64 w;
    };
    std::map<std::array<i64, 3>, u64> km;
    for (i64 x = -R; x <= R; ++x)
        for (i64 y = -R; y <= R; ++y) ++km[{x * x, x * y, y * y}];
    std::vector<K> ker;
    for (auto& [k, w] : km) ker.push_back({k[0], k[1], k[2], w});

    const i64 L = lambda;
    const size_t NA = size_t(L + 1), NB = size_t(2 * L + 1), NC = size_t(L + 1);
    auto at = [&](i64 A, i64 B, i64 C) { return (size_t(A) * NB + size_t(B + L)) * NC + size_t(C); };
    std::vector<u128> cur(NA * NB * NC, 0), nxt(NA * NB * NC, 0);
    cur[at(0, 0, 0)] = 1;
    for (int round = 1; round < d; ++round) {
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (i64 A = 0; A <= L; ++A)
            for (i64 B = -L; B <= L; ++B)
                for (i64 C = 0; C <= L; ++C) {
                    u128 s = 0;
                    for (const K& k : ker) {
                        i64 a = A - k.a, b = B - k.b, c = C - k.c;
                        if (a < 0 || c < 0 || b < -L || b > L) continue;
                        u128 v = cur[at(a, b, c)];
                        if (v) s += v * k.w;
                    }
                    nxt[at(A, B, C)] = s;
                }
        std::swap(cur, nxt);
    }
    u128 total = 0;
    for (const K& k : ker) {
        i64 a = L - k.a, b = L / 2 - k.b, c = L - k.c;
        if (a < 0 || c < 0 || b < -L || b > L) continue;
        total = checked_add(total, checked_mul(cur[at(a, b, c)], k.w));
    }
    return total;
}

CompletionTable completion_counts(i64 lambda, int d) {
    CompletionTable t;
    t.reps = cached_reps(lambda, d);
    t.c.assign(t.reps.size(), 0);
    if (lambda % 2) return t;
    std::map<LatticeVector, u64> by_canon;
    for (const auto& o : triangle_orbits(lambda, d)) by_canon[o.canon] = o.completion_count(d);
    for (size_t i = 0; i < t.reps.size(); ++i) t.c[i] = by_canon.at(canonical_form(t.reps[i]));
    return t;
}

// ---------------------------------------------------------------- Gram counts

u64 nu_gram(i64 a, i64 b, i64 c) {
    if (a < 0 || c < 0) return 0;
    RepList X = sum_of_squares_reps(a, 3), Y = sum_of_squares_reps(c, 3);
    u64 n = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        auto x = X[i];
        for (size_t j = 0; j < Y.size(); ++j) {
            auto y = Y[j];
            if (x[0] * y[0] + x[1] * y[1] + x[2] * y[2] == b) ++n;
        }
    }
    return n;
}

u64 r3(i64 n) {
    if (n < 0) return 0;
    u64 cnt = 0;
    i64 R = isqrt(n);
    for (i64 x = -R; x <= R; ++x)
        for (i64 y = -R; y <= R; ++y) {
            i64 rem = n - x * x - y * y;
            if (rem < 0) continue;
            i64 z = isqrt(rem);
            if (z * z == rem) cnt += z == 0 ? 1 : 2;
        }
    return cnt;
}

// ---------------------------------------------------------------- moments

u128 MomentDistribution::mass() const {
    u128 m = 0;
    for (const auto& kv : support) m = checked_add(m, kv.second);
    return m;
}

MomentDistribution vinogradov_distribution(int s, i64 N) {
    if (s < 1 || N < 0) throw argument_error("vinogradov_distribution: need s >= 1, N >= 0");
    MomentDistribution base;
    for (i64 x = -N; x <= N; ++x)
        for (i64 y = -N; y <= N; ++y) base.support[{x, y, x * x, x * y, y * y}] += 1;
    MomentDistribution cur = base;
    for (int k = 1; k < s; ++k) {
        MomentDistribution nxt;
        for (const auto& [p, w] : cur.support)
            for (const auto& [q, v] : base.support) {
                std::vector<i64> key(5);
                for (int i = 0; i < 5; ++i) key[i] = p[i] + q[i];
                nxt.support[key] += w * v;
            }
        cur = std::move(nxt);
    }
    return cur;
}

namespace {

// open addressing u64 -> u64 counter, cleared in O(touched)
class FlatCounter {
  public:
    explicit FlatCounter(size_t cap = 1 << 12) { reset_capacity(cap); }

    void add(u64 key, u64 v) {
        if ((used_.size() + 1) * 2 > keys_.size()) grow();
        size_t h = slot(key);
        if (keys_[h] == empty) {
            keys_[h] = key;
            vals_[h] = 0;
            used_.push_back(h);
        }
        vals_[h] += v;
    }
    template <class F>
    void for_each(F&& f) const {
        for (size_t h : used_) f(keys_[h], vals_[h]);
    }
    void clear() {
        for (size_t h : used_) keys_[h] = empty;
        used_.clear();
    }

  private:
    static constexpr u64 empty = ~u64(0);
    std::vector<u64> keys_, vals_;
    std::vector<size_t> used_;
    size_t mask_ = 0;

    size_t slot(u64 key) const {
        u64 h = key * 0x9e3779b97f4a7c15ull;
        size_t i = size_t(h >> 20) & mask_;
        while (keys_[i] != empty && keys_[i] != key) i = (i + 1) & mask_;
        return i;
    }
    void reset_capacity(size_t cap) {
        size_t c = 16;
        while (c < cap) c <<= 1;
        keys_.assign(c, empty);
        vals_.assign(c, 0);
        mask_ = c - 1;
    }
    void grow() {
        std::vector<std::pair<u64, u64>> old;
        old.reserve(used_.size());
        for (size_t h : used_) old.emplace_back(keys_[h], vals_[h]);
        reset_capacity(keys_.size() * 2);
        used_.clear();
        for (auto& [k, v] : old) {
            size_t h = slot(k);
            keys_[h] = k;
            vals_[h] = v;
            used_.push_back(h);
        }
    }
};

struct Entry5 {
    i64 X, Y, A, B, C;
    u64 w;
};

std::vector<Entry5> distribution_entries(int a, i64 N) {
    // iterated sparse convolution with the base law of (x, y, x^2, xy, y^2)
    std::vector<Entry5> base;
    for (i64 x = -N; x <= N; ++x)
        for (i64 y = -N; y <= N; ++y) base.push_back({x, y, x * x, x * y, y * y, 1});
    std::vector<Entry5> cur = base;
    for (int k = 1; k < a; ++k) {
        i64 s = k + 1, n2 = N * N;
        i64 WX = 2 * s * N + 1, WA = s * n2 + 1, WB = 2 * s * n2 + 1, WC = s * n2 + 1;
        auto pack = [&](i64 X, i64 Y, i64 A, i64 B, i64 C) {
            return u64((((X + s * N) * WX + (Y + s * N)) * WA + A) * WB + (B + s * n2)) * u64(WC) + u64(C);
        };
        FlatCounter fc(cur.size() * 4);
        for (const auto& p : cur)
            for (const auto& q : base) fc.add(pack(p.X + q.X, p.Y + q.Y, p.A + q.A, p.B + q.B, p.C + q.C), p.w * q.w);
        std::vector<Entry5> nxt;
        fc.for_each([&](u64 key, u64 w) {
            Entry5 e;
            e.C = i64(key % u64(WC));
            key /= u64(WC);
            e.B = i64(key % u64(WB)) - s * n2;
            key /= u64(WB);
            e.A = i64(key % u64(WA));
            key /= u64(WA);
            e.Y = i64(key % u64(WX)) - s * N;
            e.X = i64(key / u64(WX)) - s * N;
            e.w = w;
            nxt.push_back(e);
        });
        cur = std::move(nxt);
    }
    return cur;
}

// entries grouped by (X,Y) slice with a linear key on (A,B,C)
struct Sliced {
    i64 R;  // |X|,|Y| <= R
    std::vector<size_t> start;
    std::vector<std::pair<u64, u64>> items;
    size_t idx(i64 X, i64 Y) const { return size_t((X + R) * (2 * R + 1) + (Y + R)); }
};

Sliced slice_entries(const std::vector<Entry5>& es, i64 R, i64 W1, i64 W2, i64 offset) {
    Sliced s;
    s.R = R;
    size_t ns = size_t((2 * R + 1) * (2 * R + 1));
    s.start.assign(ns + 1, 0);
    for (const auto& e : es) ++s.start[s.idx(e.X, e.Y) + 1];
    for (size_t i = 0; i < ns; ++i) s.start[i + 1] += s.start[i];
    s.items.resize(es.size());
    std::vector<size_t> fill(s.start.begin(), s.start.end() - 1);
    for (const auto& e : es) s.items[fill[s.idx(e.X, e.Y)]++] = {u64(e.A * W1 + e.B * W2 + e.C + offset), e.w};
    return s;
}

}  // namespace

u128 vinogradov_count(int s, i64 N, bool parallel) {
    if (s < 1 || N < 0) throw argument_error("vinogradov_count: need s >= 1, N >= 0");
    if (N == 0) return 1;
    int a = (s + 1) / 2, b = s / 2;
    i64 n2 = N * N;
    i64 W2 = s * n2 + 1, W1 = (2 * s * n2 + 1) * W2;
    if (s == 1) return u128((2 * N + 1) * (2 * N + 1));
    auto ea = distribution_entries(a, N);
    auto eb = distribution_entries(b, N);
    if (double(ea.size()) * double(eb.size()) / 8.0 > 4e10)
        throw resource_error("vinogradov_count: convolution exceeds budget");
    Sliced sa = slice_entries(ea, a * N, W1, W2, s * n2 * W2);
    Sliced sb = slice_entries(eb, b * N, W1, W2, 0);

    // Sigma_n r_s(n)^2 is constant on orbits of (X,Y) under the dihedral group
    std::vector<std::pair<i64, i64>> targets;
    for (i64 X = 0; X <= s * N; ++X)
        for (i64 Y = 0; Y <= X; ++Y) targets.emplace_back(X, Y);
    std::vector<u128> partial(targets.size(), 0);

#pragma omp parallel if (parallel)
    {
        FlatCounter fc(1 << 16);
#pragma omp for schedule(dynamic, 1)
        for (size_t t = 0; t < targets.size(); ++t) {
            auto [X, Y] = targets[t];
            for (i64 X1 = -sa.R; X1 <= sa.R; ++X1) {
                i64 X2 = X - X1;
                if (X2 < -sb.R || X2 > sb.R) continue;
                for (i64 Y1 = -sa.R; Y1 <= sa.R; ++Y1) {
                    i64 Y2 = Y - Y1;
                    if (Y2 < -sb.R || Y2 > sb.R) continue;
                    size_t ia = sa.idx(X1, Y1), ib = sb.idx(X2, Y2);
                    for (size_t p = sa.start[ia]; p < sa.start[ia + 1]; ++p)
                        for (size_t q = sb.start[ib]; q < sb.start[ib + 1]; ++q)
                            fc.add(sa.items[p].first + sb.items[q].first, sa.items[p].second * sb.items[q].second);
                }
            }
            u128 acc = 0;
            fc.for_each([&](u64, u64 v) { acc = checked_add(acc, checked_mul(v, v)); });
            fc.clear();
            u64 w = (X == 0 && Y == 0) ? 1 : (Y == 0 || X == Y) ? 4 : 8;
            partial[t] = checked_mul(acc, w);
        }
    }
    u128 J = 0;
    for (u128 p : partial) J = checked_add(J, p);
    return J;
}

u128 sixth_moment_count(i64 N) {
    if (N < 0) throw argument_error("sixth_moment_count: N must be >= 0");
    if (N > 16) throw resource_error("sixth_moment_count: N beyond budget");
    if (N == 0) return 1;
    const i64 n2 = N * N;
    std::map<std::array<i64, 3>, u64> m1;
    for (i64 x = -N; x <= N; ++x)
        for (i64 y = -N; y <= N; ++y) ++m1[{x * x, x * y, y * y}];
    const i64 A2 = 2 * n2 + 1, B2 = 4 * n2 + 1, C2 = 2 * n2 + 1;
    std::vector<u32> r2(size_t(A2 * B2 * C2), 0);
    for (auto& [p, w] : m1)
        for (auto& [q, v] : m1) r2[size_t(((p[0] + q[0]) * B2 + (p[1] + q[1] + 2 * n2)) * C2 + p[2] + q[2])] += u32(w * v);

    const i64 B3 = 6 * n2 + 1, C3 = 3 * n2 + 1;
    std::vector<u128> partial(size_t(3 * n2 + 1), 0);
#pragma omp parallel
    {
        std::vector<u64> S(size_t(B3 * C3));
#pragma omp for schedule(dynamic, 1)
        for (i64 A = 0; A <= 3 * n2; ++A) {
            std::fill(S.begin(), S.end(), 0);
            for (auto& [p, w] : m1) {
                i64 a = A - p[0];
                if (a < 0 || a >= A2) continue;
                const u32* src = r2.data() + size_t(a * B2 * C2);
                for (i64 b = 0; b < B2; ++b) {
                    u64* dst = S.data() + size_t((b + p[1] + n2) * C3 + p[2]);
                    const u32* row = src + size_t(b * C2);
                    for (i64 c = 0; c < C2; ++c) dst[c] += u64(w) * row[c];
                }
            }
            u128 acc = 0;
            for (u64 v : S) acc += u128(v) * v;
            partial[size_t(A)] = acc;
        }
    }
    u128 T = 0;
    for (u128 p : partial) T = checked_add(T, p);
    return T;
}

// ---------------------------------------------------------------- boxes

u128 triangles_in_box(i64 n, int d) {
    if (n < 0 || d < 1) throw argument_error("triangles_in_box: need n >= 0, d >= 1");
    if (std::pow(double(n + 1), d) > 1e9) throw resource_error("triangles_in_box: box beyond budget");
    u128 pinned = 0;
    for (i64 lam = 2; lam <= i64(d) * n * n; lam += 2) {
        RepList reps = sum_of_squares_reps(lam, d, n);
        size_t m = reps.size();
        for (size_t i = 0; i < m; ++i) {
            auto u = reps[i];
            for (size_t j = 0; j < m; ++j) {
                auto v = reps[j];
                i64 dot = 0;
                for (int k = 0; k < d; ++k) dot += u[k] * v[k];
                if (2 * dot != lam) continue;
                // number of x with x, x-u, x-v all in [0,n]^d
                u128 cnt = 1;
                for (int k = 0; k < d; ++k) {
                    i64 hi = std::max<i64>({0, u[k], v[k]}), lo = std::min<i64>({0, u[k], v[k]});
                    i64 len = n + 1 - (hi - lo);
                    if (len <= 0) {
                        cnt = 0;
                        break;
                    }
                    cnt *= u128(len);
                }
                pinned += cnt;
            }
        }
    }
    return pinned / 6;
}

namespace ref {

u128 count_triangle_pairs(i64 lambda, int d) {
    if (lambda < 0) throw argument_error("count_triangle_pairs: lambda must be >= 0");
    if (lambda % 2) return 0;
    RepList reps = sum_of_squares_reps(lambda, d);
    size_t n = reps.size();
    u128 c = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto u = reps[i], v = reps[j];
            i64 dot = 0;
            for (int k = 0; k < d; ++k) dot += u[k] * v[k];
            if (2 * dot == lambda) ++c;
        }
    return c;
}

u128 triangles_in_box(i64 n, int d) {
    std::vector<std::vector<i64>> pts;
    std::vector<i64> cur(d, 0);
    for (;;) {
        pts.push_back(cur);
        int k = 0;
        while (k < d && cur[k] == n) cur[k++] = 0;
        if (k == d) break;
        ++cur[k];
    }
    auto dist2 = [&](const std::vector<i64>& a, const std::vector<i64>& b) {
        i64 s = 0;
        for (int k = 0; k < d; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
        return s;
    };
    u128 c = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            i64 ab = dist2(pts[i], pts[j]);
            for (size_t k = j + 1; k < pts.size(); ++k)
                if (dist2(pts[i], pts[k]) == ab && dist2(pts[j], pts[k]) == ab) ++c;
        }
    return c;
}

u128 vinogradov_count(int s, i64 N) {
    u128 J = 0;
    for (const auto& kv : vinogradov_distribution(s, N).support) J = checked_add(J, checked_mul(kv.second, kv.second));
    return J;
}

u128 sixth_moment_count(i64 N) {
    std::map<std::array<i64, 3>, u128> base, cur;
    for (i64 x = -N; x <= N; ++x)
        for (i64 y = -N; y <= N; ++y) base[{x * x, x * y, y * y}] += 1;
    cur = base;
    for (int k = 1; k < 3; ++k) {
        std::map<std::array<i64, 3>, u128> nxt;
        for (auto& [p, w] : cur)
            for (auto& [q, v] : base) nxt[{p[0] + q[0], p[1] + q[1], p[2] + q[2]}] += w * v;
        cur = std::move(nxt);
    }
    u128 T = 0;
    for (auto& kv : cur) T += kv.second * kv.second;
    return T;
}

}  // namespace ref

}  // namespace triadne

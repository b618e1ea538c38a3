#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <set>

#include "triadne/lattice.hpp"

using namespace triadne;

namespace {

i64 dot(std::span<const i64> a, std::span<const i64> b) {
    i64 s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// every z in [-r, r]^d with |z|^2 = n, by odometer
std::vector<LatticeVector> brute_sphere(i64 n, int d) {
    i64 r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    std::vector<LatticeVector> out;
    LatticeVector z(d, -r);
    while (true) {
        if (dot(z, z) == n) out.push_back(z);
        int k = d - 1;
        while (k >= 0 && z[k] == r) z[k--] = -r;
        if (k < 0) break;
        ++z[k];
    }
    return out;
}

}  // namespace

TEST_CASE("sum of squares representations") {
    CHECK(sum_of_squares_reps(0, 3).size() == 1);
    CHECK(sum_of_squares_reps(1, 3).size() == 6);
    CHECK(sum_of_squares_reps(2, 3).size() == 12);
    for (int d = 1; d <= 5; ++d)
        for (i64 n = 0; n <= 12; ++n) {
            auto reps = sum_of_squares_reps(n, d);
            auto brute = brute_sphere(n, d);
            REQUIRE(reps.size() == brute.size());
            std::vector<LatticeVector> got;
            for (size_t i = 0; i < reps.size(); ++i) got.emplace_back(reps[i].begin(), reps[i].end());
            CHECK(std::is_sorted(got.begin(), got.end()));
            CHECK(got == brute);
        }
    CHECK_THROWS_AS(sum_of_squares_reps(40, 9, -1, 1000), resource_error);
}

TEST_CASE("rep cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "triadne_rep_cache_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "r.bin").string();
    auto reps = sum_of_squares_reps(10, 4);
    write_rep_cache(path, reps);
    auto back = read_rep_cache(path);
    CHECK(back.lambda == 10);
    CHECK(back.d == 4);
    CHECK(back.coords == reps.coords);
    {
        std::ofstream os(path, std::ios::binary);
        os << "JUNK";
    }
    CHECK_THROWS(read_rep_cache(path));
    std::filesystem::remove_all(dir);
}

TEST_CASE("triangle pair counts") {
    CHECK(count_triangle_pairs(7, 5).count == 0);
    CHECK(count_triangle_pairs(2, 2).count == 0);
    CHECK(count_triangle_pairs(0, 4).count == 1);
    CHECK(count_triangle_pairs_dp(0, 4) == 1);
    CHECK(count_triangle_pairs_dp(1, 7) == 0);
    CHECK(count_triangle_pairs(2, 3).count == count_triangle_pairs_dp(2, 3));
    CHECK(count_triangle_pairs(2, 3).count == 48);  // u = (1,1,0) has v in {(1,0,+-1), (0,1,+-1)}
    for (int d = 1; d <= 5; ++d)
        for (i64 lam = 0; lam <= 24; ++lam) {
            u128 a = count_triangle_pairs(lam, d).count;
            CHECK(a == count_triangle_pairs_dp(lam, d));
            CHECK(a == count_triangle_pairs_dp(lam, d, false));
            if (lam <= 8 && d <= 4) CHECK(a == ref::count_triangle_pairs(lam, d));
        }
}

TEST_CASE("materialized pairs lie on V_lambda and are closed under the hyperoctahedral group") {
    auto V = count_triangle_pairs(6, 5, true);
    REQUIRE(V.materialized);
    REQUIRE(u128(V.size()) == V.count);
    std::set<std::vector<i64>> all;
    for (size_t i = 0; i < V.size(); ++i) {
        auto u = V.u(i), v = V.v(i);
        CHECK(dot(u, u) == 6);
        CHECK(dot(v, v) == 6);
        CHECK(2 * dot(u, v) == 6);
        std::vector<i64> key(u.begin(), u.end());
        key.insert(key.end(), v.begin(), v.end());
        all.insert(key);
    }
    CHECK(all.size() == V.size());
    SignedPerm g{{2, 0, 4, 1, 3}, {-1, 1, 1, -1, 1}};
    for (size_t i = 0; i < V.size(); i += 7) {
        std::vector<i64> key(10);
        g.apply(V.u(i), key.data());
        g.apply(V.v(i), key.data() + 5);
        CHECK(all.count(key) == 1);
    }
    CHECK_THROWS_AS(count_triangle_pairs(20, 7, true, 1000), resource_error);
}

TEST_CASE("orbits reproduce the completion table") {
    for (auto [lam, d] : {std::pair<i64, int>{4, 4}, {6, 5}, {8, 6}}) {
        auto ct = completion_counts(lam, d);
        u128 total = 0;
        for (size_t i = 0; i < ct.reps.size(); ++i) {
            u64 brute = 0;
            for (size_t j = 0; j < ct.reps.size(); ++j) brute += 2 * dot(ct.reps[i], ct.reps[j]) == lam;
            CHECK(ct.c[i] == brute);
            total += ct.c[i];
        }
        CHECK(total == count_triangle_pairs(lam, d).count);
        for (const auto& o : triangle_orbits(lam, d)) {
            CHECK(orbit_transforms(o.canon).size() == o.orbit_size);
            CHECK(canonical_form(o.canon) == o.canon);
        }
    }
}

TEST_CASE("Gram counts and r3") {
    CHECK(nu_gram(1, 1, 1) == 6);
    CHECK(nu_gram(1, 0, 1) == 24);
    CHECK(nu_gram(2, 3, 2) == 0);
    CHECK(r3(0) == 1);
    CHECK(r3(1) == 6);
    CHECK(r3(7) == 0);
    for (i64 n = 0; n <= 30; ++n) CHECK(r3(n) == brute_sphere(n, 3).size());
    for (i64 a = 0; a <= 8; ++a)
        for (i64 c = 0; c <= 8; ++c)
            for (i64 b = -8; b <= 8; ++b) {
                CHECK(nu_gram(a, b, c) == nu_gram(c, b, a));
                CHECK(nu_gram(a, b, c) == nu_gram(a, -b, c));
            }
    for (i64 lam = 0; lam <= 20; ++lam) {
        u64 s = 0;
        for (i64 b = -lam; b <= lam; ++b) s += nu_gram(lam, b, lam);
        CHECK(s == r3(lam) * r3(lam));
        if (lam % 2 == 0) CHECK(count_triangle_pairs(lam, 3).count == nu_gram(lam, lam / 2, lam));
    }
}

TEST_CASE("Vinogradov-type counts") {
    for (i64 N = 0; N <= 6; ++N) CHECK(vinogradov_count(1, N) == u128((2 * N + 1) * (2 * N + 1)));
    for (int s = 1; s <= 3; ++s) CHECK(vinogradov_count(s, 0) == 1);
    // eight-variable brute force at N = 2
    u64 brute = 0;
    for (i64 x1 = -2; x1 <= 2; ++x1)
        for (i64 y1 = -2; y1 <= 2; ++y1)
            for (i64 x2 = -2; x2 <= 2; ++x2)
                for (i64 y2 = -2; y2 <= 2; ++y2)
                    for (i64 x3 = -2; x3 <= 2; ++x3)
                        for (i64 y3 = -2; y3 <= 2; ++y3)
                            for (i64 x4 = -2; x4 <= 2; ++x4)
                                for (i64 y4 = -2; y4 <= 2; ++y4)
                                    brute += x1 + x2 == x3 + x4 && y1 + y2 == y3 + y4 &&
                                             x1 * x1 + x2 * x2 == x3 * x3 + x4 * x4 &&
                                             x1 * y1 + x2 * y2 == x3 * y3 + x4 * y4 &&
                                             y1 * y1 + y2 * y2 == y3 * y3 + y4 * y4;
    CHECK(vinogradov_count(2, 2) == brute);
    CHECK(ref::vinogradov_count(2, 2) == brute);
    for (int s = 1; s <= 3; ++s)
        for (i64 N = 1; N <= 4; ++N) {
            CHECK(vinogradov_count(s, N) == vinogradov_count(s, N, false));
            CHECK(vinogradov_count(s, N + 1) >= vinogradov_count(s, N));
        }
    // Cauchy-Schwarz over the value set: J |support| >= mass^2
    for (int s = 1; s <= 3; ++s)
        for (i64 N = 1; N <= 3; ++N) {
            auto dist = vinogradov_distribution(s, N);
            u128 mass = dist.mass();
            CHECK(mass == u128(std::pow(2 * N + 1, 2 * s)));
            CHECK(vinogradov_count(s, N) * u128(dist.support.size()) >= mass * mass);
        }
    auto dist = vinogradov_distribution(2, 2);
    CHECK(dist.mass() == 625);
}

TEST_CASE("sixth moment count") {
    CHECK(sixth_moment_count(0) == 1);
    // twelve-variable brute force over {-1, 0, 1}
    std::map<std::array<int, 3>, u64> r;
    for (int m = 0; m < 729; ++m) {
        int c = m, a = 0, b = 0, e = 0;
        for (int k = 0; k < 3; ++k) {
            int x = c % 3 - 1;
            c /= 3;
            int y = c % 3 - 1;
            c /= 3;
            a += x * x;
            b += x * y;
            e += y * y;
        }
        ++r[{a, b, e}];
    }
    u64 brute = 0;
    for (auto& [k, v] : r) brute += v * v;
    CHECK(sixth_moment_count(1) == brute);
    for (i64 N = 1; N <= 3; ++N) CHECK(sixth_moment_count(N) == ref::sixth_moment_count(N));
    CHECK(to_string(sixth_moment_count(2)) == "730993");
    CHECK_THROWS_AS(sixth_moment_count(17), resource_error);
}

TEST_CASE("equilateral triangles in boxes") {
    for (i64 n = 0; n <= 6; ++n) CHECK(triangles_in_box(n, 2) == 0);
    for (int d = 1; d <= 4; ++d) CHECK(triangles_in_box(0, d) == 0);
    // direct unordered triple enumeration
    for (i64 n = 1; n <= 2; ++n) {
        std::vector<std::array<i64, 3>> pts;
        for (i64 a = 0; a <= n; ++a)
            for (i64 b = 0; b <= n; ++b)
                for (i64 c = 0; c <= n; ++c) pts.push_back({a, b, c});
        auto d2 = [](const auto& p, const auto& q) {
            i64 s = 0;
            for (int k = 0; k < 3; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
            return s;
        };
        u64 brute = 0;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                for (size_t k = j + 1; k < pts.size(); ++k) {
                    i64 a = d2(pts[i], pts[j]);
                    brute += a == d2(pts[j], pts[k]) && a == d2(pts[i], pts[k]);
                }
        CHECK(triangles_in_box(n, 3) == brute);
        CHECK(ref::triangles_in_box(n, 3) == brute);
    }
    CHECK(triangles_in_box(1, 3) == 8);
    CHECK(triangles_in_box(3, 3) == ref::triangles_in_box(3, 3));
}

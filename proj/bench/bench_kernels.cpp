// Wall-clock comparison of the OpenMP kernels against their serial paths and
// the direct reference implementations. Prints a CSV table.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#include "triadne/arcs.hpp"
#include "triadne/gauss.hpp"
#include "triadne/lattice.hpp"
#include "triadne/operators.hpp"
#include "triadne/oscillatory.hpp"
#include "triadne/singular.hpp"

using namespace triadne;

namespace {

// median wall time in milliseconds
double time_ms(int reps, const std::function<void()>& fn) {
    std::vector<double> t;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

volatile double sink = 0;

GridFunction random_function(int d, i64 radius, int points, u64 seed) {
    auto g = stream_for(seed, 0);
    std::uniform_int_distribution<i64> coord(-radius, radius);
    GridFunction f(d);
    for (int i = 0; i < points; ++i) {
        LatticeVector x(d);
        for (auto& c : x) c = coord(g);
        f.set(x, {uniform01(g), uniform01(g)});
    }
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel timings"};
    int reps = 3;
    int threads = 0;
    app.add_option("--reps", reps, "repetitions per timing (median reported)");
    app.add_option("--threads", threads, "OpenMP threads for the parallel column (0: runtime default)");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    struct Row {
        const char* kernel;
        const char* size;
        std::function<void()> reference, serial, parallel;
    };
    std::vector<double> zero7(7, 0.0);
    auto f = random_function(7, 2, 40, 1), g = random_function(7, 2, 40, 2);
    std::vector<i64> m{1, 2, 0, 3, 1, 0, 2}, n0(7, 0);
    Real3 alpha{0.1234, 0.5678, 0.9012};

    std::vector<Row> rows = {
        {"count_triangle_pairs", "lambda=8 d=5",
         [] { sink = to_double(ref::count_triangle_pairs(8, 5)); },
         [] { sink = to_double(count_triangle_pairs_dp(8, 5, false)); },
         [] { sink = to_double(count_triangle_pairs_dp(8, 5, true)); }},
        {"vinogradov_count", "s=3 N=6",
         [] { sink = to_double(ref::vinogradov_count(3, 6)); },
         [] { sink = to_double(vinogradov_count(3, 6, false)); },
         [] { sink = to_double(vinogradov_count(3, 6, true)); }},
        {"big_G", "lambda=6 q=24 d=7",
         [&] { sink = ref::big_G(6, 24, m, n0).real(); },
         [&] { sink = big_G(6, 24, m, n0, false).real(); },
         [&] { sink = big_G(6, 24, m, n0, true).real(); }},
        {"local_count_mod", "q=3 lambda=2 d=6",
         [] { sink = to_double(ref::local_count_mod(3, 2, 6)); },
         [] { sink = to_double(local_count_mod(3, 2, 6, false)); },
         [] { sink = to_double(local_count_mod(3, 2, 6, true)); }},
        {"weyl_sum", "N=512",
         [&] { sink = std::abs(weyl_sum_S(512, alpha, 0.3, 0.7)); },
         [&] { sink = std::abs(weyl_sum_fast(512, alpha, 0.3, 0.7, false)); },
         [&] { sink = std::abs(weyl_sum_fast(512, alpha, 0.3, 0.7, true)); }},
        {"triangle_average_T", "lambda=6 d=7 |supp|=40",
         nullptr,
         [&] { sink = double(triangle_average_T(6, f, g, false).size()); },
         [&] { sink = double(triangle_average_T(6, f, g, true).size()); }},
        {"truncated_I_N", "N=1 B=1.5 d=7",
         nullptr,
         [&] { sink = truncated_I_N(1, 1, zero7, zero7, 1.5, false).real(); },
         [&] { sink = truncated_I_N(1, 1, zero7, zero7, 1.5, true).real(); }},
    };

    std::printf("threads,%d\n", omp_get_max_threads());
    std::printf("kernel,size,reference_ms,serial_ms,parallel_ms,speedup\n");
    for (const auto& r : rows) {
        double tr = r.reference ? time_ms(reps, r.reference) : -1;
        double ts = time_ms(reps, r.serial);
        double tp = time_ms(reps, r.parallel);
        std::printf("%s,%s,%s,%.3f,%.3f,%.2f\n", r.kernel, r.size, tr < 0 ? "" : std::to_string(tr).c_str(), ts, tp,
                    ts / tp);
        std::fflush(stdout);
    }
    return 0;
}

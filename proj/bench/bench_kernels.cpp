// Timing comparison of the OpenMP kernels against their serial references:
// the range verifier and the direct S1 evaluation.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "zsindex/audit.hpp"
#include "zsindex/zerosum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace zsindex;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t n_max = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400;
#ifdef _OPENMP
    unsigned workers = static_cast<unsigned>(omp_get_max_threads());
#else
    unsigned workers = 1;
#endif

    std::printf("verify range [5, %llu]\n", static_cast<unsigned long long>(n_max));
    auto t0 = std::chrono::steady_clock::now();
    auto serial = verify_range_serial(5, n_max, std::nullopt);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = verify_range(5, n_max, workers, std::nullopt);
    double tp = seconds_since(t0);
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].n == parallel[i].n &&
               serial[i].sequences_checked == parallel[i].sequences_checked &&
               serial[i].all_index_one == parallel[i].all_index_one;
    std::printf("  serial   %8.3f s\n", ts);
    std::printf("  omp(%2u)  %8.3f s   speedup %.2fx   reports %s\n", workers, tp, ts / tp,
                same ? "identical" : "MISMATCH");

    Modulus m(4999);
    FourierSmoother s(2001);
    std::printf("S1 direct, n=4999, H=2001\n");
    t0 = std::chrono::steady_clock::now();
    double v_serial = compute_S1_direct_serial(m, 5, 7, s);
    ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    double v_par = compute_S1_direct(m, 5, 7, s);
    tp = seconds_since(t0);
    std::printf("  serial   %8.3f s   S1 = %.12f\n", ts, v_serial);
    std::printf("  omp(%2u)  %8.3f s   S1 = %.12f   speedup %.2fx   %s\n", workers, tp, v_par,
                ts / tp, v_serial == v_par ? "bit-identical" : "MISMATCH");
    return same && v_serial == v_par ? 0 : 1;
}

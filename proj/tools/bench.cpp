// Wall-time comparison of the serial reference paths against the OpenMP
// kernels.  The outputs must match bitwise; the unit tests enforce that,
// this binary reports the timings.

#include <cstdio>
#include <string>

#include "oneq/negativity.hpp"
#include "oneq/parallel.hpp"
#include "oneq/pathsum.hpp"

using namespace oneq;

namespace {

template <typename F>
double timed(F&& f) {
    const double t0 = wall_time();
    f();
    return wall_time() - t0;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0,
                identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());

    {
        EnsembleStats s1, s2;
        const BipartiteSplit split = near_equal_split(6);
        const double ts = timed(
            [&] { s1 = random_ensemble_negativity(6, split, 40, RngSeed{3}, Exec::Serial); });
        const double tp = timed(
            [&] { s2 = random_ensemble_negativity(6, split, 40, RngSeed{3}, Exec::Parallel); });
        report("ensemble negativity n=6", ts, tp,
               s1.mean == s2.mean && s1.std_dev == s2.std_dev);
    }

    {
        MonteCarloStats s1, s2;
        std::vector<int> part{0, 1, 2, 3, 4};
        const BipartiteSplit split(part, 10);
        const double ts = timed(
            [&] { s1 = avg_pure_negativity_mc(10, split, 4000, RngSeed{5}, Exec::Serial); });
        const double tp = timed(
            [&] { s2 = avg_pure_negativity_mc(10, split, 4000, RngSeed{5}, Exec::Parallel); });
        report("pure-state negativity MC", ts, tp,
               s1.mean == s2.mean && s1.std_error == s2.std_error);
    }

    {
        GateCircuit circuit;
        circuit.num_qubits = 3;
        for (int r = 0; r < 4; ++r) {
            circuit.gates.push_back(Gate::h(0));
            circuit.gates.push_back(Gate::toffoli(0, 1, 2));
            circuit.gates.push_back(Gate::h(2));
            circuit.gates.push_back(Gate::h(1));
        }
        const auto polys = compile_toffoli_path_sum(circuit);
        std::printf("path enumeration: %d bits\n", polys.num_path_bits);
        Complex c1, c2;
        const double ts = timed([&] { c1 = exact_trace_by_counting(polys, Exec::Serial); });
        const double tp = timed([&] { c2 = exact_trace_by_counting(polys, Exec::Parallel); });
        report("path-sum counting", ts, tp, c1 == c2);

        TraceSampleReport r1, r2;
        const double ss = timed(
            [&] { r1 = sampled_trace(polys, 4000000, RngSeed{7}, Exec::Serial); });
        const double sp = timed(
            [&] { r2 = sampled_trace(polys, 4000000, RngSeed{7}, Exec::Parallel); });
        report("path-sum sampling", ss, sp,
               r1.estimate == r2.estimate && r1.empirical_variance == r2.empirical_variance);
    }

    return 0;
}

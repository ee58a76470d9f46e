// Compares the serial reference enumeration/DP kernels against their
// OpenMP-sharded counterparts on generated instances.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#ifdef LC_HAVE_OPENMP
#include <omp.h>
#endif

#include "lc/branch.hpp"
#include "lc/decomposition.hpp"
#include "lc/oracle.hpp"
#include "lc/reductions.hpp"
#include "lc/twdp.hpp"

using namespace lc;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double timed(F&& f) {
    double t0 = now_ms();
    f();
    return now_ms() - t0;
}

} // namespace

int main(int argc, char** argv) {
    int threads = 4;
    int rounds = 3;
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
        else if (a == "--rounds" && i + 1 < argc) rounds = std::atoi(argv[++i]);
        else if (a == "--quick") quick = true;
        else {
            std::cerr << "usage: bench_kernels [--threads N] [--rounds N] [--quick]\n";
            return 2;
        }
    }
#ifndef LC_HAVE_OPENMP
    std::cout << "built without OpenMP; parallel runs fall back to serial\n";
#endif
    std::cout << "kernel,instance,serial_ms,parallel_ms,threads,agree\n";

    // oracle enumeration: perturbed instances make the search exhaust
    for (int seed = 1; seed <= rounds; ++seed) {
        int n = quick ? 9 : 11;
        int k = quick ? 4 : 5;
        RandomInstance r = gen_random(n, k, seed, RandomMode::Perturbed);
        OracleOptions serial;
        serial.threads = 1;
        OracleOptions par = serial;
        par.threads = threads;
        SolveResult a, b;
        double ts = timed([&] { a = solve_bruteforce(r.inst, serial); });
        double tp = timed([&] { b = solve_bruteforce(r.inst, par); });
        std::cout << "bruteforce,random-n" << n << "-k" << k << "-s" << seed << ',' << ts << ','
                  << tp << ',' << threads << ',' << (a.yes == b.yes ? "yes" : "NO") << '\n';
    }

    // treewidth DP: join-heavy instances
    for (int seed = 1; seed <= rounds; ++seed) {
        int n = quick ? 10 : 13;
        int k = quick ? 3 : 4;
        RandomInstance r = gen_random(n, k, seed, RandomMode::Yes);
        NiceTreeDecomposition ntd =
            nicify(heuristic_decompose(union_graph(r.inst)), union_graph(r.inst));
        TwdpOptions serial;
        serial.threads = 1;
        TwdpOptions par = serial;
        par.threads = threads;
        SolveResult a, b;
        double ts = timed([&] { a = solve_twdp(r.inst, ntd, serial); });
        double tp = timed([&] { b = solve_twdp(r.inst, ntd, par); });
        std::cout << "twdp,random-n" << n << "-k" << k << "-s" << seed << ',' << ts << ',' << tp
                  << ',' << threads << ',' << (a.yes == b.yes ? "yes" : "NO") << '\n';
    }

    // branch root-splitting
    for (int seed = 1; seed <= rounds; ++seed) {
        int n = quick ? 10 : 12;
        int k = quick ? 4 : 6;
        RandomInstance r = gen_random(n, k, seed, RandomMode::Perturbed);
        BranchConfig serial;
        serial.threads = 1;
        BranchConfig par = serial;
        par.threads = threads;
        SolveResult a, b;
        double ts = timed([&] { a = solve_branch(r.inst, serial); });
        double tp = timed([&] { b = solve_branch(r.inst, par); });
        std::cout << "branch,random-n" << n << "-k" << k << "-s" << seed << ',' << ts << ',' << tp
                  << ',' << threads << ',' << (a.yes == b.yes ? "yes" : "NO") << '\n';
    }
    return 0;
}

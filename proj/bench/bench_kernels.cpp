// Timing comparison of the serial reference kernels against the OpenMP
// versions, with output checksums to confirm the two paths agree bitwise.
// Usage: bench_kernels [replicate_scale]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "maxid/brown_resnick.hpp"
#include "maxid/ideal_gas.hpp"
#include "maxid/parallel.hpp"

using namespace maxid;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

double checksum(const double* data, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
}

struct Timing {
    double serial = 0.0;
    double openmp = 0.0;
    bool identical = false;
};

void report(const char* name, const Timing& t) {
    std::printf("%-28s serial %8.3fs   openmp %8.3fs   speedup %5.2fx   %s\n", name,
                t.serial, t.openmp, t.serial / t.openmp,
                t.identical ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
    std::printf("threads available: %d (set OMP_NUM_THREADS to vary)\n\n",
                max_threads());

    {
        BrSimConfig cfg;
        cfg.grid = {0.0, 0.5, 1.0, 2.0, 4.0};
        cfg.replicates = static_cast<std::int64_t>(4000 * scale);
        cfg.margin = 8.0;
        cfg.seed = 1;
        const Variogram fbm = Variogram::power(1.0, 1.0);
        Timing t;
        double t0 = now_seconds();
        const BrSimResult serial = simulate_br_path(fbm, cfg, Exec::serial);
        t.serial = now_seconds() - t0;
        t0 = now_seconds();
        const BrSimResult parallel = simulate_br_path(fbm, cfg, Exec::openmp);
        t.openmp = now_seconds() - t0;
        t.identical = std::memcmp(serial.paths.data(), parallel.paths.data(),
                                  serial.paths.size() * sizeof(double)) == 0;
        std::printf("brown-resnick paths: checksum %.6e\n",
                    checksum(serial.paths.data(), serial.paths.size()));
        report("simulate_br_path", t);
    }

    {
        GasConfig cfg;
        cfg.dimension = 1;
        cfg.radius = 1.0;
        cfg.time_grid = {0.0, 0.25, 1.0, 4.0};
        cfg.replicates = static_cast<std::int64_t>(100000 * scale);
        cfg.seed = 2;
        Timing t;
        double t0 = now_seconds();
        const GasEstimate serial = simulate_gas(cfg, Exec::serial);
        t.serial = now_seconds() - t0;
        t0 = now_seconds();
        const GasEstimate parallel = simulate_gas(cfg, Exec::openmp);
        t.openmp = now_seconds() - t0;
        t.identical = serial.survival_hat == parallel.survival_hat &&
                      serial.tau.size() == parallel.tau.size();
        for (std::size_t i = 0; t.identical && i < serial.tau.size(); ++i)
            t.identical = serial.tau[i].tau_hat == parallel.tau[i].tau_hat;
        std::printf("\ngas survival: %.6f\n", serial.survival_hat);
        report("simulate_gas", t);
    }

    {
        Timing t;
        double t0 = now_seconds();
        const ExceptionalSetReport serial =
            exceptional_set_analysis(0.05, 13, 0.025, Exec::serial);
        t.serial = now_seconds() - t0;
        t0 = now_seconds();
        const ExceptionalSetReport parallel =
            exceptional_set_analysis(0.05, 13, 0.025, Exec::openmp);
        t.openmp = now_seconds() - t0;
        t.identical = serial.rows.size() == parallel.rows.size() &&
                      serial.density_estimate == parallel.density_estimate;
        for (std::size_t i = 0; t.identical && i < serial.rows.size(); ++i)
            t.identical =
                serial.rows[i].lambda_measured == parallel.rows[i].lambda_measured &&
                serial.rows[i].min_sigma2_off == parallel.rows[i].min_sigma2_off;
        std::printf("\nexceptional-set density estimate: %.6f\n",
                    serial.density_estimate);
        report("exceptional_set_analysis", t);
    }

    return 0;
}

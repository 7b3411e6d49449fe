#include "nsinf/fft.hpp"

#include "nsinf/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nsinf::fft {

namespace {

int g_threads = 1;
bool g_threads_init = false;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    Shape shape;
};

std::mutex g_mutex;
std::map<Shape, PlanPair>& plan_cache() {
    static std::map<Shape, PlanPair> cache;
    return cache;
}

// Plans are created against scratch buffers and executed on caller
// arrays via the new-array interface; FFTW_UNALIGNED keeps that legal
// for any allocation the caller uses.
const PlanPair& plans_for(const Shape& s) {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;

    if (!g_threads_init) {
        fftw_init_threads();
        g_threads_init = true;
    }
    fftw_plan_with_nthreads(s.real_size() >= (std::size_t(1) << 20) ? g_threads : 1);

    PlanPair p;
    p.shape = s;
    double* real = fftw_alloc_real(s.real_size());
    fftw_complex* spec = fftw_alloc_complex(s.spec_size());
    // dims ordered (z, y, x): x contiguous and halved
    p.fwd = fftw_plan_dft_r2c_3d(s.nz, s.ny, s.nx, real, spec,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_3d(s.nz, s.ny, s.nx, spec, real,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(real);
    fftw_free(spec);
    if (!p.fwd || !p.bwd) throw NumericalError("FFTW planning failed");
    return cache.emplace(s, p).first->second;
}

} // namespace

void set_threads(int n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_threads = n > 0 ? n : 1;
}

void forward(const Shape& shape, const double* real, std::complex<double>* spec) {
    const PlanPair& p = plans_for(shape);
    // r2c does not modify its input
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(real),
                         reinterpret_cast<fftw_complex*>(spec));
    const double scale = 1.0 / double(shape.real_size());
    const std::size_t n = shape.spec_size();
    for (std::size_t i = 0; i < n; ++i) spec[i] *= scale;
}

void backward(const Shape& shape, const std::complex<double>* spec, double* real) {
    const PlanPair& p = plans_for(shape);
    // multi-dim c2r destroys its input: run on a scratch copy
    thread_local std::vector<std::complex<double>> scratch;
    scratch.assign(spec, spec + shape.spec_size());
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(scratch.data()), real);
}

} // namespace nsinf::fft

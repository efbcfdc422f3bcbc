#include "phasecade/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace phasecade {

namespace {

// FFTW's planner is not thread safe; execution of a ready plan is. Plans are
// created with FFTW_UNALIGNED so fftw_execute_dft may run on any buffer, and
// cached per thread so execution never contends on a lock.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct plan_pair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    plan_pair() = default;
    plan_pair(const plan_pair&) = delete;
    plan_pair& operator=(const plan_pair&) = delete;
    plan_pair(plan_pair&& o) noexcept : fwd(o.fwd), bwd(o.bwd) {
        o.fwd = o.bwd = nullptr;
    }
    ~plan_pair() {
        if (!fwd && !bwd) return;  // moved-from; must not retake the held planner lock
        std::scoped_lock lk(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

const plan_pair& plans_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, plan_pair> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::scoped_lock lk(planner_mutex());
        cvec scratch(n);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        plan_pair pl;
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        pl.fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD, flags);
        pl.bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD, flags);
        if (!pl.fwd || !pl.bwd) throw std::runtime_error("fftw plan creation failed");
        it = cache.emplace(n, std::move(pl)).first;
    }
    return it->second;
}

}  // namespace

void fft_inplace(cvec& x) {
    if (x.empty()) return;
    auto* p = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(plans_for(x.size()).fwd, p, p);
}

void ifft_inplace(cvec& x) {
    if (x.empty()) return;
    auto* p = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(plans_for(x.size()).bwd, p, p);
    const double s = 1.0 / static_cast<double>(x.size());
    for (auto& v : x) v *= s;
}

cvec fft(cvec x) {
    fft_inplace(x);
    return x;
}

cvec ifft(cvec x) {
    ifft_inplace(x);
    return x;
}

std::vector<double> fft_frequencies(std::size_t n, double sample_spacing) {
    std::vector<double> f(n);
    const double step = 1.0 / (static_cast<double>(n) * sample_spacing);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>((n + 1) / 2);
    for (std::size_t k = 0; k < n; ++k) {
        auto sk = static_cast<std::ptrdiff_t>(k);
        if (sk >= half) sk -= static_cast<std::ptrdiff_t>(n);
        f[k] = static_cast<double>(sk) * step;
    }
    return f;
}

}  // namespace phasecade

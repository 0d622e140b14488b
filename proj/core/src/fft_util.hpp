#pragma once

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <mutex>

namespace solitrend::detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// RAII wrapper around an FFTW r2c/c2r plan pair for one grid size. Plan
// creation is serialized (the FFTW planner is not thread-safe); execution on
// distinct instances is safe.
class Fft {
public:
    explicit Fft(int n)
        : n_(n),
          real_(fftw_alloc_real(static_cast<size_t>(n))),
          spec_(fftw_alloc_complex(static_cast<size_t>(n) / 2 + 1)) {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fwd_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(real_);
        fftw_free(spec_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int n() const { return n_; }
    int nk() const { return n_ / 2 + 1; }

    // real -> normalized spectrum
    void forward(const double* in, std::complex<double>* out) {
        std::memcpy(real_, in, sizeof(double) * static_cast<size_t>(n_));
        fftw_execute(fwd_);
        const double scale = 1.0 / n_;
        for (int j = 0; j < nk(); ++j)
            out[j] = std::complex<double>(spec_[j][0], spec_[j][1]) * scale;
    }

    // normalized spectrum -> real
    void backward(const std::complex<double>* in, double* out) {
        for (int j = 0; j < nk(); ++j) {
            spec_[j][0] = in[j].real();
            spec_[j][1] = in[j].imag();
        }
        fftw_execute(bwd_);
        std::memcpy(out, real_, sizeof(double) * static_cast<size_t>(n_));
    }

private:
    int n_;
    double* real_;
    fftw_complex* spec_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

}  // namespace solitrend::detail

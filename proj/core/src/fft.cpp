#include "ramct/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace ramct {

namespace {

// FFTW plan creation is not thread-safe; execution of independent plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

ComplexGrid run_dft(const ComplexGrid& in, int rows, int cols, int sign) {
    if (static_cast<int>(in.size()) != rows * cols) {
        throw std::invalid_argument("fft2: grid size does not match rows*cols");
    }
    ComplexGrid out(in.size());
    // std::complex<double> is layout-compatible with fftw_complex.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(rows, cols, src, dst, sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

ComplexGrid fft2(const std::vector<double>& values, int rows, int cols) {
    ComplexGrid in(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) in[i] = values[i];
    return run_dft(in, rows, cols, FFTW_FORWARD);
}

ComplexGrid fft2(const ComplexGrid& values, int rows, int cols) {
    return run_dft(values, rows, cols, FFTW_FORWARD);
}

ComplexGrid ifft2(const ComplexGrid& values, int rows, int cols) {
    ComplexGrid out = run_dft(values, rows, cols, FFTW_BACKWARD);
    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<double> ifft2_real(const ComplexGrid& values, int rows, int cols) {
    ComplexGrid c = ifft2(values, rows, cols);
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

}  // namespace ramct

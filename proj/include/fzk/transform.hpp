// FFTW-backed transforms between spectral coefficients and physical samples.
//
// Conventions: synthesis u(x_j) = sum_k c(k) e^{i xi.x_j} with xi = (2pi/L)k, which on
// the sampling lattice is the plain inverse DFT; analysis divides the forward DFT by
// M^n. Plans use FFTW_ESTIMATE (deterministic across runs, unlike measured plans) and
// are cached per (n, M).
#ifndef FZK_TRANSFORM_HPP
#define FZK_TRANSFORM_HPP

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fzk/field.hpp"

namespace fzk {

class Transformer {
  public:
    Transformer(int n, int modes) : n_(n), modes_(modes) {
        std::size_t sz = 1;
        for (int i = 0; i < n; ++i) sz *= static_cast<std::size_t>(modes);
        size_ = sz;
        in_ = fftw_alloc_complex(sz);
        out_ = fftw_alloc_complex(sz);
        int dims[3] = {modes, modes, modes};
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd_ = fftw_plan_dft(n, dims, in_, out_, FFTW_FORWARD, flags);
        bwd_ = fftw_plan_dft(n, dims, in_, out_, FFTW_BACKWARD, flags);
        if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
    }
    ~Transformer() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(in_);
        fftw_free(out_);
    }
    Transformer(const Transformer&) = delete;
    Transformer& operator=(const Transformer&) = delete;

    // spectral -> physical (no scaling)
    void synthesize(const cplx* spec, cplx* phys) const {
        fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(spec)),
                         reinterpret_cast<fftw_complex*>(phys));
    }
    // physical -> spectral (1/M^n)
    void analyze(const cplx* phys, cplx* spec) const {
        fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(phys)),
                         reinterpret_cast<fftw_complex*>(spec));
        double inv = 1.0 / static_cast<double>(size_);
        for (std::size_t i = 0; i < size_; ++i) spec[i] *= inv;
    }

    std::size_t size() const { return size_; }

    static const Transformer& get(const SpectralGrid& g) {
        static std::map<std::pair<int, int>, std::unique_ptr<Transformer>> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(g.n, g.modes);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_unique<Transformer>(g.n, g.modes)).first;
        return *it->second;
    }

  private:
    int n_, modes_;
    std::size_t size_ = 0;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan fwd_, bwd_;
};

inline std::vector<cplx> to_physical(const Field& f) {
    std::vector<cplx> phys(f.grid.size());
    Transformer::get(f.grid).synthesize(f.coeffs.data(), phys.data());
    return phys;
}

inline Field field_from_physical(const SpectralGrid& g, const std::vector<cplx>& phys,
                                 bool real = false) {
    if (phys.size() != g.size()) throw std::invalid_argument("physical sample count mismatch");
    Field f(g, real);
    Transformer::get(g).analyze(phys.data(), f.coeffs.data());
    return f;
}

}  // namespace fzk

#endif

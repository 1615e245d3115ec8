#include "dcspec/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>

namespace dcspec {

namespace la {

namespace {
constexpr std::size_t kLeaf = 256;

template <class Leaf, class T>
T tree_sum(std::size_t lo, std::size_t hi, const Leaf& leaf) {
    if (hi - lo <= kLeaf) return leaf(lo, hi);
    const std::size_t mid = lo + (hi - lo) / 2;
    return tree_sum<Leaf, T>(lo, mid, leaf) + tree_sum<Leaf, T>(mid, hi, leaf);
}
}  // namespace

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    auto leaf = [&](std::size_t lo, std::size_t hi) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
            re += ar * br + ai * bi;
            im += ar * bi - ai * br;
        }
        return cplx(re, im);
    };
    return tree_sum<decltype(leaf), cplx>(0, a.size(), leaf);
}

double norm(std::span<const cplx> a) {
    auto leaf = [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
        return s;
    };
    return std::sqrt(tree_sum<decltype(leaf), double>(0, a.size(), leaf));
}

double pairwise_sum(std::span<const double> v) {
    auto leaf = [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    };
    return tree_sum<decltype(leaf), double>(0, v.size(), leaf);
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void scale(cplx alpha, std::span<cplx> x) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (auto& v : x) v = cplx(ar * v.real() - ai * v.imag(), ar * v.imag() + ai * v.real());
}

}  // namespace la

Field::Field(const Lattice& lat, int ncomp) : lat_(lat), ncomp_(ncomp) {
    lat_.validate();
    if (ncomp <= 0) throw std::invalid_argument("field: component count must be positive");
    sites_ = lat_.sites();
    data_.assign(sites_ * static_cast<std::size_t>(ncomp), cplx{});
}

double Field::weight() const { return std::pow(lat_.grid.h(), lat_.dims); }

Field& Field::operator+=(const Field& o) {
    if (!same_shape(o)) throw std::invalid_argument("field: shape mismatch in +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    if (!same_shape(o)) throw std::invalid_argument("field: shape mismatch in -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Field& Field::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

void Field::set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

cplx inner(const Field& a, const Field& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("inner: fields live on different grids or shapes");
    return a.weight() * la::dot(a.span(), b.span());
}

double norm(const Field& a) { return std::sqrt(a.weight()) * la::norm(a.span()); }

int thread_count() {
    static const int n = [] {
        const char* env = std::getenv("DCSPEC_THREADS");
        if (!env) return 1;
        const int v = std::atoi(env);
        return v > 0 ? v : 1;
    }();
    return n;
}

namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans;
    bool threadsReady = false;

    fftw_plan get(int dims, int n, int ncomp, int sign) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!threadsReady) {
            if (thread_count() > 1) {
                fftw_init_threads();
                fftw_plan_with_nthreads(thread_count());
            }
            threadsReady = true;
        }
        const auto key = std::make_tuple(dims, n, ncomp, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::vector<int> shape(dims, n);
        std::size_t total = static_cast<std::size_t>(ncomp);
        for (int d = 0; d < dims; ++d) total *= n;
        auto* scratch = fftw_alloc_complex(total);
        // FFTW_ESTIMATE keeps the chosen algorithm, and therefore the rounding,
        // identical from run to run.
        fftw_plan p = fftw_plan_many_dft(dims, shape.data(), ncomp, scratch, nullptr, ncomp, 1, scratch, nullptr,
                                         ncomp, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (!p) throw std::runtime_error("fft: planner failed");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(cplx* data, int dims, int n, int ncomp, int sign) {
    fftw_plan p = cache().get(dims, n, ncomp, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void fft_forward(cplx* data, int dims, int n, int ncomp) { run(data, dims, n, ncomp, FFTW_FORWARD); }

void fft_inverse(cplx* data, int dims, int n, int ncomp) {
    run(data, dims, n, ncomp, FFTW_BACKWARD);
    std::size_t total = static_cast<std::size_t>(ncomp);
    double s = 1.0;
    for (int d = 0; d < dims; ++d) {
        total *= n;
        s /= n;
    }
    for (std::size_t i = 0; i < total; ++i) data[i] *= s;
}

void fft_forward(Field& f) { fft_forward(f.data(), f.lattice().dims, f.grid().N, f.ncomp()); }
void fft_inverse(Field& f) { fft_inverse(f.data(), f.lattice().dims, f.grid().N, f.ncomp()); }

Field random_field(const Lattice& lat, int ncomp, std::uint64_t seed) {
    Field f(lat, ncomp);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (auto& v : f.vector()) {
        const double re = nd(rng);
        v = cplx(re, nd(rng));
    }
    return f;
}

Field random_band_limited(const Lattice& lat, int ncomp, std::uint64_t seed, int maxFreq) {
    Field f(lat, ncomp);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const GridSpec& g = lat.grid;
    std::vector<int> idx(lat.dims);
    for (std::size_t s = 0; s < f.sites(); ++s) {
        lat.unravel(s, idx.data());
        bool inside = true;
        for (int a = 0; a < lat.dims; ++a)
            if (g.is_nyquist(idx[a]) || std::abs(g.frequency(idx[a])) > maxFreq) inside = false;
        for (int c = 0; c < ncomp; ++c) {
            const double re = nd(rng);
            const double im = nd(rng);
            if (inside) f.at(s, c) = cplx(re, im);
        }
    }
    fft_inverse(f);
    return f;
}

std::vector<double> momentum_squared(const Lattice& lat) {
    std::vector<double> out(lat.sites());
    std::vector<int> idx(lat.dims);
    for (std::size_t s = 0; s < out.size(); ++s) {
        lat.unravel(s, idx.data());
        double p2 = 0.0;
        for (int a = 0; a < lat.dims; ++a) {
            const double p = lat.grid.momentum(idx[a]);
            p2 += p * p;
        }
        out[s] = p2;
    }
    return out;
}

void fourier_multiply(Field& f, const std::vector<double>& mult) {
    if (mult.size() != f.sites()) throw std::invalid_argument("fourier_multiply: multiplier size mismatch");
    fft_forward(f);
    for (std::size_t s = 0; s < f.sites(); ++s)
        for (int c = 0; c < f.ncomp(); ++c) f.at(s, c) *= mult[s];
    fft_inverse(f);
}

}  // namespace dcspec

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "dcspec/grid.hpp"

namespace dcspec {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

namespace la {

// Conjugate-linear in the first argument. Summation uses a fixed blocked
// pairwise tree so the result depends only on the data.
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> a);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void scale(cplx alpha, std::span<cplx> x);
double pairwise_sum(std::span<const double> v);

}  // namespace la

// Complex multi-component field on a periodic lattice. Storage is
// site-major with the component index fastest.
class Field {
public:
    Field() = default;
    Field(const Lattice& lat, int ncomp);

    const Lattice& lattice() const { return lat_; }
    const GridSpec& grid() const { return lat_.grid; }
    int ncomp() const { return ncomp_; }
    std::size_t sites() const { return sites_; }
    std::size_t size() const { return data_.size(); }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::span<cplx> span() { return data_; }
    std::span<const cplx> span() const { return data_; }
    CVec& vector() { return data_; }
    const CVec& vector() const { return data_; }

    cplx& at(std::size_t site, int c) { return data_[site * ncomp_ + c]; }
    const cplx& at(std::size_t site, int c) const { return data_[site * ncomp_ + c]; }

    // Quadrature weight h^dims of the uniform periodic rule.
    double weight() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(cplx s);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(cplx s, Field a) { return a *= s; }

    void set_zero();
    bool same_shape(const Field& o) const { return lat_ == o.lat_ && ncomp_ == o.ncomp_; }

private:
    Lattice lat_;
    int ncomp_ = 0;
    std::size_t sites_ = 0;
    CVec data_;
};

// Weighted L2 inner product, conjugate-linear in the first argument.
cplx inner(const Field& a, const Field& b);
double norm(const Field& a);

// Random field whose Fourier coefficients are nonzero only for integer
// frequencies |q| <= maxFreq on every axis.
Field random_band_limited(const Lattice& lat, int ncomp, std::uint64_t seed, int maxFreq);
// Random field with independent normal entries at every site.
Field random_field(const Lattice& lat, int ncomp, std::uint64_t seed);

// In-place transforms over all lattice axes, batched over components.
// forward is unnormalized; inverse includes the 1/N^d factor.
void fft_forward(Field& f);
void fft_inverse(Field& f);
void fft_forward(cplx* data, int dims, int n, int ncomp);
void fft_inverse(cplx* data, int dims, int n, int ncomp);

// Worker threads for the transform library, read once from DCSPEC_THREADS
// (default 1).
int thread_count();

// Sum over axes of GridSpec::momentum^2, indexed like the lattice sites in
// FFT order.
std::vector<double> momentum_squared(const Lattice& lat);

// f -> F^-1 diag(mult) F f with one real multiplier per Fourier mode.
void fourier_multiply(Field& f, const std::vector<double>& mult);

}  // namespace dcspec

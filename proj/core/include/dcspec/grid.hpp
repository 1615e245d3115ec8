#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dcspec {

enum class RegularizationKind { Bn, Cap };

// Periodic box [-L/2, L/2)^d with N points per axis.
struct GridSpec {
    int N = 8;
    double L = 10.0;
    bool offset = true;        // sample at (j + 1/2) h - L/2
    bool zeroNyquist = false;  // use a zero derivative symbol on the q = -N/2 mode
    RegularizationKind regularization = RegularizationKind::Bn;

    double h() const { return L / N; }
    double coord(int j) const { return (j + (offset ? 0.5 : 0.0)) * h() - 0.5 * L; }
    // Signed integer frequency of FFT-ordered index q.
    int frequency(int q) const { return q < N / 2 ? q : q - N; }
    bool is_nyquist(int q) const { return q == N / 2; }
    // Symbol of -i d/dx on FFT-ordered index q.
    double momentum(int q) const;
    double momentum_unit() const;  // 2 pi / L

    void validate() const;  // throws std::invalid_argument
    bool operator==(const GridSpec&) const = default;
};

// A GridSpec together with the number of spatial axes (3 or 6).
struct Lattice {
    GridSpec grid;
    int dims = 3;

    std::size_t sites() const;
    void validate() const;
    // Row-major multi-index with axis 0 slowest.
    void unravel(std::size_t site, int* idx) const;
    std::size_t ravel(const int* idx) const;
    bool operator==(const Lattice&) const = default;
};

std::string describe(const GridSpec& g);

}  // namespace dcspec

#include "dcspec/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dcspec {

double GridSpec::momentum_unit() const { return 2.0 * std::numbers::pi / L; }

double GridSpec::momentum(int q) const {
    if (zeroNyquist && is_nyquist(q)) return 0.0;
    return momentum_unit() * frequency(q);
}

void GridSpec::validate() const {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("grid: points per axis must be even and >= 2");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid: box length must be positive");
}

std::size_t Lattice::sites() const {
    std::size_t s = 1;
    for (int a = 0; a < dims; ++a) s *= static_cast<std::size_t>(grid.N);
    return s;
}

void Lattice::validate() const {
    grid.validate();
    if (dims != 3 && dims != 6) throw std::invalid_argument("lattice: dimension must be 3 or 6");
}

void Lattice::unravel(std::size_t site, int* idx) const {
    for (int a = dims - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(site % grid.N);
        site /= grid.N;
    }
}

std::size_t Lattice::ravel(const int* idx) const {
    std::size_t s = 0;
    for (int a = 0; a < dims; ++a) s = s * grid.N + idx[a];
    return s;
}

std::string describe(const GridSpec& g) {
    std::ostringstream os;
    os << "N=" << g.N << " L=" << g.L << (g.offset ? " offset" : "") << (g.zeroNyquist ? " zero-nyquist" : "");
    return os.str();
}

}  // namespace dcspec

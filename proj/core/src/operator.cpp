#include "dcspec/operator.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "dcspec/kron.hpp"

namespace dcspec {

SpinPair SpinPair::left(const Eigen::Matrix2cd& b) { return {Eigen::Matrix2cd::Identity(), b}; }

SpinPair SpinPair::right_transpose(const Eigen::Matrix2cd& a) { return {a, Eigen::Matrix2cd::Identity()}; }

Eigen::Matrix4cd SpinPair::matrix() const { return kron(a, b); }

Eigen::MatrixXcd OperatorTerm::component_matrix() const {
    const Eigen::MatrixXcd s = spin ? Eigen::MatrixXcd(spin->matrix()) : Eigen::MatrixXcd::Identity(4, 4);
    return coefficient * kron(routing.cast<cplx>(), s);
}

StructuredOperator::StructuredOperator(const Lattice& lat, int blocks) : lat_(lat), blocks_(blocks) {
    lat_.validate();
    if (blocks < 1 || blocks > 4) throw std::invalid_argument("operator: block count must be 1..4");
    derivative_.assign(lat_.dims, {});
}

void StructuredOperator::add_term(OperatorTerm t) {
    if (t.routing.size() == 0) t.routing = Eigen::MatrixXd::Identity(blocks_, blocks_);
    if (t.routing.rows() != blocks_ || t.routing.cols() != blocks_)
        throw std::invalid_argument("operator: routing table has the wrong size");
    if (t.derivativeAxis >= lat_.dims) throw std::invalid_argument("operator: derivative axis out of range");
    if (t.potential && t.potential->size() != lat_.sites())
        throw std::invalid_argument("operator: potential sampled on a different lattice");
    if (t.derivativeAxis >= 0 && t.potential)
        throw std::invalid_argument("operator: a term cannot carry both a derivative and a potential");
    terms_.push_back(std::move(t));
    compile();
}

void StructuredOperator::add_constant(double c, const std::string& label) {
    OperatorTerm t;
    t.coefficient = c;
    t.label = label;
    add_term(std::move(t));
}

std::vector<StructuredOperator::Entry> StructuredOperator::sparsify(const Eigen::MatrixXcd& m) {
    std::vector<Entry> out;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m(r, c) != cplx{}) out.push_back({r, c, m(r, c)});
    return out;
}

void StructuredOperator::compile() {
    const int nc = ncomp();
    std::vector<Eigen::MatrixXcd> deriv(lat_.dims, Eigen::MatrixXcd::Zero(nc, nc));
    Eigen::MatrixXcd cst = Eigen::MatrixXcd::Zero(nc, nc);
    std::vector<std::pair<ScalarFieldPtr, Eigen::MatrixXcd>> pots;
    for (const auto& t : terms_) {
        const Eigen::MatrixXcd m = t.component_matrix();
        if (t.derivativeAxis >= 0) {
            deriv[t.derivativeAxis] += m;
        } else if (t.potential) {
            auto it = std::find_if(pots.begin(), pots.end(), [&](const auto& p) { return p.first == t.potential; });
            if (it == pots.end())
                pots.emplace_back(t.potential, m);
            else
                it->second += m;
        } else {
            cst += m;
        }
    }
    hasDerivative_ = false;
    for (int a = 0; a < lat_.dims; ++a) {
        derivative_[a] = sparsify(deriv[a]);
        hasDerivative_ = hasDerivative_ || !derivative_[a].empty();
    }
    constant_ = sparsify(cst);
    potentials_.clear();
    for (auto& [f, m] : pots) potentials_.push_back({f, sparsify(m)});
}

void StructuredOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t n = dim();
    if (in.size() != n || out.size() != n) throw std::invalid_argument("operator: vector size mismatch");
    const int nc = ncomp();
    const std::size_t sites = lat_.sites();
    const GridSpec& g = lat_.grid;

    if (hasDerivative_) {
        CVec buf(in.begin(), in.end());
        fft_forward(buf.data(), lat_.dims, g.N, nc);
        std::fill(out.begin(), out.end(), cplx{});
        std::vector<double> k(g.N);
        for (int q = 0; q < g.N; ++q) k[q] = g.momentum(q);
        int idx[6];
        for (std::size_t s = 0; s < sites; ++s) {
            lat_.unravel(s, idx);
            const cplx* x = buf.data() + s * nc;
            cplx* y = out.data() + s * nc;
            for (int a = 0; a < lat_.dims; ++a) {
                const double ka = k[idx[a]];
                if (ka == 0.0) continue;
                for (const Entry& e : derivative_[a]) y[e.row] += ka * e.value * x[e.col];
            }
        }
        fft_inverse(out.data(), lat_.dims, g.N, nc);
    } else {
        std::fill(out.begin(), out.end(), cplx{});
    }

    if (!constant_.empty() || !potentials_.empty()) {
        for (std::size_t s = 0; s < sites; ++s) {
            const cplx* x = in.data() + s * nc;
            cplx* y = out.data() + s * nc;
            for (const Entry& e : constant_) y[e.row] += e.value * x[e.col];
            for (const auto& p : potentials_) {
                const double v = (*p.field)[s];
                if (v == 0.0) continue;
                for (const Entry& e : p.entries) y[e.row] += v * e.value * x[e.col];
            }
        }
    }
}

void StructuredOperator::apply(const Field& in, Field& out) const {
    if (in.lattice() != lat_ || in.ncomp() != ncomp()) throw std::invalid_argument("operator: field shape mismatch");
    if (!out.same_shape(in)) out = make_field();
    if (&in == &out) {
        Field tmp = make_field();
        apply(in.span(), tmp.span());
        out = std::move(tmp);
        return;
    }
    apply(in.span(), out.span());
}

Field StructuredOperator::apply(const Field& in) const {
    Field out = make_field();
    apply(in, out);
    return out;
}

Eigen::MatrixXcd spectral_derivative_matrix(const GridSpec& g) {
    const int n = g.N;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            cplx s{};
            for (int q = 0; q < n; ++q) {
                const double phase = 2.0 * std::numbers::pi * g.frequency(q) * (j - l) / n;
                s += g.momentum(q) * cplx(std::cos(phase), std::sin(phase));
            }
            d(j, l) = s / static_cast<double>(n);
        }
    return d;
}

Eigen::MatrixXcd StructuredOperator::build_dense(std::size_t maxDim) const {
    const std::size_t n = dim();
    if (n > maxDim) throw std::length_error("build_dense: flat dimension exceeds the dense limit");
    const std::size_t sites = lat_.sites();
    const Eigen::MatrixXcd d1 = spectral_derivative_matrix(lat_.grid);
    const Eigen::MatrixXcd id1 = Eigen::MatrixXcd::Identity(lat_.grid.N, lat_.grid.N);

    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& t : terms_) {
        Eigen::MatrixXcd siteMat;
        if (t.derivativeAxis >= 0) {
            siteMat = Eigen::MatrixXcd::Identity(1, 1);
            for (int a = 0; a < lat_.dims; ++a) siteMat = kron(siteMat, a == t.derivativeAxis ? d1 : id1);
        } else {
            siteMat = Eigen::MatrixXcd::Identity(sites, sites);
            if (t.potential)
                for (std::size_t s = 0; s < sites; ++s) siteMat(s, s) = (*t.potential)[s];
        }
        dense += kron(siteMat, t.component_matrix());
    }
    return dense;
}

}  // namespace dcspec

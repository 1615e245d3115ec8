#include "dcspec/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dcspec {

bool EigResult::all_converged() const {
    return !converged.empty() && std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

namespace {

CVec random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CVec v(n);
    for (auto& x : v) {
        const double re = nd(rng);
        x = cplx(re, nd(rng));
    }
    return v;
}

// Two passes of classical Gram-Schmidt against basis[0..count).
void orthogonalize(const std::vector<CVec>& basis, std::size_t count, CVec& w, Eigen::VectorXcd* coeffs) {
    if (coeffs) *coeffs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(count));
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < count; ++i) {
            const cplx c = la::dot(basis[i], w);
            la::axpy(-c, basis[i], w);
            if (coeffs) (*coeffs)[static_cast<Eigen::Index>(i)] += c;
        }
    }
}

// Orthonormalizes a random vector against the basis and appends it.
bool append_random(std::vector<CVec>& basis, std::size_t n, std::mt19937_64& rng) {
    if (basis.size() >= n) return false;
    for (int attempt = 0; attempt < 3; ++attempt) {
        CVec r = random_vector(n, rng);
        const double before = la::norm(r);
        orthogonalize(basis, basis.size(), r, nullptr);
        const double after = la::norm(r);
        if (after > 1e-8 * before) {
            la::scale(1.0 / after, r);
            basis.push_back(std::move(r));
            return true;
        }
    }
    return false;
}

CVec combine(const std::vector<CVec>& basis, std::size_t count, const Eigen::VectorXcd& y) {
    CVec out(basis.front().size(), cplx{});
    for (std::size_t j = 0; j < count; ++j) la::axpy(y[static_cast<Eigen::Index>(j)], basis[j], out);
    return out;
}

}  // namespace

double hermiticity_defect(const ApplyFn& apply, std::size_t n, std::uint64_t seed, int pairs) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    CVec ox(n), oy(n);
    for (int p = 0; p < pairs; ++p) {
        const CVec x = random_vector(n, rng);
        const CVec y = random_vector(n, rng);
        apply(x, ox);
        apply(y, oy);
        const cplx a = la::dot(y, ox);  // <O x, y> up to conjugation convention
        const cplx b = la::dot(oy, x);  // <x, O y>
        worst = std::max(worst, std::abs(a - b) / (la::norm(x) * la::norm(y)));
    }
    return worst;
}

EigResult lanczos(const ApplyFn& apply, std::size_t n, const LanczosOptions& opts) {
    if (n == 0) throw std::invalid_argument("lanczos: empty operator");
    if (opts.howMany < 1 || static_cast<std::size_t>(opts.howMany) > n)
        throw std::invalid_argument("lanczos: howMany must lie in [1, dim]");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("lanczos: tolerance must be positive");
    if (opts.blockSize < 1) throw std::invalid_argument("lanczos: block size must be positive");

    if (opts.checkHermitian) {
        const double d = hermiticity_defect(apply, n, opts.seed ^ 0x5bd1e995ULL, 3);
        if (d > 1e-8) throw NonHermitianError("lanczos: operator failed the Hermiticity spot check");
    }

    const bool nearest = opts.target == EigTarget::Nearest;
    CVec scratch(n);
    auto iterated = [&](std::span<const cplx> x, std::span<cplx> y) {
        switch (opts.target) {
            case EigTarget::Lowest: apply(x, y); break;
            case EigTarget::Highest:
                apply(x, y);
                for (auto& v : y) v = -v;
                break;
            case EigTarget::Nearest:
                apply(x, scratch);
                for (std::size_t i = 0; i < n; ++i) scratch[i] -= opts.sigma * x[i];
                apply(scratch, y);
                for (std::size_t i = 0; i < n; ++i) y[i] -= opts.sigma * scratch[i];
                break;
        }
    };

    const std::size_t want = std::min<std::size_t>(n, opts.howMany + (nearest ? 2 : 0));
    const std::size_t p = std::min<std::size_t>(opts.blockSize, n);
    std::size_t mMax = opts.maxBasis > 0 ? static_cast<std::size_t>(opts.maxBasis)
                                         : std::max<std::size_t>(2 * (want + p) + 20, 40);
    mMax = std::max(mMax, want + 2 * p + 8);
    mMax = std::min(mMax, n);
    const std::size_t keep = std::max(want, std::min(want + std::max<std::size_t>(8, p), mMax > 2 * p ? mMax - 2 * p : 0));

    std::mt19937_64 rng(opts.seed);
    std::vector<CVec> V;
    V.reserve(mMax + p);
    for (const CVec& v0 : opts.start) {
        if (V.size() >= p) break;
        if (v0.size() != n) throw std::invalid_argument("lanczos: start vector has the wrong length");
        CVec c = v0;
        const double before = la::norm(c);
        orthogonalize(V, V.size(), c, nullptr);
        const double after = la::norm(c);
        if (after > 1e-8 * before) {
            la::scale(1.0 / after, c);
            V.push_back(std::move(c));
        }
    }
    while (V.size() < p)
        if (!append_random(V, n, rng)) break;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(mMax + p + 1, mMax + p + 1);
    std::size_t processed = 0;

    EigResult res;
    double tolScale = 1.0;
    bool exhausted = false;

    Eigen::VectorXd theta;
    Eigen::MatrixXcd Y;
    auto ritz = [&](std::size_t s) {
        Eigen::MatrixXcd hs = H.topLeftCorner(s, s);
        hs = 0.5 * (hs + hs.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hs);
        theta = es.eigenvalues();
        Y = es.eigenvectors();
    };

    auto finalize = [&]() -> bool {
        const std::size_t s = processed;
        const std::size_t w = std::min(want, s);
        std::vector<CVec> X, OX;
        for (std::size_t i = 0; i < w; ++i) {
            X.push_back(combine(V, s, Y.col(static_cast<Eigen::Index>(i))));
            CVec ox(n);
            apply(X.back(), ox);
            OX.push_back(std::move(ox));
        }
        // Rayleigh-Ritz on O over span(X).
        Eigen::MatrixXcd G(w, w);
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j) G(i, j) = la::dot(X[i], OX[j]);
        G = 0.5 * (G + G.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        std::vector<std::size_t> order(w);
        std::iota(order.begin(), order.end(), 0);
        const Eigen::VectorXd& ev = es.eigenvalues();
        if (nearest)
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return std::abs(ev[a] - opts.sigma) < std::abs(ev[b] - opts.sigma);
            });
        else if (opts.target == EigTarget::Highest)
            std::reverse(order.begin(), order.end());
        const std::size_t take = std::min<std::size_t>(opts.howMany, w);
        order.resize(take);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ev[a] < ev[b]; });

        res.ritzValues.clear();
        res.residualNorms.clear();
        res.converged.clear();
        res.vectors.clear();
        bool ok = true;
        for (std::size_t idx : order) {
            const Eigen::VectorXcd z = es.eigenvectors().col(static_cast<Eigen::Index>(idx));
            CVec x(n, cplx{}), ox(n, cplx{});
            for (std::size_t j = 0; j < w; ++j) {
                la::axpy(z[static_cast<Eigen::Index>(j)], X[j], x);
                la::axpy(z[static_cast<Eigen::Index>(j)], OX[j], ox);
            }
            const double nx = la::norm(x);
            la::scale(1.0 / nx, x);
            la::scale(1.0 / nx, ox);
            const double th = la::dot(x, ox).real();
            CVec r = ox;
            la::axpy(-th, x, r);
            const double rn = la::norm(r);
            res.ritzValues.push_back(th);
            res.residualNorms.push_back(rn);
            res.converged.push_back(rn <= opts.tol);
            ok = ok && rn <= opts.tol;
            if (opts.keepVectors) res.vectors.push_back(std::move(x));
        }
        return ok && res.ritzValues.size() == static_cast<std::size_t>(opts.howMany);
    };

    while (true) {
        const std::size_t nb = V.size() - processed;
        if (nb == 0) {
            exhausted = true;
        } else if (V.size() + nb > mMax && mMax < n && processed > keep) {
            // Thick restart: keep the best Ritz vectors and the unprocessed block.
            ritz(processed);
            const std::size_t s = processed;
            const Eigen::MatrixXcd C =
                H.block(s, 0, nb, s) * Y.leftCols(static_cast<Eigen::Index>(keep));
            std::vector<CVec> next;
            next.reserve(mMax + p);
            for (std::size_t i = 0; i < keep; ++i) next.push_back(combine(V, s, Y.col(static_cast<Eigen::Index>(i))));
            for (std::size_t j = s; j < V.size(); ++j) next.push_back(std::move(V[j]));
            V = std::move(next);
            H.setZero();
            for (std::size_t i = 0; i < keep; ++i) {
                H(i, i) = theta[static_cast<Eigen::Index>(i)];
                for (std::size_t l = 0; l < nb; ++l) {
                    H(keep + l, i) = C(l, i);
                    H(i, keep + l) = std::conj(C(l, i));
                }
            }
            processed = keep;
            ++res.restarts;
            continue;
        } else {
            // Expand by the images of the unprocessed block.
            const std::size_t nvOld = V.size();
            std::vector<CVec> W(nb, CVec(n));
            std::vector<double> scale(nb);
            for (std::size_t b = 0; b < nb; ++b) {
                iterated(V[processed + b], W[b]);
                scale[b] = la::norm(W[b]);
                ++res.iterations;
            }
            for (std::size_t b = 0; b < nb; ++b) {
                const std::size_t j = processed + b;
                Eigen::VectorXcd c;
                orthogonalize(V, nvOld, W[b], &c);
                for (std::size_t i = 0; i < nvOld; ++i) H(i, j) = c[static_cast<Eigen::Index>(i)];
            }
            for (std::size_t b = 0; b < nb; ++b) {
                const std::size_t j = processed + b;
                Eigen::VectorXcd c;
                const std::size_t before = V.size();
                orthogonalize(V, before, W[b], &c);
                for (std::size_t i = nvOld; i < before; ++i) H(i, j) += c[static_cast<Eigen::Index>(i)];
                const double r = la::norm(W[b]);
                if (r > 1e-10 * std::max(scale[b], 1e-300) && V.size() < n) {
                    la::scale(1.0 / r, W[b]);
                    V.push_back(std::move(W[b]));
                    H(V.size() - 1, j) = r;
                }
            }
            // Keep the block width when residual directions were lost.
            while (V.size() - nvOld < nb && V.size() < n)
                if (!append_random(V, n, rng)) break;
            // Mirror the new columns; inside the block both triangles were
            // computed, so average them.
            for (std::size_t j = processed; j < nvOld; ++j) {
                H(j, j) = H(j, j).real();
                for (std::size_t i = 0; i < V.size(); ++i)
                    if (i < processed || i >= nvOld) H(j, i) = std::conj(H(i, j));
            }
            for (std::size_t a = processed; a < nvOld; ++a)
                for (std::size_t b = a + 1; b < nvOld; ++b) {
                    const cplx avg = 0.5 * (H(a, b) + std::conj(H(b, a)));
                    H(a, b) = avg;
                    H(b, a) = std::conj(avg);
                }
            processed = nvOld;
        }

        ritz(processed);
        res.lowestRitzHistory.push_back(theta[0]);

        const std::size_t s = processed;
        const std::size_t nbNow = V.size() - processed;
        const std::size_t w = std::min(want, s);
        bool estimatesOk = w == want;
        if (estimatesOk && !exhausted) {
            for (std::size_t i = 0; i < w; ++i) {
                double est = 0.0;
                if (nbNow > 0) est = (H.block(s, 0, nbNow, s) * Y.col(static_cast<Eigen::Index>(i))).norm();
                double t = opts.tol * tolScale;
                if (nearest) t *= std::max(2.0 * std::sqrt(std::max(theta[static_cast<Eigen::Index>(i)], 0.0)), 1e-3);
                if (est > t) estimatesOk = false;
            }
        }
        const bool outOfBudget = res.iterations >= opts.maxIter;
        if (estimatesOk || exhausted || outOfBudget) {
            const bool ok = finalize();
            if (ok || exhausted || outOfBudget) break;
            tolScale = std::max(tolScale * 0.1, 1e-6);
        }
    }
    return res;
}

namespace {

// Basis column with its images under B (= O - sigma, or +-O) and A (= B^2
// for the folded target, B otherwise).
struct Column {
    CVec v, bv, av;
};

}  // namespace

EigResult lobpcg(const ApplyFn& apply, const ApplyFn& precond, std::size_t n, const LanczosOptions& opts) {
    if (n == 0) throw std::invalid_argument("lobpcg: empty operator");
    if (opts.howMany < 1 || static_cast<std::size_t>(opts.howMany) > n)
        throw std::invalid_argument("lobpcg: howMany must lie in [1, dim]");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("lobpcg: tolerance must be positive");
    if (opts.checkHermitian) {
        const double d = hermiticity_defect(apply, n, opts.seed ^ 0x5bd1e995ULL, 3);
        if (d > 1e-8) throw NonHermitianError("lobpcg: operator failed the Hermiticity spot check");
    }
    const bool folded = opts.target == EigTarget::Nearest;
    const double sign = opts.target == EigTarget::Highest ? -1.0 : 1.0;
    const double shift = folded ? opts.sigma : 0.0;

    EigResult res;
    auto images = [&](Column& c) {
        c.bv.assign(n, cplx{});
        apply(c.v, c.bv);
        for (std::size_t i = 0; i < n; ++i) c.bv[i] = sign * (c.bv[i] - shift * c.v[i]);
        if (folded) {
            c.av.assign(n, cplx{});
            apply(c.bv, c.av);
            for (std::size_t i = 0; i < n; ++i) c.av[i] -= shift * c.bv[i];
        } else {
            c.av = c.bv;
        }
        ++res.iterations;
    };

    // CGS2 against `basis`; images are carried along when `tracked`, and
    // recomputed when the column lost most of its norm.
    auto append = [&](std::vector<Column>& basis, Column c, bool tracked) {
        const double before = la::norm(c.v);
        if (!(before > 0.0)) return false;
        for (int pass = 0; pass < 2; ++pass)
            for (const Column& q : basis) {
                const cplx a = la::dot(q.v, c.v);
                la::axpy(-a, q.v, c.v);
                if (tracked) {
                    la::axpy(-a, q.bv, c.bv);
                    la::axpy(-a, q.av, c.av);
                }
            }
        const double after = la::norm(c.v);
        if (after <= 1e-10 * before) return false;
        la::scale(1.0 / after, c.v);
        if (tracked && after > 1e-3 * before) {
            la::scale(1.0 / after, c.bv);
            la::scale(1.0 / after, c.av);
        } else {
            images(c);
        }
        basis.push_back(std::move(c));
        return true;
    };

    const std::size_t nb = std::min<std::size_t>(n, opts.howMany + std::max(2, opts.blockSize));
    std::mt19937_64 rng(opts.seed);
    std::vector<Column> X, P;
    for (const CVec& v0 : opts.start) {
        if (X.size() >= nb) break;
        if (v0.size() != n) throw std::invalid_argument("lobpcg: start vector has the wrong length");
        Column c;
        c.v = v0;
        append(X, std::move(c), false);
    }
    while (X.size() < nb) {
        Column c;
        c.v = random_vector(n, rng);
        if (!append(X, std::move(c), false) && X.size() >= n) break;
    }

    auto combine_cols = [&](const std::vector<Column>& S, const Eigen::MatrixXcd& Y, Eigen::Index col,
                            std::size_t from) {
        Column out{CVec(n, cplx{}), CVec(n, cplx{}), CVec(n, cplx{})};
        for (std::size_t j = from; j < S.size(); ++j) {
            const cplx y = Y(static_cast<Eigen::Index>(j), col);
            la::axpy(y, S[j].v, out.v);
            la::axpy(y, S[j].bv, out.bv);
            la::axpy(y, S[j].av, out.av);
        }
        return out;
    };

    // Rayleigh-Ritz for B inside span(X); returns values and coefficients
    // ordered by |rho| (folded) or ascending.
    struct Inner {
        Eigen::VectorXd rho;
        Eigen::MatrixXcd Z;
        std::vector<double> residual;
    };
    auto inner_rr = [&]() {
        const auto k = static_cast<Eigen::Index>(X.size());
        Eigen::MatrixXcd G(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) G(i, j) = la::dot(X[i].v, X[j].bv);
        G = 0.5 * (G + G.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        const Eigen::VectorXd ev = es.eigenvalues();
        if (folded)
            std::stable_sort(order.begin(), order.end(),
                             [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev[a]) < std::abs(ev[b]); });
        Inner out;
        out.rho.resize(k);
        out.Z.resize(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            out.rho[i] = ev[order[static_cast<std::size_t>(i)]];
            out.Z.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < opts.howMany && i < k; ++i) {
            CVec x(n, cplx{}), bx(n, cplx{});
            for (Eigen::Index j = 0; j < k; ++j) {
                la::axpy(out.Z(j, i), X[static_cast<std::size_t>(j)].v, x);
                la::axpy(out.Z(j, i), X[static_cast<std::size_t>(j)].bv, bx);
            }
            la::axpy(-out.rho[i], x, bx);
            out.residual.push_back(la::norm(bx));
        }
        return out;
    };

    Eigen::VectorXd theta;
    auto rayleigh_ritz = [&](const std::vector<Column>& S, std::size_t xCount) {
        const auto k = static_cast<Eigen::Index>(S.size());
        Eigen::MatrixXcd G(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                G(i, j) = la::dot(S[static_cast<std::size_t>(i)].v, S[static_cast<std::size_t>(j)].av);
        G = 0.5 * (G + G.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        const Eigen::MatrixXcd Y = es.eigenvectors();
        const std::size_t keepCols = std::min<std::size_t>(nb, S.size());
        theta = es.eigenvalues().head(static_cast<Eigen::Index>(keepCols));
        std::vector<Column> nx, np;
        for (std::size_t i = 0; i < keepCols; ++i) {
            nx.push_back(combine_cols(S, Y, static_cast<Eigen::Index>(i), 0));
            if (S.size() > xCount) np.push_back(combine_cols(S, Y, static_cast<Eigen::Index>(i), xCount));
        }
        X = std::move(nx);
        P = std::move(np);
    };

    rayleigh_ritz(X, X.size());
    P.clear();
    while (true) {
        const Inner in = inner_rr();
        res.lowestRitzHistory.push_back(theta[0]);
        bool ok = true;
        for (double r : in.residual) ok = ok && r <= opts.tol;
        if (ok || res.iterations >= opts.maxIter || X.size() >= n) break;

        std::vector<Column> S = X;
        const std::size_t xCount = S.size();
        for (Column& p : P) append(S, std::move(p), true);
        for (std::size_t i = 0; i < X.size(); ++i) {
            Column w;
            w.v = X[i].av;
            la::axpy(-theta[static_cast<Eigen::Index>(i)], X[i].v, w.v);
            CVec t(n, cplx{});
            precond(w.v, t);
            w.v = std::move(t);
            append(S, std::move(w), false);
        }
        if (S.size() == xCount) break;
        rayleigh_ritz(S, xCount);
    }

    // Final Rayleigh-Ritz on B over span(X) and true residuals for O.
    const Inner in = inner_rr();
    std::vector<std::pair<double, CVec>> picked;
    for (int i = 0; i < opts.howMany && i < static_cast<int>(X.size()); ++i) {
        CVec x(n, cplx{});
        for (std::size_t j = 0; j < X.size(); ++j) la::axpy(in.Z(static_cast<Eigen::Index>(j), i), X[j].v, x);
        la::scale(1.0 / la::norm(x), x);
        picked.emplace_back(sign * in.rho[i] + shift, std::move(x));
    }
    std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    CVec ox(n);
    for (auto& [value, x] : picked) {
        apply(x, ox);
        const double th = la::dot(x, ox).real();
        la::axpy(-th, x, ox);
        const double rn = la::norm(ox);
        res.ritzValues.push_back(th);
        res.residualNorms.push_back(rn);
        res.converged.push_back(rn <= opts.tol);
        if (opts.keepVectors) res.vectors.push_back(std::move(x));
    }
    return res;
}

DenseEig dense_eig(const Eigen::MatrixXcd& m, std::size_t maxDim) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dense_eig: matrix must be square");
    if (static_cast<std::size_t>(m.rows()) > maxDim) throw std::length_error("dense_eig: dimension exceeds the dense limit");
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    DenseEig out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    const double scale = std::max(m.norm(), 1e-300);
    out.reconstructionError =
        (m - out.vectors * out.values.cast<cplx>().asDiagonal() * out.vectors.adjoint()).norm() / scale;
    return out;
}

}  // namespace dcspec

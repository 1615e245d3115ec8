#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "dcspec/probes.hpp"

namespace dcspec {

namespace {

double region_fraction(const Lattice& lat, int ncomp, const CVec& v, double radius) {
    const GridSpec& g = lat.grid;
    int idx[3];
    double in = 0.0, all = 0.0;
    for (std::size_t s = 0; s < lat.sites(); ++s) {
        lat.unravel(s, idx);
        const double r = Vec3(g.coord(idx[0]), g.coord(idx[1]), g.coord(idx[2])).norm();
        double a = 0.0;
        for (int c = 0; c < ncomp; ++c) a += std::norm(v[s * ncomp + c]);
        all += a;
        if (r <= radius) in += a;
    }
    return all > 0.0 ? in / all : 0.0;
}

// Localized states of one sector grouped into (near-)degenerate clusters.
struct Cluster {
    int sector = 0;
    double value = 0.0;
    std::vector<const CVec*> vectors;
};

std::vector<Cluster> clusters_of(const std::vector<ScanState>& states) {
    std::vector<const ScanState*> loc;
    for (const ScanState& s : states)
        if (s.localized) loc.push_back(&s);
    std::sort(loc.begin(), loc.end(), [](const ScanState* a, const ScanState* b) {
        return a->sector != b->sector ? a->sector < b->sector : a->value < b->value;
    });
    std::vector<Cluster> out;
    for (const ScanState* s : loc) {
        if (!out.empty() && out.back().sector == s->sector &&
            std::abs(out.back().value - s->value) < 1e-5 * std::max(1.0, std::abs(s->value))) {
            Cluster& c = out.back();
            c.value = (c.value * c.vectors.size() + s->value) / (c.vectors.size() + 1.0);
            c.vectors.push_back(&s->vector);
            continue;
        }
        Cluster c;
        c.sector = s->sector;
        c.value = s->value;
        c.vectors.push_back(&s->vector);
        out.push_back(c);
    }
    return out;
}

// Normalized Frobenius overlap of two clusters of orthonormal vectors.
double cluster_overlap(const Cluster& a, const Cluster& b) {
    double acc = 0.0;
    for (const CVec* x : a.vectors)
        for (const CVec* y : b.vectors) acc += std::norm(la::dot(*x, *y));
    return std::sqrt(acc / static_cast<double>(std::max(a.vectors.size(), b.vectors.size())));
}

}  // namespace

KappaScanResult scan_branches(const SectorFactory& factory, const std::vector<Vec3>& wellsAtUnitKappa,
                              const ScanSettings& st) {
    if (st.kappas.empty()) throw std::invalid_argument("kappa scan: empty kappa grid");
    for (double k : st.kappas)
        if (!(k > 0.0)) throw std::invalid_argument("kappa scan: kappa values must be positive");
    if (!(st.y2Norm > 0.0)) throw std::invalid_argument("kappa scan: y2 must be nonzero");
    double reach = 0.0;
    for (const Vec3& w : wellsAtUnitKappa) reach = std::max(reach, w.norm());

    KappaScanResult res;
    res.kappas = st.kappas;
    std::map<int, std::vector<CVec>> warm;
    std::vector<Cluster> prevClusters;
    std::vector<int> prevBranch;
    std::vector<std::vector<ScanState>> keep;

    for (std::size_t ki = 0; ki < st.kappas.size(); ++ki) {
        const double kappa = st.kappas[ki];
        const std::vector<ScanSector> sectors = factory(kappa);
        std::vector<ScanState> states;
        for (std::size_t si = 0; si < sectors.size(); ++si) {
            const ScanSector& sec = sectors[si];
            const Lattice& lat = sec.op.lattice();
            LanczosOptions opts;
            opts.target = EigTarget::Nearest;
            opts.sigma = sec.sigma;
            opts.howMany = st.howMany;
            opts.blockSize = 2;
            opts.tol = st.tol;
            opts.seed = st.seed + 101ULL * si;
            opts.maxIter = 6000;
            opts.start = warm[static_cast<int>(si)];
            const EigResult r = lobpcg(as_apply(sec.op), fourier_preconditioner(lat, sec.op.ncomp(), sec.kineticScale, sec.constant),
                                       sec.op.dim(), opts);
            std::vector<CVec> nextWarm;
            const double radius = kappa * reach + st.regionRadius;
            for (std::size_t i = 0; i < r.ritzValues.size(); ++i) {
                ScanState s;
                s.value = r.ritzValues[i];
                s.residual = r.residualNorms[i];
                s.sector = static_cast<int>(si);
                s.localization = region_fraction(lat, sec.op.ncomp(), r.vectors[i], radius);
                s.localized = r.converged[i] && s.localization >= st.localizedFraction;
                s.vector = r.vectors[i];
                nextWarm.push_back(r.vectors[i]);
                if (s.localized) {
                    ++res.localizedCount;
                    const double fromExcluded = std::abs(s.value - st.excludedPoint);
                    const bool inside =
                        s.value > sec.gapLow && s.value < sec.gapHigh && fromExcluded > st.excludedWidth;
                    if (!inside) {
                        res.confined = false;
                        res.worstConfinementViolation =
                            std::max({res.worstConfinementViolation, sec.gapLow - s.value, s.value - sec.gapHigh,
                                      st.excludedWidth - fromExcluded, 0.0});
                    }
                }
                states.push_back(std::move(s));
            }
            warm[static_cast<int>(si)] = std::move(nextWarm);
        }

        // Branch continuation by maximal overlap with the previous kappa.
        std::vector<Cluster> clusters = clusters_of(states);
        std::vector<int> branchOf(clusters.size(), -1);
        std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
        for (std::size_t a = 0; a < prevClusters.size(); ++a)
            for (std::size_t b = 0; b < clusters.size(); ++b)
                if (prevClusters[a].sector == clusters[b].sector)
                    cand.emplace_back(cluster_overlap(prevClusters[a], clusters[b]), a, b);
        std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
        std::vector<bool> usedPrev(prevClusters.size(), false);
        for (const auto& [ov, a, b] : cand) {
            if (ov < st.overlapThreshold || usedPrev[a] || branchOf[b] >= 0) continue;
            usedPrev[a] = true;
            branchOf[b] = prevBranch[a];
            res.branches[static_cast<std::size_t>(prevBranch[a])].points.push_back({kappa, clusters[b].value, ov});
        }
        for (std::size_t b = 0; b < clusters.size(); ++b) {
            if (branchOf[b] >= 0) continue;
            Branch br;
            br.sector = clusters[b].sector;
            br.points.push_back({kappa, clusters[b].value, 1.0});
            res.branches.push_back(br);
            branchOf[b] = static_cast<int>(res.branches.size()) - 1;
        }
        keep.push_back(std::move(states));
        // Clusters point into `keep`; vectors of older kappas are no longer needed.
        prevClusters = clusters_of(keep.back());
        prevBranch = branchOf;
        if (keep.size() > 1)
            for (ScanState& s : keep[keep.size() - 2]) CVec().swap(s.vector);
    }
    for (ScanState& s : keep.back()) CVec().swap(s.vector);
    res.states = std::move(keep);

    // Coulomb-curve overlay.
    std::vector<double> lambdas = st.lambdas;
    if (st.adversarialLambda && !res.branches.empty()) {
        const BranchPoint& p = res.branches.front().points.front();
        lambdas.push_back(p.value + st.k0 / (std::sqrt(2.0) * p.kappa * st.y2Norm));
    }
    auto curve = [&](double lambda, double kappa) { return lambda - st.k0 / (std::sqrt(2.0) * kappa * st.y2Norm); };
    std::map<double, std::size_t> kappaIndex;
    for (std::size_t i = 0; i < st.kappas.size(); ++i) kappaIndex[st.kappas[i]] = i;
    for (double lambda : lambdas) {
        CurveMatch cm;
        cm.lambda = lambda;
        for (const Branch& br : res.branches) {
            int run = 0;
            std::size_t lastIndex = 0;
            for (const BranchPoint& p : br.points) {
                const std::size_t idx = kappaIndex[p.kappa];
                const bool hit = std::abs(p.value - curve(lambda, p.kappa)) <= st.matchTolerance;
                if (!hit) {
                    run = 0;
                } else {
                    run = (run > 0 && idx == lastIndex + 1) ? run + 1 : 1;
                }
                lastIndex = idx;
                cm.longestRun = std::max(cm.longestRun, run);
            }
        }
        cm.matched = cm.longestRun >= 3;
        res.anyMatch = res.anyMatch || cm.matched;
        res.matches.push_back(cm);
    }
    std::ostringstream os;
    if (res.localizedCount == 0) {
        res.verdict = "no localized states found at any kappa; the scan is inconclusive (try a finer grid or a larger box)";
        return res;
    }
    os << (res.confined ? "all localized branch values stay inside the sector gaps; "
                        : "a localized value left its sector gap; ");
    os << (res.anyMatch ? "a branch tracks the Coulomb curve over 3 or more consecutive kappa points"
                        : "no branch tracks the Coulomb curve over 3 consecutive kappa points");
    os << " (numerical evidence, not a proof)";
    res.verdict = os.str();
    return res;
}

KappaScanResult kappa_scan(const KappaScanSpec& spec) {
    if (spec.y2.norm() == 0.0) throw std::invalid_argument("kappa scan: y2 must be nonzero");
    if (!(spec.m > 0.0)) throw std::invalid_argument("kappa scan: mass must be positive");
    const Lattice lat{spec.grid, 3};
    lat.validate();
    const double m = spec.m;
    SectorFactory factory = [&](double kappa) {
        std::vector<ScanSector> out(2);
        out[0].op = build_y_sector(lat, spec.pot, m, kappa * spec.y2, YSector::PlusPlus);
        out[0].sigma = m;
        out[0].gapLow = 0.0;
        out[0].gapHigh = 2.0 * m;
        out[1].op = build_y_sector(lat, spec.pot, m, kappa * spec.y2, YSector::MinusMinus);
        out[1].sigma = -m;
        out[1].gapLow = -2.0 * m;
        out[1].gapHigh = 0.0;
        for (ScanSector& s : out) {
            s.kineticScale = 2.0;  // (H++ - m)^2 = 2|p|^2 + m^2 without potential
            s.constant = m * m;
        }
        return out;
    };
    ScanSettings st = spec.settings;
    st.k0 = spec.pot.k0;
    st.y2Norm = spec.y2.norm();
    if (st.regionRadius <= 0.0) st.regionRadius = spec.grid.L / 4.0;
    return scan_branches(factory, {spec.y2, -spec.y2}, st);
}

}  // namespace dcspec

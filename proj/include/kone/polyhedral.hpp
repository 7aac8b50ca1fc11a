#ifndef KONE_POLYHEDRAL_HPP
#define KONE_POLYHEDRAL_HPP

#include "kone/primal_dual.hpp"

#include <sstream>

namespace kone {

struct PolyhedralOptions {
    double t = 1.5;
    int budget = 200;
    int max_generators = 20000;
    double kappa = 1.0;
    bool record_trace = false;
};

struct PolyhedralResult {
    Outcome outcome;
    int iterations = 0;
    /// Largest image norm N_j per iteration.
    std::vector<double> norms;
    /// K_j in the original coordinates, when requested.
    std::vector<GeneratorCone> trace;
};

/// Polyhedral cone construction with the scaled family E_t V^{-1} A_i V.
///
/// Everything runs in the rotated frame z = C^T V^{-1} x, where the center is
/// e1 and E_t = diag(1, t, ..., t). A vector joins the cone when the cone-norm
/// of its image exceeds 1; the run succeeds once every generator image has
/// norm at most t, which makes the unscaled cone invariant.
inline PolyhedralResult polyhedral_cone(const MatrixFamily& family, const PolyhedralOptions& opt, const Tolerances& tol)
{
    if (!(opt.t >= 1.0)) {
        throw Error("polyhedral_cone: t must be at least 1");
    }
    if (opt.budget < 1) {
        throw Error("polyhedral_cone: budget must be at least 1");
    }
    PolyhedralResult res;
    const IrreducibilityReport irr = irreducibility_check(family, tol);
    auto init = detail::mean_pair(family, tol);
    if (auto* w = std::get_if<SpectralWitness>(&init)) {
        Outcome o = NoInvariantCone{*w, "mean matrix has no simple Perron eigenvector"};
        res.outcome = w->kind == SpectralWitness::Kind::NoPerron ? o : detail::downgrade(std::move(o), irr);
        return res;
    }
    const auto& mp = std::get<detail::MeanPair>(init);
    Alignment al;
    try {
        al = build_alignment(mp.v.value, mp.v_star.value, opt.kappa, tol);
    } catch (const NonPositivePairing& e) {
        res.outcome = Inconclusive{0, e.what(), std::nullopt};
        return res;
    }

    const int d = family.dim();
    const Matrix C = orthonormal_completion(al.c);
    Vector scale = Vector::Constant(d, opt.t);
    scale[0] = 1.0;
    std::vector<Matrix> scaled;
    for (const auto& a : family.matrices()) {
        const Matrix b = C.transpose() * al.V_inv * a * al.V * C;
        scaled.push_back(scale.asDiagonal() * b);
    }
    const Matrix to_original = al.V * C;

    GeneratorCone cone(d);
    Vector e1 = Vector::Zero(d);
    e1[0] = 1.0;
    cone.append(e1, tol);
    std::vector<int> frontier{0};
    int last_pruned = 1;

    auto snapshot = [&]() {
        GeneratorCone k(d);
        for (int g = 0; g < cone.size(); ++g) {
            k.append(to_original * cone.generator(g), tol);
        }
        return k;
    };
    auto prune = [&]() {
        const GeneratorCone ext = extreme_generators(cone, tol);
        if (ext.size() != cone.size()) {
            std::vector<int> f;
            for (int i : frontier) {
                const int j = ext.find_ray(cone.generator(i), tol);
                if (j >= 0) {
                    f.push_back(j);
                }
            }
            frontier = std::move(f);
            cone = ext;
        }
        last_pruned = cone.size();
    };
    // Norm of the image of generator g under matrix i; nullopt if undefined.
    auto image_norm = [&](const Matrix& gens, const Vector& z) -> std::optional<double> {
        const double n = z.norm();
        if (!(n > 0.0)) {
            return 0.0;
        }
        if (z[0] <= tol.sign_eps * n) {
            return std::nullopt;
        }
        return detail::cone_norm_rotated(z, gens, tol);
    };
    auto undefined = [&](int j) {
        std::ostringstream os;
        os << "an image left the half-space (x, c) > 0 at t = " << opt.t << "; retry with a smaller t";
        return Inconclusive{j, os.str(), std::nullopt};
    };

    if (opt.record_trace) {
        res.trace.push_back(snapshot());
    }
    for (int j = 1; j <= opt.budget; ++j) {
        res.iterations = j;
        const Matrix gens = cone.matrix();
        double nj = 0.0;
        std::vector<Vector> added;
        for (int idx : frontier) {
            const Vector x = cone.generator(idx);
            for (const auto& a : scaled) {
                Vector z = a * x;
                auto nz = image_norm(gens, z);
                if (!nz) {
                    res.outcome = undefined(j);
                    return res;
                }
                nj = std::max(nj, *nz);
                if (*nz > 1.0 + tol.lp_feas) {
                    added.push_back(z.normalized());
                }
            }
        }
        res.norms.push_back(nj);
        frontier.clear();
        for (const auto& z : added) {
            if (cone.append(z, tol)) {
                frontier.push_back(cone.size() - 1);
            }
        }
        if (cone.size() >= last_pruned + last_pruned / 2 + 1) {
            prune();
        }
        if (opt.record_trace) {
            res.trace.push_back(snapshot());
        }
        if (cone.size() > opt.max_generators) {
            res.outcome = Inconclusive{j, "generator cap of " + std::to_string(opt.max_generators) + " reached",
                                       std::nullopt};
            return res;
        }
        if (cone_dimension(cone) == d && !is_pointed(cone, tol) && is_full_space(cone, tol)) {
            res.outcome = Inconclusive{j, "invariant cone cannot be computed at this t", std::nullopt};
            return res;
        }
        if (nj > opt.t && !frontier.empty()) {
            continue;
        }

        // Tentative success: every generator image must have norm at most t.
        prune();
        const Matrix all = cone.matrix();
        bool ok = true;
        for (int g = 0; g < cone.size() && ok; ++g) {
            for (const auto& a : scaled) {
                auto nz = image_norm(all, a * cone.generator(g));
                if (!nz) {
                    res.outcome = undefined(j);
                    return res;
                }
                if (*nz > opt.t * (1.0 + tol.lp_feas)) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            continue;
        }
        GeneratorCone k = snapshot();
        const Verification v = verify_invariance(family, k, tol);
        if (!v.ok) {
            res.outcome = Inconclusive{j, "constructed cone failed verification: " + v.failure, std::nullopt};
            return res;
        }
        res.outcome = ConeFound{k, (to_original * e1).normalized(), make_invariance_proof(family, k, tol)};
        return res;
    }
    res.outcome = Inconclusive{opt.budget, "budget of " + std::to_string(opt.budget) + " iterations exhausted",
                               std::nullopt};
    return res;
}

} // namespace kone

#endif

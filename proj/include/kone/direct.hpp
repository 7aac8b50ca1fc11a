#ifndef KONE_DIRECT_HPP
#define KONE_DIRECT_HPP

#include "kone/certificate.hpp"
#include "kone/irreducibility.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace kone {

/// Incremental cone K_j = cone(V_0 u ... u V_j) of the Direct iteration.
/// The cone is kept as its extreme generators; V_j is intersected with them,
/// which leaves every later K_j unchanged.
class DirectState {
public:
    DirectState(const MatrixFamily& family, Traced seed, const Tolerances& tol)
        : family_(&family), tol_(tol), cone_(family.dim())
    {
        const double n = seed.value.norm();
        if (!(n > 0.0)) {
            throw ZeroVector("DirectState: zero seed");
        }
        seed.value /= n;
        cone_.append(seed.value, tol_);
        gens_.push_back(seed);
        frontier_ = {0};
        last_pruned_ = 1;
    }

    const GeneratorCone& cone() const { return cone_; }

    /// Chains aligned with the columns of cone().
    const std::vector<Traced>& generators() const { return gens_; }

    std::vector<Traced> frontier() const
    {
        std::vector<Traced> out;
        for (int i : frontier_) {
            out.push_back(gens_[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    bool closed() const { return frontier_.empty(); }
    int iterations() const { return iterations_; }

    /// One pass over A V_{j-1}. Returns the number of vectors added.
    int step()
    {
        ++iterations_;
        const GeneratorCone before = cone_;
        std::vector<Traced> added;
        GeneratorCone fresh(cone_.dim());
        for (int idx : frontier_) {
            const Traced& x = gens_[static_cast<std::size_t>(idx)];
            for (int i = 0; i < family_->size(); ++i) {
                Vector y = (*family_)[i] * x.value;
                const double n = y.norm();
                if (n <= 1e-13 * std::max(1.0, (*family_)[i].norm())) {
                    continue;
                }
                y /= n;
                if (fresh.find_ray(y, tol_) >= 0 || membership(y, before, MembershipMode::Boundary, tol_)) {
                    continue;
                }
                fresh.append(y, tol_);
                added.push_back({y, x.chain.extended(i + 1)});
            }
        }
        frontier_.clear();
        for (auto& a : added) {
            if (cone_.append(a.value, tol_)) {
                gens_.push_back(std::move(a));
                frontier_.push_back(static_cast<int>(gens_.size()) - 1);
            }
        }
        if (cone_.size() >= last_pruned_ + last_pruned_ / 2 + 1) {
            prune();
        }
        return static_cast<int>(added.size());
    }

    /// Reduces the cone to its extreme generators.
    void prune()
    {
        const GeneratorCone ext = extreme_generators(cone_, tol_);
        if (ext.size() != cone_.size()) {
            std::vector<Traced> kept;
            std::vector<int> remap(gens_.size(), -1);
            for (int i = 0; i < cone_.size(); ++i) {
                if (ext.find_ray(cone_.generator(i), tol_) >= 0) {
                    remap[static_cast<std::size_t>(i)] = static_cast<int>(kept.size());
                    kept.push_back(gens_[static_cast<std::size_t>(i)]);
                }
            }
            std::vector<int> f;
            for (int i : frontier_) {
                if (remap[static_cast<std::size_t>(i)] >= 0) {
                    f.push_back(remap[static_cast<std::size_t>(i)]);
                }
            }
            gens_ = std::move(kept);
            frontier_ = std::move(f);
            cone_ = GeneratorCone(cone_.dim());
            for (const auto& g : gens_) {
                cone_.append(g.value, tol_);
            }
        }
        last_pruned_ = cone_.size();
    }

    /// Full-space test; a single pointedness LP rules it out in the common case.
    bool full_space() const
    {
        if (cone_dimension(cone_) < cone_.dim() || is_pointed(cone_, tol_)) {
            return false;
        }
        return is_full_space(cone_, tol_);
    }

    SimplexCover cover() const
    {
        SimplexCover c;
        for (const auto& g : gens_) {
            c.points.push_back(g.chain);
        }
        return c;
    }

private:
    const MatrixFamily* family_;
    Tolerances tol_;
    GeneratorCone cone_;
    std::vector<Traced> gens_;
    std::vector<int> frontier_;
    int last_pruned_ = 1;
    int iterations_ = 0;
};

/// Simple leading eigenvector of the mean, else of random positive
/// combinations, else of short products. Chains are marked `transposed` when
/// `family` is itself the transpose of the user's family.
inline std::optional<Traced> find_seed(const MatrixFamily& family, bool transposed, std::uint64_t rng_seed,
                                       const Tolerances& tol, int attempts = 20)
{
    auto try_seed = [&](const Seed& s) -> std::optional<Traced> {
        Chain c{s, {}, transposed};
        auto v = evaluate_seed(s, family, tol);
        if (!v) {
            return std::nullopt;
        }
        return Traced{canonical_sign(*v), c};
    };
    if (auto t = try_seed(Seed{Seed::Kind::Mean, {}, {}, {}})) {
        return t;
    }
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    const int combos = attempts / 2;
    for (int k = 0; k < combos; ++k) {
        Seed s{Seed::Kind::Combination, {}, {}, {}};
        for (int i = 0; i < family.size(); ++i) {
            s.weights.push_back(unif(rng));
        }
        if (auto t = try_seed(s)) {
            return t;
        }
    }
    WordEnumerator words(family.size());
    for (int k = 1; k <= attempts - combos; ++k) {
        auto w = words.at(k);
        if (!w) {
            break;
        }
        if (auto t = try_seed(Seed{Seed::Kind::Product, {}, *w, {}})) {
            return t;
        }
    }
    return std::nullopt;
}

struct DirectOptions {
    int budget = 50;
    std::optional<Vector> seed;
    std::uint64_t rng_seed = 1;
    bool record_trace = true;
};

struct DirectResult {
    Outcome outcome;
    std::vector<GeneratorCone> trace;
};

/// Direct iteration K_j = cone(K_{j-1} u {x in A V_{j-1} : x not in K_{j-1}}).
inline DirectResult direct_algorithm(const MatrixFamily& family, const DirectOptions& opt, const Tolerances& tol)
{
    if (opt.budget < 1) {
        throw Error("direct_algorithm: budget must be at least 1");
    }
    DirectResult res;
    std::optional<Traced> seed;
    if (opt.seed) {
        if (opt.seed->size() != family.dim()) {
            throw DimensionMismatch("direct_algorithm: seed dimension differs from the family");
        }
        seed = Traced{*opt.seed, Chain{Seed{Seed::Kind::Explicit, {}, {}, *opt.seed}, {}, false}};
    } else {
        seed = find_seed(family, false, opt.rng_seed, tol);
    }
    if (!seed) {
        const PerronResult pr = leading_eigenpair(family.mean(), tol);
        SpectralWitness w;
        w.subject = SpectralWitness::Subject::Mean;
        w.kind = std::holds_alternative<NoPerron>(pr) ? SpectralWitness::Kind::NoPerron
                                                       : SpectralWitness::Kind::NotSimple;
        if (w.kind == SpectralWitness::Kind::NoPerron) {
            res.outcome = NoInvariantCone{w, "mean matrix has no Perron eigenvalue"};
        } else {
            res.outcome = Inconclusive{0, "no simple Perron seed", w};
        }
        return res;
    }

    DirectState state(family, *seed, tol);
    if (opt.record_trace) {
        res.trace.push_back(state.cone());
    }
    for (int j = 1; j <= opt.budget; ++j) {
        state.step();
        if (opt.record_trace) {
            res.trace.push_back(state.cone());
        }
        if (state.full_space()) {
            res.outcome = NoInvariantCone{state.cover(), "K_" + std::to_string(j) + " is the whole space"};
            return res;
        }
        if (state.closed()) {
            state.prune();
            const GeneratorCone k = state.cone();
            const Verification v = verify_invariance(family, k, tol);
            if (v.ok) {
                res.outcome = ConeFound{k, seed->value.normalized(), make_invariance_proof(family, k, tol)};
            } else {
                res.outcome = Inconclusive{j, "iteration closed on a degenerate cone: " + v.failure, std::nullopt};
            }
            return res;
        }
    }
    res.outcome = Inconclusive{opt.budget, "budget exhausted after " + std::to_string(opt.budget) + " iterations",
                               std::nullopt};
    return res;
}

} // namespace kone

#endif

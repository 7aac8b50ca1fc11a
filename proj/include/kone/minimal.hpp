#ifndef KONE_MINIMAL_HPP
#define KONE_MINIMAL_HPP

#include "kone/primal_dual.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kone {

struct MinimalOptions {
    /// Direct iterations on A^T before the word loop; 0 selects d + 3.
    int dual_warmup = 0;
    int budget_words = 200;
    /// Expansion passes over the pending frontier after each word.
    int passes_per_word = 1;
    int max_generators = 5000;
    std::uint64_t rng_seed = 1;
};

struct MinimalResult {
    Outcome outcome;
    int words_used = 0;
    std::vector<std::string> warnings;
    /// Generators of the dual warmup cone K*.
    GeneratorCone dual_cone;
    /// The cone held when the run stopped.
    GeneratorCone last_cone;
};

namespace detail {

class MinimalSearch {
public:
    MinimalSearch(const MatrixFamily& family, const MinimalOptions& opt, const Tolerances& tol)
        : family_(family), opt_(opt), tol_(tol), cone_(family.dim())
    {
    }

    MinimalResult run()
    {
        const int d = family_.dim();
        const MatrixFamily dual_family = family_.transposed();
        auto seed = find_seed(dual_family, true, opt_.rng_seed, tol_);
        if (!seed) {
            const PerronResult pr = leading_eigenpair(family_.mean().transpose(), tol_);
            SpectralWitness w{SpectralWitness::Subject::MeanTranspose,
                              std::holds_alternative<NoPerron>(pr) ? SpectralWitness::Kind::NoPerron
                                                                   : SpectralWitness::Kind::NotSimple,
                              {}};
            if (w.kind == SpectralWitness::Kind::NoPerron) {
                return finish(no_cone(w, "transposed mean has no Perron eigenvalue"));
            }
            return finish(Inconclusive{0, "transposed family has no simple Perron seed", w});
        }
        DirectState warm(dual_family, *seed, tol_);
        const int warmup = opt_.dual_warmup > 0 ? opt_.dual_warmup : d + 3;
        for (int j = 0; j < warmup || (cone_dimension(warm.cone()) < d && j < warmup + 50); ++j) {
            if (warm.closed()) {
                break;
            }
            warm.step();
            if (warm.full_space()) {
                return finish(no_cone(warm.cover(), "dual warmup cone is the whole space"));
            }
        }
        warm.prune();
        dual_ = warm.generators();
        result_.dual_cone = warm.cone();
        dual_matrix_ = warm.cone().matrix();
        if (cone_dimension(warm.cone()) < d) {
            result_.warnings.push_back("dual warmup cone is not full-dimensional");
        }

        WordEnumerator words(family_.size());
        for (int j = 1; j <= opt_.budget_words; ++j) {
            auto w = words.at(j);
            if (!w) {
                break;
            }
            result_.words_used = j;
            if (auto o = process_word(*w)) {
                return finish(std::move(*o));
            }
            if (cone_.size() > opt_.max_generators) {
                return finish(Inconclusive{j, "generator cap reached", std::nullopt});
            }
            if (!cone_.empty() && frontier_.empty() && generation_ != failed_generation_) {
                const Verification v = verify_invariance(family_, cone_, tol_, false);
                if (v.ok) {
                    if (cone_dimension(cone_) < d) {
                        result_.warnings.push_back("minimal cone is not full-dimensional: the family is reducible");
                    }
                    return finish(success());
                }
                failed_generation_ = generation_;
                result_.warnings.push_back("closed cone failed verification: " + v.failure);
            }
        }
        std::ostringstream os;
        os << "no closure within " << result_.words_used << " words (" << cone_.size() << " generators)";
        return finish(Inconclusive{result_.words_used, os.str(), std::nullopt});
    }

private:
    struct Root {
        Word word;
        std::vector<Vector> vectors;
    };

    MinimalResult finish(Outcome o)
    {
        result_.outcome = std::move(o);
        result_.last_cone = cone_;
        return std::move(result_);
    }

    static Outcome no_cone(Certificate c, std::string note) { return NoInvariantCone{std::move(c), std::move(note)}; }

    bool seen(const Vector& x) const
    {
        for (const auto& s : seen_) {
            if ((s - x).norm() < tol_.dedup_angle) {
                return true;
            }
        }
        return false;
    }

    /// Worst pairing of x against K*; index of the dual generator in `arg`.
    double worst_pairing(const Vector& x, Eigen::Index* arg) const
    {
        if (dual_matrix_.cols() == 0) {
            *arg = -1;
            return 0.0;
        }
        const Vector p = dual_matrix_.transpose() * x;
        return p.minCoeff(arg);
    }

    /// Certificate for a pairing (g_dual, x) < 0 using an anchor with the same seeds.
    std::optional<NegativePairing> pairing_certificate(const Chain& x_chain, double value, Eigen::Index dual_idx) const
    {
        NegativePairing np;
        np.primal = x_chain;
        np.dual = dual_[static_cast<std::size_t>(dual_idx)].chain;
        np.value = value;
        double best = tol_.sign_eps;
        bool found = false;
        for (const auto& t : traced_) {
            if (!t.chain.same_seed(x_chain)) {
                continue;
            }
            const Vector p = dual_matrix_.transpose() * t.value;
            Eigen::Index k = 0;
            const double m = p.maxCoeff(&k);
            if (m > best) {
                best = m;
                found = true;
                np.anchor_primal = t.chain;
                np.anchor_dual = dual_[static_cast<std::size_t>(k)].chain;
                np.anchor_value = m;
            }
        }
        if (!found) {
            return std::nullopt;
        }
        return np;
    }

    std::optional<Outcome> sign_violation(const Traced& x)
    {
        Eigen::Index arg = -1;
        const double w = worst_pairing(x.value, &arg);
        if (w >= -tol_.sign_eps) {
            return std::nullopt;
        }
        auto np = pairing_certificate(x.chain, w, arg);
        std::ostringstream os;
        os << "vector " << format_word(x.chain.path) << " of root " << format_word(x.chain.seed.word)
           << " pairs negatively with the dual cone (" << w << ")";
        if (!np) {
            return Inconclusive{result_.words_used, os.str() + "; no positive anchor found", std::nullopt};
        }
        return no_cone(*np, os.str());
    }

    /// Vectors already in the cone are only recorded: their images lie in the
    /// cone spanned by the images of the generators, which are all expanded or pending.
    void add(Traced t)
    {
        seen_.push_back(t.value);
        history_.push_back(t);
        if (membership(t.value, cone_, MembershipMode::Boundary, tol_)) {
            return;
        }
        if (cone_.append(t.value, tol_)) {
            ++generation_;
            traced_.push_back(t);
            frontier_.push_back(static_cast<int>(traced_.size()) - 1);
        }
    }

    std::optional<Outcome> process_word(const Word& w)
    {
        const RootResult rr = cyclic_root(w, family_, tol_);
        if (const auto* f = std::get_if<RootFailure>(&rr)) {
            switch (f->kind) {
            case RootFailure::Kind::NoPerron:
                return no_cone(SpectralWitness{SpectralWitness::Subject::Product, SpectralWitness::Kind::NoPerron, w},
                               "product " + format_word(w) + " has no Perron eigenvalue");
            case RootFailure::Kind::NotSimple:
                result_.warnings.push_back("skipped " + format_word(w) + ": leading eigenvector not simple");
                return std::nullopt;
            case RootFailure::Kind::ZeroCycle:
                result_.warnings.push_back("skipped " + format_word(w) + ": cycle collapses to zero");
                return std::nullopt;
            }
        }
        const CyclicRoot& root = std::get<CyclicRoot>(rr);
        const Seed seed{Seed::Kind::Product, {}, w, {}};

        // Orientation maximizing the worst pairing with K*.
        double worst_plus = std::numeric_limits<double>::infinity();
        double worst_minus = std::numeric_limits<double>::infinity();
        for (const auto& v : root.vectors) {
            Eigen::Index a = 0;
            worst_plus = std::min(worst_plus, worst_pairing(v, &a));
            worst_minus = std::min(worst_minus, worst_pairing(-v, &a));
        }
        const double sign = worst_minus > worst_plus ? -1.0 : 1.0;
        std::vector<Traced> rv;
        for (int k = 0; k < root.word.length(); ++k) {
            Word prefix{{w.letters.begin(), w.letters.begin() + k}};
            rv.push_back({sign * root.vectors[static_cast<std::size_t>(k)], Chain{seed, prefix, false}});
        }
        if (std::max(worst_plus, worst_minus) < -tol_.sign_eps) {
            // Both orientations fail: a negative and a positive pairing exist among the root vectors.
            return root_conflict(rv, w);
        }

        std::vector<Traced> fresh;
        for (const auto& t : rv) {
            if (!seen(t.value) && !membership(t.value, cone_, MembershipMode::Interior, tol_)) {
                fresh.push_back(t);
            }
        }
        for (auto& t : fresh) {
            add(t);
        }
        roots_.push_back(Root{w, {}});
        for (const auto& t : rv) {
            roots_.back().vectors.push_back(t.value);
        }
        for (int p = 0; p < opt_.passes_per_word && !frontier_.empty(); ++p) {
            if (auto o = expand()) {
                return o;
            }
        }
        for (const auto& t : fresh) {
            if (auto o = sign_violation(t)) {
                return o;
            }
        }
        return std::nullopt;
    }

    std::optional<Outcome> root_conflict(const std::vector<Traced>& rv, const Word& w)
    {
        // With the chosen orientation some (g1, r_a) < 0; the opposite one
        // failing means some (g2, r_b) > 0.
        NegativePairing np;
        double neg = 0.0;
        double pos = 0.0;
        for (const auto& t : rv) {
            const Vector p = dual_matrix_.transpose() * t.value;
            Eigen::Index lo = 0;
            Eigen::Index hi = 0;
            const double mn = p.minCoeff(&lo);
            const double mx = p.maxCoeff(&hi);
            if (mn < neg) {
                neg = mn;
                np.primal = t.chain;
                np.dual = dual_[static_cast<std::size_t>(lo)].chain;
                np.value = mn;
            }
            if (mx > pos) {
                pos = mx;
                np.anchor_primal = t.chain;
                np.anchor_dual = dual_[static_cast<std::size_t>(hi)].chain;
                np.anchor_value = mx;
            }
        }
        std::ostringstream os;
        os << "root of " << format_word(w) << " meets the dual cone at an obtuse angle in both orientations";
        return no_cone(np, os.str());
    }

    std::optional<Outcome> expand()
    {
        const std::vector<int> current = std::move(frontier_);
        frontier_.clear();
        std::vector<Traced> added;
        for (int idx : current) {
            const Traced x = traced_[static_cast<std::size_t>(idx)];
            for (int i = 0; i < family_.size(); ++i) {
                Vector y = family_[i] * x.value;
                const double n = y.norm();
                if (n <= 1e-13 * std::max(1.0, family_[i].norm())) {
                    continue;
                }
                y /= n;
                if (seen(y) || covers(cone_, y, tol_)) {
                    continue;
                }
                Traced t{y, x.chain.extended(i + 1)};
                if (auto o = sign_violation(t)) {
                    return o;
                }
                seen_.push_back(y);
                history_.push_back(t);
                added.push_back(std::move(t));
            }
        }
        for (auto& t : added) {
            if (cone_.append(t.value, tol_)) {
                ++generation_;
                traced_.push_back(std::move(t));
                frontier_.push_back(static_cast<int>(traced_.size()) - 1);
            }
        }
        if (cone_.size() >= last_pruned_ + last_pruned_ / 2 + 1) {
            prune();
        }
        return std::nullopt;
    }

    void prune()
    {
        const GeneratorCone ext = extreme_generators(cone_, tol_);
        if (ext.size() != cone_.size()) {
            std::vector<Traced> kept;
            std::vector<int> remap(traced_.size(), -1);
            for (int i = 0; i < cone_.size(); ++i) {
                if (ext.find_ray(cone_.generator(i), tol_) >= 0) {
                    remap[static_cast<std::size_t>(i)] = static_cast<int>(kept.size());
                    kept.push_back(traced_[static_cast<std::size_t>(i)]);
                }
            }
            std::vector<int> f;
            for (int i : frontier_) {
                if (remap[static_cast<std::size_t>(i)] >= 0) {
                    f.push_back(remap[static_cast<std::size_t>(i)]);
                }
            }
            traced_ = std::move(kept);
            frontier_ = std::move(f);
            cone_ = GeneratorCone(cone_.dim());
            for (const auto& t : traced_) {
                cone_.append(t.value, tol_);
            }
        }
        last_pruned_ = std::max(1, cone_.size());
    }

    /// Cycles of the action graph on the extreme rays: edge g -> h with letter l
    /// when A_l g is the ray h. Each primitive cycle is the root of a cyclic tree
    /// spanning the rays reachable from it.
    std::vector<CyclicTree> action_cycles(const GeneratorCone& extreme) const
    {
        constexpr std::size_t max_cycles = 256;
        Tolerances loose = tol_;
        loose.dedup_angle = 100.0 * tol_.dedup_angle;
        const int n = extreme.size();
        std::vector<std::vector<std::pair<int, int>>> edges(static_cast<std::size_t>(n));
        for (int g = 0; g < n; ++g) {
            for (int l = 0; l < family_.size(); ++l) {
                const Vector y = family_[l] * extreme.generator(g);
                if (y.norm() <= 1e-13 * std::max(1.0, family_[l].norm())) {
                    continue;
                }
                const int h = extreme.find_ray(y, loose);
                if (h >= 0) {
                    edges[static_cast<std::size_t>(g)].push_back({l + 1, h});
                }
            }
        }
        std::vector<CyclicTree> out;
        std::vector<int> path;
        std::vector<int> letters;
        std::vector<bool> on_path(static_cast<std::size_t>(n), false);
        std::function<void(int, int)> dfs = [&](int start, int node) {
            for (const auto& [l, h] : edges[static_cast<std::size_t>(node)]) {
                if (out.size() >= max_cycles) {
                    return;
                }
                if (h == start) {
                    letters.push_back(l);
                    if (detail::is_primitive(letters)) {
                        const Word w = canonical_word(Word{letters});
                        const bool known = std::any_of(out.begin(), out.end(), [&](const CyclicTree& t) {
                            return same_rotation_class(t.word, w);
                        });
                        if (!known) {
                            CyclicTree t{w, {}};
                            for (int k : path) {
                                t.vectors.push_back(extreme.generator(k));
                            }
                            out.push_back(std::move(t));
                        }
                    }
                    letters.pop_back();
                } else if (h > start && !on_path[static_cast<std::size_t>(h)]) {
                    on_path[static_cast<std::size_t>(h)] = true;
                    path.push_back(h);
                    letters.push_back(l);
                    dfs(start, h);
                    letters.pop_back();
                    path.pop_back();
                    on_path[static_cast<std::size_t>(h)] = false;
                }
            }
        };
        for (int s = 0; s < n && out.size() < max_cycles; ++s) {
            on_path[static_cast<std::size_t>(s)] = true;
            path.assign(1, s);
            dfs(s, s);
            on_path[static_cast<std::size_t>(s)] = false;
        }
        // Grow each root by the rays reachable from it.
        for (auto& t : out) {
            std::vector<int> stack;
            std::vector<bool> in(static_cast<std::size_t>(n), false);
            for (const auto& v : t.vectors) {
                const int k = extreme.find_ray(v, tol_);
                in[static_cast<std::size_t>(k)] = true;
                stack.push_back(k);
            }
            while (!stack.empty()) {
                const int g = stack.back();
                stack.pop_back();
                for (const auto& e : edges[static_cast<std::size_t>(g)]) {
                    if (!in[static_cast<std::size_t>(e.second)]) {
                        in[static_cast<std::size_t>(e.second)] = true;
                        stack.push_back(e.second);
                        t.vectors.push_back(extreme.generator(e.second));
                    }
                }
            }
        }
        return out;
    }

    /// Processed roots lying on the boundary of the final cone, then the
    /// cycles among extreme rays not yet listed. Extreme rays still uncovered
    /// are listed under the word that produced them.
    std::vector<CyclicTree> trees(const GeneratorCone& extreme) const
    {
        auto on_boundary = [&](const Vector& v) { return !membership(v, cone_, MembershipMode::Interior, tol_); };
        std::vector<CyclicTree> out;
        std::vector<bool> covered(static_cast<std::size_t>(extreme.size()), false);
        auto push = [&](CyclicTree& tree, const Vector& v) {
            for (const auto& u : tree.vectors) {
                if ((u - v).norm() < tol_.dedup_angle) {
                    return;
                }
            }
            tree.vectors.push_back(v);
            const int k = extreme.find_ray(v, tol_);
            if (k >= 0) {
                covered[static_cast<std::size_t>(k)] = true;
            }
        };
        for (const auto& r : roots_) {
            if (!std::all_of(r.vectors.begin(), r.vectors.end(), on_boundary)) {
                continue;
            }
            CyclicTree tree{r.word, {}};
            for (const auto& v : r.vectors) {
                push(tree, v);
            }
            for (const auto& h : history_) {
                if (h.chain.seed.word == r.word && on_boundary(h.value)) {
                    push(tree, h.value);
                }
            }
            out.push_back(std::move(tree));
        }
        for (auto& c : action_cycles(extreme)) {
            const bool known = std::any_of(out.begin(), out.end(),
                                           [&](const CyclicTree& t) { return same_rotation_class(t.word, c.word); });
            if (known) {
                continue;
            }
            CyclicTree tree{c.word, {}};
            for (const auto& v : c.vectors) {
                push(tree, v);
            }
            out.push_back(std::move(tree));
        }
        for (int i = 0; i < extreme.size(); ++i) {
            if (covered[static_cast<std::size_t>(i)]) {
                continue;
            }
            const Vector g = extreme.generator(i);
            auto h = std::find_if(history_.begin(), history_.end(),
                                  [&](const Traced& t) { return (t.value - g).norm() < tol_.dedup_angle; });
            if (h == history_.end()) {
                continue;
            }
            const Word& w = h->chain.seed.word;
            auto it = std::find_if(out.begin(), out.end(), [&](const CyclicTree& t) { return t.word == w; });
            if (it == out.end()) {
                out.push_back(CyclicTree{w, {}});
                it = out.end() - 1;
            }
            push(*it, g);
        }
        return out;
    }

    /// The cone is found up to sign; report the copy containing the canonical
    /// Perron vector of the mean.
    Outcome success()
    {
        const PerronResult pr = leading_eigenpair(family_.mean(), tol_);
        if (const auto* pd = std::get_if<PerronData>(&pr)) {
            const Vector sum = cone_.matrix().rowwise().sum();
            if (sum.dot(pd->right_vector) < 0.0) {
                GeneratorCone flipped(cone_.dim());
                for (int i = 0; i < cone_.size(); ++i) {
                    flipped.append(-cone_.generator(i), tol_);
                    traced_[static_cast<std::size_t>(i)].value *= -1.0;
                }
                cone_ = flipped;
                for (auto& r : roots_) {
                    for (auto& v : r.vectors) {
                        v = -v;
                    }
                }
                for (auto& h : history_) {
                    h.value *= -1.0;
                }
            }
        }
        GeneratorCone extreme = extreme_generators(cone_, tol_);
        // Pruning near-parallel rays can push an image just outside; keep the verified set then.
        if (!verify_invariance(family_, extreme, tol_, false).ok) {
            extreme = cone_;
        }
        return MinimalConeFound{extreme, trees(extreme), make_invariance_proof(family_, extreme, tol_)};
    }

    const MatrixFamily& family_;
    MinimalOptions opt_;
    Tolerances tol_;
    MinimalResult result_;
    std::vector<Traced> dual_;
    Matrix dual_matrix_;
    GeneratorCone cone_;
    std::vector<Traced> traced_;
    std::vector<int> frontier_;
    std::vector<Vector> seen_;
    std::vector<Traced> history_;
    std::vector<Root> roots_;
    int last_pruned_ = 1;
    /// Bumped whenever a generator is added.
    long generation_ = 0;
    long failed_generation_ = -1;
};

} // namespace detail

/// Builds K_min from cyclic trees of products taken in enumeration order.
inline MinimalResult minimal_cone(const MatrixFamily& family, const MinimalOptions& opt, const Tolerances& tol)
{
    if (opt.budget_words < 1) {
        throw Error("minimal_cone: budget must be at least 1");
    }
    return detail::MinimalSearch(family, opt, tol).run();
}

struct MaximalResult {
    /// Set on success: K_max = {x : (u, x) >= 0 for every normal u}.
    std::optional<HalfspaceCone> cone;
    /// The outcome of the minimal-cone run on the transposed family.
    MinimalResult dual;
};

/// K_max(A) = K_min(A^T)*, returned in halfspace form.
inline MaximalResult maximal_cone(const MatrixFamily& family, const MinimalOptions& opt, const Tolerances& tol)
{
    MaximalResult out;
    out.dual = minimal_cone(family.transposed(), opt, tol);
    const auto* mc = std::get_if<MinimalConeFound>(&out.dual.outcome);
    if (mc == nullptr) {
        return out;
    }
    HalfspaceCone h;
    h.dim = family.dim();
    h.normals = mc->cone.generators();
    // K_min(A^T) is fixed only up to sign; orient it toward the Perron vector of the mean.
    const PerronResult pr = leading_eigenpair(family.mean(), tol);
    if (const auto* pd = std::get_if<PerronData>(&pr)) {
        double s = 0.0;
        for (const auto& u : h.normals) {
            s += u.dot(pd->right_vector);
        }
        if (s < 0.0) {
            for (auto& u : h.normals) {
                u = -u;
            }
        }
    }
    out.cone = std::move(h);
    return out;
}

} // namespace kone

#endif

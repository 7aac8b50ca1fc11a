#ifndef KONE_CERTIFICATE_HPP
#define KONE_CERTIFICATE_HPP

#include "kone/cone.hpp"
#include "kone/words.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace kone {

/// How a starting vector is recomputed from the family. Every kind except
/// Explicit is a leading eigenvector, so its sign is only known up to +-.
struct Seed {
    enum class Kind { Mean, Combination, Product, Explicit };
    Kind kind = Kind::Mean;
    std::vector<double> weights; // Combination: sum h_i A_i
    Word word;                   // Product
    Vector vector;               // Explicit

    bool operator==(const Seed& o) const
    {
        return kind == o.kind && weights == o.weights && word == o.word
            && (kind != Kind::Explicit || (vector.size() == o.vector.size() && vector == o.vector));
    }
};

inline const char* to_string(Seed::Kind k)
{
    switch (k) {
    case Seed::Kind::Mean:
        return "mean";
    case Seed::Kind::Combination:
        return "combination";
    case Seed::Kind::Product:
        return "product";
    case Seed::Kind::Explicit:
        return "explicit";
    }
    return "?";
}

/// A vector obtained by applying `path` to a seed. With `transposed` both the
/// seed and the path refer to the transposed family.
struct Chain {
    Seed seed;
    Word path;
    bool transposed = false;

    Chain extended(int letter) const
    {
        Chain c = *this;
        c.path.letters.push_back(letter);
        return c;
    }

    bool same_seed(const Chain& o) const { return transposed == o.transposed && seed == o.seed; }
};

/// A vector together with the chain that produced it.
struct Traced {
    Vector value;
    Chain chain;
};

/// Leading eigenvector named by `seed`; nullopt when it is missing or not simple.
inline std::optional<Vector> evaluate_seed(const Seed& seed, const MatrixFamily& family, const Tolerances& tol)
{
    Matrix m;
    switch (seed.kind) {
    case Seed::Kind::Explicit:
        if (seed.vector.size() != family.dim()) {
            return std::nullopt;
        }
        return seed.vector;
    case Seed::Kind::Mean:
        m = family.mean();
        break;
    case Seed::Kind::Combination: {
        if (static_cast<int>(seed.weights.size()) != family.size()) {
            return std::nullopt;
        }
        m = Matrix::Zero(family.dim(), family.dim());
        for (int i = 0; i < family.size(); ++i) {
            m += seed.weights[static_cast<std::size_t>(i)] * family[i];
        }
        break;
    }
    case Seed::Kind::Product:
        m = product(seed.word, family);
        break;
    }
    const PerronResult pr = leading_eigenpair(m, tol);
    const auto* pd = std::get_if<PerronData>(&pr);
    if (pd == nullptr || !pd->simple) {
        return std::nullopt;
    }
    return pd->right_vector;
}

inline std::optional<Vector> evaluate_chain(const Chain& chain, const MatrixFamily& family, const Tolerances& tol)
{
    const MatrixFamily f = chain.transposed ? family.transposed() : family;
    auto seed = evaluate_seed(chain.seed, f, tol);
    if (!seed) {
        return std::nullopt;
    }
    for (int letter : chain.path.letters) {
        if (letter < 1 || letter > f.size()) {
            return std::nullopt;
        }
    }
    return apply_word(chain.path, f, *seed);
}

/// Obtuse angle between a primal and a dual vector. The anchor pair, built from
/// the same seeds, has a positive pairing; since every seed is an eigenvector
/// fixed only up to sign, it is the product of the two values that certifies.
struct NegativePairing {
    Chain primal;
    Chain dual;
    double value = 0.0;
    Chain anchor_primal;
    Chain anchor_dual;
    double anchor_value = 0.0;
};

/// Generators whose cone is all of R^d, each reachable from one seed.
struct SimplexCover {
    std::vector<Chain> points;
};

/// A matrix from the family that cannot preserve a proper cone.
struct SpectralWitness {
    enum class Subject { Mean, MeanTranspose, Product };
    enum class Kind { NoPerron, NotSimple };
    Subject subject = Subject::Mean;
    Kind kind = Kind::NoPerron;
    Word word;
};

struct MembershipRecord {
    int matrix = 0;    // 1-based
    int generator = 0; // 0-based
    double residual = 0.0;
};

/// Claimed invariance of the returned cone.
struct InvarianceProof {
    std::vector<MembershipRecord> records;
};

using Certificate = std::variant<NegativePairing, SimplexCover, SpectralWitness, InvarianceProof>;

inline const char* certificate_name(const Certificate& c)
{
    switch (c.index()) {
    case 0:
        return "NegativePairing";
    case 1:
        return "SimplexCover";
    case 2:
        return "SpectralWitness";
    default:
        return "InvarianceProof";
    }
}

struct CyclicTree {
    Word word;
    std::vector<Vector> vectors;
};

struct NoInvariantCone {
    Certificate witness;
    std::string note;
};

struct ConeFound {
    GeneratorCone cone;
    Vector center;
    Certificate certificate;
};

struct MinimalConeFound {
    GeneratorCone cone;
    std::vector<CyclicTree> trees;
    Certificate certificate;
};

struct Inconclusive {
    int iterations_used = 0;
    std::string reason;
    std::optional<Certificate> evidence;
};

using Outcome = std::variant<NoInvariantCone, ConeFound, MinimalConeFound, Inconclusive>;

inline const char* verdict_name(const Outcome& o)
{
    switch (o.index()) {
    case 0:
        return "NoInvariantCone";
    case 1:
        return "ConeFound";
    case 2:
        return "MinimalConeFound";
    default:
        return "Inconclusive";
    }
}

inline bool is_definitive(const Outcome& o)
{
    return !std::holds_alternative<Inconclusive>(o);
}

struct Verification {
    bool ok = false;
    std::string failure;

    explicit operator bool() const { return ok; }
};

namespace detail {

inline Verification fail(std::string why)
{
    return {false, std::move(why)};
}

inline int seed_multiplicity(const std::vector<const Chain*>& chains, const Chain& c)
{
    int n = 0;
    for (const Chain* o : chains) {
        if (o->same_seed(c)) {
            ++n;
        }
    }
    return n;
}

inline Verification verify_pairing(const MatrixFamily& family, const NegativePairing& np, const Tolerances& tol)
{
    const std::vector<const Chain*> chains{&np.primal, &np.dual, &np.anchor_primal, &np.anchor_dual};
    if (np.primal.transposed || np.anchor_primal.transposed || !np.dual.transposed || !np.anchor_dual.transposed) {
        return fail("NegativePairing: primal chains must use the family, dual chains its transpose");
    }
    for (const Chain* c : chains) {
        if (c->seed.kind != Seed::Kind::Explicit && seed_multiplicity(chains, *c) % 2 != 0) {
            return fail("NegativePairing: an eigenvector seed occurs an odd number of times, sign is not fixed");
        }
    }
    std::vector<Vector> v;
    for (const Chain* c : chains) {
        auto x = evaluate_chain(*c, family, tol);
        if (!x) {
            return fail("NegativePairing: a seed eigenvector is missing or not simple");
        }
        const double n = x->norm();
        if (!(n > 0.0)) {
            return fail("NegativePairing: a chain collapses to zero");
        }
        v.push_back(*x / n);
    }
    const double neg = v[1].dot(v[0]);
    const double pos = v[3].dot(v[2]);
    if (std::abs(neg) <= tol.sign_eps || std::abs(pos) <= tol.sign_eps) {
        std::ostringstream os;
        os << "NegativePairing: pairing values " << neg << ", " << pos << " are within sign_eps of zero";
        return fail(os.str());
    }
    if (neg * pos >= 0.0) {
        std::ostringstream os;
        os << "NegativePairing: pairings " << neg << " and " << pos << " have the same sign";
        return fail(os.str());
    }
    return {true, {}};
}

inline Verification verify_cover(const MatrixFamily& family, const SimplexCover& sc, const Tolerances& tol)
{
    if (sc.points.empty()) {
        return fail("SimplexCover: no points");
    }
    for (const Chain& c : sc.points) {
        if (c.transposed != sc.points.front().transposed || !c.same_seed(sc.points.front())) {
            return fail("SimplexCover: points do not share one seed");
        }
    }
    GeneratorCone k(family.dim());
    for (const Chain& c : sc.points) {
        auto x = evaluate_chain(c, family, tol);
        if (!x || !(x->norm() > 0.0)) {
            return fail("SimplexCover: a point cannot be recomputed");
        }
        k.append(*x, tol);
    }
    if (!is_full_space(k, tol)) {
        return fail("SimplexCover: the recomputed points do not span R^d as a cone");
    }
    return {true, {}};
}

inline Verification verify_spectral(const MatrixFamily& family, const SpectralWitness& sw, const Tolerances& tol)
{
    Matrix m;
    switch (sw.subject) {
    case SpectralWitness::Subject::Mean:
        m = family.mean();
        break;
    case SpectralWitness::Subject::MeanTranspose:
        m = family.mean().transpose();
        break;
    case SpectralWitness::Subject::Product:
        if (sw.word.letters.empty()) {
            return fail("SpectralWitness: empty word");
        }
        for (int l : sw.word.letters) {
            if (l < 1 || l > family.size()) {
                return fail("SpectralWitness: letter outside the family");
            }
        }
        m = product(sw.word, family);
        break;
    }
    const PerronResult pr = leading_eigenpair(m, tol);
    if (sw.kind == SpectralWitness::Kind::NoPerron) {
        if (!std::holds_alternative<NoPerron>(pr)) {
            return fail("SpectralWitness: the matrix has a Perron eigenvalue");
        }
        return {true, {}};
    }
    return fail("SpectralWitness: a non-simple Perron eigenvector does not exclude a cone");
}

} // namespace detail

/// Checks that every A_i maps the generators of K into K and that K is a
/// proper cone (pointed, full-dimensional). With `require_full` off a pointed
/// cone of lower dimension is accepted; only reducible families have one.
inline Verification verify_invariance(const MatrixFamily& family, const GeneratorCone& k, const Tolerances& tol,
                                      bool require_full = true)
{
    if (k.dim() != family.dim()) {
        return detail::fail("invariance: cone dimension differs from the family");
    }
    if (k.empty()) {
        return detail::fail("invariance: empty cone");
    }
    if (require_full && cone_dimension(k) < k.dim()) {
        return detail::fail("invariance: cone is not full-dimensional");
    }
    if (!is_pointed(k, tol)) {
        return detail::fail("invariance: cone is not pointed");
    }
    for (int i = 0; i < family.size(); ++i) {
        for (int g = 0; g < k.size(); ++g) {
            const Vector y = family[i] * k.generator(g);
            if (!covers(k, y, tol)) {
                return detail::fail("invariance: A" + std::to_string(i + 1) + " maps generator "
                                    + std::to_string(g) + " outside the cone");
            }
        }
    }
    return {true, {}};
}

inline Verification verify_certificate(const MatrixFamily& family, const Certificate& cert, const Tolerances& tol)
{
    if (const auto* np = std::get_if<NegativePairing>(&cert)) {
        return detail::verify_pairing(family, *np, tol);
    }
    if (const auto* sc = std::get_if<SimplexCover>(&cert)) {
        return detail::verify_cover(family, *sc, tol);
    }
    if (const auto* sw = std::get_if<SpectralWitness>(&cert)) {
        return detail::verify_spectral(family, *sw, tol);
    }
    return detail::fail("InvarianceProof needs the cone it refers to");
}

/// Recomputes the evidence of a definitive outcome from the family alone.
inline Verification verify_certificate(const MatrixFamily& family, const Outcome& outcome, const Tolerances& tol)
{
    if (const auto* no = std::get_if<NoInvariantCone>(&outcome)) {
        if (std::holds_alternative<InvarianceProof>(no->witness)) {
            return detail::fail("NoInvariantCone carries an invariance proof");
        }
        return verify_certificate(family, no->witness, tol);
    }
    if (const auto* cf = std::get_if<ConeFound>(&outcome)) {
        if (!std::holds_alternative<InvarianceProof>(cf->certificate)) {
            return detail::fail("ConeFound must carry an invariance proof");
        }
        return verify_invariance(family, cf->cone, tol);
    }
    if (const auto* mc = std::get_if<MinimalConeFound>(&outcome)) {
        if (!std::holds_alternative<InvarianceProof>(mc->certificate)) {
            return detail::fail("MinimalConeFound must carry an invariance proof");
        }
        return verify_invariance(family, mc->cone, tol, false);
    }
    return detail::fail("Inconclusive outcomes carry no certificate");
}

/// Builds the invariance records for a cone already known to be invariant.
inline InvarianceProof make_invariance_proof(const MatrixFamily& family, const GeneratorCone& k, const Tolerances& tol)
{
    InvarianceProof p;
    lp::Options o;
    o.feas_tol = tol.lp_feas;
    for (int i = 0; i < family.size(); ++i) {
        for (int g = 0; g < k.size(); ++g) {
            const Vector y = family[i] * k.generator(g);
            const double n = y.norm();
            double res = 0.0;
            if (n > 0.0) {
                res = lp::find_feasible(k.matrix(), y / n, o).residual;
            }
            p.records.push_back({i + 1, g, res});
        }
    }
    return p;
}

} // namespace kone

#endif

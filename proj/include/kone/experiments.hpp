#ifndef KONE_EXPERIMENTS_HPP
#define KONE_EXPERIMENTS_HPP

#include "kone/minimal.hpp"
#include "kone/polyhedral.hpp"

#include <chrono>
#include <random>
#include <set>

namespace kone {

enum class EntryDistribution { Normal, Uniform, Boolean };

inline const char* to_string(EntryDistribution e)
{
    switch (e) {
    case EntryDistribution::Normal:
        return "normal";
    case EntryDistribution::Uniform:
        return "uniform";
    case EntryDistribution::Boolean:
        return "boolean";
    }
    return "?";
}

struct ExperimentConfig {
    int dim = 2;
    int trials = 200;
    std::uint64_t seed = 1;
    EntryDistribution distribution = EntryDistribution::Normal;
    /// Scale for the polyhedral algorithm; smaller values are tried when it fails.
    double t_scale = 1.5;
    int pd_budget = 50;
    int polyhedral_budget = 200;
    int max_generators = 20000;
    int minimal_budget = 200;
    /// Bisection steps of lambda_sweep.
    int bisection_steps = 12;
    Tolerances tol;

    void validate() const
    {
        if (dim < 1) {
            throw Error("experiment: dim must be positive");
        }
        if (trials < 1) {
            throw Error("experiment: trials must be at least 1");
        }
        if (!(t_scale >= 1.0)) {
            throw Error("experiment: t_scale must be at least 1");
        }
        tol.validate();
    }
};

enum class Verdict { NoCone, ConeFound, Unknown };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::NoCone:
        return "NoCone";
    case Verdict::ConeFound:
        return "ConeFound";
    case Verdict::Unknown:
        return "Unknown";
    }
    return "?";
}

struct TrialRecord {
    Verdict verdict = Verdict::Unknown;
    int generator_count = 0;
    int words_used = 0;
    double wall_time = 0.0;
    /// Which algorithm settled the trial ("primal-dual", "polyhedral t=1.5", "minimal", ...).
    std::string method;
    MatrixFamily family;
    Outcome outcome;
};

struct StudySummary {
    ExperimentConfig config;
    int pairs_drawn = 0;
    int no_cone = 0;
    int cone_found = 0;
    int unknown = 0;
    std::vector<TrialRecord> records;

    int total() const { return no_cone + cone_found + unknown; }
    double fraction(Verdict v) const
    {
        const int n = v == Verdict::NoCone ? no_cone : v == Verdict::ConeFound ? cone_found : unknown;
        return total() == 0 ? 0.0 : static_cast<double>(n) / total();
    }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Matrix sample_matrix(int d, EntryDistribution dist, std::mt19937_64& rng)
{
    Matrix m(d, d);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            switch (dist) {
            case EntryDistribution::Normal:
                m(i, j) = normal(rng);
                break;
            case EntryDistribution::Uniform:
                m(i, j) = uniform(rng);
                break;
            case EntryDistribution::Boolean:
                m(i, j) = static_cast<double>(rng() & 1U);
                break;
            }
        }
    }
    return m;
}

inline bool has_perron(const Matrix& m, const Tolerances& tol)
{
    return std::holds_alternative<PerronData>(leading_eigenpair(m, tol));
}

inline int generator_count(const Outcome& o)
{
    if (const auto* c = std::get_if<ConeFound>(&o)) {
        return c->cone.size();
    }
    if (const auto* c = std::get_if<MinimalConeFound>(&o)) {
        return c->cone.size();
    }
    return 0;
}

/// The scales tried by the polyhedral stage, largest first.
inline std::vector<double> t_schedule(double t)
{
    std::vector<double> out{t};
    for (double s : {1.2, 1.05}) {
        if (s < out.back() - 1e-12) {
            out.push_back(s);
        }
    }
    return out;
}

/// primal_dual, then polyhedral_cone over the t schedule. Only verified verdicts count.
inline TrialRecord settle(const MatrixFamily& f, const ExperimentConfig& cfg)
{
    Stopwatch sw;
    TrialRecord rec;
    rec.family = f;
    auto accept = [&](Outcome o, std::string method) {
        if (is_definitive(o)) {
            const Verification v = verify_certificate(f, o, cfg.tol);
            if (v.ok) {
                rec.verdict = std::holds_alternative<NoInvariantCone>(o) ? Verdict::NoCone : Verdict::ConeFound;
                rec.generator_count = generator_count(o);
                rec.method = std::move(method);
                rec.outcome = std::move(o);
                return true;
            }
            o = Inconclusive{0, method + " result failed verification: " + v.failure, std::nullopt};
        }
        rec.outcome = std::move(o);
        return false;
    };
    // A certified cone excludes every NoCone certificate, so a short polyhedral
    // probe may go first without changing the verdict.
    for (double t : t_schedule(cfg.t_scale)) {
        PolyhedralOptions probe;
        probe.t = t;
        probe.budget = 30;
        probe.max_generators = 2000;
        std::ostringstream m;
        m << "polyhedral probe t=" << t;
        if (accept(polyhedral_cone(f, probe, cfg.tol).outcome, m.str())) {
            rec.wall_time = sw.seconds();
            return rec;
        }
    }
    PrimalDualOptions pd;
    pd.budget = cfg.pd_budget;
    if (!accept(primal_dual(f, pd, cfg.tol), "primal-dual")) {
        for (double t : t_schedule(cfg.t_scale)) {
            PolyhedralOptions po;
            po.t = t;
            po.budget = cfg.polyhedral_budget;
            po.max_generators = cfg.max_generators;
            std::ostringstream m;
            m << "polyhedral t=" << t;
            if (accept(polyhedral_cone(f, po, cfg.tol).outcome, m.str())) {
                break;
            }
        }
    }
    rec.wall_time = sw.seconds();
    return rec;
}

inline void tally(StudySummary& s, TrialRecord r)
{
    switch (r.verdict) {
    case Verdict::NoCone:
        ++s.no_cone;
        break;
    case Verdict::ConeFound:
        ++s.cone_found;
        break;
    case Verdict::Unknown:
        ++s.unknown;
        break;
    }
    s.records.push_back(std::move(r));
}

} // namespace detail

/// Random Gaussian pairs with a Perron eigenvalue in both matrices; every pair is
/// decided by primal_dual, falling back to polyhedral_cone for the cone side.
inline StudySummary random_pair_study(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.distribution != EntryDistribution::Normal) {
        throw Error("random_pair_study: entries must be Normal(0,1)");
    }
    StudySummary s;
    s.config = cfg;
    std::mt19937_64 rng(cfg.seed);
    while (s.total() < cfg.trials) {
        Matrix a = detail::sample_matrix(cfg.dim, cfg.distribution, rng);
        Matrix b = detail::sample_matrix(cfg.dim, cfg.distribution, rng);
        ++s.pairs_drawn;
        if (!detail::has_perron(a, cfg.tol) || !detail::has_perron(b, cfg.tol)) {
            continue;
        }
        detail::tally(s, detail::settle(MatrixFamily({a, b}), cfg));
    }
    return s;
}

class BracketFailure : public Error {
public:
    using Error::Error;
};

struct LambdaProbe {
    double lambda = 0.0;
    Verdict verdict = Verdict::Unknown;
    std::string method;
};

struct LambdaSweep {
    MatrixFamily family;
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    /// Certified outcomes at the two ends of the bracket.
    Outcome lower;
    Outcome upper;
    std::vector<LambdaProbe> probes;
    /// Probes contradicting monotonicity of feasibility in lambda.
    std::vector<std::string> anomalies;
};

/// Bisection on lambda for {A_i - lambda I}: a certified cone moves the lower end,
/// a certified NoCone the upper end. Unknown probes are recorded; the search
/// then tries the quarter points before giving up on further narrowing.
inline LambdaSweep lambda_sweep(const MatrixFamily& family, const ExperimentConfig& cfg)
{
    cfg.validate();
    LambdaSweep out;
    out.family = family;
    auto probe = [&](double lambda) {
        TrialRecord r = detail::settle(family.shifted(lambda), cfg);
        out.probes.push_back({lambda, r.verdict, r.method});
        return r;
    };

    TrialRecord lo = probe(0.0);
    if (lo.verdict != Verdict::ConeFound) {
        throw BracketFailure("lambda_sweep: no certified cone at lambda = 0");
    }
    out.lower = lo.outcome;
    double hi_lambda = 1.0;
    std::optional<TrialRecord> hi;
    for (int k = 0; k < 12; ++k) {
        TrialRecord r = probe(hi_lambda);
        if (r.verdict == Verdict::NoCone) {
            hi = std::move(r);
            break;
        }
        if (r.verdict == Verdict::ConeFound) {
            out.lower = r.outcome;
            out.lambda_minus = hi_lambda;
        }
        hi_lambda *= 2.0;
    }
    if (!hi) {
        throw BracketFailure("lambda_sweep: no certified NoCone probe found");
    }
    out.upper = hi->outcome;
    out.lambda_plus = hi_lambda;

    for (int step = 0; step < cfg.bisection_steps; ++step) {
        const double a = out.lambda_minus;
        const double b = out.lambda_plus;
        bool moved = false;
        for (double w : {0.5, 0.25, 0.75}) {
            const double mid = a + w * (b - a);
            TrialRecord r = probe(mid);
            if (r.verdict == Verdict::ConeFound) {
                out.lambda_minus = mid;
                out.lower = r.outcome;
                moved = true;
                break;
            }
            if (r.verdict == Verdict::NoCone) {
                out.lambda_plus = mid;
                out.upper = r.outcome;
                moved = true;
                break;
            }
        }
        if (!moved) {
            break;
        }
    }
    // A certified cone above a certified NoCone breaks the monotone picture.
    for (const auto& p : out.probes) {
        if (p.verdict == Verdict::ConeFound && p.lambda > out.lambda_plus) {
            std::ostringstream os;
            os << "cone certified at lambda = " << p.lambda << " above lambda+ = " << out.lambda_plus;
            out.anomalies.push_back(os.str());
        }
        if (p.verdict == Verdict::NoCone && p.lambda < out.lambda_minus) {
            std::ostringstream os;
            os << "no cone certified at lambda = " << p.lambda << " below lambda- = " << out.lambda_minus;
            out.anomalies.push_back(os.str());
        }
    }
    return out;
}

/// Draws a Uniform(0,1) pair from the configured seed and sweeps it.
inline LambdaSweep lambda_sweep(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.distribution != EntryDistribution::Uniform) {
        throw Error("lambda_sweep: entries must be Uniform(0,1)");
    }
    std::mt19937_64 rng(cfg.seed);
    Matrix a = detail::sample_matrix(cfg.dim, cfg.distribution, rng);
    Matrix b = detail::sample_matrix(cfg.dim, cfg.distribution, rng);
    return lambda_sweep(MatrixFamily({a, b}), cfg);
}

struct BooleanSummary {
    ExperimentConfig config;
    int pairs = 0;
    int successes = 0;
    int max_trees = 0;
    /// Longest root among the reported trees of all successes.
    Word longest_word;
    std::vector<TrialRecord> records;

    double success_rate() const { return pairs == 0 ? 0.0 : static_cast<double>(successes) / pairs; }
};

namespace detail {

inline Matrix boolean_matrix(std::uint32_t bits)
{
    Matrix m(3, 3);
    for (int k = 0; k < 9; ++k) {
        m(k / 3, k % 3) = static_cast<double>((bits >> k) & 1U);
    }
    return m;
}

} // namespace detail

/// Distinct Boolean 3x3 pairs drawn without replacement; each run of
/// minimal_cone counts as a success when its cone passes invariance.
inline BooleanSummary boolean_sweep(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.distribution != EntryDistribution::Boolean || cfg.dim != 3) {
        throw Error("boolean_sweep: needs Boolean entries and d = 3");
    }
    constexpr std::uint32_t space = 1U << 18;
    if (static_cast<std::uint32_t>(cfg.trials) > space) {
        throw Error("boolean_sweep: more trials than Boolean pairs");
    }
    BooleanSummary s;
    s.config = cfg;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, space - 1);
    std::set<std::uint32_t> used;
    MinimalOptions mo;
    mo.budget_words = cfg.minimal_budget;
    mo.rng_seed = cfg.seed;
    while (s.pairs < cfg.trials) {
        const std::uint32_t code = pick(rng);
        if (!used.insert(code).second) {
            continue;
        }
        const MatrixFamily f({detail::boolean_matrix(code & 0x1FFU), detail::boolean_matrix(code >> 9)});
        detail::Stopwatch sw;
        TrialRecord rec;
        rec.family = f;
        rec.method = "minimal";
        const MinimalResult mr = minimal_cone(f, mo, cfg.tol);
        rec.words_used = mr.words_used;
        rec.outcome = mr.outcome;
        ++s.pairs;
        if (is_definitive(rec.outcome)) {
            const Verification v = verify_certificate(f, rec.outcome, cfg.tol);
            if (!v.ok) {
                rec.outcome = Inconclusive{mr.words_used, "result failed verification: " + v.failure, std::nullopt};
            }
        }
        if (const auto* mc = std::get_if<MinimalConeFound>(&rec.outcome)) {
            rec.verdict = Verdict::ConeFound;
            rec.generator_count = mc->cone.size();
            ++s.successes;
            s.max_trees = std::max(s.max_trees, static_cast<int>(mc->trees.size()));
            for (const auto& t : mc->trees) {
                if (t.word.length() > s.longest_word.length()) {
                    s.longest_word = t.word;
                }
            }
        } else if (std::holds_alternative<NoInvariantCone>(rec.outcome)) {
            rec.verdict = Verdict::NoCone;
        }
        rec.wall_time = sw.seconds();
        s.records.push_back(std::move(rec));
    }
    return s;
}

class InvarianceFailed : public Error {
public:
    using Error::Error;
};

struct ApplicationReport {
    /// rho_check(A) >= 1: every product keeps P, which stays away from the origin.
    bool lower_spectral_radius_at_least_one = false;
    bool non_mortal = false;
    bool non_stabilisable = false;
    std::string summary;
};

/// Verifies A_i P in P for P = co(S) + K. K must be invariant and S in K \ {0}.
inline ApplicationReport application_check(const MatrixFamily& family, const GeneratorCone& k,
                                           const std::vector<Vector>& s, const Tolerances& tol)
{
    if (s.empty()) {
        throw Error("application_check: empty point set");
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j].size() != k.dim()) {
            throw DimensionMismatch("application_check: point dimension differs from the cone");
        }
        if (s[j].norm() == 0.0 || !membership(s[j], k, MembershipMode::Boundary, tol)) {
            throw Error("application_check: point " + std::to_string(j) + " is not in K \\ {0}");
        }
    }
    const Verification inv = verify_invariance(family, k, tol);
    if (!inv.ok) {
        throw InvarianceFailed("application_check: K is not invariant (" + inv.failure + ")");
    }
    const ConicPolytope p{s, k};
    if (polytope_membership(Vector::Zero(k.dim()), p, tol)) {
        throw Error("application_check: co(S) + K contains the origin");
    }
    std::string bad;
    for (int i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (!polytope_membership(family[i] * s[j], p, tol)) {
                bad += (bad.empty() ? "" : ", ") + std::string("A") + std::to_string(i + 1) + " s" + std::to_string(j);
            }
        }
    }
    if (!bad.empty()) {
        throw InvarianceFailed("application_check: images leave co(S) + K: " + bad);
    }
    ApplicationReport r;
    r.lower_spectral_radius_at_least_one = true;
    r.non_mortal = true;
    r.non_stabilisable = true;
    r.summary = "A_i P in P for all i; lower spectral radius >= 1, family not mortal, switching system not stabilisable";
    return r;
}

} // namespace kone

#endif

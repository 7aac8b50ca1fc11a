// kone: invariant cones of matrix families from the command line.

#include "kone/kone.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace kone;

enum class Level { Quiet = 0, Info = 1, Debug = 2 };

Level log_level()
{
    const char* env = std::getenv("KONE_LOG");
    if (env == nullptr) {
        return Level::Quiet;
    }
    const std::string v = env;
    if (v == "debug" || v == "2") {
        return Level::Debug;
    }
    if (v == "info" || v == "1") {
        return Level::Info;
    }
    return Level::Quiet;
}

void log(Level at, const std::string& msg)
{
    if (static_cast<int>(log_level()) >= static_cast<int>(at)) {
        std::cerr << "kone: " << msg << '\n';
    }
}

constexpr int exit_definitive = 0;
constexpr int exit_input = 1;
constexpr int exit_inconclusive = 2;

struct Flags {
    std::string input;
    std::string output;
    double tol = 0.0;
    int budget = 0;
    double t_scale = 1.5;
    std::uint64_t seed = 1;
    int dual_warmup = 0;
    std::string section;
    std::string plane = "center";
    int axis = 2;
    std::string format = "json";

    /// --tol rescales every tolerance by the same factor relative to lp_feas.
    Tolerances tolerances() const
    {
        Tolerances t;
        if (tol > 0.0) {
            const double f = tol / t.lp_feas;
            t.eig_gap *= f;
            t.lp_feas = tol;
            t.member_margin *= f;
            t.sign_eps *= f;
            t.dedup_angle *= f;
        }
        t.validate();
        return t;
    }

    int budget_or(int fallback) const { return budget > 0 ? budget : fallback; }
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

MatrixFamily load_family(const std::string& path)
{
    try {
        return read_family(path);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
}

std::string vector_csv(const Vector& v)
{
    std::ostringstream os;
    os << std::setprecision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        os << (i ? "," : "") << v[i];
    }
    return os.str();
}

std::string outcome_csv(const Outcome& o)
{
    std::ostringstream os;
    os << "verdict," << verdict_name(o) << '\n';
    const GeneratorCone* k = nullptr;
    if (const auto* cf = std::get_if<ConeFound>(&o)) {
        k = &cf->cone;
    } else if (const auto* mc = std::get_if<MinimalConeFound>(&o)) {
        k = &mc->cone;
    }
    if (k != nullptr) {
        for (int i = 0; i < k->size(); ++i) {
            os << "generator," << vector_csv(k->generator(i)) << '\n';
        }
    }
    if (const auto* in = std::get_if<Inconclusive>(&o)) {
        os << "reason,\"" << in->reason << "\"\n";
    }
    return os.str();
}

/// Definitive outcomes must verify both in memory and after a JSON round trip;
/// anything else is downgraded before it reaches the user.
Outcome reverified(const MatrixFamily& f, Outcome o, const OutcomeMetadata& meta, const Tolerances& tol)
{
    if (!is_definitive(o)) {
        return o;
    }
    Verification v = verify_certificate(f, o, tol);
    if (v.ok) {
        const OutcomeFile back = outcome_from_json(Json::parse(outcome_to_json({o, meta}).dump()), f.dim());
        v = verify_certificate(f, back.outcome, tol);
    }
    if (!v.ok) {
        log(Level::Quiet, std::string("certificate failed re-verification: ") + v.failure);
        return Inconclusive{0, std::string(verdict_name(o)) + " certificate failed re-verification: " + v.failure,
                            std::nullopt};
    }
    log(Level::Info, "certificate verified");
    return o;
}

Json section_json(const GeneratorCone& k, const Vector& center, const Flags& fl, const Tolerances& tol)
{
    const SectionPlane plane = fl.plane == "axis" ? SectionPlane::Axis : SectionPlane::Center;
    const CrossSection cs = cross_section(k, plane, center, fl.axis, tol);
    Json pts = Json::array();
    Json xy = Json::array();
    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        pts.push_back(io::to_json(cs.points[i]));
        xy.push_back({cs.coords[i][0], cs.coords[i][1]});
    }
    Json j{{"plane", fl.plane}, {"normal", io::to_json(cs.normal)}, {"points", pts}, {"polygon", xy},
           {"dropped", cs.dropped}};
    if (plane == SectionPlane::Axis) {
        j["axis"] = fl.axis;
    }
    return j;
}

Vector center_of(const Outcome& o)
{
    if (const auto* cf = std::get_if<ConeFound>(&o)) {
        return cf->center;
    }
    if (const auto* mc = std::get_if<MinimalConeFound>(&o)) {
        return default_center(mc->cone);
    }
    return {};
}

const GeneratorCone* cone_of(const Outcome& o)
{
    if (const auto* cf = std::get_if<ConeFound>(&o)) {
        return &cf->cone;
    }
    if (const auto* mc = std::get_if<MinimalConeFound>(&o)) {
        return &mc->cone;
    }
    return nullptr;
}

int exit_for(const Outcome& o)
{
    return is_definitive(o) ? exit_definitive : exit_inconclusive;
}

/// Writes the outcome (and section data when asked) and returns the exit code.
int finish(const MatrixFamily& f, Outcome o, OutcomeMetadata meta, const Flags& fl, const Tolerances& tol,
           Json extra = Json::object(), const std::vector<GeneratorCone>* trace = nullptr)
{
    o = reverified(f, std::move(o), meta, tol);
    log(Level::Info, std::string("verdict ") + verdict_name(o));
    if (fl.format == "csv") {
        emit(fl.output, outcome_csv(o));
    } else {
        Json j = outcome_to_json({o, meta});
        for (auto it = extra.begin(); it != extra.end(); ++it) {
            j[it.key()] = it.value();
        }
        emit(fl.output, j.dump(2) + "\n");
    }
    if (!fl.section.empty()) {
        if (f.dim() != 3) {
            log(Level::Quiet, "--section needs d = 3; skipped");
        } else {
            Json sec = Json::object();
            Vector c;
            if (const GeneratorCone* k = cone_of(o)) {
                c = center_of(o);
                sec["cone"] = section_json(*k, c, fl, tol);
            }
            if (trace != nullptr && !trace->empty()) {
                if (c.size() == 0) {
                    c = default_center(trace->back());
                }
                Json steps = Json::array();
                for (const auto& k : *trace) {
                    steps.push_back(section_json(k, c, fl, tol));
                }
                sec["trace"] = steps;
            }
            write_json(fl.section, sec);
        }
    }
    return exit_for(o);
}

OutcomeMetadata metadata(const std::string& command, const Flags& fl, const Tolerances& tol)
{
    OutcomeMetadata m;
    m.command = command;
    m.tol = tol;
    m.seed = fl.seed;
    return m;
}

int cmd_check(const Flags& fl)
{
    const MatrixFamily f = load_family(fl.input);
    const Tolerances tol = fl.tolerances();
    const IrreducibilityReport irr = irreducibility_check(f, tol);
    log(Level::Info, std::string("irreducibility: ") + (irr.irreducible() ? "irreducible" : "undetermined")
                         + " (algebra dimension " + std::to_string(irr.algebra_dim) + ")");
    PrimalDualOptions opt;
    opt.budget = fl.budget_or(opt.budget);
    OutcomeMetadata meta = metadata("check", fl, tol);
    meta.budgets["primal_dual"] = opt.budget;
    Json extra{{"irreducible", irr.irreducible()}, {"algebra_dim", irr.algebra_dim}};
    return finish(f, primal_dual(f, opt, tol), meta, fl, tol, extra);
}

int cmd_construct(const Flags& fl)
{
    const MatrixFamily f = load_family(fl.input);
    const Tolerances tol = fl.tolerances();
    PolyhedralOptions opt;
    opt.t = fl.t_scale;
    opt.budget = fl.budget_or(opt.budget);
    opt.record_trace = !fl.section.empty();
    const PolyhedralResult r = polyhedral_cone(f, opt, tol);
    OutcomeMetadata meta = metadata("construct", fl, tol);
    meta.budgets["polyhedral"] = opt.budget;
    meta.budgets["t_scale"] = opt.t;
    Json extra{{"iterations", r.iterations}, {"norms", r.norms}};
    return finish(f, r.outcome, meta, fl, tol, extra, opt.record_trace ? &r.trace : nullptr);
}

MinimalOptions minimal_options(const Flags& fl)
{
    MinimalOptions opt;
    opt.budget_words = fl.budget_or(opt.budget_words);
    opt.dual_warmup = fl.dual_warmup;
    opt.rng_seed = fl.seed;
    return opt;
}

int cmd_minimal(const Flags& fl)
{
    const MatrixFamily f = load_family(fl.input);
    const Tolerances tol = fl.tolerances();
    const MinimalOptions opt = minimal_options(fl);
    const MinimalResult r = minimal_cone(f, opt, tol);
    for (const auto& w : r.warnings) {
        log(Level::Quiet, w);
    }
    OutcomeMetadata meta = metadata("minimal", fl, tol);
    meta.budgets["words"] = opt.budget_words;
    meta.budgets["dual_warmup"] = opt.dual_warmup > 0 ? opt.dual_warmup : f.dim() + 3;
    Json extra{{"words_used", r.words_used}, {"warnings", r.warnings}};
    return finish(f, r.outcome, meta, fl, tol, extra);
}

int cmd_maximal(const Flags& fl)
{
    const MatrixFamily f = load_family(fl.input);
    const Tolerances tol = fl.tolerances();
    const MinimalOptions opt = minimal_options(fl);
    const MaximalResult r = maximal_cone(f, opt, tol);
    const MatrixFamily ft = f.transposed();
    OutcomeMetadata meta = metadata("maximal", fl, tol);
    meta.budgets["words"] = opt.budget_words;
    const Outcome o = reverified(ft, r.dual.outcome, meta, tol);
    Json j = outcome_to_json({o, meta});
    j["family"] = "transposed";
    if (r.cone && is_definitive(o)) {
        Json ns = Json::array();
        for (const auto& u : r.cone->normals) {
            ns.push_back(io::to_json(u));
        }
        j["normals"] = ns;
    }
    if (fl.format == "csv") {
        std::string text = outcome_csv(o);
        if (r.cone && is_definitive(o)) {
            for (const auto& u : r.cone->normals) {
                text += "normal," + vector_csv(u) + "\n";
            }
        }
        emit(fl.output, text);
    } else {
        emit(fl.output, j.dump(2) + "\n");
    }
    if (!fl.section.empty()) {
        log(Level::Quiet, "--section is not available for halfspace cones; skipped");
    }
    return exit_for(o);
}

int cmd_direct(const Flags& fl)
{
    const MatrixFamily f = load_family(fl.input);
    const Tolerances tol = fl.tolerances();
    DirectOptions opt;
    opt.budget = fl.budget_or(opt.budget);
    opt.rng_seed = fl.seed;
    const DirectResult r = direct_algorithm(f, opt, tol);
    OutcomeMetadata meta = metadata("direct", fl, tol);
    meta.budgets["direct"] = opt.budget;
    Json counts = Json::array();
    for (const auto& k : r.trace) {
        counts.push_back(k.size());
    }
    Json extra{{"trace_sizes", counts}};
    return finish(f, r.outcome, meta, fl, tol, extra, &r.trace);
}

ExperimentConfig config_from(const Json& j)
{
    ExperimentConfig c;
    c.dim = j.value("dim", c.dim);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.t_scale = j.value("t_scale", c.t_scale);
    c.pd_budget = j.value("pd_budget", c.pd_budget);
    c.polyhedral_budget = j.value("polyhedral_budget", c.polyhedral_budget);
    c.max_generators = j.value("max_generators", c.max_generators);
    c.minimal_budget = j.value("minimal_budget", c.minimal_budget);
    c.bisection_steps = j.value("bisection_steps", c.bisection_steps);
    if (j.contains("tolerances")) {
        c.tol = tolerances_from_json(j.at("tolerances"));
    }
    const std::string dist = j.value("distribution", "");
    if (dist == "normal") {
        c.distribution = EntryDistribution::Normal;
    } else if (dist == "uniform") {
        c.distribution = EntryDistribution::Uniform;
    } else if (dist == "boolean") {
        c.distribution = EntryDistribution::Boolean;
    } else if (!dist.empty()) {
        throw InputError("unknown distribution '" + dist + "'");
    }
    c.validate();
    return c;
}

Json config_json(const ExperimentConfig& c)
{
    return Json{{"dim", c.dim},
                {"trials", c.trials},
                {"seed", c.seed},
                {"distribution", to_string(c.distribution)},
                {"t_scale", c.t_scale},
                {"pd_budget", c.pd_budget},
                {"polyhedral_budget", c.polyhedral_budget},
                {"max_generators", c.max_generators},
                {"minimal_budget", c.minimal_budget},
                {"bisection_steps", c.bisection_steps},
                {"tolerances", tolerances_to_json(c.tol)}};
}

void write_summary(const Flags& fl, const Json& j, const std::string& csv)
{
    if (fl.output.empty()) {
        std::cout << (fl.format == "csv" ? csv : j.dump(2) + "\n");
        return;
    }
    write_json(fl.output + ".json", j);
    emit(fl.output + ".csv", csv);
    log(Level::Info, "wrote " + fl.output + ".json and " + fl.output + ".csv");
}

int bench_table1(const Flags& fl, ExperimentConfig cfg)
{
    cfg.distribution = EntryDistribution::Normal;
    const StudySummary s = random_pair_study(cfg);
    Json j{{"study", "table1"},
           {"config", config_json(cfg)},
           {"sampling", "entries i.i.d. Normal(0,1); a pair is kept when both matrices have a Perron eigenvalue"},
           {"pairs_drawn", s.pairs_drawn},
           {"trials", s.total()},
           {"no_cone", s.no_cone},
           {"cone_found", s.cone_found},
           {"unknown", s.unknown},
           {"no_cone_fraction", s.fraction(Verdict::NoCone)},
           {"cone_found_fraction", s.fraction(Verdict::ConeFound)},
           {"unknown_fraction", s.fraction(Verdict::Unknown)}};
    std::ostringstream csv;
    csv << "d,trials,no_cone,cone_found,unknown,no_cone_fraction,cone_found_fraction,unknown_fraction\n"
        << cfg.dim << ',' << s.total() << ',' << s.no_cone << ',' << s.cone_found << ',' << s.unknown << ','
        << s.fraction(Verdict::NoCone) << ',' << s.fraction(Verdict::ConeFound) << ','
        << s.fraction(Verdict::Unknown) << '\n';
    write_summary(fl, j, csv.str());
    return exit_definitive;
}

int bench_lambda(const Flags& fl, ExperimentConfig cfg)
{
    cfg.distribution = EntryDistribution::Uniform;
    const LambdaSweep s = lambda_sweep(cfg);
    Json probes = Json::array();
    for (const auto& p : s.probes) {
        probes.push_back({{"lambda", p.lambda}, {"verdict", to_string(p.verdict)}, {"method", p.method}});
    }
    OutcomeMetadata meta;
    meta.command = "bench lambda";
    meta.tol = cfg.tol;
    meta.seed = cfg.seed;
    Json j{{"study", "lambda"},
           {"config", config_json(cfg)},
           {"family", family_to_json(s.family)},
           {"lambda_minus", s.lambda_minus},
           {"lambda_plus", s.lambda_plus},
           {"width", s.lambda_plus - s.lambda_minus},
           {"lower", outcome_to_json({s.lower, meta})},
           {"upper", outcome_to_json({s.upper, meta})},
           {"probes", probes},
           {"anomalies", s.anomalies}};
    std::ostringstream csv;
    csv << std::setprecision(17) << "d,lambda_minus,lambda_plus,width,probes,anomalies\n"
        << cfg.dim << ',' << s.lambda_minus << ',' << s.lambda_plus << ',' << s.lambda_plus - s.lambda_minus << ','
        << s.probes.size() << ',' << s.anomalies.size() << '\n';
    write_summary(fl, j, csv.str());
    return exit_definitive;
}

int bench_boolean(const Flags& fl, ExperimentConfig cfg)
{
    cfg.distribution = EntryDistribution::Boolean;
    cfg.dim = 3;
    const BooleanSummary s = boolean_sweep(cfg);
    Json j{{"study", "boolean"},
           {"config", config_json(cfg)},
           {"pairs", s.pairs},
           {"successes", s.successes},
           {"success_rate", s.success_rate()},
           {"max_trees", s.max_trees},
           {"longest_word", format_word(s.longest_word)}};
    std::ostringstream csv;
    csv << "pairs,successes,success_rate,max_trees,longest_word\n"
        << s.pairs << ',' << s.successes << ',' << s.success_rate() << ',' << s.max_trees << ','
        << format_word(s.longest_word) << '\n';
    write_summary(fl, j, csv.str());
    return exit_definitive;
}

int cmd_bench(const Flags& fl)
{
    Json j;
    ExperimentConfig cfg;
    std::string study;
    try {
        j = read_json(fl.input);
        study = j.value("study", "table1");
        cfg = config_from(j);
    } catch (const Error& e) {
        throw InputError(e.what());
    } catch (const Json::exception& e) {
        throw InputError(fl.input + ": " + e.what());
    }
    log(Level::Info, "bench " + study + ", d = " + std::to_string(cfg.dim) + ", " + std::to_string(cfg.trials)
                         + " trials");
    if (study == "table1") {
        return bench_table1(fl, cfg);
    }
    if (study == "lambda") {
        return bench_lambda(fl, cfg);
    }
    if (study == "boolean") {
        return bench_boolean(fl, cfg);
    }
    throw InputError("unknown study '" + study + "'");
}

int cmd_verify(const Flags& fl, const std::string& outcome_path)
{
    const MatrixFamily f = load_family(fl.input);
    OutcomeFile of;
    try {
        of = outcome_from_json(read_json(outcome_path), f.dim());
    } catch (const Error& e) {
        throw InputError(e.what());
    } catch (const Json::exception& e) {
        throw InputError(outcome_path + ": " + e.what());
    }
    const Tolerances tol = fl.tol > 0.0 ? fl.tolerances() : of.metadata.tol;
    const MatrixFamily target = of.metadata.command == "maximal" ? f.transposed() : f;
    if (!is_definitive(of.outcome)) {
        std::cout << "Inconclusive: nothing to verify\n";
        return exit_inconclusive;
    }
    const Verification v = verify_certificate(target, of.outcome, tol);
    if (v.ok) {
        std::cout << "verified " << verdict_name(of.outcome) << '\n';
        return exit_definitive;
    }
    std::cout << "REJECTED " << verdict_name(of.outcome) << ": " << v.failure << '\n';
    return exit_input;
}

void add_common(CLI::App* sub, Flags& fl, bool with_section)
{
    sub->add_option("input", fl.input, "family JSON file")->required();
    sub->add_option("-o,--output", fl.output, "output path (default: stdout)");
    sub->add_option("--tol", fl.tol, "LP feasibility tolerance; the others scale with it")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", fl.budget, "iteration or word budget")->check(CLI::PositiveNumber);
    sub->add_option("--seed", fl.seed, "RNG seed");
    sub->add_option("--format", fl.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    if (with_section) {
        sub->add_option("--section", fl.section, "write d = 3 cross-section data to this file");
        sub->add_option("--plane", fl.plane, "section plane: (c, x) = 1 or x_axis = 1")
            ->check(CLI::IsMember({"axis", "center"}));
        sub->add_option("--axis", fl.axis, "coordinate for --plane axis (0-based, default 2 = z)")
            ->check(CLI::Range(0, 2));
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kone: invariant cones of matrix families"};
    app.require_subcommand(1);
    Flags fl;
    std::string outcome_path;

    auto* check = app.add_subcommand("check", "decide 'no invariant cone' with the primal-dual algorithm");
    add_common(check, fl, false);

    auto* construct = app.add_subcommand("construct", "build an invariant cone with the polyhedral algorithm");
    add_common(construct, fl, true);
    construct->add_option("--t-scale", fl.t_scale, "scaling t > 1 of the polyhedral algorithm")
        ->check(CLI::Range(1.0, 1e6));

    auto* minimal = app.add_subcommand("minimal", "construct the minimal invariant cone from cyclic trees");
    add_common(minimal, fl, true);
    minimal->add_option("--dual-warmup", fl.dual_warmup, "direct iterations on A^T (default d + 3)")
        ->check(CLI::NonNegativeNumber);

    auto* maximal = app.add_subcommand("maximal", "maximal invariant cone as the dual of K_min(A^T)");
    add_common(maximal, fl, false);
    maximal->add_option("--dual-warmup", fl.dual_warmup, "direct iterations on A (default d + 3)")
        ->check(CLI::NonNegativeNumber);

    auto* direct = app.add_subcommand("direct", "run the direct algorithm and record its trace");
    add_common(direct, fl, true);

    auto* bench = app.add_subcommand("bench", "run a numerical study from a config file");
    bench->add_option("config", fl.input, "study config JSON")->required();
    bench->add_option("-o,--output", fl.output, "prefix for <prefix>.json and <prefix>.csv");
    bench->add_option("--format", fl.format, "stdout format when no prefix is given")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "re-check the certificate in an outcome file");
    verify->add_option("input", fl.input, "family JSON file")->required();
    verify->add_option("outcome", outcome_path, "outcome JSON file")->required();
    verify->add_option("--tol", fl.tol, "override the recorded tolerances")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*check) {
            return cmd_check(fl);
        }
        if (*construct) {
            return cmd_construct(fl);
        }
        if (*minimal) {
            return cmd_minimal(fl);
        }
        if (*maximal) {
            return cmd_maximal(fl);
        }
        if (*direct) {
            return cmd_direct(fl);
        }
        if (*bench) {
            return cmd_bench(fl);
        }
        if (*verify) {
            return cmd_verify(fl, outcome_path);
        }
    } catch (const InputError& e) {
        std::cerr << "kone: " << e.what() << '\n';
        return exit_input;
    } catch (const Error& e) {
        std::cerr << "kone: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

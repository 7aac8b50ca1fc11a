#ifndef KONE_IO_HPP
#define KONE_IO_HPP

// JSON family and outcome files. Doubles are written in the shortest form that
// parses back to the same value, so every vector round-trips exactly.

#include "kone/certificate.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>

namespace kone {

using Json = nlohmann::json;

class ParseError : public Error {
public:
    using Error::Error;
};

namespace io {

inline Json to_json(const Vector& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        a.push_back(v[i]);
    }
    return a;
}

inline Vector vector_from(const Json& j)
{
    if (!j.is_array()) {
        throw ParseError("expected an array of numbers");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw ParseError("expected a number");
        }
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

inline Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        rows.push_back(to_json(Vector(m.row(i).transpose())));
    }
    return rows;
}

inline Matrix matrix_from(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw ParseError("a matrix must be a nonempty array of rows");
    }
    const auto d = static_cast<Eigen::Index>(j.size());
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Vector row = vector_from(j[static_cast<std::size_t>(i)]);
        if (row.size() != d) {
            throw DimensionMismatch("matrix is not square");
        }
        m.row(i) = row.transpose();
    }
    return m;
}

/// Words are stored as letter arrays d_1..d_n, the first letter acting first.
inline Json to_json(const Word& w)
{
    return Json(w.letters);
}

inline Word word_from(const Json& j)
{
    if (!j.is_array()) {
        throw ParseError("a word must be an array of letters");
    }
    Word w;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<int>() < 1) {
            throw ParseError("word letters are positive integers");
        }
        w.letters.push_back(x.get<int>());
    }
    return w;
}

inline Json to_json(const Seed& s)
{
    Json j{{"kind", to_string(s.kind)}};
    switch (s.kind) {
    case Seed::Kind::Mean:
        break;
    case Seed::Kind::Combination:
        j["weights"] = s.weights;
        break;
    case Seed::Kind::Product:
        j["word"] = to_json(s.word);
        break;
    case Seed::Kind::Explicit:
        j["vector"] = to_json(s.vector);
        break;
    }
    return j;
}

inline Seed seed_from(const Json& j)
{
    static const std::map<std::string, Seed::Kind> kinds{{"mean", Seed::Kind::Mean},
                                                         {"combination", Seed::Kind::Combination},
                                                         {"product", Seed::Kind::Product},
                                                         {"explicit", Seed::Kind::Explicit}};
    const auto it = kinds.find(j.at("kind").get<std::string>());
    if (it == kinds.end()) {
        throw ParseError("unknown seed kind");
    }
    Seed s;
    s.kind = it->second;
    if (s.kind == Seed::Kind::Combination) {
        s.weights = j.at("weights").get<std::vector<double>>();
    } else if (s.kind == Seed::Kind::Product) {
        s.word = word_from(j.at("word"));
    } else if (s.kind == Seed::Kind::Explicit) {
        s.vector = vector_from(j.at("vector"));
    }
    return s;
}

inline Json to_json(const Chain& c)
{
    return Json{{"seed", to_json(c.seed)}, {"path", to_json(c.path)}, {"transposed", c.transposed}};
}

inline Chain chain_from(const Json& j)
{
    return Chain{seed_from(j.at("seed")), word_from(j.at("path")), j.value("transposed", false)};
}

inline Json to_json(const Certificate& c)
{
    Json j{{"type", certificate_name(c)}};
    if (const auto* np = std::get_if<NegativePairing>(&c)) {
        j["primal"] = to_json(np->primal);
        j["dual"] = to_json(np->dual);
        j["value"] = np->value;
        j["anchor_primal"] = to_json(np->anchor_primal);
        j["anchor_dual"] = to_json(np->anchor_dual);
        j["anchor_value"] = np->anchor_value;
    } else if (const auto* sc = std::get_if<SimplexCover>(&c)) {
        Json pts = Json::array();
        for (const auto& p : sc->points) {
            pts.push_back(to_json(p));
        }
        j["points"] = pts;
    } else if (const auto* sw = std::get_if<SpectralWitness>(&c)) {
        static const char* subjects[] = {"mean", "mean_transpose", "product"};
        j["subject"] = subjects[static_cast<int>(sw->subject)];
        j["kind"] = sw->kind == SpectralWitness::Kind::NoPerron ? "no_perron" : "not_simple";
        j["word"] = to_json(sw->word);
    } else {
        Json recs = Json::array();
        for (const auto& r : std::get<InvarianceProof>(c).records) {
            recs.push_back({{"matrix", r.matrix}, {"generator", r.generator}, {"residual", r.residual}});
        }
        j["records"] = recs;
    }
    return j;
}

inline Certificate certificate_from(const Json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "NegativePairing") {
        NegativePairing np;
        np.primal = chain_from(j.at("primal"));
        np.dual = chain_from(j.at("dual"));
        np.value = j.at("value").get<double>();
        np.anchor_primal = chain_from(j.at("anchor_primal"));
        np.anchor_dual = chain_from(j.at("anchor_dual"));
        np.anchor_value = j.at("anchor_value").get<double>();
        return np;
    }
    if (type == "SimplexCover") {
        SimplexCover sc;
        for (const auto& p : j.at("points")) {
            sc.points.push_back(chain_from(p));
        }
        return sc;
    }
    if (type == "SpectralWitness") {
        SpectralWitness sw;
        const std::string subject = j.at("subject").get<std::string>();
        if (subject == "mean") {
            sw.subject = SpectralWitness::Subject::Mean;
        } else if (subject == "mean_transpose") {
            sw.subject = SpectralWitness::Subject::MeanTranspose;
        } else if (subject == "product") {
            sw.subject = SpectralWitness::Subject::Product;
        } else {
            throw ParseError("unknown spectral witness subject");
        }
        sw.kind = j.at("kind").get<std::string>() == "no_perron" ? SpectralWitness::Kind::NoPerron
                                                                 : SpectralWitness::Kind::NotSimple;
        sw.word = word_from(j.value("word", Json::array()));
        return sw;
    }
    if (type == "InvarianceProof") {
        InvarianceProof p;
        for (const auto& r : j.at("records")) {
            p.records.push_back({r.at("matrix").get<int>(), r.at("generator").get<int>(),
                                 r.at("residual").get<double>()});
        }
        return p;
    }
    throw ParseError("unknown certificate type '" + type + "'");
}

inline Json cone_to_json(const GeneratorCone& k)
{
    Json a = Json::array();
    for (int i = 0; i < k.size(); ++i) {
        a.push_back(to_json(k.generator(i)));
    }
    return a;
}

/// Generators are stored exactly as written; no renormalization.
inline GeneratorCone cone_from(const Json& j, int dim)
{
    if (!j.is_array()) {
        throw ParseError("generators must be an array");
    }
    Matrix m(dim, static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Vector v = vector_from(j[i]);
        if (v.size() != dim) {
            throw DimensionMismatch("generator dimension differs from the family");
        }
        m.col(static_cast<Eigen::Index>(i)) = v;
    }
    GeneratorCone k(dim);
    Tolerances exact;
    exact.dedup_angle = std::numeric_limits<double>::min();
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
        k.append(m.col(i), exact);
    }
    return k;
}

} // namespace io

/// Run parameters recorded next to an outcome.
struct OutcomeMetadata {
    std::string command;
    Tolerances tol;
    std::map<std::string, double> budgets;
    std::uint64_t seed = 1;
    std::string version = "0.1.0";
};

struct OutcomeFile {
    Outcome outcome;
    OutcomeMetadata metadata;
};

inline Json family_to_json(const MatrixFamily& f, const std::vector<std::string>& labels = {})
{
    Json ms = Json::array();
    for (const auto& a : f.matrices()) {
        ms.push_back(io::to_json(a));
    }
    Json j{{"dim", f.dim()}, {"matrices", ms}};
    if (!labels.empty()) {
        j["labels"] = labels;
    }
    return j;
}

inline MatrixFamily family_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("matrices")) {
        throw ParseError("family file needs a 'matrices' array");
    }
    const Json& ms = j.at("matrices");
    if (!ms.is_array() || ms.empty()) {
        throw ParseError("family file has no matrices");
    }
    std::vector<Matrix> out;
    for (const auto& m : ms) {
        out.push_back(io::matrix_from(m));
    }
    MatrixFamily f(std::move(out));
    if (j.contains("dim") && j.at("dim").get<int>() != f.dim()) {
        throw DimensionMismatch("family file: 'dim' differs from the matrix size");
    }
    return f;
}

inline Json tolerances_to_json(const Tolerances& t)
{
    return Json{{"eig_gap", t.eig_gap},
                {"lp_feas", t.lp_feas},
                {"member_margin", t.member_margin},
                {"sign_eps", t.sign_eps},
                {"dedup_angle", t.dedup_angle}};
}

inline Tolerances tolerances_from_json(const Json& j)
{
    Tolerances t;
    t.eig_gap = j.value("eig_gap", t.eig_gap);
    t.lp_feas = j.value("lp_feas", t.lp_feas);
    t.member_margin = j.value("member_margin", t.member_margin);
    t.sign_eps = j.value("sign_eps", t.sign_eps);
    t.dedup_angle = j.value("dedup_angle", t.dedup_angle);
    t.validate();
    return t;
}

inline Json outcome_to_json(const OutcomeFile& f)
{
    const Outcome& o = f.outcome;
    Json j{{"verdict", verdict_name(o)}, {"generators", Json::array()}};
    if (const auto* no = std::get_if<NoInvariantCone>(&o)) {
        j["certificate"] = io::to_json(no->witness);
        j["note"] = no->note;
    } else if (const auto* cf = std::get_if<ConeFound>(&o)) {
        j["generators"] = io::cone_to_json(cf->cone);
        j["center"] = io::to_json(cf->center);
        j["certificate"] = io::to_json(cf->certificate);
    } else if (const auto* mc = std::get_if<MinimalConeFound>(&o)) {
        j["generators"] = io::cone_to_json(mc->cone);
        j["certificate"] = io::to_json(mc->certificate);
        Json trees = Json::array();
        for (const auto& t : mc->trees) {
            Json vs = Json::array();
            for (const auto& v : t.vectors) {
                vs.push_back(io::to_json(v));
            }
            trees.push_back({{"word", io::to_json(t.word)}, {"label", format_word(t.word)}, {"vectors", vs}});
        }
        j["trees"] = trees;
    } else {
        const auto& in = std::get<Inconclusive>(o);
        j["iterations_used"] = in.iterations_used;
        j["reason"] = in.reason;
        if (in.evidence) {
            j["evidence"] = io::to_json(*in.evidence);
        }
    }
    j["metadata"] = Json{{"command", f.metadata.command},
                         {"tolerances", tolerances_to_json(f.metadata.tol)},
                         {"budgets", f.metadata.budgets},
                         {"seed", f.metadata.seed},
                         {"version", f.metadata.version}};
    return j;
}

inline OutcomeFile outcome_from_json(const Json& j, int dim)
{
    OutcomeFile f;
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "NoInvariantCone") {
        f.outcome = NoInvariantCone{io::certificate_from(j.at("certificate")), j.value("note", "")};
    } else if (verdict == "ConeFound") {
        f.outcome = ConeFound{io::cone_from(j.at("generators"), dim), io::vector_from(j.at("center")),
                              io::certificate_from(j.at("certificate"))};
    } else if (verdict == "MinimalConeFound") {
        MinimalConeFound mc{io::cone_from(j.at("generators"), dim), {}, io::certificate_from(j.at("certificate"))};
        for (const auto& t : j.value("trees", Json::array())) {
            CyclicTree tree{io::word_from(t.at("word")), {}};
            for (const auto& v : t.at("vectors")) {
                tree.vectors.push_back(io::vector_from(v));
            }
            mc.trees.push_back(std::move(tree));
        }
        f.outcome = std::move(mc);
    } else if (verdict == "Inconclusive") {
        Inconclusive in{j.value("iterations_used", 0), j.value("reason", ""), std::nullopt};
        if (j.contains("evidence")) {
            in.evidence = io::certificate_from(j.at("evidence"));
        }
        f.outcome = std::move(in);
    } else {
        throw ParseError("unknown verdict '" + verdict + "'");
    }
    if (j.contains("metadata")) {
        const Json& m = j.at("metadata");
        f.metadata.command = m.value("command", "");
        if (m.contains("tolerances")) {
            f.metadata.tol = tolerances_from_json(m.at("tolerances"));
        }
        f.metadata.budgets = m.value("budgets", std::map<std::string, double>{});
        f.metadata.seed = m.value("seed", std::uint64_t{1});
        f.metadata.version = m.value("version", f.metadata.version);
    }
    return f;
}

inline Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

inline void write_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

inline MatrixFamily read_family(const std::string& path)
{
    try {
        return family_from_json(read_json(path));
    } catch (const Json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

} // namespace kone

#endif

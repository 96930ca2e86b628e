#ifndef ORTHORANK_REPORT_HPP
#define ORTHORANK_REPORT_HPP

#include <chrono>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orthorank/bounds.hpp"
#include "orthorank/exact.hpp"
#include "orthorank/graph.hpp"
#include "orthorank/rational.hpp"
#include "orthorank/representation.hpp"
#include "orthorank/spectral.hpp"

#ifndef ORTHORANK_VERSION
#define ORTHORANK_VERSION "0.1.0"
#endif

namespace orthorank {

/// Rounds to 9 significant digits, the precision reports carry. Quantizing
/// before storing makes a JSON round trip reproduce the document exactly.
inline double quantize(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    const double q = std::strtod(buf, nullptr);
    return q == 0.0 ? 0.0 : q;
}

struct GraphInfo {
    std::string name;
    int n = 0;
    int m = 0;
    std::optional<std::string> family;
    std::string graph6;

    friend bool operator==(const GraphInfo&, const GraphInfo&) = default;
};

struct EigenvalueGroup {
    double value = 0.0;
    int multiplicity = 0;

    friend bool operator==(const EigenvalueGroup&, const EigenvalueGroup&) = default;
};

struct SpectrumSummary {
    std::vector<EigenvalueGroup> eigenvalues;  ///< descending, grouped
    Inertia inertia;
    double zero_tolerance = 0.0;
    bool borderline = false;

    friend bool operator==(const SpectrumSummary&, const SpectrumSummary&) = default;
};

struct Provenance {
    std::string target;
    std::string matrix;
    std::string status;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct WeightTerm {
    int v = 0;
    int w = 0;
    double re = 0.0;
    double im = 0.0;

    friend bool operator==(const WeightTerm&, const WeightTerm&) = default;
};

struct WeightedEntry {
    double value = 1.0;
    std::vector<WeightTerm> weights;

    friend bool operator==(const WeightedEntry&, const WeightedEntry&) = default;
};

struct BoundsSection {
    double hoffman = 1.0;
    double lima = 1.0;
    double kolotilina = 1.0;
    std::string inertial = "1";
    std::string weaker_inertial = "1";
    std::map<std::string, double> generalized;
    std::optional<WeightedEntry> weighted_hoffman;
    std::map<std::string, Provenance> provenance;

    friend bool operator==(const BoundsSection&, const BoundsSection&) = default;
};

struct OracleEntry {
    bool exact = false;
    int lower = 0;
    int upper = 0;

    friend bool operator==(const OracleEntry&, const OracleEntry&) = default;
};

struct ExactSection {
    OracleEntry chi;
    OracleEntry omega;
    OracleEntry alpha;
    std::optional<std::string> chi_f;
    long long node_budget = 0;
    int max_n_fractional = 0;

    friend bool operator==(const ExactSection&, const ExactSection&) = default;
};

struct XiSection {
    std::string lower;  ///< "p/q" when the inertial bound is the largest, else decimal
    double lower_value = 1.0;
    std::string lower_source;
    int lower_ceiling = 1;
    std::optional<int> upper;
    std::optional<int> normalized_upper;  ///< certifies xi' <= this
    std::optional<double> certificate_residual;
    std::optional<std::string> certificate_file;

    friend bool operator==(const XiSection&, const XiSection&) = default;
};

struct Check {
    std::string name;
    std::string status;  ///< pass, fail or skipped
    bool soundness = true;
    std::string reason;

    friend bool operator==(const Check&, const Check&) = default;
};

struct Meta {
    std::uint64_t seed = 0;
    std::uint64_t graph_seed = 0;
    std::optional<double> tol_zero;  ///< absent means the default policy
    int restarts = 0;
    int max_iters = 0;
    double success_tolerance = 0.0;
    double verify_tolerance = 0.0;
    int max_n_exact = 0;
    int max_n_xi = 0;
    int weighted_iters = 0;
    long long node_budget = 0;
    std::string tool_version;
    std::optional<double> runtime_seconds;

    friend bool operator==(const Meta&, const Meta&) = default;
};

struct ReportDocument {
    GraphInfo graph;
    std::map<std::string, SpectrumSummary> spectra;
    std::optional<BoundsSection> bounds;
    std::optional<ExactSection> exact;
    std::optional<XiSection> xi;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    Meta meta;

    bool soundness_failed() const {
        for (const auto& c : checks)
            if (c.soundness && c.status == "fail") return true;
        return false;
    }
    bool inconclusive() const {
        return exact && !(exact->chi.exact && exact->omega.exact && exact->alpha.exact);
    }

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// One input item: a family spec ("kneser:5,2"), a graph6 line, or a
/// disjunctive product of those written "a*b". Neither ':' nor '*' occurs
/// in graph6 text, so the forms cannot be confused.
struct GraphSource {
    Graph graph;
    std::optional<FamilySpec> family;
};

inline GraphSource parse_graph_source(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty graph source", 0);
    if (const auto star = text.find('*'); star != std::string_view::npos) {
        const auto left = parse_graph_source(text.substr(0, star));
        const auto right = parse_graph_source(text.substr(star + 1));
        return {disjunctive_product(left.graph, right.graph).renamed(std::string(text)), std::nullopt};
    }
    if (text.find(':') != std::string_view::npos) {
        auto spec = parse_family_spec(text);
        return {generate(spec), spec};
    }
    return {parse_graph6(text), std::nullopt};
}

struct ReportSections {
    bool spectra = true;
    bool bounds = true;
    bool exact = true;
    bool xi = true;
    bool weighted = true;
};

struct ReportOptions {
    ReportSections sections;
    std::uint64_t seed = 0;
    std::uint64_t graph_seed = 0;
    std::optional<double> tol_zero;
    int restarts = 32;
    int max_iters = 2000;
    int max_n_exact = 20;  ///< gates chi, omega, alpha and chi_f
    int max_n_xi = 32;     ///< gates the representation and weighted searches
    int weighted_iters = 200;
    int weighted_restarts = 4;
    long long node_budget = kDefaultNodeBudget;
    bool timing = false;

    void validate() const {
        if (restarts < 1 || max_iters < 1) throw ValidationError("restarts and max-iters must be positive");
        if (max_n_exact < 0 || max_n_xi < 0) throw ValidationError("size limits must be non-negative");
        if (weighted_iters < 0 || weighted_restarts < 1) throw ValidationError("invalid weighted search options");
        if (node_budget < 1) throw ValidationError("node budget must be positive");
        if (tol_zero && !(*tol_zero > 0.0)) throw ValidationError("zero tolerance must be positive");
    }
};

namespace detail {

inline SpectrumSummary summarize(const Spectrum& s) {
    SpectrumSummary out;
    out.inertia = s.inertia;
    out.zero_tolerance = quantize(s.zero_tolerance);
    out.borderline = s.borderline;
    double scale = 1.0;
    for (double x : s.eigenvalues) scale = std::max(scale, std::abs(x));
    const double group_tol = 1e-8 * scale;
    std::size_t i = 0;
    while (i < s.eigenvalues.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < s.eigenvalues.size() && s.eigenvalues[i] - s.eigenvalues[j] <= group_tol) sum += s.eigenvalues[j++];
        double mean = sum / static_cast<double>(j - i);
        if (std::abs(mean) <= s.zero_tolerance) mean = 0.0;
        out.eigenvalues.push_back({quantize(mean), static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

inline Provenance provenance_of(const BoundValue& b) {
    return {std::string(target_name(b.target)), b.matrix, std::string(status_name(b.status))};
}

inline Provenance provenance_of(const RationalBound& b) {
    return {std::string(target_name(b.target)), "adjacency", std::string(status_name(b.status))};
}

inline OracleEntry entry_of(const OracleResult& r) { return {r.exact, r.lower, r.upper}; }

class CheckList {
public:
    void pass_if(std::string name, bool ok, bool soundness = true, std::string detail = {}) {
        checks_.push_back({std::move(name), ok ? "pass" : "fail", soundness, ok ? std::string{} : std::move(detail)});
    }
    void skip(std::string name, std::string reason, bool soundness = true) {
        checks_.push_back({std::move(name), "skipped", soundness, std::move(reason)});
    }
    std::vector<Check> take() { return std::move(checks_); }

private:
    std::vector<Check> checks_;
};

inline std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(9) << x;
    return os.str();
}

} // namespace detail

/// Runs the requested sections on one graph. The seed in `options.graph_seed`
/// drives every randomized search, so equal inputs give equal documents.
inline ReportDocument run_report(const Graph& g, const std::optional<FamilySpec>& family, const ReportOptions& options,
                                 std::optional<OrthoRepresentation>* certificate_out = nullptr) {
    options.validate();
    const auto start = std::chrono::steady_clock::now();
    const int n = g.order();
    ReportDocument doc;
    doc.graph = {g.name(), n, static_cast<int>(g.size()),
                 family ? std::optional<std::string>(to_string(*family)) : std::nullopt, serialize_graph6(g)};
    auto& mt = doc.meta;
    mt.seed = options.seed;
    mt.graph_seed = options.graph_seed;
    mt.tol_zero = options.tol_zero;
    mt.restarts = options.restarts;
    mt.max_iters = options.max_iters;
    mt.success_tolerance = 1e-9;
    mt.verify_tolerance = kVerifyTolerance;
    mt.max_n_exact = options.max_n_exact;
    mt.max_n_xi = options.max_n_xi;
    mt.weighted_iters = options.weighted_iters;
    mt.node_budget = options.node_budget;
    mt.tool_version = ORTHORANK_VERSION;

    const auto& sec = options.sections;
    const bool need_bounds = sec.bounds || sec.xi;
    detail::CheckList checks;

    std::optional<GraphSpectra> spectra;
    std::optional<BoundSet> bounds;
    if (sec.spectra || need_bounds) spectra = compute_spectra(g, options.tol_zero);
    if (sec.spectra) {
        doc.spectra["adjacency"] = detail::summarize(spectra->adjacency);
        doc.spectra["laplacian"] = detail::summarize(spectra->laplacian);
        doc.spectra["signless-laplacian"] = detail::summarize(spectra->signless_laplacian);
    }
    if (need_bounds) {
        bounds = evaluate_bounds(g, *spectra);
        if (sec.weighted && sec.bounds && g.size() > 0 && n <= options.max_n_xi && options.weighted_iters > 0)
            bounds->weighted_hoffman = optimize_weighted_hoffman(
                g, derive_seed(options.graph_seed, 0x77), options.weighted_iters, {options.weighted_restarts, false});
    }
    if (sec.bounds) {
        BoundsSection b;
        b.hoffman = quantize(bounds->hoffman.value);
        b.lima = quantize(bounds->lima.value);
        b.kolotilina = quantize(bounds->kolotilina.value);
        b.inertial = to_string(bounds->inertial.value);
        b.weaker_inertial = to_string(bounds->weaker_inertial.value);
        b.provenance["hoffman"] = detail::provenance_of(bounds->hoffman);
        b.provenance["lima"] = detail::provenance_of(bounds->lima);
        b.provenance["kolotilina"] = detail::provenance_of(bounds->kolotilina);
        b.provenance["inertial"] = detail::provenance_of(bounds->inertial);
        b.provenance["weaker_inertial"] = detail::provenance_of(bounds->weaker_inertial);
        for (const auto& [key, val] : bounds->generalized) {
            b.generalized[key] = quantize(val.value);
            b.provenance["generalized:" + key] = detail::provenance_of(val);
        }
        if (bounds->weighted_hoffman) {
            WeightedEntry w{quantize(bounds->weighted_hoffman->value), {}};
            for (const auto& [e, val] : bounds->weighted_hoffman->weights.values())
                w.weights.push_back({e.first, e.second, quantize(val.real()), quantize(val.imag())});
            b.weighted_hoffman = std::move(w);
            b.provenance["weighted_hoffman"] = {std::string(target_name(Target::chi_vect_le_xi)), "weighted-adjacency",
                                                "ok"};
        }
        doc.bounds = std::move(b);
    }

    std::optional<ExactParams> exact;
    if (sec.exact) {
        if (n <= options.max_n_exact && n <= kMaxExactOrder) {
            exact = compute_exact(g, {options.node_budget, std::min(options.max_n_exact, kMaxFractionalOrder)});
            ExactSection e;
            e.chi = detail::entry_of(exact->chi);
            e.omega = detail::entry_of(exact->omega);
            e.alpha = detail::entry_of(exact->alpha);
            if (exact->chi_f) e.chi_f = to_string(*exact->chi_f);
            e.node_budget = options.node_budget;
            e.max_n_fractional = exact->limits.max_n_fractional;
            doc.exact = std::move(e);
        } else {
            doc.notes.push_back("exact oracles skipped: n = " + std::to_string(n) + " exceeds --max-n-exact " +
                                std::to_string(options.max_n_exact));
        }
    }

    std::optional<XiInterval> xi;
    std::optional<int> normalized_upper;
    if (sec.xi) {
        if (n <= options.max_n_xi) {
            SearchConfig cfg;
            cfg.restarts = options.restarts;
            cfg.max_iters = options.max_iters;
            cfg.seed = options.graph_seed;
            xi = xi_interval(g, *bounds, cfg);
            if (xi->upper && search_normalized_rep(g, *xi->upper, cfg)) normalized_upper = xi->upper;
            if (!xi->upper)
                doc.notes.push_back("no orthogonal representation found up to dimension " + std::to_string(n) +
                                    "; this is not evidence that xi exceeds it");
        } else {
            xi = xi_lower_bound(*bounds);
            doc.notes.push_back("xi search skipped: n = " + std::to_string(n) + " exceeds --max-n-xi " +
                                std::to_string(options.max_n_xi));
        }
        XiSection x;
        x.lower = xi->lower_exact ? to_string(*xi->lower_exact) : detail::fmt(xi->lower);
        x.lower_value = quantize(xi->lower);
        x.lower_source = xi->lower_source;
        x.lower_ceiling = xi->lower_ceiling;
        x.upper = xi->upper;
        x.normalized_upper = normalized_upper;
        if (xi->certificate) x.certificate_residual = quantize(xi->certificate->residual);
        doc.xi = std::move(x);
    }

    // -- consistency checks ---------------------------------------------------
    const bool chi_known = exact && exact->chi.exact;
    const auto chi_rational = chi_known ? Rational(exact->chi.lower) : Rational(0);
    const std::string no_chi = !sec.exact ? "exact oracles not run"
                               : !exact   ? "exact oracles skipped by size limit"
                                          : "chromatic number inconclusive within node budget";

    if (bounds && sec.bounds) {
        const std::pair<const char*, const BoundValue*> named[] = {
            {"hoffman<=chi", &bounds->hoffman}, {"lima<=chi", &bounds->lima}, {"kolotilina<=chi", &bounds->kolotilina}};
        for (const auto& [name, b] : named) {
            if (b->status != BoundStatus::ok)
                checks.skip(name, "bound is " + std::string(status_name(b->status)));
            else if (!chi_known)
                checks.skip(name, no_chi);
            else
                checks.pass_if(name, b->value <= exact->chi.lower + 1e-9, true,
                               detail::fmt(b->value) + " > " + std::to_string(exact->chi.lower));
        }
        if (bounds->inertial.status != BoundStatus::ok)
            checks.skip("inertial<=chi", "bound is degenerate");
        else if (!chi_known)
            checks.skip("inertial<=chi", no_chi);
        else
            checks.pass_if("inertial<=chi", bounds->inertial.value <= chi_rational, true,
                           to_string(bounds->inertial.value) + " > " + std::to_string(exact->chi.lower));

        if (!bounds->weighted_hoffman)
            checks.skip("weighted_hoffman<=chi", "weighted search not run");
        else if (!chi_known)
            checks.skip("weighted_hoffman<=chi", no_chi);
        else
            checks.pass_if("weighted_hoffman<=chi", bounds->weighted_hoffman->value <= exact->chi.lower + 1e-9);
        if (bounds->weighted_hoffman)
            checks.pass_if("weighted_hoffman>=hoffman", bounds->weighted_hoffman->value >= bounds->hoffman.value - 1e-9);
        else
            checks.skip("weighted_hoffman>=hoffman", "weighted search not run");

        const auto& in = spectra->adjacency.inertia;
        checks.pass_if("weaker_inertial<=inertial", bounds->weaker_inertial.value <= bounds->inertial.value);
        if (bounds->inertial.status == BoundStatus::ok)
            checks.pass_if("weaker_inertial==inertial iff nullity 0",
                           (bounds->weaker_inertial.value == bounds->inertial.value) == (in.zero == 0));
        else
            checks.skip("weaker_inertial==inertial iff nullity 0", "bound is degenerate");

        if (g.size() == 0)
            checks.skip("regular_collapse", "graph has no edges");
        else if (!g.regular_degree())
            checks.skip("regular_collapse", "graph is not regular");
        else
            checks.pass_if("regular_collapse",
                           std::abs(bounds->hoffman.value - bounds->lima.value) < 1e-8 &&
                               std::abs(bounds->hoffman.value - bounds->kolotilina.value) < 1e-8);

        const std::pair<const char*, const BoundValue*> gens[] = {{"E=0", &bounds->hoffman},
                                                                  {"E=D", &bounds->kolotilina}};
        for (const auto& [key, ref] : gens) {
            const std::string name = std::string("generalized[") + key + "]==" + (key[2] == '0' ? "hoffman" : "kolotilina");
            const auto& gb = bounds->generalized.at(key);
            if (ref->status != BoundStatus::ok || gb.status != BoundStatus::ok)
                checks.skip(name, "bound is not defined for this graph");
            else
                checks.pass_if(name, std::abs(gb.value - ref->value) < 1e-9);
        }

        if (spectra->adjacency.borderline) {
            const auto ex = exact_inertia(g);
            checks.pass_if("exact_inertia", ex == in, true, "floating-point inertia disagrees with exact inertia");
        } else {
            checks.skip("exact_inertia", "no eigenvalue near the zero tolerance");
        }
    }

    if (exact) {
        if (exact->chi.exact && exact->omega.exact && exact->chi_f) {
            checks.pass_if("omega<=chi_f<=chi",
                           Rational(exact->omega.lower) <= *exact->chi_f && *exact->chi_f <= chi_rational);
        } else {
            checks.skip("omega<=chi_f<=chi", exact->chi_f ? "oracle inconclusive" : "n exceeds the LP size limit");
        }
        if (exact->alpha.exact && exact->chi_f)
            checks.pass_if("chi_f>=n/alpha", *exact->chi_f >= Rational(n, exact->alpha.lower));
        else
            checks.skip("chi_f>=n/alpha", exact->chi_f ? "oracle inconclusive" : "n exceeds the LP size limit");
        if (bounds && exact->chi_f) {
            checks.pass_if("weaker_inertial<=chi_f", bounds->weaker_inertial.value <= *exact->chi_f, true,
                           to_string(bounds->weaker_inertial.value) + " > " + to_string(*exact->chi_f));
            // Would refute the conjectured strengthening, not indicate a bug.
            checks.pass_if("conjecture: inertial<=chi_f", bounds->inertial.value <= *exact->chi_f, false,
                           to_string(bounds->inertial.value) + " > " + to_string(*exact->chi_f));
        }
    }

    if (xi) {
        if (!xi->certificate) {
            for (const char* name : {"inertial<=xi_upper", "certificate_verified", "conversion_identity",
                                     "inertia_dimension_inequality"})
                checks.skip(name, n > options.max_n_xi ? "xi search skipped by size limit" : "no certificate found");
        } else {
            const auto& cert = *xi->certificate;
            const int d = cert.dimension;
            checks.pass_if("inertial<=xi_upper", bounds->inertial.value <= Rational(d));
            const auto ver = verify_representation(g, cert);
            checks.pass_if("certificate_verified", ver.valid, true,
                           ver.diagnostics.empty() ? std::string{} : ver.diagnostics.front());
            const auto normalized = normalize_first_entries(g, cert, derive_seed(options.graph_seed, 0x6e));
            const double conv = verify_conversion_identity(g, normalized);
            checks.pass_if("conversion_identity", conv < 1e-8, true, "residual " + detail::fmt(conv));
            checks.pass_if("inertia_dimension_inequality",
                           satisfies_inertial_inequality(d, spectra->adjacency.inertia));
            if (certificate_out) *certificate_out = cert;
        }
    }
    doc.checks = checks.take();

    // -- notes ------------------------------------------------------------------
    if (bounds && (!exact || !exact->chi_f) && bounds->weaker_inertial.status == BoundStatus::ok)
        doc.notes.push_back("chi_f >= " + to_string(bounds->weaker_inertial.value) +
                            " (weaker inertial bound on xi_f, and xi_f <= chi_f)");
    if (sec.bounds)
        doc.notes.push_back("bounds tagged chi_vect<=xi also bound the vectorial chromatic number; "
                            "theta, theta+, chi_vect, chi_sv and quantum chromatic numbers need semidefinite "
                            "programming and are out of scope");

    if (options.timing)
        doc.meta.runtime_seconds =
            quantize(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return doc;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {
inline nlohmann::json oracle_json(const OracleEntry& e) {
    if (e.exact) return e.lower;
    return {{"lower", e.lower}, {"upper", e.upper}, {"inconclusive", true}};
}

inline OracleEntry oracle_from(const nlohmann::json& j) {
    if (j.is_number_integer()) return {true, j.get<int>(), j.get<int>()};
    return {false, j.at("lower").get<int>(), j.at("upper").get<int>()};
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}
} // namespace detail

inline nlohmann::json to_json(const ReportDocument& doc) {
    using nlohmann::json;
    json j;
    j["graph"] = {{"name", doc.graph.name},
                  {"n", doc.graph.n},
                  {"m", doc.graph.m},
                  {"family", detail::optional_json(doc.graph.family)},
                  {"graph6", doc.graph.graph6}};
    if (!doc.spectra.empty()) {
        json sp = json::object();
        for (const auto& [kind, s] : doc.spectra) {
            json ev = json::array();
            for (const auto& grp : s.eigenvalues) ev.push_back({grp.value, grp.multiplicity});
            sp[kind] = {{"eigenvalues", ev},
                        {"inertia", {s.inertia.positive, s.inertia.zero, s.inertia.negative}},
                        {"zero_tolerance", s.zero_tolerance},
                        {"borderline", s.borderline}};
        }
        j["spectra"] = std::move(sp);
    }
    if (doc.bounds) {
        const auto& b = *doc.bounds;
        json bj = {{"hoffman", b.hoffman},     {"lima", b.lima},
                   {"kolotilina", b.kolotilina}, {"inertial", b.inertial},
                   {"weaker_inertial", b.weaker_inertial}};
        bj["generalized"] = b.generalized;
        if (b.weighted_hoffman) {
            json ws = json::array();
            for (const auto& t : b.weighted_hoffman->weights) ws.push_back({t.v, t.w, t.re, t.im});
            bj["weighted_hoffman"] = {{"value", b.weighted_hoffman->value}, {"weights", ws}};
        }
        json prov = json::object();
        for (const auto& [key, p] : b.provenance)
            prov[key] = {{"target", p.target}, {"matrix", p.matrix}, {"status", p.status}};
        bj["provenance"] = std::move(prov);
        j["bounds"] = std::move(bj);
    }
    if (doc.exact) {
        const auto& e = *doc.exact;
        j["exact"] = {{"chi", detail::oracle_json(e.chi)},
                      {"omega", detail::oracle_json(e.omega)},
                      {"alpha", detail::oracle_json(e.alpha)},
                      {"chi_f", detail::optional_json(e.chi_f)},
                      {"limits", {{"node_budget", e.node_budget}, {"max_n_fractional", e.max_n_fractional}}}};
    }
    if (doc.xi) {
        const auto& x = *doc.xi;
        j["xi"] = {{"lower", x.lower},
                   {"lower_value", x.lower_value},
                   {"lower_source", x.lower_source},
                   {"lower_ceiling", x.lower_ceiling},
                   {"upper", detail::optional_json(x.upper)},
                   {"normalized_upper", detail::optional_json(x.normalized_upper)},
                   {"certificate",
                    x.certificate_residual
                        ? json{{"residual", *x.certificate_residual}, {"file", detail::optional_json(x.certificate_file)}}
                        : json(nullptr)}};
    }
    json cs = json::array();
    for (const auto& c : doc.checks) {
        json cj = {{"name", c.name}, {"status", c.status}, {"soundness", c.soundness}};
        if (!c.reason.empty()) cj["reason"] = c.reason;
        cs.push_back(std::move(cj));
    }
    j["checks"] = std::move(cs);
    j["notes"] = doc.notes;
    const auto& m = doc.meta;
    j["meta"] = {{"seed", m.seed},
                 {"graph_seed", m.graph_seed},
                 {"tol_zero", detail::optional_json(m.tol_zero)},
                 {"restarts", m.restarts},
                 {"max_iters", m.max_iters},
                 {"success_tolerance", m.success_tolerance},
                 {"verify_tolerance", m.verify_tolerance},
                 {"max_n_exact", m.max_n_exact},
                 {"max_n_xi", m.max_n_xi},
                 {"weighted_iters", m.weighted_iters},
                 {"node_budget", m.node_budget},
                 {"tool_version", m.tool_version}};
    if (m.runtime_seconds) j["meta"]["runtime_seconds"] = *m.runtime_seconds;
    return j;
}

inline ReportDocument report_from_json(const nlohmann::json& j) {
    try {
        ReportDocument doc;
        const auto& gj = j.at("graph");
        doc.graph = {gj.at("name").get<std::string>(), gj.at("n").get<int>(), gj.at("m").get<int>(),
                     detail::optional_from<std::string>(gj, "family"), gj.at("graph6").get<std::string>()};
        if (j.contains("spectra"))
            for (const auto& [kind, sj] : j.at("spectra").items()) {
                SpectrumSummary s;
                for (const auto& grp : sj.at("eigenvalues")) s.eigenvalues.push_back({grp.at(0).get<double>(), grp.at(1).get<int>()});
                const auto& in = sj.at("inertia");
                s.inertia = {in.at(0).get<int>(), in.at(1).get<int>(), in.at(2).get<int>()};
                s.zero_tolerance = sj.at("zero_tolerance").get<double>();
                s.borderline = sj.at("borderline").get<bool>();
                doc.spectra[kind] = std::move(s);
            }
        if (j.contains("bounds")) {
            const auto& bj = j.at("bounds");
            BoundsSection b;
            b.hoffman = bj.at("hoffman").get<double>();
            b.lima = bj.at("lima").get<double>();
            b.kolotilina = bj.at("kolotilina").get<double>();
            b.inertial = bj.at("inertial").get<std::string>();
            b.weaker_inertial = bj.at("weaker_inertial").get<std::string>();
            b.generalized = bj.at("generalized").get<std::map<std::string, double>>();
            if (bj.contains("weighted_hoffman")) {
                WeightedEntry w{bj["weighted_hoffman"].at("value").get<double>(), {}};
                for (const auto& t : bj["weighted_hoffman"].at("weights"))
                    w.weights.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>(), t.at(3).get<double>()});
                b.weighted_hoffman = std::move(w);
            }
            for (const auto& [key, p] : bj.at("provenance").items())
                b.provenance[key] = {p.at("target").get<std::string>(), p.at("matrix").get<std::string>(),
                                     p.at("status").get<std::string>()};
            doc.bounds = std::move(b);
        }
        if (j.contains("exact")) {
            const auto& ej = j.at("exact");
            ExactSection e;
            e.chi = detail::oracle_from(ej.at("chi"));
            e.omega = detail::oracle_from(ej.at("omega"));
            e.alpha = detail::oracle_from(ej.at("alpha"));
            e.chi_f = detail::optional_from<std::string>(ej, "chi_f");
            e.node_budget = ej.at("limits").at("node_budget").get<long long>();
            e.max_n_fractional = ej.at("limits").at("max_n_fractional").get<int>();
            doc.exact = std::move(e);
        }
        if (j.contains("xi")) {
            const auto& xj = j.at("xi");
            XiSection x;
            x.lower = xj.at("lower").get<std::string>();
            x.lower_value = xj.at("lower_value").get<double>();
            x.lower_source = xj.at("lower_source").get<std::string>();
            x.lower_ceiling = xj.at("lower_ceiling").get<int>();
            x.upper = detail::optional_from<int>(xj, "upper");
            x.normalized_upper = detail::optional_from<int>(xj, "normalized_upper");
            if (!xj.at("certificate").is_null()) {
                x.certificate_residual = xj["certificate"].at("residual").get<double>();
                x.certificate_file = detail::optional_from<std::string>(xj["certificate"], "file");
            }
            doc.xi = std::move(x);
        }
        for (const auto& cj : j.at("checks"))
            doc.checks.push_back({cj.at("name").get<std::string>(), cj.at("status").get<std::string>(),
                                  cj.at("soundness").get<bool>(), cj.value("reason", std::string{})});
        doc.notes = j.at("notes").get<std::vector<std::string>>();
        const auto& mj = j.at("meta");
        auto& m = doc.meta;
        m.seed = mj.at("seed").get<std::uint64_t>();
        m.graph_seed = mj.at("graph_seed").get<std::uint64_t>();
        m.tol_zero = detail::optional_from<double>(mj, "tol_zero");
        m.restarts = mj.at("restarts").get<int>();
        m.max_iters = mj.at("max_iters").get<int>();
        m.success_tolerance = mj.at("success_tolerance").get<double>();
        m.verify_tolerance = mj.at("verify_tolerance").get<double>();
        m.max_n_exact = mj.at("max_n_exact").get<int>();
        m.max_n_xi = mj.at("max_n_xi").get<int>();
        m.weighted_iters = mj.at("weighted_iters").get<int>();
        m.node_budget = mj.at("node_budget").get<long long>();
        m.tool_version = mj.at("tool_version").get<std::string>();
        m.runtime_seconds = detail::optional_from<double>(mj, "runtime_seconds");
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

enum class Format { json, table };

namespace detail {
inline std::string rational_or_decimal(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return s;
    return s + " (" + fmt(to_double(parse_rational(s))) + ")";
}

inline std::string oracle_text(const OracleEntry& e) {
    if (e.exact) return std::to_string(e.lower);
    return "[" + std::to_string(e.lower) + ", " + std::to_string(e.upper) + "] inconclusive";
}
} // namespace detail

/// JSON is a single line; the table is a fixed-layout summary.
inline std::string emit(const ReportDocument& doc, Format format) {
    if (format == Format::json) return to_json(doc).dump();

    std::ostringstream os;
    auto row = [&os](const std::string& key, const std::string& value) {
        os << "  " << std::left << std::setw(30) << key << value << '\n';
    };
    os << "graph " << (doc.graph.name.empty() ? doc.graph.graph6 : doc.graph.name) << '\n';
    row("n, m", std::to_string(doc.graph.n) + ", " + std::to_string(doc.graph.m));
    row("graph6", doc.graph.graph6);
    for (const auto& [kind, s] : doc.spectra) {
        std::string ev;
        for (const auto& grp : s.eigenvalues) {
            if (!ev.empty()) ev += ", ";
            ev += detail::fmt(grp.value);
            if (grp.multiplicity > 1) ev += " x" + std::to_string(grp.multiplicity);
        }
        row("spectrum " + kind, ev);
        if (kind == "adjacency")
            row("inertia (n+, n0, n-)", "(" + std::to_string(s.inertia.positive) + ", " + std::to_string(s.inertia.zero) +
                                            ", " + std::to_string(s.inertia.negative) + ")" +
                                            (s.borderline ? "  borderline" : ""));
    }
    if (doc.bounds) {
        const auto& b = *doc.bounds;
        auto bound_row = [&](const std::string& name, const std::string& value) {
            const auto& p = b.provenance.at(name);
            std::string tag = "[" + p.target + "]";
            if (p.status != "ok") tag += " " + p.status;
            row(name, value + "  " + tag);
        };
        bound_row("hoffman", detail::fmt(b.hoffman));
        bound_row("lima", detail::fmt(b.lima));
        bound_row("kolotilina", detail::fmt(b.kolotilina));
        bound_row("inertial", detail::rational_or_decimal(b.inertial));
        bound_row("weaker_inertial", detail::rational_or_decimal(b.weaker_inertial));
        for (const auto& [key, v] : b.generalized) bound_row("generalized:" + key, detail::fmt(v));
        if (b.weighted_hoffman) bound_row("weighted_hoffman", detail::fmt(b.weighted_hoffman->value));
    }
    if (doc.exact) {
        const auto& e = *doc.exact;
        row("chi", detail::oracle_text(e.chi));
        row("omega", detail::oracle_text(e.omega));
        row("alpha", detail::oracle_text(e.alpha));
        row("chi_f", e.chi_f ? detail::rational_or_decimal(*e.chi_f) : "not computed");
    }
    if (doc.xi) {
        const auto& x = *doc.xi;
        row("xi lower", x.lower + " from " + x.lower_source + ", so xi >= " + std::to_string(x.lower_ceiling));
        row("xi upper", x.upper ? std::to_string(*x.upper) + " (residual " + detail::fmt(*x.certificate_residual) + ")"
                                : "no certificate");
        if (x.normalized_upper) row("xi' upper", std::to_string(*x.normalized_upper));
    }
    int failed = 0, passed = 0, skipped = 0;
    for (const auto& c : doc.checks) {
        if (c.status == "pass") ++passed;
        if (c.status == "skipped") ++skipped;
        if (c.status == "fail") ++failed;
    }
    row("checks", std::to_string(passed) + " pass, " + std::to_string(failed) + " fail, " + std::to_string(skipped) +
                      " skipped");
    for (const auto& c : doc.checks)
        if (c.status == "fail")
            os << "    FAIL " << c.name << (c.soundness ? "" : " (exploratory)")
               << (c.reason.empty() ? "" : ": " + c.reason) << '\n';
    for (const auto& note : doc.notes) os << "  note: " << note << '\n';
    return os.str();
}

} // namespace orthorank

#endif // ORTHORANK_REPORT_HPP

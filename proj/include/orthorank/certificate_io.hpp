#ifndef ORTHORANK_CERTIFICATE_IO_HPP
#define ORTHORANK_CERTIFICATE_IO_HPP

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "orthorank/graph.hpp"
#include "orthorank/representation.hpp"

namespace orthorank {

// Certificate files:
//   {"type": "orthogonal", "graph6": "...", "dimension": d, "normalized": bool,
//    "vectors": [[[re, im], ...], ...], "residual": r}
//   {"type": "projector", "graph6": "...", "dimension": d, "rank": r,
//    "projectors": [[[re, im], ... d*d entries row-major], ...], "residual": r}
// Doubles are written in shortest round-trip form, so files reload bit-exactly.

namespace detail {
inline nlohmann::json complex_array(std::span<const cplx> xs) {
    auto out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back({x.real(), x.imag()});
    return out;
}

inline cplx complex_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}
} // namespace detail

inline nlohmann::json to_json(const Graph& g, const OrthoRepresentation& rep) {
    nlohmann::json j;
    j["type"] = "orthogonal";
    j["graph6"] = serialize_graph6(g);
    j["dimension"] = rep.dimension;
    j["normalized"] = rep.normalized;
    auto vecs = nlohmann::json::array();
    for (const auto& x : rep.vectors) vecs.push_back(detail::complex_array(x));
    j["vectors"] = std::move(vecs);
    j["residual"] = rep.residual;
    return j;
}

inline nlohmann::json to_json(const Graph& g, const ProjectorRepresentation& rep) {
    nlohmann::json j;
    j["type"] = "projector";
    j["graph6"] = serialize_graph6(g);
    j["dimension"] = rep.dimension;
    j["rank"] = rep.rank;
    auto ps = nlohmann::json::array();
    double residual = 0.0;
    for (const auto& p : rep.projectors) ps.push_back(detail::complex_array(p.data()));
    for (auto [v, w] : g.edges())
        residual = std::max(residual, max_abs(rep.projectors[v] * rep.projectors[w]));
    j["projectors"] = std::move(ps);
    j["residual"] = residual;
    return j;
}

struct LoadedCertificate {
    Graph graph;
    std::variant<OrthoRepresentation, ProjectorRepresentation> certificate;
};

inline LoadedCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        LoadedCertificate out{parse_graph6(j.at("graph6").get<std::string>()), OrthoRepresentation{}};
        const auto type = j.at("type").get<std::string>();
        const int d = j.at("dimension").get<int>();
        if (d < 1) throw ValidationError("dimension must be positive");
        if (type == "orthogonal") {
            OrthoRepresentation rep{d, {}, j.at("residual").get<double>(), j.value("normalized", false)};
            for (const auto& v : j.at("vectors")) {
                Vector x;
                for (const auto& e : v) x.push_back(detail::complex_from(e));
                rep.vectors.push_back(std::move(x));
            }
            out.certificate = std::move(rep);
        } else if (type == "projector") {
            ProjectorRepresentation rep{d, j.at("rank").get<int>(), {}};
            const auto dd = static_cast<std::size_t>(d);
            for (const auto& p : j.at("projectors")) {
                if (p.size() != dd * dd) throw ValidationError("projector needs d*d entries");
                ComplexMatrix m(dd, dd);
                for (std::size_t k = 0; k < dd * dd; ++k) m(k / dd, k % dd) = detail::complex_from(p[k]);
                rep.projectors.push_back(std::move(m));
            }
            out.certificate = std::move(rep);
        } else {
            throw ValidationError("unknown certificate type '" + type + "'");
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
}

} // namespace orthorank

#endif // ORTHORANK_CERTIFICATE_IO_HPP

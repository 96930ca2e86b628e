#ifndef ORTHORANK_GRAPH_HPP
#define ORTHORANK_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orthorank/error.hpp"

namespace orthorank {

using Edge = std::pair<int, int>;

/// Undirected simple graph on vertices 0..n-1. Immutable after construction;
/// edges are stored normalized (first < second) and sorted.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges, std::string name = {})
        : n_(n), name_(std::move(name)) {
        if (n < 1) throw ValidationError("vertex count must be positive");
        adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
        neighbors_.assign(static_cast<std::size_t>(n), {});
        for (auto [v, w] : edges) {
            if (v < 0 || w < 0 || v >= n || w >= n)
                throw ValidationError("edge {" + std::to_string(v) + "," + std::to_string(w) +
                                      "} out of range for n=" + std::to_string(n));
            if (v == w) throw ValidationError("loop at vertex " + std::to_string(v));
            if (v > w) std::swap(v, w);
            auto& cell = adj_[index(v, w)];
            if (cell) throw ValidationError("duplicate edge {" + std::to_string(v) + "," +
                                            std::to_string(w) + "}");
            cell = 1;
            adj_[index(w, v)] = 1;
            edges_.emplace_back(v, w);
        }
        std::sort(edges_.begin(), edges_.end());
        for (auto [v, w] : edges_) {
            neighbors_[v].push_back(w);
            neighbors_[w].push_back(v);
        }
        for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
    }

    int order() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<int>& neighbors(int v) const { return neighbors_.at(v); }
    int degree(int v) const { return static_cast<int>(neighbors_.at(v).size()); }

    bool adjacent(int v, int w) const {
        return v >= 0 && w >= 0 && v < n_ && w < n_ && adj_[index(v, w)] != 0;
    }

    std::optional<int> regular_degree() const {
        if (n_ == 0) return 0;
        const int k = degree(0);
        for (int v = 1; v < n_; ++v)
            if (degree(v) != k) return std::nullopt;
        return k;
    }

    bool connected() const {
        if (n_ <= 1) return true;
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : neighbors_[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == n_;
    }

    Graph renamed(std::string name) const {
        Graph g = *this;
        g.name_ = std::move(name);
        return g;
    }

    /// Equality ignores the label.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t index(int v, int w) const {
        return static_cast<std::size_t>(v) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(w);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<int>> neighbors_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Families

enum class Family {
    cycle,
    complete,
    complete_bipartite,
    kneser,
    andrasfai,
    folded_cube,
    orthogonality,
    path,
};

struct FamilySpec {
    Family family;
    std::vector<int> parameters;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete-bipartite";
    case Family::kneser: return "kneser";
    case Family::andrasfai: return "andrasfai";
    case Family::folded_cube: return "folded-cube";
    case Family::orthogonality: return "orthogonality";
    case Family::path: return "path";
    }
    return "?";
}

inline std::size_t family_arity(Family f) {
    switch (f) {
    case Family::complete_bipartite:
    case Family::kneser: return 2;
    default: return 1;
    }
}

inline std::string to_string(const FamilySpec& spec) {
    std::string out(family_name(spec.family));
    out += ':';
    for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(spec.parameters[i]);
    }
    return out;
}

namespace detail {
inline constexpr int kMaxGeneratedOrder = 4096;

inline long long binomial(int p, int k) {
    if (k < 0 || k > p) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (p - k + i) / i;
        if (r > kMaxGeneratedOrder) return r;
    }
    return r;
}
} // namespace detail

/// Throws ValidationError when the parameters do not describe a graph.
inline void validate(const FamilySpec& spec) {
    const auto& p = spec.parameters;
    const auto name = std::string(family_name(spec.family));
    if (p.size() != family_arity(spec.family))
        throw ValidationError(name + " expects " + std::to_string(family_arity(spec.family)) +
                              " parameter(s), got " + std::to_string(p.size()));
    for (int x : p)
        if (x < 1) throw ValidationError(name + " parameters must be positive");
    switch (spec.family) {
    case Family::cycle:
        if (p[0] < 3) throw ValidationError("cycle(n) requires n >= 3");
        break;
    case Family::kneser:
        if (p[0] < 2 * p[1]) throw ValidationError("kneser(p,k) requires p >= 2k");
        if (p[0] > 62) throw ValidationError("kneser(p,k) supports p <= 62");
        if (detail::binomial(p[0], p[1]) > detail::kMaxGeneratedOrder)
            throw ValidationError("kneser(p,k) has too many vertices");
        break;
    case Family::folded_cube:
        if (p[0] < 2) throw ValidationError("folded-cube(d) requires d >= 2");
        if (p[0] > 13) throw ValidationError("folded-cube(d) supports d <= 13");
        break;
    case Family::orthogonality:
        if (p[0] > 12) throw ValidationError("orthogonality(n) supports n <= 12");
        break;
    case Family::andrasfai:
        if (3LL * p[0] - 1 > detail::kMaxGeneratedOrder)
            throw ValidationError("andrasfai(k) has too many vertices");
        break;
    default:
        if (p[0] > detail::kMaxGeneratedOrder ||
            (p.size() > 1 && static_cast<long long>(p[0]) + p[1] > detail::kMaxGeneratedOrder))
            throw ValidationError(name + " has too many vertices");
        break;
    }
}

/// Parses the `name:p1,p2` mini-grammar, e.g. "kneser:5,2".
inline FamilySpec parse_family_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("family spec needs the form name:p1[,p2]", text.size());
    const auto name = text.substr(0, colon);
    static constexpr Family all[] = {Family::cycle,      Family::complete,
                                     Family::complete_bipartite, Family::kneser,
                                     Family::andrasfai,  Family::folded_cube,
                                     Family::orthogonality, Family::path};
    std::optional<Family> family;
    for (Family f : all)
        if (family_name(f) == name) family = f;
    if (!family) throw ParseError("unknown family '" + std::string(name) + "'", 0);

    FamilySpec spec{*family, {}};
    std::size_t pos = colon + 1;
    while (true) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto token = text.substr(pos, end - pos);
        if (token.empty()) throw ParseError("empty family parameter", pos);
        long long value = 0;
        for (std::size_t i = 0; i < token.size(); ++i) {
            const char c = token[i];
            if (c < '0' || c > '9') throw ParseError("non-digit in family parameter", pos + i);
            value = value * 10 + (c - '0');
            if (value > 1'000'000'000) throw ParseError("family parameter too large", pos + i);
        }
        spec.parameters.push_back(static_cast<int>(value));
        if (end == text.size()) break;
        pos = end + 1;
    }
    validate(spec);
    return spec;
}

/// k-subsets of {0..p-1} as bitmasks, in colex order (the Kneser vertex order).
inline std::vector<std::uint64_t> kneser_subsets(int p, int k) {
    std::vector<std::uint64_t> out;
    if (k == 0) return {0};
    std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << p;
    while (mask < limit) {
        out.push_back(mask);
        // Gosper's hack: next integer with the same popcount.
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return out;
}

/// Builds a member of a named family. Vertex orders:
///  - cycle/path: 0..n-1 along the cycle/path
///  - complete-bipartite(a,b): part one is 0..a-1
///  - kneser(p,k): k-subsets of {0..p-1} in colex order
///  - andrasfai(k): residues 0..3k-2, v ~ w iff (w - v) mod (3k-1) is 1 mod 3
///  - folded-cube(d): vertex i is the (d-1)-bit binary string of i; adjacent iff
///    Hamming distance 1 or d-1
///  - orthogonality(n): vertex i is the +-1 vector with entry j = -1 iff bit j of
///    i is set; adjacent iff orthogonal
inline Graph generate(const FamilySpec& spec) {
    validate(spec);
    const auto& p = spec.parameters;
    std::vector<Edge> edges;
    int n = 0;
    switch (spec.family) {
    case Family::cycle:
        n = p[0];
        for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
        break;
    case Family::path:
        n = p[0];
        for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
        break;
    case Family::complete:
        n = p[0];
        for (int v = 0; v < n; ++v)
            for (int w = v + 1; w < n; ++w) edges.emplace_back(v, w);
        break;
    case Family::complete_bipartite:
        n = p[0] + p[1];
        for (int v = 0; v < p[0]; ++v)
            for (int w = p[0]; w < n; ++w) edges.emplace_back(v, w);
        break;
    case Family::kneser: {
        const auto sets = kneser_subsets(p[0], p[1]);
        n = static_cast<int>(sets.size());
        for (int v = 0; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                if ((sets[v] & sets[w]) == 0) edges.emplace_back(v, w);
        break;
    }
    case Family::andrasfai:
        n = 3 * p[0] - 1;
        for (int v = 0; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                if ((w - v) % 3 == 1 || (n - (w - v)) % 3 == 1) edges.emplace_back(v, w);
        break;
    case Family::folded_cube: {
        const int d = p[0];
        n = 1 << (d - 1);
        for (int v = 0; v < n; ++v)
            for (int w = v + 1; w < n; ++w) {
                const int dist = std::popcount(static_cast<unsigned>(v ^ w));
                if (dist == 1 || dist == d - 1) edges.emplace_back(v, w);
            }
        break;
    }
    case Family::orthogonality: {
        const int len = p[0];
        n = 1 << len;
        // dot product = len - 2 * (number of differing entries)
        for (int v = 0; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                if (2 * std::popcount(static_cast<unsigned>(v ^ w)) == len)
                    edges.emplace_back(v, w);
        break;
    }
    }
    return Graph(n, std::move(edges), to_string(spec));
}

inline Graph empty_graph(int n) { return Graph(n, {}, "empty:" + std::to_string(n)); }

inline Graph complement(const Graph& g) {
    std::vector<Edge> edges;
    for (int v = 0; v < g.order(); ++v)
        for (int w = v + 1; w < g.order(); ++w)
            if (!g.adjacent(v, w)) edges.emplace_back(v, w);
    return Graph(g.order(), std::move(edges),
                 g.name().empty() ? std::string{} : "complement(" + g.name() + ")");
}

/// Vertex (a, b) gets index a * |V(h)| + b; (a,b) ~ (a',b') iff a ~ a' or b ~ b'.
inline Graph disjunctive_product(const Graph& g, const Graph& h) {
    const int ng = g.order(), nh = h.order();
    std::vector<Edge> edges;
    for (int x = 0; x < ng * nh; ++x)
        for (int y = x + 1; y < ng * nh; ++y)
            if (g.adjacent(x / nh, y / nh) || h.adjacent(x % nh, y % nh))
                edges.emplace_back(x, y);
    std::string name;
    if (!g.name().empty() && !h.name().empty()) name = g.name() + " * " + h.name();
    return Graph(ng * nh, std::move(edges), std::move(name));
}

// ---------------------------------------------------------------------------
// graph6

namespace detail {
inline void graph6_put_size(std::string& out, std::uint64_t n) {
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else if (n <= 258047) {
        out += static_cast<char>(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            out += static_cast<char>(((n >> shift) & 63) + 63);
    } else {
        out += static_cast<char>(126);
        out += static_cast<char>(126);
        for (int shift = 30; shift >= 0; shift -= 6)
            out += static_cast<char>(((n >> shift) & 63) + 63);
    }
}
} // namespace detail

inline std::string serialize_graph6(const Graph& g) {
    std::string out;
    const int n = g.order();
    detail::graph6_put_size(out, static_cast<std::uint64_t>(n));
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out += static_cast<char>(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out += static_cast<char>((acc << (6 - nbits)) + 63);
    return out;
}

/// Decodes one graph6 line. An optional ">>graph6<<" prefix and trailing
/// CR/LF are accepted; anything else that is not part of the encoding is an error.
inline Graph parse_graph6(std::string_view line) {
    std::size_t base = 0;
    constexpr std::string_view header = ">>graph6<<";
    if (line.substr(0, header.size()) == header) {
        line.remove_prefix(header.size());
        base = header.size();
    }
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    if (line.empty()) throw ParseError("empty graph6 input", base);

    std::size_t pos = 0;
    auto byte = [&](std::size_t i) -> int {
        if (i >= line.size()) throw ParseError("truncated graph6 input", base + i);
        const auto c = static_cast<unsigned char>(line[i]);
        if (c < 63 || c > 126) throw ParseError("byte outside graph6 range 63..126", base + i);
        return c - 63;
    };

    std::uint64_t n = 0;
    if (byte(0) != 63) {
        n = static_cast<std::uint64_t>(byte(0));
        pos = 1;
    } else if (line.size() > 1 && byte(1) == 63) {
        for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | static_cast<std::uint64_t>(byte(i));
        pos = 8;
    } else {
        for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | static_cast<std::uint64_t>(byte(i));
        pos = 4;
    }
    if (n == 0) throw ParseError("graph6 order must be positive", base);
    if (n > static_cast<std::uint64_t>(detail::kMaxGeneratedOrder))
        throw ParseError("graph6 order " + std::to_string(n) + " exceeds supported size", base);

    const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t body = static_cast<std::size_t>((bits + 5) / 6);
    if (line.size() < pos + body) throw ParseError("truncated graph6 input", base + line.size());
    if (line.size() > pos + body) throw ParseError("trailing bytes after graph6 encoding", base + pos + body);

    std::vector<Edge> edges;
    std::uint64_t k = 0;
    const int nn = static_cast<int>(n);
    for (int j = 1; j < nn; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            const int chunk = byte(pos + static_cast<std::size_t>(k / 6));
            if ((chunk >> (5 - static_cast<int>(k % 6))) & 1) edges.emplace_back(i, j);
        }
    if (bits % 6 != 0) {
        const int last = byte(pos + body - 1);
        const int pad = 6 - static_cast<int>(bits % 6);
        if (last & ((1 << pad) - 1)) throw ParseError("nonzero graph6 padding bits", base + pos + body - 1);
    }
    return Graph(nn, std::move(edges));
}

} // namespace orthorank

#endif // ORTHORANK_GRAPH_HPP

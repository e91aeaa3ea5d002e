#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "tour.hpp"
#include "union_graph.hpp"

namespace tspadj {

// Uniform over canonical tours: for distinct labels every tour has exactly
// n (directed) or 2n (undirected) permutation representatives, so a uniform
// permutation canonicalizes to a uniform tour.
inline Tour random_tour(int n, bool directed, Rng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    rng.shuffle(perm);
    return tour_from_permutation(perm, directed);
}

// (1, ascending…, n, descending…) from an explicit choice of the ascending
// interior vertices.
inline Tour pyramidal_tour(int n, bool directed, const std::vector<int>& ascending) {
    std::vector<char> up(n + 1, 0);
    for (int v : ascending) {
        if (v < 2 || v > n - 1) throw NotAPermutation("ascending set must contain interior labels only");
        up[v] = 1;
    }
    std::vector<int> perm{1};
    for (int v = 2; v < n; ++v)
        if (up[v]) perm.push_back(v);
    perm.push_back(n);
    for (int v = n - 1; v >= 2; --v)
        if (!up[v]) perm.push_back(v);
    return tour_from_permutation(perm, directed);
}

inline Tour random_pyramidal(int n, bool directed, Rng& rng) {
    std::vector<int> ascending;
    for (int v = 2; v < n; ++v)
        if (rng.coin()) ascending.push_back(v);
    return pyramidal_tour(n, directed, ascending);
}

// One-pass predicate: from label 1, strictly climb to n, then strictly fall.
inline bool is_pyramidal(const Tour& t) {
    std::vector<int> labels = t.labels();
    int n = t.size();
    if (labels[0] != 1) return false;
    int i = 0;
    while (i + 1 < n && labels[i + 1] > labels[i]) ++i;
    if (labels[i] != n) return false;
    for (; i + 1 < n; ++i)
        if (labels[i + 1] >= labels[i]) return false;
    return true;
}

enum class TourKind { Random, Pyramidal };

// Distinct pair, resampling collisions. Undirected n=3 has a single tour,
// so no distinct pair exists there.
inline std::pair<Tour, Tour> random_tour_pair(int n, bool directed, TourKind kind, Rng& rng) {
    if (!directed && n == 3)
        throw TooSmall("three undirected vertices admit only one tour; no distinct pair exists");
    auto draw = [&] {
        return kind == TourKind::Pyramidal ? random_pyramidal(n, directed, rng)
                                           : random_tour(n, directed, rng);
    };
    Tour x = draw();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Tour y = draw();
        if (!(x == y)) return {std::move(x), std::move(y)};
    }
    throw InternalError("tour-pair resampling failed to find a distinct partner");
}

using Instance = std::variant<std::pair<Tour, Tour>, UnionMultigraph>;

inline int instance_size(const Instance& inst) {
    if (const auto* tours = std::get_if<std::pair<Tour, Tour>>(&inst)) return tours->first.size();
    return std::get<UnionMultigraph>(inst).vertex_count();
}

inline bool instance_directed(const Instance& inst) {
    if (const auto* tours = std::get_if<std::pair<Tour, Tour>>(&inst)) return tours->first.directed();
    return std::get<UnionMultigraph>(inst).directed();
}

namespace detail {

struct LineReader {
    std::vector<std::pair<int, std::string>> lines;  // (line number, content)
    std::size_t next = 0;

    explicit LineReader(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            std::size_t first = raw.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (raw[first] == '#') continue;
            lines.emplace_back(number, raw);
        }
    }

    std::pair<int, std::string> take(const char* what) {
        if (next == lines.size())
            throw ParseError(lines.empty() ? 1 : lines.back().first,
                             std::string("missing ") + what);
        return lines[next++];
    }

    bool exhausted() const { return next == lines.size(); }

    int trailing_line() const { return lines[next].first; }
};

inline std::vector<int> parse_ints(int line, const std::string& text, const char* what) {
    std::istringstream in(text);
    std::vector<int> out;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(value);
        } catch (const std::exception&) {
            throw ParseError(line, std::string("expected ") + what + ", got \"" + token + "\"");
        }
    }
    return out;
}

}  // namespace detail

// Grammar: header `tu n` | `td n` | `gu n` | `gd n`; then two permutation
// lines (t*) or 2n `u v` lines (g*, arcs written tail head). Labels are
// 1-based. Lines starting with `#` are comments.
inline Instance parse_instance(const std::string& text) {
    detail::LineReader reader(text);
    auto [header_line, header] = reader.take("header line");
    std::istringstream in(header);
    std::string kind;
    long long n_raw = 0;
    if (!(in >> kind >> n_raw) || (in >> std::ws, !in.eof()))
        throw ParseError(header_line, "header must be `tu|td|gu|gd n`");
    if (kind != "tu" && kind != "td" && kind != "gu" && kind != "gd")
        throw ParseError(header_line, "unknown instance kind \"" + kind + "\"");
    if (n_raw < 3 || n_raw > 1000000) throw ParseError(header_line, "vertex count out of range");
    int n = static_cast<int>(n_raw);
    bool directed = kind[1] == 'd';

    if (kind[0] == 't') {
        auto read_tour = [&] {
            auto [line, content] = reader.take("permutation line");
            std::vector<int> labels = detail::parse_ints(line, content, "a vertex label");
            if (static_cast<int>(labels.size()) != n)
                throw ParseError(line, "permutation length disagrees with the header");
            try {
                return tour_from_permutation(labels, directed);
            } catch (const Error& e) {
                throw ParseError(line, e.what());
            }
        };
        Tour x = read_tour();
        Tour y = read_tour();
        if (!reader.exhausted())
            throw ParseError(reader.trailing_line(), "unexpected content after the two tours");
        return std::make_pair(std::move(x), std::move(y));
    }

    std::vector<std::pair<int, int>> endpoints;
    for (int i = 0; i < 2 * n; ++i) {
        auto [line, content] = reader.take("edge line");
        std::vector<int> pair = detail::parse_ints(line, content, "a vertex label");
        if (pair.size() != 2) throw ParseError(line, "edge lines hold exactly two labels");
        for (int v : pair)
            if (v < 1 || v > n) throw ParseError(line, "vertex label out of range");
        endpoints.emplace_back(pair[0] - 1, pair[1] - 1);
    }
    if (!reader.exhausted())
        throw ParseError(reader.trailing_line(), "unexpected content after the edge list");
    return UnionMultigraph::from_edges(n, directed, endpoints);
}

inline std::string serialize_tour_line(const Tour& t) {
    std::ostringstream out;
    std::vector<int> labels = t.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out << ' ';
        out << labels[i];
    }
    return out.str();
}

inline std::string serialize_instance(const Tour& x, const Tour& y) {
    ensure(x.size() == y.size() && x.directed() == y.directed(), "pair is consistent");
    std::ostringstream out;
    out << (x.directed() ? "td " : "tu ") << x.size() << '\n';
    out << serialize_tour_line(x) << '\n' << serialize_tour_line(y) << '\n';
    return out.str();
}

inline std::string serialize_instance(const UnionMultigraph& g) {
    std::ostringstream out;
    out << (g.directed() ? "gd " : "gu ") << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) out << e.tail + 1 << ' ' << e.head + 1 << '\n';
    return out.str();
}

inline std::string serialize_instance(const Instance& inst) {
    if (const auto* tours = std::get_if<std::pair<Tour, Tour>>(&inst))
        return serialize_instance(tours->first, tours->second);
    return serialize_instance(std::get<UnionMultigraph>(inst));
}

inline std::string serialize_witness(const Tour& z, const Tour& w) {
    return serialize_tour_line(z) + '\n' + serialize_tour_line(w) + '\n';
}

}  // namespace tspadj

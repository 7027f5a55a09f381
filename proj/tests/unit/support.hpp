#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tauq/quiver.hpp"
#include "tauq/representation.hpp"
#include "tauq/structure.hpp"

namespace tauq::test {

inline std::string fixture_path(const std::string& name) { return std::string(TAUQ_FIXTURES) + "/" + name + ".bq"; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline BoundQuiver fixture(const std::string& name, bool allow_disconnected = false) {
    return parse_bound_quiver(read_text(fixture_path(name)), ParseOptions{allow_disconnected});
}

inline BoundQuiver parse(const std::string& text) { return parse_bound_quiver(text); }

inline std::shared_ptr<const BoundQuiver> share(BoundQuiver bq) {
    return std::make_shared<const BoundQuiver>(std::move(bq));
}

inline Matrix mat(const Field& f, std::size_t rows, std::size_t cols, const std::vector<long>& entries) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.from_int(entries.at(i * cols + j));
    return m;
}

/// Random connected quiver on n vertices: a spanning tree of random
/// orientation plus `extra` further arrows. No loops or cycles unless allowed.
inline Quiver random_quiver(std::mt19937_64& rng, int n, int extra, bool acyclic) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<Quiver::ArrowSpec> arrows;
    auto add = [&](int s, int t) {
        arrows.push_back({"r" + std::to_string(arrows.size()), vs[s], vs[t]});
    };
    for (int i = 1; i < n; ++i) {
        int j = static_cast<int>(rng() % i);
        if (acyclic || rng() % 2) add(j, i);
        else add(i, j);
    }
    for (int k = 0; k < extra; ++k) {
        int s = static_cast<int>(rng() % n), t = static_cast<int>(rng() % n);
        if (acyclic) {
            if (s == t) continue;
            if (s > t) std::swap(s, t);
        }
        add(s, t);
    }
    return Quiver::make(vs, arrows);
}

/// Disjoint union; ids of part i get the prefix "p<i>_".
inline BoundQuiver disjoint_union(const std::vector<BoundQuiver>& parts) {
    std::string body = "field " + parts.at(0).field().name() + "\n";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::string pre = "p" + std::to_string(i) + "_";
        std::map<std::string, std::string> vs, as;
        for (const auto& v : parts[i].quiver().vertices()) vs[v] = pre + v;
        for (const auto& a : parts[i].quiver().arrows()) as[a.name] = pre + a.name;
        std::istringstream in(serialize_bound_quiver(relabel(parts[i], vs, as)));
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("field", 0) != 0) body += line + "\n";
    }
    return parse_bound_quiver(body, ParseOptions{true});
}

/// Random renaming of every vertex and arrow.
inline BoundQuiver shuffle_names(const BoundQuiver& bq, std::mt19937_64& rng) {
    const Quiver& q = bq.quiver();
    std::vector<int> vp(q.vertex_count()), ap(q.arrow_count());
    for (int i = 0; i < q.vertex_count(); ++i) vp[i] = i;
    for (int i = 0; i < q.arrow_count(); ++i) ap[i] = i;
    std::shuffle(vp.begin(), vp.end(), rng);
    std::shuffle(ap.begin(), ap.end(), rng);
    std::map<std::string, std::string> vs, as;
    for (int i = 0; i < q.vertex_count(); ++i) vs[q.vertex_name(i)] = "u" + std::to_string(vp[i]);
    for (int i = 0; i < q.arrow_count(); ++i) as[q.arrow(i).name] = "t" + std::to_string(ap[i]);
    return relabel(bq, vs, as);
}

}  // namespace tauq::test

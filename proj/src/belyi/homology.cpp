#include "homology.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace klein::belyi::detail {

HomologyBasis::HomologyBasis(const Dessin& d) : d_(d) {
    const int n_v = d.num_vertices, n_e = d.num_edges(), n_f = d.num_faces;
    std::vector<std::vector<int>> vertex_darts(static_cast<std::size_t>(n_v));
    for (int x = 0; x < d.num_darts(); ++x) vertex_darts[d.vertex_of[x]].push_back(x);

    std::vector<bool> in_tree(static_cast<std::size_t>(n_e), false);
    parent_edge_.assign(static_cast<std::size_t>(n_v), -1);
    parent_vertex_.assign(static_cast<std::size_t>(n_v), -1);
    depth_.assign(static_cast<std::size_t>(n_v), -1);
    std::queue<int> queue;
    depth_[0] = 0;
    queue.push(0);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int x : vertex_darts[v]) {
            const int w = d.vertex_of[Dessin::involution(x)];
            if (depth_[w] >= 0) continue;
            depth_[w] = depth_[v] + 1;
            parent_edge_[w] = Dessin::edge_of(x);
            parent_vertex_[w] = v;
            in_tree[Dessin::edge_of(x)] = true;
            queue.push(w);
        }
    }

    std::vector<std::vector<int>> face_edges(static_cast<std::size_t>(n_f));
    for (int e = 0; e < n_e; ++e) {
        if (in_tree[e]) continue;
        face_edges[d.face_of[2 * e]].push_back(e);
        if (d.face_of[2 * e + 1] != d.face_of[2 * e]) face_edges[d.face_of[2 * e + 1]].push_back(e);
    }
    std::vector<bool> in_cotree(static_cast<std::size_t>(n_e), false);
    std::vector<int> face_parent_edge(static_cast<std::size_t>(n_f), -1), face_parent(static_cast<std::size_t>(n_f), -1);
    std::vector<bool> face_seen(static_cast<std::size_t>(n_f), false);
    face_seen[0] = true;
    queue.push(0);
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop();
        for (int e : face_edges[f]) {
            const int g = d.face_of[2 * e] == f ? d.face_of[2 * e + 1] : d.face_of[2 * e];
            if (face_seen[g]) continue;
            face_seen[g] = true;
            face_parent[g] = f;
            face_parent_edge[g] = e;
            in_cotree[e] = true;
            queue.push(g);
        }
    }

    for (int e = 0; e < n_e; ++e)
        if (!in_tree[e] && !in_cotree[e]) leftover_.push_back(e);

    const std::size_t words = (leftover_.size() + 63) / 64;
    edge_mask_.assign(static_cast<std::size_t>(n_e), Bits(std::max<std::size_t>(words, 1), 0));
    for (int k = 0; k < rank(); ++k) {
        const int x = leftover_[static_cast<std::size_t>(k)];
        flip_bit(edge_mask_[x], k);
        for (int f : {d.face_of[2 * x], d.face_of[2 * x + 1]})
            for (; face_parent[f] >= 0; f = face_parent[f]) flip_bit(edge_mask_[face_parent_edge[f]], k);
    }
}

Bits HomologyBasis::coordinates(const Cycle& c) const {
    Bits bits(edge_mask_.empty() ? 1 : edge_mask_.front().size(), 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const int x = c[k], next = c[(k + 1) % c.size()];
        if (x < 0 || x >= d_.num_darts() || next < 0 || next >= d_.num_darts() ||
            d_.vertex_of[Dessin::involution(x)] != d_.vertex_of[next])
            throw std::invalid_argument("darts do not form a closed walk");
        xor_into(bits, edge_mask_[Dessin::edge_of(x)]);
    }
    return bits;
}

std::vector<Cycle> HomologyBasis::fundamental_cycles() const {
    auto dart_at = [this](int e, int v) { return d_.vertex_of[2 * e] == v ? 2 * e : 2 * e + 1; };
    std::vector<Cycle> out;
    for (int x : leftover_) {
        // walk x forward, then the tree path from its end back to its start
        int a = d_.vertex_of[2 * x + 1], b = d_.vertex_of[2 * x];
        Cycle up_from_a, up_from_b;
        while (a != b) {
            if (depth_[a] >= depth_[b]) {
                up_from_a.push_back(dart_at(parent_edge_[a], a));
                a = parent_vertex_[a];
            } else {
                up_from_b.push_back(dart_at(parent_edge_[b], b));
                b = parent_vertex_[b];
            }
        }
        Cycle c{2 * x};
        c.insert(c.end(), up_from_a.begin(), up_from_a.end());
        for (auto it = up_from_b.rbegin(); it != up_from_b.rend(); ++it) c.push_back(Dessin::involution(*it));
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace klein::belyi::detail

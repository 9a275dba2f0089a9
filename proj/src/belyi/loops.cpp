#include <algorithm>
#include <stdexcept>

#include "homology.hpp"
#include "klein/belyi.hpp"

namespace klein::belyi {

namespace {

struct Candidate {
    Cycle darts;
    detail::Bits vertices;  // vertex set
    detail::Bits homology;
};

// Simple directed cycles following arcs forward (colors 1 -> w -> w^2),
// shortest first, each rooted at its smallest vertex.
std::vector<Cycle> forward_cycles(const Dessin& d, std::size_t cap) {
    std::vector<std::vector<int>> out_darts(static_cast<std::size_t>(d.num_vertices));
    for (int x = 0; x < d.num_darts(); x += 2) out_darts[d.vertex_of[x]].push_back(x);

    std::vector<Cycle> found;
    std::vector<bool> on_path(static_cast<std::size_t>(d.num_vertices), false);
    Cycle path;
    std::size_t budget = 50'000'000;  // DFS steps across all lengths

    for (int length = 3; length <= d.num_vertices && found.size() < cap && budget > 0; length += 3) {
        const std::size_t before = found.size();
        for (int root = 0; root < d.num_vertices && found.size() < cap && budget > 0; ++root) {
            // explicit stack of (vertex, next out-dart index)
            std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
            on_path[root] = true;
            while (!stack.empty() && budget > 0) {
                auto& [v, next] = stack.back();
                if (next == out_darts[v].size() || found.size() >= cap) {
                    on_path[v] = false;
                    stack.pop_back();
                    if (!path.empty()) path.pop_back();
                    continue;
                }
                --budget;
                const int x = out_darts[v][next++];
                const int w = d.vertex_of[Dessin::involution(x)];
                const int depth = static_cast<int>(path.size()) + 1;
                if (w == root) {
                    if (depth == length) {
                        path.push_back(x);
                        found.push_back(path);
                        path.pop_back();
                    }
                } else if (w > root && !on_path[w] && depth < length) {
                    path.push_back(x);
                    on_path[w] = true;
                    stack.emplace_back(w, 0);
                }
            }
            for (auto& [v, next] : stack) on_path[v] = false;
            path.clear();
        }
        std::sort(found.begin() + static_cast<std::ptrdiff_t>(before), found.end());
    }
    return found;
}

class Selector {
public:
    Selector(const std::vector<Candidate>& pool, int target, std::size_t cap)
        : pool_(pool), target_(target), cap_(cap) {}

    std::optional<std::vector<std::size_t>> run() {
        std::vector<std::size_t> chosen;
        detail::Eliminator elim;
        detail::Bits used(pool_.empty() ? 1 : pool_.front().vertices.size(), 0);
        descend(0, chosen, elim, used, 0);
        if (best_.empty()) return std::nullopt;
        return best_;
    }

private:
    void descend(std::size_t from, std::vector<std::size_t>& chosen, detail::Eliminator& elim, detail::Bits& used,
                 std::size_t total) {
        if (static_cast<int>(chosen.size()) == target_) {
            if (total < best_total_) {
                best_total_ = total;
                best_ = chosen;
            }
            return;
        }
        const std::size_t remaining = static_cast<std::size_t>(target_) - chosen.size();
        for (std::size_t i = from; i < pool_.size(); ++i) {
            if (++steps_ > cap_) return;
            const Candidate& c = pool_[i];
            // pool is sorted by length, so this bound only grows with i
            if (total + remaining * c.darts.size() >= best_total_) return;
            bool overlap = false;
            for (std::size_t w = 0; w < used.size() && !overlap; ++w) overlap = (used[w] & c.vertices[w]) != 0;
            if (overlap || !elim.insert(c.homology)) continue;
            for (std::size_t w = 0; w < used.size(); ++w) used[w] |= c.vertices[w];
            chosen.push_back(i);
            descend(i + 1, chosen, elim, used, total + c.darts.size());
            chosen.pop_back();
            for (std::size_t w = 0; w < used.size(); ++w) used[w] &= ~c.vertices[w];
            elim.pop();
        }
    }

    const std::vector<Candidate>& pool_;
    int target_;
    std::size_t cap_;
    std::size_t steps_ = 0;
    std::size_t best_total_ = static_cast<std::size_t>(-1);
    std::vector<std::size_t> best_;
};

}  // namespace

std::optional<LoopSet> search_loops(const Dessin& d, int g_target, const LoopSearchOptions& opt) {
    if (g_target < 0) throw std::invalid_argument("target loop count must be nonnegative");
    if (g_target == 0) return LoopSet{};

    const detail::HomologyBasis basis(d);
    std::vector<Candidate> pool;
    const std::size_t vertex_words = (static_cast<std::size_t>(d.num_vertices) + 63) / 64;
    for (Cycle& c : forward_cycles(d, opt.candidate_cap)) {
        detail::Bits h = basis.coordinates(c);
        if (detail::is_zero(h)) continue;
        detail::Bits vs(vertex_words, 0);
        for (int x : c) detail::flip_bit(vs, d.vertex_of[x]);
        pool.push_back({std::move(c), std::move(vs), std::move(h)});
    }

    Selector selector(pool, g_target, opt.backtrack_cap);
    const auto picked = selector.run();
    if (!picked) return std::nullopt;
    LoopSet loops;
    for (std::size_t i : *picked) {
        loops.cycles.push_back(pool[i].darts);
        loops.degrees.push_back(static_cast<int>(pool[i].darts.size()) / 3);
    }
    return loops;
}

LoopSearchResult find_disjoint_loops(const Dessin& d, int g_target, const LoopSearchOptions& opt) {
    if (g_target != d.genus) throw std::invalid_argument("target loop count must equal the genus of the dessin");
    if (opt.refine_budget < 0) throw std::invalid_argument("refine budget must be nonnegative");
    Dessin current = d;
    for (int r = 0;; ++r) {
        if (auto loops = search_loops(current, g_target, opt)) return {true, r, std::move(current), std::move(*loops)};
        if (r == opt.refine_budget) return {false, r, std::move(current), {}};
        current = build_dessin(refine(current.triple));
    }
}

}  // namespace klein::belyi

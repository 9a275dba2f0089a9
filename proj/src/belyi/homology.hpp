#pragma once

#include <cstdint>
#include <vector>

#include "klein/belyi.hpp"

namespace klein::belyi::detail {

using Bits = std::vector<std::uint64_t>;

inline bool test_bit(const Bits& b, int k) { return (b[static_cast<std::size_t>(k) / 64] >> (k % 64)) & 1U; }
inline void flip_bit(Bits& b, int k) { b[static_cast<std::size_t>(k) / 64] ^= std::uint64_t{1} << (k % 64); }
inline void xor_into(Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
inline bool is_zero(const Bits& b) {
    for (auto w : b)
        if (w) return false;
    return true;
}
inline int lowest_bit(const Bits& b) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) return static_cast<int>(i * 64) + __builtin_ctzll(b[i]);
    return -1;
}

/// Incremental Gaussian elimination over Z/2.
class Eliminator {
public:
    /// Reduced vector; zero iff v is in the span.
    Bits reduce(Bits v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (test_bit(v, pivots_[r])) xor_into(v, rows_[r]);
        return v;
    }
    bool insert(const Bits& v) {
        Bits red = reduce(v);
        if (is_zero(red)) return false;
        pivots_.push_back(lowest_bit(red));
        rows_.push_back(std::move(red));
        return true;
    }
    void pop() {
        rows_.pop_back();
        pivots_.pop_back();
    }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<Bits> rows_;
    std::vector<int> pivots_;
};

/// Spanning tree (breadth first from vertex 0, darts in ascending order), a
/// spanning tree of the dual graph on the remaining edges, and the 2g leftover
/// edges. Coordinates of a cycle are its intersection numbers with the dual
/// loops of the leftover edges.
class HomologyBasis {
public:
    explicit HomologyBasis(const Dessin& d);

    int rank() const { return static_cast<int>(leftover_.size()); }
    /// Throws std::invalid_argument if the walk does not close up.
    Bits coordinates(const Cycle& c) const;
    std::vector<Cycle> fundamental_cycles() const;

private:
    const Dessin& d_;
    std::vector<int> parent_edge_, parent_vertex_, depth_;
    std::vector<int> leftover_;
    std::vector<Bits> edge_mask_;
};

}  // namespace klein::belyi::detail

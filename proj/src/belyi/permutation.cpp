#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "klein/belyi.hpp"

namespace klein::belyi {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = degree();
    if (n == 0) throw std::invalid_argument("permutation of an empty set");
    std::vector<bool> seen(images_.size(), false);
    for (int x : images_) {
        if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
            throw std::invalid_argument("image array is not a bijection");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

Permutation Permutation::identity(int degree) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    std::vector<int> v(static_cast<std::size_t>(degree));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
}

Permutation Permutation::rotation(int degree, int shift) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    std::vector<int> v(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) v[static_cast<std::size_t>(i)] = ((i + shift) % degree + degree) % degree;
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<int> v(images_.size());
    for (int i = 0; i < degree(); ++i) v[static_cast<std::size_t>((*this)(i))] = i;
    return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if ((*this)(i) != i) return false;
    return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int i = 0; i < degree(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::vector<int> c;
        for (int x = i; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
            seen[static_cast<std::size_t>(x)] = true;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<int> t;
    for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("composing permutations of different degrees");
    std::vector<int> v(static_cast<std::size_t>(p.degree()));
    for (int i = 0; i < p.degree(); ++i) v[static_cast<std::size_t>(i)] = q(p(i));
    return Permutation(std::move(v));
}

MonodromyTriple::MonodromyTriple(Permutation a, Permutation b, Permutation c)
    : s1(std::move(a)), sw(std::move(b)), sw2(std::move(c)) {
    if (s1.degree() != sw.degree() || s1.degree() != sw2.degree())
        throw std::invalid_argument("triple permutations have different degrees");
}

TripleDiagnostics validate_triple(const MonodromyTriple& t) {
    TripleDiagnostics diag;
    if (!(t.s1 * t.sw * t.sw2).is_identity()) diag.problems.emplace_back("product s1 * sw * sw2 is not the identity");

    const int d = t.degree();
    std::vector<bool> reached(static_cast<std::size_t>(d), false);
    std::vector<int> stack{0};
    reached[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        // forward images suffice: orbits of a finite group
        for (int k = 0; k < 3; ++k) {
            const int y = t[k](x);
            if (!reached[static_cast<std::size_t>(y)]) {
                reached[static_cast<std::size_t>(y)] = true;
                ++count;
                stack.push_back(y);
            }
        }
    }
    if (count != d) diag.problems.emplace_back("not transitive: the generated group has more than one orbit");
    diag.ok = diag.problems.empty();
    return diag;
}

int genus(const MonodromyTriple& t) {
    const TripleDiagnostics diag = validate_triple(t);
    if (!diag.ok) throw std::invalid_argument("invalid monodromy triple: " + diag.problems.front());
    int ramification = 0;
    for (int k = 0; k < 3; ++k)
        for (int len : t[k].cycle_type()) ramification += len - 1;
    // 2 - 2g = 2d - ramification
    return (ramification - 2 * t.degree() + 2) / 2;
}

Permutation word_monodromy(const MonodromyTriple& t, const std::vector<int>& word) {
    std::vector<int> state(static_cast<std::size_t>(t.degree()));
    std::iota(state.begin(), state.end(), 0);
    const Permutation inverses[3] = {t.s1.inverse(), t.sw.inverse(), t.sw2.inverse()};
    for (int letter : word) {
        if (letter == 0 || letter < -3 || letter > 3) throw std::invalid_argument("bad word letter");
        const Permutation& p = letter > 0 ? t[letter - 1] : inverses[-letter - 1];
        for (int& x : state) x = p(x);
    }
    return Permutation(std::move(state));
}

Json to_json(const MonodromyTriple& t) {
    return Json{{"degree", t.degree()}, {"s1", t.s1.images()}, {"sw", t.sw.images()}, {"sw2", t.sw2.images()}};
}

MonodromyTriple triple_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("expected monodromy object");
    MonodromyTriple t(Permutation(j.at("s1").get<std::vector<int>>()), Permutation(j.at("sw").get<std::vector<int>>()),
                      Permutation(j.at("sw2").get<std::vector<int>>()));
    if (j.contains("degree") && j.at("degree").get<int>() != t.degree())
        throw std::invalid_argument("declared degree does not match the permutations");
    return t;
}

}  // namespace klein::belyi

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "klein/belyi.hpp"

namespace klein::belyi {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kC(0.0, std::sqrt(3.0));  // 1 + 2w
const Complex kOmega = std::polar(1.0, 2.0 * kPi / 3.0);

// z^3 (z^3 + z^-3) = z^6 + 1, so R = P / Q with these ascending coefficients.
std::vector<Complex> numerator_poly() { return {kC, 0.0, 0.0, -6.0, 0.0, 0.0, kC}; }
std::vector<Complex> denominator_poly() { return {kC, 0.0, 0.0, 6.0, 0.0, 0.0, kC}; }

Complex horner(const std::vector<Complex>& p, Complex z) {
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& p) {
    std::vector<Complex> out;
    for (std::size_t k = 1; k < p.size(); ++k) out.push_back(static_cast<double>(k) * p[k]);
    if (out.empty()) out.push_back(0.0);
    return out;
}

std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Complex> subtract(std::vector<Complex> a, const std::vector<Complex>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

// Numerator of (P/Q)' = (P'Q - PQ') / Q^2.
std::vector<Complex> wronskian(const std::vector<Complex>& p, const std::vector<Complex>& q) {
    return subtract(multiply(derivative(p), q), multiply(p, derivative(q)));
}

// Roots of an ascending-coefficient polynomial (leading coefficient nonzero).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& p) {
    const int n = static_cast<int>(p.size()) - 1;
    if (n < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots;
    for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()[i]);
    return roots;
}

void trim_high(std::vector<Complex>& p, double tol) {
    double scale = 0.0;
    for (Complex c : p) scale = std::max(scale, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= tol * scale) p.pop_back();
}

// Number of vanishing low-order coefficients.
int zero_multiplicity(const std::vector<Complex>& p, double tol) {
    double scale = 0.0;
    for (Complex c : p) scale = std::max(scale, std::abs(c));
    int m = 0;
    while (m < static_cast<int>(p.size()) && std::abs(p[static_cast<std::size_t>(m)]) <= tol * scale) ++m;
    return m;
}

Complex r_derivative(Complex z) {
    const auto p = numerator_poly(), q = denominator_poly();
    const Complex qz = horner(q, z);
    return horner(wronskian(p, q), z) / (qz * qz);
}

// Angle in (-pi, pi] with values within 1e-9 of -pi folded to pi.
double folded_arg(Complex z) {
    double a = std::arg(z);
    if (a <= -kPi + 1e-9) a = kPi;
    return a;
}

bool fiber_less(Complex a, Complex b) {
    const double da = folded_arg(a), db = folded_arg(b);
    if (std::abs(da - db) > 1e-9) return da < db;
    return std::abs(a) < std::abs(b);
}

const Complex kBase = std::polar(1.0, -kPi / 3.0);
const Complex kBranch[3] = {1.0, kOmega, kOmega * kOmega};

// Base loop j at parameter tau in [0, 5]: spoke in, arc at radius 1/2,
// counterclockwise circle of radius 1/2 about the branch value, then back.
Complex base_loop(int j, double tau) {
    const double start = -kPi / 3.0;
    const double sweep = std::arg(kBranch[j]) - start + (j == 2 ? 2.0 * kPi : 0.0);
    auto spoke = [](double s) { return kBase * (1.0 - 0.5 * s); };
    auto arc = [&](double s) { return std::polar(0.5, start + s * sweep); };
    if (tau <= 1.0) return spoke(tau);
    if (tau <= 2.0) return arc(tau - 1.0);
    if (tau <= 3.0) return kBranch[j] - 0.5 * kBranch[j] * std::polar(1.0, 2.0 * kPi * (tau - 2.0));
    if (tau <= 4.0) return arc(4.0 - tau);
    return spoke(5.0 - std::min(tau, 5.0));
}

// Crossing letter of segment a -> b with the ray {t b_k : t >= 1}, or 0.
int ray_letter(Complex a, Complex b, int k) {
    const Complex ua = std::conj(kBranch[k]) * a, ub = std::conj(kBranch[k]) * b;
    if ((ua.imag() > 0.0) == (ub.imag() > 0.0)) return 0;
    const double s = ua.imag() / (ua.imag() - ub.imag());
    const double x = ua.real() + s * (ub.real() - ua.real());
    if (x < 1.0) return 0;
    return ub.imag() > ua.imag() ? k + 1 : -(k + 1);
}

struct Lift {
    Complex end;
    std::vector<int> word;
};

Lift lift_base_loop(int j, Complex z) {
    Lift out{z, {}};
    double tau = 0.0, step = 0.01;
    while (tau < 5.0) {
        const double next = std::min(5.0, tau + step);
        const Complex w_now = base_loop(j, tau), w_next = base_loop(j, next);
        const Complex pred = z + (w_next - w_now) / r_derivative(z);
        Complex y = pred;
        bool converged = false;
        for (int it = 0; it < 12; ++it) {
            const Complex delta = (r_map(y) - w_next) / r_derivative(y);
            y -= delta;
            if (std::abs(delta) <= 1e-14 * (1.0 + std::abs(y))) {
                converged = true;
                break;
            }
        }
        const bool close = std::abs(y - pred) <= 0.1 * std::abs(pred - z) + 1e-13;
        if (converged && close && std::abs(r_map(y) - w_next) < 1e-11) {
            for (int k = 0; k < 3; ++k)
                if (int letter = ray_letter(z, y, k)) out.word.push_back(letter);
            z = y;
            tau = next;
            step = std::min(0.02, step * 1.5);
        } else {
            step *= 0.5;
            if (step < 1e-12) throw std::runtime_error("path lifting failed: continuation step underflow");
        }
    }
    out.end = z;
    return out;
}

RConstellation compute_constellation() {
    RConstellation rc{MonodromyTriple::trivial(), r_fiber(kBase), {}, numerator_poly(), denominator_poly()};
    std::vector<std::vector<int>> images(3, std::vector<int>(6));
    rc.words.assign(3, std::vector<std::vector<int>>(6));
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 6; ++k) {
            Lift lift = lift_base_loop(j, rc.fiber[static_cast<std::size_t>(k)]);
            int match = -1;
            for (int m = 0; m < 6; ++m)
                if (std::abs(lift.end - rc.fiber[static_cast<std::size_t>(m)]) < 1e-8) match = m;
            if (match < 0) throw std::runtime_error("path lifting failed: lift ended off the fiber");
            images[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = match;
            rc.words[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = std::move(lift.word);
        }
    }
    rc.triple = MonodromyTriple(Permutation(images[0]), Permutation(images[1]), Permutation(images[2]));
    return rc;
}

}  // namespace

Complex r_map(Complex z) {
    if (z == 0.0) return 1.0;
    const Complex q = horner(denominator_poly(), z);
    if (q == 0.0) throw std::domain_error("R evaluated at a pole");
    return horner(numerator_poly(), z) / q;
}

geom::SpherePoint r_map(const geom::SpherePoint& z) {
    if (z.is_infinite()) return geom::SpherePoint(1.0);
    const Complex v = z.value();
    if (v == 0.0) return geom::SpherePoint(1.0);
    const Complex p = horner(numerator_poly(), v), q = horner(denominator_poly(), v);
    if (q == 0.0) return geom::SpherePoint::infinity();
    return geom::SpherePoint(p / q);
}

std::vector<Complex> r_fiber(Complex w) {
    if (w == 1.0) throw std::invalid_argument("fiber over 1 is {0, infinity}");
    const Complex t = 6.0 * (1.0 + w) / (kC * (1.0 - w));
    const Complex disc = std::sqrt(t * t - 4.0);
    std::vector<Complex> out;
    for (Complex u : {(t + disc) / 2.0, (t - disc) / 2.0}) {
        const Complex root = std::pow(u, 1.0 / 3.0);
        for (int m = 0; m < 3; ++m) out.push_back(root * std::pow(kOmega, m));
    }
    std::sort(out.begin(), out.end(), fiber_less);
    return out;
}

double r_deck_error(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> log_radius(0.0, 1.5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const Complex z = std::polar(std::exp(log_radius(rng)), angle(rng));
        const geom::SpherePoint base = r_map(geom::SpherePoint(z));
        worst = std::max(worst, geom::chordal_distance(r_map(geom::SpherePoint(kOmega * z)), base));
        worst = std::max(worst, geom::chordal_distance(r_map(geom::SpherePoint(1.0 / z)), base));
    }
    return worst;
}

std::vector<CriticalPoint> r_critical_points(double tol) {
    const auto p = numerator_poly(), q = denominator_poly();
    std::vector<Complex> n = wronskian(p, q);
    trim_high(n, 1e-13);
    const int zero_mult = zero_multiplicity(n, 1e-13);
    const std::vector<Complex> reduced(n.begin() + zero_mult, n.end());

    // cluster nearby roots: multiple roots split by about sqrt(eps)
    std::vector<std::pair<Complex, int>> clusters;
    if (zero_mult > 0) clusters.emplace_back(0.0, zero_mult);
    for (Complex r : polynomial_roots(reduced)) {
        auto it = std::find_if(clusters.begin(), clusters.end(), [&](const auto& c) { return std::abs(c.first - r) < tol; });
        if (it != clusters.end())
            ++it->second;
        else
            clusters.emplace_back(r, 1);
    }

    std::vector<CriticalPoint> out;
    for (const auto& [z, m] : clusters) out.push_back({geom::SpherePoint(z), m + 1, r_map(geom::SpherePoint(z))});
    std::sort(out.begin(), out.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return fiber_less(a.point.value(), b.point.value()); });

    // infinity through the chart 1/z: reversed coefficients
    std::vector<Complex> pr(p.rbegin(), p.rend()), qr(q.rbegin(), q.rend());
    const int inf_mult = zero_multiplicity(wronskian(pr, qr), 1e-13);
    if (inf_mult > 0) out.push_back({geom::SpherePoint::infinity(), inf_mult + 1, r_map(geom::SpherePoint::infinity())});
    return out;
}

const RConstellation& r_constellation() {
    static const RConstellation rc = compute_constellation();
    return rc;
}

MonodromyTriple refine(const MonodromyTriple& t) {
    const TripleDiagnostics diag = validate_triple(t);
    if (!diag.ok) throw std::invalid_argument("cannot refine an invalid triple: " + diag.problems.front());
    const RConstellation& rc = r_constellation();
    const int d = t.degree();
    std::vector<std::vector<int>> images(3, std::vector<int>(static_cast<std::size_t>(6 * d)));
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 6; ++k) {
            const Permutation mu = word_monodromy(t, rc.words[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
            const int k_next = rc.triple[j](k);
            for (int i = 0; i < d; ++i) images[static_cast<std::size_t>(j)][static_cast<std::size_t>(k * d + i)] = k_next * d + mu(i);
        }
    }
    return {Permutation(images[0]), Permutation(images[1]), Permutation(images[2])};
}

}  // namespace klein::belyi

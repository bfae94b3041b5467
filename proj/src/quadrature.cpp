#include "ionnet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ionnet/detail/linalg.hpp"

namespace ionnet {

namespace {

template <typename Value>
Value simpson(const Value& fa, const Value& fm, const Value& fb, double h) {
    return (h / 6.0) * (fa + 4.0 * fm + fb);
}

template <typename Value, typename F>
Value adaptive_step(const F& f, double a, double b, const Value& fa, const Value& fm,
                    const Value& fb, const Value& whole, double rel_tol,
                    double abs_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Value flm = f(lm);
    const Value frm = f(rm);
    const Value left = simpson(fa, flm, fm, m - a);
    const Value right = simpson(fm, frm, fb, b - m);
    const Value refined = left + right;
    const double err = std::abs(refined - whole);
    if (err <= 15.0 * (rel_tol * std::abs(refined) + abs_tol)) {
        return refined + (refined - whole) / 15.0;
    }
    if (depth <= 0)
        throw std::runtime_error("adaptive quadrature: max depth reached, error " +
                                 std::to_string(err));
    return adaptive_step(f, a, m, fa, flm, fm, left, rel_tol, abs_tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, rel_tol, abs_tol, depth - 1);
}

template <typename Value, typename F>
Value integrate_impl(const F& f, double a, double b, double rel_tol, double abs_tol,
                     int max_depth) {
    if (a == b) return Value{};
    const Value fa = f(a);
    const Value fb = f(b);
    const Value fm = f(0.5 * (a + b));
    // split once up front so a vanishing first estimate cannot stop early
    const double m = 0.5 * (a + b);
    const Value flm = f(0.5 * (a + m));
    const Value frm = f(0.5 * (m + b));
    const Value left = simpson(fa, flm, fm, m - a);
    const Value right = simpson(fm, frm, fb, b - m);
    return adaptive_step(f, a, m, fa, flm, fm, left, rel_tol, abs_tol, max_depth) +
           adaptive_step(f, m, b, fm, frm, fb, right, rel_tol, abs_tol, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    return integrate_impl<double>(f, a, b, rel_tol, abs_tol, max_depth);
}

std::complex<double> integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol, double abs_tol, int max_depth) {
    return integrate_impl<std::complex<double>>(f, a, b, rel_tol, abs_tol, max_depth);
}

const GaussLaguerreRule& gauss_laguerre(int n) {
    if (n < 1 || n > 4096) throw std::invalid_argument("gauss_laguerre: bad order");
    static std::map<int, GaussLaguerreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Laguerre Jacobi matrix: diagonal 2k+1, off-diagonal k.
    const auto nn = static_cast<std::size_t>(n);
    std::vector<double> diag(nn), off(nn > 1 ? nn - 1 : 0);
    for (std::size_t k = 0; k < nn; ++k) diag[k] = 2.0 * static_cast<double>(k) + 1.0;
    for (std::size_t k = 0; k + 1 < nn; ++k) off[k] = static_cast<double>(k + 1);
    const auto eig = detail::tridiagonal_eigen_first_components(std::move(diag),
                                                                std::move(off));
    GaussLaguerreRule rule;
    rule.nodes = eig.values;
    rule.weights.resize(nn);
    for (std::size_t m = 0; m < nn; ++m) {
        const double first = eig.first_components[m];
        rule.weights[m] = first * first;  // total weight integral is 1
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double integrate_exp_weighted(const std::function<double(double)>& f, double rel_tol) {
    double previous = 0.0;
    bool have_previous = false;
    for (int n = 16; n <= 1024; n *= 2) {
        const GaussLaguerreRule& rule = gauss_laguerre(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * f(rule.nodes[i]);
        if (have_previous &&
            std::abs(sum - previous) <= rel_tol * std::max(std::abs(sum), 1e-300))
            return sum;
        previous = sum;
        have_previous = true;
    }
    throw std::runtime_error("Gauss-Laguerre integration did not converge at 1024 nodes");
}

}  // namespace ionnet

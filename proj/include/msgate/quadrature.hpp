#ifndef MSGATE_QUADRATURE_HPP
#define MSGATE_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

namespace msgate {

// Adaptive Gauss-Kronrod (G7/K15) quadrature with an absolute-error target.
// Works for real- and complex-valued integrands.
namespace detail {

// K15 abscissae on [0,1] (symmetric) and weights; G7 weights on the odd nodes.
inline constexpr double kronrod_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kronrod_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
struct Panel {
    using value_type = std::invoke_result_t<F, double>;
    value_type kronrod;
    double error;
};

template <typename F>
Panel<F> gauss_kronrod(F& f, double a, double b) {
    using V = std::invoke_result_t<F, double>;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const V fc = f(mid);
    V result_g = gauss_w[3] * fc;
    V result_k = kronrod_w[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kronrod_x[i];
        const V sum = f(mid - dx) + f(mid + dx);
        result_k += kronrod_w[i] * sum;
        if (i % 2 == 1) result_g += gauss_w[i / 2] * sum;
    }
    result_k *= half;
    result_g *= half;
    return {result_k, std::abs(result_k - result_g)};
}

template <typename F>
auto integrate_rec(F& f, double a, double b, double tol, int depth)
    -> std::invoke_result_t<F, double> {
    auto panel = gauss_kronrod(f, a, b);
    if (panel.error <= tol || depth <= 0) {
        if (depth <= 0 && panel.error > 64.0 * tol)
            throw std::runtime_error("quadrature: failed to converge on subinterval");
        return panel.kronrod;
    }
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, 0.5 * tol, depth - 1) +
           integrate_rec(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
auto integrate(F&& f, double a, double b, double abs_tol, int max_depth = 48)
    -> std::invoke_result_t<F, double> {
    if (a == b) return std::invoke_result_t<F, double>{};
    return detail::integrate_rec(f, a, b, abs_tol, max_depth);
}

}  // namespace msgate

#endif

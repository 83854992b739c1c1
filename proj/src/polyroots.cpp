#include "opcalc/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace opcalc {

std::vector<Complex> characteristic_polynomial(const Matrix& a) {
    if (!a.is_square()) throw NonSquareError("characteristic_polynomial requires square input");
    const std::size_t n = a.rows();
    // M_1 = I, c_{n-1} = -tr(A M_1); M_{k} = A M_{k-1} + c_{n-k+1} I,
    // c_{n-k} = -tr(A M_k) / k.
    std::vector<Complex> c(n, Complex{0.0, 0.0});
    Matrix mk = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            mk = a * mk;
            for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        }
        const Complex t = (a * mk).diagonal_sum();
        c[n - k] = -t / static_cast<double>(k);
    }
    return c;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs,
                                      std::size_t max_iterations) {
    const std::size_t n = coeffs.size();
    if (n == 0) return {};

    auto eval = [&](Complex x) {
        Complex acc{1.0, 0.0};
        for (std::size_t k = n; k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    };

    // Cauchy bound keeps the iterates in a sensible disc.
    double radius = 0.0;
    for (const Complex& ck : coeffs) radius = std::max(radius, std::abs(ck));
    radius = 1.0 + radius;

    // Classic staggered starting points, scaled to the root bound.
    std::vector<Complex> z(n);
    const Complex seed{0.4, 0.9};
    Complex pw{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        pw *= seed;
        z[k] = pw * radius;
    }

    const double tol = 1e-14 * std::max(radius, 1.0);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        double max_step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            Complex denom{1.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                denom *= (z[j] - z[k]);
            }
            if (denom == Complex{0.0, 0.0}) {
                // Collided iterates; nudge and continue.
                z[j] += Complex{1e-8 * radius, 1e-8 * radius};
                max_step = radius;
                continue;
            }
            const Complex step = eval(z[j]) / denom;
            z[j] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < tol) break;
    }
    return z;
}

std::vector<Complex> char_poly_eigenvalues(const Matrix& a) {
    return polynomial_roots(characteristic_polynomial(a));
}

}  // namespace opcalc

#include "opcalc/rng.hpp"

#include <cmath>
#include <numbers>

#include "opcalc/schatten.hpp"

namespace opcalc {

namespace {

// splitmix64; tiny, seedable, and identical everywhere.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed) : state_(seed) {
    // Warm up so nearby seeds decorrelate.
    for (int i = 0; i < 4; ++i) splitmix64(state_);
}

std::uint64_t TrialRng::next_u64() { return splitmix64(state_); }

double TrialRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex TrialRng::complex_gauss() {
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    const double re = gauss();
    const double im = gauss();
    return Complex{re * inv_sqrt2, im * inv_sqrt2};
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view property_id, std::size_t dim,
                          std::size_t trial) {
    std::uint64_t h = fnv1a(property_id);
    h ^= 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(dim) +
         (h << 6) + (h >> 2);
    h ^= 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial) +
         (h << 6) + (h >> 2);
    return seed ^ h;
}

Matrix ginibre(TrialRng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gauss();
    return m;
}

Matrix haar_unitary(TrialRng& rng, std::size_t n) {
    // Modified Gram-Schmidt on a Ginibre draw. Normalising by real column
    // norms keeps the R diagonal positive, which is the phase fix that
    // makes the distribution Haar.
    Matrix g = ginibre(rng, n, n);
    Matrix q(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec col = g.column(k);
        for (std::size_t j = 0; j < k; ++j) {
            Vec qj = q.column(j);
            const Complex proj = vec_inner(col, qj);
            for (std::size_t i = 0; i < n; ++i) col[i] -= proj * qj[i];
        }
        double nrm = vec_norm(col);
        while (nrm < 1e-12) {  // vanishing draw; resample the column
            for (std::size_t i = 0; i < n; ++i) col[i] = rng.complex_gauss();
            for (std::size_t j = 0; j < k; ++j) {
                Vec qj = q.column(j);
                const Complex proj = vec_inner(col, qj);
                for (std::size_t i = 0; i < n; ++i) col[i] -= proj * qj[i];
            }
            nrm = vec_norm(col);
        }
        for (Complex& v : col) v /= nrm;
        q.set_column(k, col);
    }
    return q;
}

Matrix random_psd(TrialRng& rng, std::size_t n) {
    const Matrix g = ginibre(rng, n, n);
    return g.adjoint() * g;
}

Matrix random_rank_deficient(TrialRng& rng, std::size_t n, std::size_t rank) {
    const Matrix g = ginibre(rng, n, n);
    return truncate_spectral(g, rank);
}

Vec random_vector(TrialRng& rng, std::size_t n) {
    Vec v(n);
    for (Complex& x : v) x = rng.complex_gauss();
    return v;
}

Vec random_unit_vector(TrialRng& rng, std::size_t n) {
    Vec v = random_vector(rng, n);
    double nrm = vec_norm(v);
    while (nrm < 1e-12) {
        v = random_vector(rng, n);
        nrm = vec_norm(v);
    }
    for (Complex& x : v) x /= nrm;
    return v;
}

TensorElement random_tensor_element(TrialRng& rng, std::size_t dim_x, std::size_t dim_y,
                                    std::size_t pairs) {
    TensorElement f{dim_x, dim_y, {}};
    f.pairs.reserve(pairs);
    for (std::size_t k = 0; k < pairs; ++k)
        f.pairs.emplace_back(random_vector(rng, dim_x), random_vector(rng, dim_y));
    return f;
}

Matrix random_contraction(TrialRng& rng, std::size_t n) {
    Matrix u = haar_unitary(rng, n);
    for (std::size_t j = 0; j < n; ++j) {
        // Unit-disc diagonal entry: modulus sqrt(uniform), uniform phase.
        const double r = std::sqrt(rng.uniform());
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        const Complex d{r * std::cos(a), r * std::sin(a)};
        for (std::size_t i = 0; i < n; ++i) u(i, j) *= d;
    }
    return u;
}

}  // namespace opcalc

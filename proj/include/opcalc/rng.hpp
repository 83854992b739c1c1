#pragma once

#include <cstdint>
#include <string_view>

#include "opcalc/matrix.hpp"
#include "opcalc/tensor.hpp"

namespace opcalc {

/// Deterministic generator with its own Gaussian path, so streams are
/// reproducible across platforms and standard-library versions.
class TrialRng {
public:
    explicit TrialRng(std::uint64_t seed);

    std::uint64_t next_u64();
    double uniform();        // [0, 1)
    double gauss();          // standard normal, Box-Muller
    Complex complex_gauss();  // standard complex normal, E|z|^2 = 1

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Substream seed for (property, dim, trial): the suite seed XORed with a
/// hash of the triple, so a property subset reproduces identical draws no
/// matter which other properties run.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view property_id, std::size_t dim,
                          std::size_t trial);

/// i.i.d. standard complex normal entries.
Matrix ginibre(TrialRng& rng, std::size_t rows, std::size_t cols);

/// Haar unitary via Gram-Schmidt QR of a Ginibre draw (positive-diagonal
/// phase convention).
Matrix haar_unitary(TrialRng& rng, std::size_t n);

/// PSD draw G^adj G.
Matrix random_psd(TrialRng& rng, std::size_t n);

/// Rank-deficient draw: spectral truncation of a Ginibre matrix.
Matrix random_rank_deficient(TrialRng& rng, std::size_t n, std::size_t rank);

Vec random_vector(TrialRng& rng, std::size_t n);
Vec random_unit_vector(TrialRng& rng, std::size_t n);

/// Tensor element with `pairs` Ginibre pair draws.
TensorElement random_tensor_element(TrialRng& rng, std::size_t dim_x, std::size_t dim_y,
                                    std::size_t pairs);

/// Contraction (operator norm <= 1) that is cheap to certify: a Haar
/// unitary times a diagonal of unit-disc entries.
Matrix random_contraction(TrialRng& rng, std::size_t n);

}  // namespace opcalc

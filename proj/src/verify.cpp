#include "opcalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "opcalc/io.hpp"
#include "opcalc/nuclear.hpp"
#include "opcalc/polyroots.hpp"
#include "opcalc/rng.hpp"
#include "opcalc/schatten.hpp"
#include "opcalc/tensor.hpp"

namespace opcalc {

using nlohmann::json;

void SuiteConfig::validate() const {
    if (dims.empty()) throw Error("suite config: dims must be nonempty");
    for (std::size_t d : dims)
        if (d == 0) throw Error("suite config: dims must be positive");
    if (trials == 0) throw Error("suite config: trials must be >= 1");
    if (!(tol_algebraic > 0.0) || !(tol_stochastic > 0.0))
        throw Error("suite config: tolerances must be positive");
}

namespace {

// ---------------------------------------------------------------------------
// Per-trial check collector.
//
// Every check is "lhs <= rhs + thr * scale" (closeness checks feed the
// absolute difference as lhs). The recorded violation is the signed slack
// (lhs - rhs) / scale, rescaled by base_tol / thr so that checks with
// different thresholds aggregate against one property tolerance.
// ---------------------------------------------------------------------------
class TrialChecker {
public:
    explicit TrialChecker(double base_tol) : base_tol_(base_tol) {}

    void le(double lhs, double rhs, double scale, double thr) {
        const double s = std::max(scale, 1e-300);
        const double v = (lhs - rhs) / s;
        max_violation_ = std::max(max_violation_, v * (base_tol_ / thr));
        if (v > thr) failed_ = true;
    }
    void le(double lhs, double rhs, double scale) { le(lhs, rhs, scale, base_tol_); }

    void close(double a, double b, double scale, double thr) { le(std::abs(a - b), 0.0, scale, thr); }
    void close(double a, double b, double scale) { close(a, b, scale, base_tol_); }

    void close_c(Complex a, Complex b, double scale, double thr) {
        le(std::abs(a - b), 0.0, scale, thr);
    }
    void close_c(Complex a, Complex b, double scale) { close_c(a, b, scale, base_tol_); }

    void require(bool ok) {
        if (!ok) {
            failed_ = true;
            max_violation_ = std::numeric_limits<double>::infinity();
        }
    }

    bool failed() const { return failed_; }
    double max_violation() const { return max_violation_; }

private:
    double base_tol_;
    bool failed_ = false;
    double max_violation_ = -std::numeric_limits<double>::infinity();
};

struct TrialContext {
    std::size_t dim;
    std::size_t trial;
    TrialRng rng;
    const SuiteConfig& cfg;
    TrialChecker& ck;
    Tolerances mtol;      // decomposition tolerances
    json witness;         // serialized offending input, captured eagerly on draws
};

struct PropertyDef {
    std::string id;
    std::string anchor;
    // Base tolerance = multiplier x (stochastic ? tol_stochastic : tol_algebraic).
    double tol_multiplier = 1.0;
    bool stochastic = false;
    bool in_all = true;
    std::function<void(TrialContext&)> run;
};

double spectral_norm_sum(const std::vector<double>& sigma) {
    double acc = 0.0;
    for (double s : sigma) acc += s;
    return acc;
}

double spectral_norm_hs(const std::vector<double>& sigma) {
    double acc = 0.0;
    for (double s : sigma) acc += s * s;
    return std::sqrt(acc);
}

Matrix draw_operator(TrialContext& ctx) {
    // Mostly Ginibre with a rank-deficient draw mixed in, so the spectral
    // edge cases get regular coverage.
    if (ctx.dim >= 2 && ctx.trial % 5 == 4) {
        const std::size_t rank = 1 + ctx.rng.next_u64() % (ctx.dim - 1);
        return random_rank_deficient(ctx.rng, ctx.dim, rank);
    }
    return ginibre(ctx.rng, ctx.dim, ctx.dim);
}

// Condition-limited mix matrix: re-representation checks compare matrices
// reconstructed through an inverse, so wild draws would just test rounding.
Matrix draw_mix_matrix(TrialRng& rng, std::size_t r, const Tolerances& tol) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        Matrix g = ginibre(rng, r, r);
        SvdFactors s = svd(g, tol);
        if (s.singular_values.back() > 1e-4 * s.singular_values.front()) return g;
    }
    return Matrix::identity(r);
}

// ---------------------------------------------------------------------------
// Property bodies. Each runs a single trial at ctx.dim.
// ---------------------------------------------------------------------------

void prop_norm_chain(TrialContext& ctx) {
    const Matrix t = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    SvdFactors s = svd(t, ctx.mtol);
    const double op = s.singular_values.front();
    const double hs = spectral_norm_hs(s.singular_values);
    const double tr1 = spectral_norm_sum(s.singular_values);
    const double scale = std::max(tr1, 1e-300);
    ctx.ck.le(op, hs, scale);
    ctx.ck.le(hs, tr1, scale);
    ctx.ck.le(hs * hs, op * tr1, std::max(op * tr1, 1e-300));
}

void prop_ideal_bounds(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    const Matrix s = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    const double op_s = operator_norm(s, ctx.mtol);
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    const double t2 = schatten_norm(t, 2, ctx.mtol);
    ctx.ck.le(schatten_norm(s * t, 1, ctx.mtol), op_s * t1, op_s * t1);
    ctx.ck.le(schatten_norm(t * s, 1, ctx.mtol), op_s * t1, op_s * t1);
    ctx.ck.le(schatten_norm(s * t, 2, ctx.mtol), op_s * t2, op_s * t2);
    ctx.ck.le(schatten_norm(t * s, 2, ctx.mtol), op_s * t2, op_s * t2);
}

void prop_adjoint_invariance(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const Matrix ta = t.adjoint();
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    ctx.ck.close(schatten_norm(ta, 1, ctx.mtol), t1, std::max(t1, 1e-300));
    const double t2 = schatten_norm(t, 2, ctx.mtol);
    ctx.ck.close(schatten_norm(ta, 2, ctx.mtol), t2, std::max(t2, 1e-300));
}

void prop_triangle_inequality(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    const Matrix s = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    const Matrix sum = s + t;
    const double rhs1 = schatten_norm(s, 1, ctx.mtol) + schatten_norm(t, 1, ctx.mtol);
    const double rhs2 = schatten_norm(s, 2, ctx.mtol) + schatten_norm(t, 2, ctx.mtol);
    ctx.ck.le(schatten_norm(sum, 1, ctx.mtol), rhs1, rhs1);
    ctx.ck.le(schatten_norm(sum, 2, ctx.mtol), rhs2, rhs2);
}

void prop_trace_identities(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    const Matrix s = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    const double op_s = operator_norm(s, ctx.mtol);
    const double scale = std::max(op_s * t1, 1e-300);
    ctx.ck.close_c(trace_product(t, s), trace_product(s, t), scale);
    ctx.ck.close_c(trace(t.adjoint()), std::conj(trace(t)), std::max(t1, 1e-300));
    ctx.ck.le(std::abs(trace(t)), t1, std::max(t1, 1e-300));
    const Matrix abs_t = abs_op(t, ctx.mtol);
    const Complex s_abs = trace_product(s, abs_t);
    ctx.ck.le(std::abs(s_abs), op_s * t1, scale);
    ctx.ck.close_c(s_abs, trace_product(abs_t, s), scale);
}

void prop_hs_inner_norm(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    const Matrix s = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    const double t2 = schatten_norm(t, 2, ctx.mtol);
    const double s2 = schatten_norm(s, 2, ctx.mtol);
    const double scale = std::max(t2 * t2, 1e-300);
    ctx.ck.close_c(hs_inner(t, t), Complex{t2 * t2, 0.0}, scale);
    ctx.ck.le(std::abs(hs_inner(t, s)), t2 * s2, std::max(t2 * s2, 1e-300));
    // ||T||_2^2 = tr(T^adj T) = || |T|^2 ||_1.
    ctx.ck.close_c(trace(t.adjoint() * t), Complex{t2 * t2, 0.0}, scale);
    const Matrix abs_t = abs_op(t, ctx.mtol);
    ctx.ck.close(schatten_norm(abs_t * abs_t, 1, ctx.mtol), t2 * t2, scale);
}

void prop_basis_independence(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    const Complex tr = trace(t);
    const double scale = std::max(t1, 1e-300);
    for (int b = 0; b < 50; ++b) {
        const Matrix basis = haar_unitary(ctx.rng, ctx.dim);
        const BasisTraceSums sums = basis_trace_sums(t, basis, ctx.mtol);
        ctx.ck.close(sums.abs_diag_of_abs, t1, scale);
        ctx.ck.le(sums.abs_sum, t1, scale);
        ctx.ck.close_c(sums.sum, tr, scale);
    }
}

void prop_hs_factorization(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const auto [a, b] = factor_hs(t, ctx.mtol);
    const double op = operator_norm(t, ctx.mtol);
    ctx.ck.le(frobenius_distance(a * b, t), 0.0, std::max(op, 1e-300));
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    const double prod = schatten_norm(a, 2, ctx.mtol) * schatten_norm(b, 2, ctx.mtol);
    // Product of HS norms attains the trace norm, at the looser 1e-8 budget.
    ctx.ck.close(prod, t1, std::max(t1, 1e-300), ctx.cfg.tol_algebraic * 10.0);
}

void prop_spectral_truncation(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const SvdFactors s = svd(t, ctx.mtol);
    const double t1 = spectral_norm_sum(s.singular_values);
    const double scale = std::max(t1, 1e-300);
    const auto residuals = density_report(t, ctx.mtol);
    ctx.ck.require(residuals.size() == ctx.dim + 1);
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& [k, res] : residuals) {
        double suffix = 0.0;
        for (std::size_t j = k; j < s.singular_values.size(); ++j)
            suffix += s.singular_values[j];
        ctx.ck.close(res, suffix, scale);
        ctx.ck.le(res, previous, scale);
        previous = res;
    }
    ctx.ck.le(residuals.back().second, 0.0, scale);
}

void prop_dual_attainment(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const DualAttainment da = dual_attainment(t, ctx.mtol);
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    const double scale = std::max(t1, 1e-300);
    const double thr8 = ctx.cfg.tol_algebraic * 10.0;  // stated at 1e-8
    ctx.ck.le(operator_norm(da.s, ctx.mtol), 1.0, 1.0);
    ctx.ck.close(da.value, t1, scale, thr8);
    // The attained value dominates every sampled contraction.
    for (int i = 0; i < 500; ++i) {
        Matrix c = (i % 5 == 4) ? ginibre(ctx.rng, ctx.dim, ctx.dim)
                                : random_contraction(ctx.rng, ctx.dim);
        if (i % 5 == 4) {
            const double fn = c.frobenius_norm();
            if (fn > 0.0) c = c * Complex{1.0 / fn, 0.0};  // ||.|| <= ||.||_F
        }
        ctx.ck.le(trace_product(c, t).real(), da.value, scale, thr8);
    }
}

void prop_lidskii_trace(TrialContext& ctx) {
    // The characteristic-polynomial oracle is trustworthy for small degree;
    // larger suite dims draw at the cap.
    const std::size_t d = std::min<std::size_t>(ctx.dim, 4);
    const Matrix t = ginibre(ctx.rng, d, d);
    ctx.witness = matrix_to_json(t);
    const auto roots = char_poly_eigenvalues(t);
    Complex sum{0.0, 0.0};
    for (const Complex& r : roots) sum += r;
    const double scale = std::max(schatten_norm(t, 1, ctx.mtol), 1.0);
    ctx.ck.close_c(trace(t), sum, scale);
}

void prop_shift_illustration(TrialContext& ctx) {
    if (ctx.dim < 2) return;  // scalars: nothing to show
    const ShiftRecord rec = shift_report(ctx.dim, ctx.mtol);
    const double expected = static_cast<double>(ctx.dim - 1);
    ctx.ck.le(rec.abs_diag_sum, 0.0, 1.0, ctx.cfg.tol_algebraic * 1e-3);  // 1e-12 absolute
    ctx.ck.close(rec.trace_norm, expected, expected);
    if (ctx.dim >= 3) {
        const ShiftRecord prev = shift_report(ctx.dim - 1, ctx.mtol);
        ctx.ck.le(prev.trace_norm, rec.trace_norm, expected);
    }
    // The diagonal sum vanishes in every basis (it equals the trace), while
    // the absolute version vanishes only for the shifted basis itself.
    const Matrix s = shift_matrix(ctx.dim);
    const Matrix basis = haar_unitary(ctx.rng, ctx.dim);
    const BasisTraceSums sums = basis_trace_sums(s, basis, ctx.mtol);
    ctx.ck.close_c(sums.sum, Complex{0.0, 0.0}, expected);
}

void prop_crossnorm_sandwich(TrialContext& ctx) {
    const std::size_t pairs = 1 + ctx.rng.next_u64() % (ctx.dim + 1);
    TensorElement f = (ctx.trial % 17 == 16) ? TensorElement::zero(ctx.dim, ctx.dim)
                                             : random_tensor_element(ctx.rng, ctx.dim, ctx.dim, pairs);
    ctx.witness = tensor_element_to_json(f);
    const Matrix c = coeff_matrix(f);
    const SvdFactors s = svd(c, ctx.mtol);
    const double proj = spectral_norm_sum(s.singular_values);
    const double inj = s.singular_values.front();
    const double scale = std::max(proj, 1e-300);
    ctx.ck.le(inj, proj, scale);
    // Equality exactly on rank <= 1 coefficient matrices.
    const double second = s.singular_values.size() > 1 ? s.singular_values[1] : 0.0;
    if (second <= 1e-9 * std::max(inj, 1e-300)) {
        ctx.ck.close(proj, inj, scale, ctx.cfg.tol_algebraic * 10.0);
    } else {
        ctx.ck.le(second * 0.5, proj - inj, scale);
    }
    // Single tensors sit at the common value ||x|| ||y||, to the 1e-10 budget.
    const Vec x = random_vector(ctx.rng, ctx.dim);
    const Vec y = random_vector(ctx.rng, ctx.dim);
    const TensorElement single = TensorElement::single(x, y);
    const double xy = vec_norm(x) * vec_norm(y);
    const double thr10 = ctx.cfg.tol_algebraic * 0.1;
    ctx.ck.close(projective_norm(single, ctx.mtol), xy, std::max(xy, 1e-300), thr10);
    ctx.ck.close(injective_norm(single, ctx.mtol), xy, std::max(xy, 1e-300), thr10);
}

void prop_representation_invariance(TrialContext& ctx) {
    const std::size_t pairs = 1 + ctx.rng.next_u64() % (ctx.dim + 1);
    TensorElement f = random_tensor_element(ctx.rng, ctx.dim, ctx.dim, pairs);
    ctx.witness = tensor_element_to_json(f);
    const Matrix c = coeff_matrix(f);
    const double proj = projective_norm(f, ctx.mtol);
    const double inj = injective_norm(f, ctx.mtol);
    const double cscale = std::max(c.frobenius_norm(), 1e-300);

    // Pair reordering and zero padding leave the coefficients untouched.
    TensorElement reordered = f;
    std::reverse(reordered.pairs.begin(), reordered.pairs.end());
    reordered.pairs.emplace_back(Vec(ctx.dim, Complex{0.0, 0.0}), Vec(ctx.dim, Complex{0.0, 0.0}));
    ctx.ck.le(frobenius_distance(coeff_matrix(reordered), c), 0.0, cscale);

    // Invertible mixes: same element, cost dominated from below by the norm.
    const std::size_t r = reordered.pairs.size();
    const Matrix g = draw_mix_matrix(ctx.rng, r, ctx.mtol);
    const TensorElement mixed = mix_representation(reordered, g, ctx.mtol);
    ctx.ck.le(frobenius_distance(coeff_matrix(mixed), c), 0.0, cscale,
              ctx.cfg.tol_algebraic * 10.0);
    ctx.ck.close(projective_norm(mixed, ctx.mtol), proj, std::max(proj, 1e-300),
                 ctx.cfg.tol_algebraic * 10.0);
    ctx.ck.close(injective_norm(mixed, ctx.mtol), inj, std::max(inj, 1e-300),
                 ctx.cfg.tol_algebraic * 10.0);
    ctx.ck.le(proj, representation_cost(mixed), std::max(proj, 1e-300));
}

void prop_kmap_contraction(TrialContext& ctx) {
    const std::size_t pairs = 1 + ctx.rng.next_u64() % (ctx.dim + 1);
    const TensorElement f = random_tensor_element(ctx.rng, ctx.dim, ctx.dim, pairs);
    ctx.witness = tensor_element_to_json(f);
    const Matrix k = k_map(f);
    const double knorm = operator_norm(k, ctx.mtol);
    // The element lives over functionals in its first slot; Riesz
    // identification is conjugate linear, so the projective norm of the
    // element is evaluated in functional coordinates.
    const double proj = projective_norm(conjugate_first_slots(f), ctx.mtol);
    ctx.ck.le(knorm, proj, std::max(proj, 1e-300));
    ctx.ck.le(knorm, representation_cost(f), std::max(proj, 1e-300));
    // Single tensors attain the bound.
    const Vec z = random_vector(ctx.rng, ctx.dim);
    const Vec y = random_vector(ctx.rng, ctx.dim);
    const TensorElement single = TensorElement::single(z, y);
    const double zy = vec_norm(z) * vec_norm(y);
    ctx.ck.close(operator_norm(k_map(single), ctx.mtol), zy, std::max(zy, 1e-300));
    ctx.ck.close(projective_norm(conjugate_first_slots(single), ctx.mtol), zy,
                 std::max(zy, 1e-300));
}

void prop_nuclear_trace_equality(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    const double scale = std::max(t1, 1e-300);
    ctx.ck.close(nuclear_norm(t, ctx.mtol), t1, scale);
    const NuclearRep rep = optimal_rep(t, ctx.mtol);
    ctx.ck.close(rep_cost(rep), t1, scale);
    ctx.ck.le(frobenius_distance(rep_to_matrix(rep), t), 0.0,
              std::max(operator_norm(t, ctx.mtol), 1e-300));
    // No re-representation beats the infimum.
    const TensorElement elem = rep_as_element(rep);
    const std::size_t r = std::max<std::size_t>(elem.pairs.size(), 1);
    for (int i = 0; i < 1000; ++i) {
        const Matrix g = ginibre(ctx.rng, r, r);
        double cost;
        try {
            cost = representation_cost(mix_representation(elem, g, ctx.mtol));
        } catch (const SingularMixError&) {
            continue;  // vanishing-measure draw; skip
        }
        ctx.ck.le(t1, cost, scale);
    }
}

void prop_rep_cost_lower_bound(TrialContext& ctx) {
    NuclearRep rep{ctx.dim, {}};
    const std::size_t terms = 1 + ctx.rng.next_u64() % (ctx.dim + 2);
    for (std::size_t k = 0; k < terms; ++k)
        rep.terms.push_back(NuclearTerm{random_vector(ctx.rng, ctx.dim),
                                        random_vector(ctx.rng, ctx.dim)});
    const Matrix t = rep_to_matrix(rep);
    ctx.witness = matrix_to_json(t);
    const double cost = rep_cost(rep);
    ctx.ck.le(nuclear_norm(t, ctx.mtol), cost, std::max(cost, 1e-300));
    // The representation acts exactly like the assembled matrix.
    const double thr10 = ctx.cfg.tol_algebraic * 0.1;
    for (int i = 0; i < 5; ++i) {
        const Vec x = random_vector(ctx.rng, ctx.dim);
        const Vec via_rep = nuclear_apply(rep, x);
        const Vec via_mat = t.apply(x);
        const double scale = std::max(cost * vec_norm(x), 1e-300);
        ctx.ck.le(vec_norm(vec_sub(via_rep, via_mat)), 0.0, scale, thr10);
    }
}

void prop_nuclear_operator_bound(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const double nn = nuclear_norm(t, ctx.mtol);
    ctx.ck.le(operator_norm(t, ctx.mtol), nn, std::max(nn, 1e-300));
}

void prop_nuclear_triangle(TrialContext& ctx) {
    const Matrix s = ginibre(ctx.rng, ctx.dim, ctx.dim);
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const NuclearRep rep_s = optimal_rep(s, ctx.mtol);
    const NuclearRep rep_t = optimal_rep(t, ctx.mtol);
    NuclearRep concat{ctx.dim, rep_s.terms};
    concat.terms.insert(concat.terms.end(), rep_t.terms.begin(), rep_t.terms.end());
    const double cost_sum = rep_cost(rep_s) + rep_cost(rep_t);
    ctx.ck.close(rep_cost(concat), cost_sum, std::max(cost_sum, 1e-300));
    ctx.ck.le(frobenius_distance(rep_to_matrix(concat), s + t), 0.0,
              std::max(operator_norm(s + t, ctx.mtol), 1e-300), ctx.cfg.tol_algebraic * 10.0);
    const double lhs = nuclear_norm(s + t, ctx.mtol);
    const double rhs = nuclear_norm(s, ctx.mtol) + nuclear_norm(t, ctx.mtol);
    ctx.ck.le(lhs, rhs, std::max(rhs, 1e-300));
}

void prop_compose_rep_bound(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    const Matrix l = ginibre(ctx.rng, ctx.dim, ctx.dim);
    const Matrix r = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    const NuclearRep rep = optimal_rep(t, ctx.mtol);
    const NuclearRep comp = compose_rep(l, rep, r);
    const Matrix expected = l * t * r;
    const double scale = std::max(operator_norm(l, ctx.mtol) * operator_norm(t, ctx.mtol) *
                                      operator_norm(r, ctx.mtol),
                                  1e-300);
    ctx.ck.le(frobenius_distance(rep_to_matrix(comp), expected), 0.0, scale);
    const double bound = operator_norm(l, ctx.mtol) * rep_cost(rep) * operator_norm(r, ctx.mtol);
    ctx.ck.le(rep_cost(comp), bound, std::max(bound, 1e-300));
}

void prop_adjoint_rep_invariance(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    NuclearRep rep = optimal_rep(t, ctx.mtol);
    if (ctx.trial % 2 == 1) {  // arbitrary representations too, not just optimal
        rep.terms.push_back(NuclearTerm{random_vector(ctx.rng, ctx.dim),
                                        random_vector(ctx.rng, ctx.dim)});
        rep.terms.push_back(NuclearTerm{rep.terms.back().z,
                                        vec_scale(rep.terms.back().y, Complex{-1.0, 0.0})});
    }
    const NuclearRep adj = adjoint_rep(rep);
    const Matrix m = rep_to_matrix(rep);
    const double scale = std::max(operator_norm(m, ctx.mtol), 1e-300);
    const double thr10 = ctx.cfg.tol_algebraic * 0.1;
    ctx.ck.le(frobenius_distance(rep_to_matrix(adj), m.adjoint()), 0.0, scale, thr10);
    ctx.ck.close(rep_cost(adj), rep_cost(rep), std::max(rep_cost(rep), 1e-300), thr10);
    const NuclearRep twice = adjoint_rep(adj);
    ctx.ck.le(frobenius_distance(rep_to_matrix(twice), m), 0.0, scale, thr10);
}

void prop_linearize_isometry(TrialContext& ctx) {
    const Matrix m = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(m);
    const BilinearForm phi = bilinearize(m);
    ctx.ck.le(frobenius_distance(linearize(phi), m), 0.0, std::max(m.frobenius_norm(), 1e-300));
    const SvdFactors s = svd(m, ctx.mtol);
    const double top = s.singular_values.front();
    const double scale = std::max(top, 1e-300);
    // The constructed maximiser x = conj(u1), y = v1 attains sigma_max.
    Vec xstar = s.u.column(0);
    for (Complex& v : xstar) v = std::conj(v);
    const Vec ystar = s.v.column(0);
    ctx.ck.close(std::abs(phi.apply(xstar, ystar)), top, scale);
    // Samples never exceed it: |Phi(F)| <= sigma_max for ||F||_proj <= 1.
    for (int i = 0; i < 10; ++i) {
        TensorElement f = random_tensor_element(ctx.rng, ctx.dim, ctx.dim, 1 + i % 3);
        const double pn = projective_norm(f, ctx.mtol);
        if (pn < 1e-12) continue;
        ctx.ck.le(std::abs(linearized_apply(m, f)), top * pn, top * pn);
        const Vec x = random_unit_vector(ctx.rng, ctx.dim);
        const Vec y = random_unit_vector(ctx.rng, ctx.dim);
        ctx.ck.le(std::abs(phi.apply(x, y)), top, scale);
    }
}

void prop_linearize_isometry_vector(TrialContext& ctx) {
    const std::size_t nx = std::min<std::size_t>(ctx.dim, 4);
    const std::size_t ny = std::min<std::size_t>(ctx.dim, 4);
    VectorBilinearMap phi;
    for (int p = 0; p < 3; ++p) phi.components.push_back(ginibre(ctx.rng, nx, ny));
    ctx.witness = matrix_to_json(phi.components.front());

    std::vector<std::pair<Vec, Vec>> starts;
    for (int r = 0; r < 20; ++r)
        starts.emplace_back(random_vector(ctx.rng, nx), random_vector(ctx.rng, ny));
    // Also start at each component's own maximiser; ascent is monotone, so
    // the result then provably dominates every component norm.
    for (const Matrix& mp : phi.components) {
        const SvdFactors s = svd(mp, ctx.mtol);
        Vec xs = s.u.column(0);
        for (Complex& v : xs) v = std::conj(v);
        starts.emplace_back(std::move(xs), s.v.column(0));
    }
    const double lower = vector_bilinear_norm_lower_bound(phi, starts, 100);

    // The ascent value must dominate every single component's exact norm...
    double comp_max = 0.0;
    for (const Matrix& mp : phi.components)
        comp_max = std::max(comp_max, operator_norm(mp, ctx.mtol));
    ctx.ck.le(comp_max, lower, std::max(comp_max, 1e-300), ctx.cfg.tol_stochastic);
    // ...and bound uniform samples of the linearised map on the projective
    // unit ball (this is the vector-target inequality, checked stochastically).
    for (int i = 0; i < 20; ++i) {
        TensorElement f = random_tensor_element(ctx.rng, nx, ny, 1 + i % 3);
        const double pn = projective_norm(f, ctx.mtol);
        if (pn < 1e-12) continue;
        Vec image(phi.target_dim(), Complex{0.0, 0.0});
        for (std::size_t p = 0; p < phi.target_dim(); ++p)
            image[p] = linearized_apply(phi.components[p], f);
        ctx.ck.le(vec_norm(image), lower * pn, std::max(lower * pn, 1e-300),
                  ctx.cfg.tol_stochastic);
    }
}

void prop_polar_reconstruction(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const PolarFactors pf = polar(t, ctx.mtol);
    const double op = operator_norm(t, ctx.mtol);
    const double scale = std::max(op, 1e-300);
    ctx.ck.le(frobenius_distance(pf.w * pf.p, t), 0.0, scale);
    ctx.ck.le(frobenius_distance(pf.p, pf.p.adjoint()), 0.0, scale);
    // P agrees with |T| computed through the square-root route.
    ctx.ck.le(frobenius_distance(pf.p, abs_op(t, ctx.mtol)), 0.0, scale,
              ctx.cfg.tol_algebraic * 10.0);
    // W^adj W is the orthogonal projection onto the support.
    const Matrix proj = pf.w.adjoint() * pf.w;
    ctx.ck.le(frobenius_distance(proj * proj, proj), 0.0, 1.0);
    ctx.ck.le(frobenius_distance(proj, proj.adjoint()), 0.0, 1.0);
    ctx.ck.le(frobenius_distance(proj * pf.p, pf.p), 0.0, scale);
    const SvdFactors s = svd(t, ctx.mtol);
    const double rank_floor = s.singular_values.front() * ctx.mtol.rank_rel;
    double rank = 0.0;
    for (double sv : s.singular_values)
        if (sv > rank_floor) rank += 1.0;
    ctx.ck.close(trace(proj).real(), rank, std::max(rank, 1.0), ctx.cfg.tol_algebraic * 10.0);
}

void prop_abs_isometry(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const Matrix abs_t = abs_op(t, ctx.mtol);
    const double op = operator_norm(t, ctx.mtol);
    const double scale = std::max(op, 1e-300);
    ctx.ck.close(operator_norm(abs_t, ctx.mtol), op, scale);
    ctx.ck.close(operator_norm(t.adjoint(), ctx.mtol), op, scale);
    for (int i = 0; i < 5; ++i) {
        const Vec x = random_vector(ctx.rng, ctx.dim);
        ctx.ck.close(vec_norm(t.apply(x)), vec_norm(abs_t.apply(x)),
                     std::max(op * vec_norm(x), 1e-300));
    }
}

void prop_spectral_form_abs(TrialContext& ctx) {
    const Matrix t = draw_operator(ctx);
    ctx.witness = matrix_to_json(t);
    const SvdFactors s = svd(t, ctx.mtol);
    const double op = s.singular_values.front();
    const double scale = std::max(op, 1e-300);
    // |T| = V diag(sigma) V^adj: the spectral form of the modulus.
    Matrix spectral(ctx.dim, ctx.dim);
    for (std::size_t i = 0; i < ctx.dim; ++i)
        for (std::size_t j = 0; j < ctx.dim; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < ctx.dim; ++k)
                acc += s.v(i, k) * s.singular_values[k] * std::conj(s.v(j, k));
            spectral(i, j) = acc;
        }
    ctx.ck.le(frobenius_distance(spectral, abs_op(t, ctx.mtol)), 0.0, scale,
              ctx.cfg.tol_algebraic * 10.0);
    // Factor quality for the decomposition itself.
    Matrix recon(ctx.dim, ctx.dim);
    for (std::size_t i = 0; i < ctx.dim; ++i)
        for (std::size_t j = 0; j < ctx.dim; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < ctx.dim; ++k)
                acc += s.u(i, k) * s.singular_values[k] * std::conj(s.v(j, k));
            recon(i, j) = acc;
        }
    ctx.ck.le(frobenius_distance(recon, t), 0.0, scale);
    ctx.ck.le(frobenius_distance(s.u.adjoint() * s.u, Matrix::identity(ctx.dim)), 0.0, 1.0);
    ctx.ck.le(frobenius_distance(s.v.adjoint() * s.v, Matrix::identity(ctx.dim)), 0.0, 1.0);
    // Hermitian eigendecomposition quality on a fresh Hermitian draw.
    const Matrix g = ginibre(ctx.rng, ctx.dim, ctx.dim);
    const Matrix h = (g + g.adjoint()) * Complex{0.5, 0.0};
    const EigResult eig = hermitian_eig(h, ctx.mtol);
    Matrix hrecon(ctx.dim, ctx.dim);
    for (std::size_t i = 0; i < ctx.dim; ++i)
        for (std::size_t j = 0; j < ctx.dim; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < ctx.dim; ++k)
                acc += eig.q(i, k) * eig.eigenvalues[k] * std::conj(eig.q(j, k));
            hrecon(i, j) = acc;
        }
    ctx.ck.le(frobenius_distance(hrecon, h), 0.0, std::max(h.frobenius_norm(), 1e-300));
    ctx.ck.le(frobenius_distance(eig.q.adjoint() * eig.q, Matrix::identity(ctx.dim)), 0.0, 1.0);
}

void prop_selfcheck_corrupt(TrialContext& ctx) {
    // Deliberately inverted norm chain; a healthy library must fail this.
    const Matrix t = ginibre(ctx.rng, ctx.dim, ctx.dim);
    ctx.witness = matrix_to_json(t);
    const double t1 = schatten_norm(t, 1, ctx.mtol);
    ctx.ck.le(t1, operator_norm(t, ctx.mtol), std::max(t1, 1e-300));
}

const std::vector<PropertyDef>& registry() {
    static const std::vector<PropertyDef> defs = [] {
        std::vector<PropertyDef> v;
        auto add = [&](std::string id, std::string anchor, double mult, bool stochastic,
                       std::function<void(TrialContext&)> run, bool in_all = true) {
            v.push_back(PropertyDef{std::move(id), std::move(anchor), mult, stochastic, in_all,
                                    std::move(run)});
        };
        add("norm_chain", "Lem. 5.1(d); Thm. 5.2(c)", 1.0, false, prop_norm_chain);
        add("ideal_bounds", "Thm. 5.2(e); Lem. 5.1(b)", 1.0, false, prop_ideal_bounds);
        add("adjoint_invariance", "Thm. 5.2(f); Lem. 5.1(e)", 0.1, false,
            prop_adjoint_invariance);
        add("triangle_inequality", "Thm. 5.2 (Claim 2); Lem. 5.1 (Claim 1)", 1.0, false,
            prop_triangle_inequality);
        add("trace_identities", "§5 (Claim 3; trace displays)", 1.0, false,
            prop_trace_identities);
        add("hs_inner_norm", "Rem. 5.6; §5", 1.0, false, prop_hs_inner_norm);
        add("basis_independence", "§5 (Claim 3(i))", 1.0, false, prop_basis_independence);
        add("hs_factorization", "Thm. 5.2(b)", 1.0, false, prop_hs_factorization);
        add("spectral_truncation", "Thm. 5.5(b)", 1.0, false, prop_spectral_truncation);
        add("dual_attainment", "§5 (duality; B₁[X]* ≅ B[X])", 1.0, false,
            prop_dual_attainment);
        add("lidskii_trace", "§1 (trace as eigenvalue sum)", 100.0, false,
            prop_lidskii_trace);
        add("shift_illustration", "Rem. 5.4(c)", 1.0, false, prop_shift_illustration);
        add("crossnorm_sandwich", "§3 (i),(v)", 1.0, false, prop_crossnorm_sandwich);
        add("representation_invariance", "Thm. 3.1", 1.0, false,
            prop_representation_invariance);
        add("kmap_contraction", "Thm. 4.1", 1.0, false, prop_kmap_contraction);
        add("nuclear_trace_equality", "Thm. 6.1", 1.0, false, prop_nuclear_trace_equality);
        add("rep_cost_lower_bound", "Thm. 4.1(c)", 1.0, false, prop_rep_cost_lower_bound);
        add("nuclear_operator_bound", "Thm. 4.1(c)", 1.0, false, prop_nuclear_operator_bound);
        add("nuclear_triangle", "Thm. 4.1(c)", 1.0, false, prop_nuclear_triangle);
        add("compose_rep_bound", "Cor. 4.2", 1.0, false, prop_compose_rep_bound);
        add("adjoint_rep_invariance", "Cor. 4.3", 0.1, false, prop_adjoint_rep_invariance);
        add("linearize_isometry", "Thm. 3.2", 1.0, false, prop_linearize_isometry);
        add("linearize_isometry_vector", "Thm. 3.2 (vector target)", 1.0, true,
            prop_linearize_isometry_vector);
        add("polar_reconstruction", "§5 (polar decomposition); Prop. 5.3", 1.0, false,
            prop_polar_reconstruction);
        add("abs_isometry", "§5 (preliminaries)", 1.0, false, prop_abs_isometry);
        add("spectral_form_abs", "Prop. 5.3", 1.0, false, prop_spectral_form_abs);
        add("selfcheck_corrupt", "diagnostic (inverted Thm. 5.2(c) chain)", 1.0, false,
            prop_selfcheck_corrupt, /*in_all=*/false);
        return v;
    }();
    return defs;
}

std::size_t pick_thread_count(const SuiteConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("OPCALC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 16);
}

struct TrialOutcome {
    bool failed = false;
    double max_violation = -std::numeric_limits<double>::infinity();
    json witness;
};

}  // namespace

std::vector<std::string> known_properties() {
    std::vector<std::string> out;
    for (const auto& def : registry())
        if (def.in_all) out.push_back(def.id);
    return out;
}

std::vector<std::string> diagnostic_properties() {
    std::vector<std::string> out;
    for (const auto& def : registry())
        if (!def.in_all) out.push_back(def.id);
    return out;
}

std::vector<std::string> missing_anchor_coverage() {
    static const std::vector<std::string> required = {
        "Thm. 3.1",  "Thm. 3.2",  "Thm. 4.1", "Cor. 4.2", "Cor. 4.3",
        "Lem. 5.1",  "Thm. 5.2",  "Prop. 5.3", "Rem. 5.4", "Thm. 5.5(b)",
        "Rem. 5.6",  "Thm. 6.1",  "§1",  "§3",  "§5",
    };
    std::vector<std::string> missing;
    for (const std::string& anchor : required) {
        bool found = false;
        for (const auto& def : registry()) {
            if (def.in_all && def.anchor.find(anchor) != std::string::npos) {
                found = true;
                break;
            }
        }
        if (!found) missing.push_back(anchor);
    }
    return missing;
}

VerificationReport run_suite(const SuiteConfig& config) {
    config.validate();

    std::vector<const PropertyDef*> selected;
    const bool all = config.properties.empty() ||
                     (config.properties.size() == 1 && config.properties.front() == "all");
    if (all) {
        for (const auto& def : registry())
            if (def.in_all) selected.push_back(&def);
    } else {
        for (const std::string& id : config.properties) {
            const PropertyDef* found = nullptr;
            for (const auto& def : registry())
                if (def.id == id) found = &def;
            if (found == nullptr) {
                std::ostringstream msg;
                msg << "unknown property '" << id << "'; known properties:";
                for (const auto& name : known_properties()) msg << " " << name;
                throw UnknownPropertyError(msg.str());
            }
            selected.push_back(found);
        }
    }

    const std::size_t nthreads = pick_thread_count(config);
    VerificationReport report;
    report.config = config;

    for (const PropertyDef* def : selected) {
        const auto started = std::chrono::steady_clock::now();
        PropertyRecord rec;
        rec.property_id = def->id;
        rec.paper_anchor = def->anchor;
        rec.tolerance = def->tol_multiplier *
                        (def->stochastic ? config.tol_stochastic : config.tol_algebraic);
        rec.max_violation = -std::numeric_limits<double>::infinity();

        for (std::size_t dim : config.dims) {
            std::vector<TrialOutcome> outcomes(config.trials);
            auto run_range = [&](std::size_t begin, std::size_t end) {
                for (std::size_t trial = begin; trial < end; ++trial) {
                    TrialChecker ck(rec.tolerance);
                    Tolerances mtol;
                    mtol.algebraic = config.tol_algebraic;
                    TrialContext ctx{dim, trial,
                                     TrialRng(derive_seed(config.seed, def->id, dim, trial)),
                                     config, ck, mtol, json{}};
                    try {
                        def->run(ctx);
                    } catch (const std::exception& ex) {
                        ck.require(false);
                        ctx.witness = json{{"error", ex.what()}, {"input", ctx.witness}};
                    }
                    outcomes[trial].failed = ck.failed();
                    outcomes[trial].max_violation = ck.max_violation();
                    if (ck.failed()) outcomes[trial].witness = std::move(ctx.witness);
                }
            };
            if (nthreads <= 1 || config.trials < 2) {
                run_range(0, config.trials);
            } else {
                std::vector<std::thread> workers;
                const std::size_t chunk = (config.trials + nthreads - 1) / nthreads;
                for (std::size_t w = 0; w < nthreads; ++w) {
                    const std::size_t begin = w * chunk;
                    const std::size_t end = std::min(config.trials, begin + chunk);
                    if (begin >= end) break;
                    workers.emplace_back(run_range, begin, end);
                }
                for (auto& th : workers) th.join();
            }
            // Aggregate in trial order so reports never depend on scheduling.
            for (std::size_t trial = 0; trial < config.trials; ++trial) {
                ++rec.trials_run;
                rec.max_violation = std::max(rec.max_violation, outcomes[trial].max_violation);
                if (outcomes[trial].failed) {
                    ++rec.failures;
                    rec.failure_examples.push_back(
                        json{{"dim", dim}, {"trial", trial}, {"input", outcomes[trial].witness}});
                }
            }
        }
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
        report.records.push_back(std::move(rec));
    }

    report.pass = std::all_of(report.records.begin(), report.records.end(),
                              [](const PropertyRecord& r) { return r.failures == 0; });
    return report;
}

ShiftRecord shift_report(std::size_t n, const Tolerances& tol) {
    const Matrix s = shift_matrix(n);  // raises NTooSmall below 2
    const BasisTraceSums sums = basis_trace_sums(s, Matrix::identity(n), tol);
    ShiftRecord rec;
    rec.n = n;
    rec.abs_diag_sum = sums.abs_sum;
    rec.trace_norm = schatten_norm(s, 1, tol);
    rec.ratio = rec.abs_diag_sum == 0.0 ? std::numeric_limits<double>::infinity()
                                        : rec.trace_norm / rec.abs_diag_sum;
    return rec;
}

std::vector<std::pair<std::size_t, double>> density_report(const Matrix& t,
                                                           const Tolerances& tol) {
    if (!t.is_square()) throw NonSquareError("density_report requires a square matrix");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(t.rows() + 1);
    for (std::size_t k = 0; k <= t.rows(); ++k) {
        const Matrix tk = truncate_spectral(t, k, tol);
        out.emplace_back(k, trace_norm(t - tk, tol));
    }
    return out;
}

json report_to_json(const VerificationReport& report) {
    json cfg;
    cfg["dims"] = report.config.dims;
    cfg["trials"] = report.config.trials;
    cfg["seed"] = report.config.seed;
    cfg["tol_algebraic"] = report.config.tol_algebraic;
    cfg["tol_stochastic"] = report.config.tol_stochastic;
    cfg["properties"] = report.config.properties.empty()
                            ? json::array({"all"})
                            : json(report.config.properties);

    json records = json::array();
    for (const auto& rec : report.records) {
        json r;
        r["property_id"] = rec.property_id;
        r["paper_anchor"] = rec.paper_anchor;
        r["tolerance"] = rec.tolerance;
        r["trials_run"] = rec.trials_run;
        r["failures"] = rec.failures;
        // -inf marks "no checks ran"; serialise as null to stay valid JSON.
        if (std::isfinite(rec.max_violation))
            r["max_violation"] = rec.max_violation;
        else
            r["max_violation"] = nullptr;
        r["elapsed_ms"] = rec.elapsed_ms;
        r["failure_examples"] = rec.failure_examples;
        records.push_back(std::move(r));
    }

    json out;
    out["config"] = std::move(cfg);
    out["properties"] = std::move(records);
    out["pass"] = report.pass;
    return out;
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream out;
    out << "property_id,trials,failures,max_violation\n";
    for (const auto& rec : report.records) {
        out << rec.property_id << "," << rec.trials_run << "," << rec.failures << ",";
        if (std::isfinite(rec.max_violation)) {
            out.precision(17);
            out << rec.max_violation;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace opcalc

#include "qcorr/states.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/kernels.hpp"

namespace qcorr {

namespace {

std::vector<cplx> basis_product_vector(const OrthonormalBasis& a, int i,
                                       const OrthonormalBasis& b, int j) {
    return tensor_product(a.vector(i), b.vector(j));
}

DensityMatrix maximally_entangled(int d) {
    std::vector<cplx> v(static_cast<size_t>(d) * d, cplx{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) v[j * d + j] = amp;
    return pure_state_density(v);
}

DensityMatrix bell(double sign_on_11) {
    const double s = 1.0 / std::sqrt(2.0);
    return pure_state_density({s, 0.0, 0.0, sign_on_11 * s});
}

DensityMatrix bell_psi(double sign_on_10) {
    const double s = 1.0 / std::sqrt(2.0);
    return pure_state_density({0.0, s, sign_on_10 * s, 0.0});
}

DensityMatrix shifted_cc_density(int d) {
    const auto comp = computational_basis(d);
    ComplexMatrix acc(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        const auto v = basis_product_vector(comp, i, comp, (i + 1) % d);
        acc += (1.0 / d) * outer(v);
    }
    return DensityMatrix::from_matrix(std::move(acc));
}

DensityMatrix product_bound_density(int d) {
    const auto comp = computational_basis(d);
    const auto four = fourier_basis(d);
    ComplexMatrix acc(d * d, d * d);
    const double w = 1.0 / (2.0 * d);
    for (int i = 0; i < d; ++i) {
        acc += w * outer(basis_product_vector(comp, i, comp, i));
        acc += w * outer(basis_product_vector(four, i, four, i));
    }
    return DensityMatrix::from_matrix(std::move(acc));
}

DensityMatrix two_corner_density() {
    const DensityMatrix p00 = pure_state_density({1.0, 0.0, 0.0, 0.0});
    const DensityMatrix ppp = pure_state_density({0.5, 0.5, 0.5, 0.5});
    return convex_mix({0.5, 0.5}, {p00, ppp});
}

}  // namespace

BipartiteState rho_cc(const OrthonormalBasis& basisA, const OrthonormalBasis& basisB) {
    if (basisA.dim() != basisB.dim()) throw contract_error("rho_cc: basis dimension mismatch");
    const int d = basisA.dim();
    ComplexMatrix acc(d * d, d * d);
    for (int i = 0; i < d; ++i)
        acc += (1.0 / d) * outer(basis_product_vector(basisA, i, basisB, i));
    return BipartiteState::make(d, d, DensityMatrix::from_matrix(std::move(acc)));
}

BipartiteState schmidt_state(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw contract_error("schmidt_state: eps outside [0,1]");
    const double beta = std::sqrt(std::max(0.0, 1.0 - eps * eps));
    return BipartiteState::make(2, 2, pure_state_density({eps, 0.0, 0.0, beta}));
}

BipartiteState werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw contract_error("werner: p outside [0,1]");
    ComplexMatrix m = bell(1.0).matrix();
    m *= p;
    const double off = (1.0 - p) / 4.0;
    for (int i = 0; i < 4; ++i) m(i, i) += off;
    return BipartiteState::make(2, 2, DensityMatrix::from_matrix(std::move(m)));
}

BipartiteState named_state(std::string_view name, int d) {
    if (d < 2 || d > 16) throw contract_error("named_state: d outside [2,16]");
    const bool qubit_only =
        (name == "phi_minus" || name == "psi_plus" || name == "psi_minus" ||
         name == "two_corner" || name == "qq_four_corner");
    if (qubit_only && d != 2)
        throw contract_error("named_state: '" + std::string(name) + "' is two-qubit only");

    if (name == "phi_plus") return BipartiteState::make(d, d, maximally_entangled(d));
    if (name == "phi_minus") return BipartiteState::make(2, 2, bell(-1.0));
    if (name == "psi_plus") return BipartiteState::make(2, 2, bell_psi(1.0));
    if (name == "psi_minus") return BipartiteState::make(2, 2, bell_psi(-1.0));
    if (name == "rho_cc") return rho_cc(computational_basis(d), computational_basis(d));
    if (name == "shifted_cc") return BipartiteState::make(d, d, shifted_cc_density(d));
    if (name == "two_corner") return BipartiteState::make(2, 2, two_corner_density());
    if (name == "qq_four_corner")
        return BipartiteState::make(2, 2, product_bound_density(2));
    if (name == "product_bound") return BipartiteState::make(d, d, product_bound_density(d));
    throw contract_error("named_state: unknown name '" + std::string(name) + "'");
}

const std::vector<std::string>& named_state_catalog() {
    static const std::vector<std::string> names = {
        "phi_plus",   "phi_minus",      "psi_plus",      "psi_minus", "rho_cc",
        "shifted_cc", "two_corner",     "qq_four_corner", "product_bound"};
    return names;
}

ComplexMatrix ginibre_matrix(int rows, int cols, RngStream& rng) {
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = cplx{rng.next_gaussian(), rng.next_gaussian()};
    return g;
}

ComplexMatrix haar_unitary(int d, RngStream& rng) {
    // Modified Gram-Schmidt; R's diagonal comes out positive, which is the
    // convention that makes Q Haar-distributed.
    ComplexMatrix q = ginibre_matrix(d, d, rng);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int i = 0; i < d; ++i) proj += std::conj(q(i, k)) * q(i, j);
            for (int i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < d; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < d; ++i) q(i, j) /= nrm;
    }
    return q;
}

DensityMatrix random_density_matrix(int d_total, RngStream& rng, RandomEnsemble ensemble) {
    if (d_total < 2) throw contract_error("random_density_matrix: dimension must be >= 2");
    ComplexMatrix out(d_total, d_total);
    if (ensemble == RandomEnsemble::GinibreHS) {
        const ComplexMatrix g = ginibre_matrix(d_total, d_total, rng);
        kernels::active().gram_unit_trace(g.data().data(), d_total, out.data().data());
    } else {
        const std::vector<double> lam = simplex_uniform(rng, d_total);
        const ComplexMatrix u = haar_unitary(d_total, rng);
        kernels::active().conjugate_diag(u.data().data(), lam.data(), d_total,
                                         out.data().data());
    }
    return DensityMatrix::from_matrix(std::move(out));
}

BipartiteState random_bipartite(int d, RngStream& rng, RandomEnsemble ensemble) {
    return BipartiteState::make(d, d, random_density_matrix(d * d, rng, ensemble));
}

BipartiteState separable_mixture(int d, int k, RngStream& rng) {
    if (k < 1) throw contract_error("separable_mixture: k must be >= 1");
    const std::vector<double> w = simplex_uniform(rng, k);
    ComplexMatrix acc(d * d, d * d);
    for (int l = 0; l < k; ++l) {
        const DensityMatrix rhoA = random_density_matrix(d, rng, RandomEnsemble::GinibreHS);
        const DensityMatrix rhoB = random_density_matrix(d, rng, RandomEnsemble::GinibreHS);
        acc += w[l] * tensor_product(rhoA.matrix(), rhoB.matrix());
    }
    return BipartiteState::make(d, d, DensityMatrix::from_matrix(std::move(acc)));
}

const std::vector<StateFamily>& state_families() {
    static const std::vector<StateFamily> families = [] {
        std::vector<StateFamily> f;
        f.push_back({"werner", "p |Phi+><Phi+| + (1-p) I/4; entangled iff p > 1/3",
                     [](double p) { return werner(p); }});
        f.push_back({"schmidt", "pure p|00> + sqrt(1-p^2)|11>; entangled iff 0 < p < 1",
                     [](double p) { return schmidt_state(p); }});
        f.push_back({"cc_mix",
                     "p rho_cc(comp) + (1-p) rho_cc(Fourier); separable QQ for p not in {0,1}",
                     [](double p) {
                         if (!(p >= 0.0 && p <= 1.0))
                             throw contract_error("cc_mix: p outside [0,1]");
                         const auto a = rho_cc(computational_basis(2), computational_basis(2));
                         const auto b = rho_cc(fourier_basis(2), fourier_basis(2));
                         return BipartiteState::make(
                             2, 2, convex_mix({p, 1.0 - p}, {a.rho, b.rho}));
                     }});
        f.push_back({"bell_mix",
                     "p |Phi+><Phi+| + (1-p) |Phi-><Phi-|; entangled iff p != 1/2",
                     [](double p) {
                         if (!(p >= 0.0 && p <= 1.0))
                             throw contract_error("bell_mix: p outside [0,1]");
                         return BipartiteState::make(
                             2, 2, convex_mix({p, 1.0 - p}, {bell(1.0), bell(-1.0)}));
                     }});
        return f;
    }();
    return families;
}

const StateFamily* find_family(std::string_view name) {
    for (const StateFamily& f : state_families())
        if (f.name == name) return &f;
    return nullptr;
}

}  // namespace qcorr

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/bases.hpp"
#include "qcorr/density.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

/// sum_i |a_i><a_i| (x) |b_i><b_i| / d — classically correlated, zero
/// discord.
BipartiteState rho_cc(const OrthonormalBasis& basisA, const OrthonormalBasis& basisB);

/// Pure two-qubit state eps|00> + sqrt(1-eps^2)|11>, eps in [0,1].
BipartiteState schmidt_state(double eps);

/// p |Phi+><Phi+| + (1-p) I/4.
BipartiteState werner(double p);

/// Fixed catalog: phi_plus, phi_minus, psi_plus, psi_minus, rho_cc,
/// shifted_cc, two_corner, qq_four_corner, product_bound. d applies where
/// the construction generalizes (phi_plus, rho_cc, shifted_cc,
/// product_bound); the rest are two-qubit.
BipartiteState named_state(std::string_view name, int d = 2);
const std::vector<std::string>& named_state_catalog();

enum class RandomEnsemble {
    SpectrumSimplex,  // eigenvalues uniform on the simplex, Haar eigenvectors
    GinibreHS,        // G G^dagger / Tr, G square complex Ginibre
};

/// i.i.d. standard complex Gaussian entries (re and im each N(0,1)).
ComplexMatrix ginibre_matrix(int rows, int cols, RngStream& rng);

/// Haar-distributed unitary (Gram-Schmidt of a Ginibre matrix with the
/// positive-diagonal-R convention).
ComplexMatrix haar_unitary(int d, RngStream& rng);

DensityMatrix random_density_matrix(int d_total, RngStream& rng,
                                    RandomEnsemble ensemble = RandomEnsemble::SpectrumSimplex);

BipartiteState random_bipartite(int d, RngStream& rng,
                                RandomEnsemble ensemble = RandomEnsemble::SpectrumSimplex);

/// Convex mixture of k random product states (simplex-uniform weights);
/// separable by construction.
BipartiteState separable_mixture(int d, int k, RngStream& rng);

struct StateFamily {
    std::string name;
    std::string description;
    std::function<BipartiteState(double)> generator;  // p in [0,1]
};

/// werner, schmidt, cc_mix, bell_mix.
const std::vector<StateFamily>& state_families();
const StateFamily* find_family(std::string_view name);

}  // namespace qcorr

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcorr/criteria.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

double h2(double p) {
    const auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

MubSet two_mubs(int d = 2) { return MubSet::make({computational_basis(d), fourier_basis(d)}); }

}  // namespace

TEST_CASE("ppt oracle on catalog states") {
    CHECK(ppt_oracle(werner(0.5)).detected);
    CHECK_FALSE(ppt_oracle(rho_cc(computational_basis(2), computational_basis(2))).detected);
    CHECK(ppt_oracle(schmidt_state(0.1)).detected);
    // margin carries the most negative eigenvalue: eps*sqrt(1-eps^2) for the
    // Schmidt family.
    const double eps = 0.3;
    CHECK(ppt_oracle(schmidt_state(eps)).margin ==
          doctest::Approx(eps * std::sqrt(1.0 - eps * eps)).epsilon(1e-10));
}

TEST_CASE("mutual-information criterion") {
    const CorrelationReport phi = full_report(named_state("phi_plus"), two_mubs());
    const Verdict vp = mi_criterion(phi, 2);
    CHECK(vp.detected);
    CHECK(vp.margin == doctest::Approx(1.0).epsilon(1e-9));

    const CorrelationReport cc =
        full_report(rho_cc(computational_basis(2), computational_basis(2)), two_mubs());
    const Verdict vc = mi_criterion(cc, 2);
    CHECK_FALSE(vc.detected);
    CHECK(std::abs(vc.margin) < 1e-9);

    // Closed form for Werner states: I sum = 2 (1 - h2((1+p)/2)).
    const CorrelationReport w9 = full_report(werner(0.9), two_mubs());
    CHECK(w9.mi_sum_top2() == doctest::Approx(2.0 * (1.0 - h2(0.95))).epsilon(1e-10));
    CHECK(mi_criterion(w9, 2).detected);
}

TEST_CASE("three-MUB mutual-information criterion") {
    const MubSet pauli = qubit_pauli_mubs();

    const Verdict vphi = mi3_criterion(full_report(named_state("phi_plus"), pauli));
    CHECK(vphi.detected);
    CHECK(vphi.margin == doctest::Approx(2.0).epsilon(1e-9));

    for (double p : {0.1, 0.4, 0.6, 0.8, 0.95}) {
        const CorrelationReport rep = full_report(werner(p), pauli);
        const double closed = 3.0 * (1.0 - h2((1.0 + p) / 2.0));
        CHECK(rep.mi_sum_all() == doctest::Approx(closed).epsilon(1e-10));
        CHECK(mi3_criterion(rep).detected == (closed > 1.0 + 1e-9));
    }

    // Separable constructions never trip the proven criterion.
    RngStream rng(41, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const BipartiteState s = separable_mixture(2, 4, rng);
        CHECK_FALSE(mi3_criterion(full_report(s, pauli)).detected);
        CHECK_FALSE(mi_criterion(full_report(s, two_mubs()), 2).detected);
    }

    CHECK_THROWS_AS(mi3_criterion(full_report(named_state("phi_plus"), two_mubs())),
                    contract_error);
}

TEST_CASE("pearson criteria") {
    const double eps = 0.3;
    const CorrelationReport sch = full_report(schmidt_state(eps), two_mubs());
    const Verdict vs = pearson_criterion(sch, 2);
    CHECK(vs.detected);
    CHECK(vs.margin ==
          doctest::Approx(2.0 * eps * std::sqrt(1.0 - eps * eps)).epsilon(1e-10));

    const MubSet pauli = qubit_pauli_mubs();
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 1.0}) {
        const CorrelationReport rep = full_report(werner(p), pauli);
        CHECK(rep.pearson_sum_all() == doctest::Approx(3.0 * p).epsilon(1e-9));
        CHECK(pearson_criterion(rep, 3).detected == (3.0 * p > 1.0 + 1e-9));
    }

    // Product-form bound is attained by the product_bound state.
    const CorrelationReport pb = full_report(named_state("product_bound"), two_mubs());
    const Verdict vp = pearson_product_criterion(pb);
    CHECK_FALSE(vp.detected);
    CHECK(std::abs(vp.margin) < 1e-9);

    // rho_cc sits exactly on the sum threshold.
    const Verdict vcc = pearson_criterion(
        full_report(rho_cc(computational_basis(2), computational_basis(2)), two_mubs()), 2);
    CHECK_FALSE(vcc.detected);
    CHECK(std::abs(vcc.margin) < 1e-9);
}

TEST_CASE("mi criterion takes the two largest pairs over a full MUB set") {
    // rho_cc at d=3 over all four MUBs: the computational pair carries
    // log2(3) bits, every other pair is uniform, so the top-2 sum sits on
    // the threshold exactly.
    const MubSet mubs = prime_d_mubs(3);
    REQUIRE(mubs.size() == 4);
    REQUIRE(mubs.basis(0).columns().max_abs_diff(computational_basis(3).columns()) == 0.0);
    const BipartiteState cc = rho_cc(computational_basis(3), computational_basis(3));
    const CorrelationReport rep = full_report(cc, mubs);
    CHECK(rep.pairs[0].I == doctest::Approx(std::log2(3.0)).epsilon(1e-10));
    for (int k = 1; k < 4; ++k) CHECK(rep.pairs[k].I == doctest::Approx(0.0).epsilon(1e-9));
    const Verdict v = mi_criterion(rep, 3);
    CHECK_FALSE(v.detected);
    CHECK(std::abs(v.margin) < 1e-9);

    // Phi+ at d=3 is detected through any two of the pairs.
    const CorrelationReport rphi = full_report(named_state("phi_plus", 3), mubs);
    CHECK(mi_criterion(rphi, 3).detected);
    CHECK(rphi.mi_sum_top2() == doctest::Approx(2.0 * std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("conditional-probability criterion") {
    const Verdict vphi = condprob_criterion(full_report(named_state("phi_plus"), two_mubs()), 2);
    CHECK(vphi.detected);
    CHECK(vphi.margin == doctest::Approx(1.0).epsilon(1e-9));

    const Verdict vcc = condprob_criterion(
        full_report(rho_cc(computational_basis(2), computational_basis(2)), two_mubs()), 2);
    CHECK_FALSE(vcc.detected);
    CHECK(std::abs(vcc.margin) < 1e-9);

    const Verdict vsh = condprob_criterion(full_report(named_state("shifted_cc"), two_mubs()), 2);
    CHECK_FALSE(vsh.detected);
    CHECK(std::abs(vsh.margin) < 1e-9);

    // Undefined conditionals make the criterion abstain.
    const BipartiteState zz = BipartiteState::make(2, 2, pure_state_density({1, 0, 0, 0}));
    const Verdict vz = condprob_criterion(full_report(zz, two_mubs()), 2);
    CHECK_FALSE(vz.detected);
}

TEST_CASE("witness bank") {
    const std::vector<Verdict> singlet = witness_bank(named_state("psi_minus"));
    CHECK(singlet[0].margin == doctest::Approx(0.5).epsilon(1e-12));  // Tr[W1 rho] = -1/2
    CHECK(witness_bank_aggregate(named_state("psi_minus")).detected);

    // Singlet-Werner mixtures: W1 has Tr = (1-3p)/4, so the bank fires
    // exactly for p > 1/3.
    for (double p : {0.0, 0.2, 0.4, 0.8, 1.0}) {
        ComplexMatrix m = named_state("psi_minus").rho.matrix();
        m *= p;
        for (int i = 0; i < 4; ++i) m(i, i) += (1.0 - p) / 4.0;
        const BipartiteState sw =
            BipartiteState::make(2, 2, DensityMatrix::from_matrix(std::move(m)));
        const Verdict v = witness_bank_aggregate(sw);
        CHECK(v.margin == doctest::Approx((3.0 * p - 1.0) / 4.0).epsilon(1e-10));
        CHECK(v.detected == (p > 1.0 / 3.0 + 1e-9));
    }

    // The witness bank leaves the Phi+ corner uncovered: Phi+-Werner
    // mixtures are never flagged even when entangled.
    for (double p : {0.5, 0.9, 1.0}) CHECK_FALSE(witness_bank_aggregate(werner(p)).detected);

    RngStream rng(43, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const BipartiteState s = separable_mixture(2, 4, rng);
        for (const Verdict& v : witness_bank(s)) CHECK(v.margin <= 1e-9);
    }

    // Witness expectations are linear in the state.
    const ComplexMatrix r1 = werner(0.7).rho.matrix();
    const ComplexMatrix r2 = named_state("two_corner").rho.matrix();
    for (const WitnessOperator& w : bell_witnesses()) {
        const auto tr = [&](const ComplexMatrix& rho) {
            cplx t = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) t += rho(i, k) * w.matrix(k, i);
            return t.real();
        };
        const double lambda = 0.37;
        ComplexMatrix mix = lambda * r1;
        mix += (1.0 - lambda) * r2;
        CHECK(tr(mix) ==
              doctest::Approx(lambda * tr(r1) + (1.0 - lambda) * tr(r2)).epsilon(1e-12));
    }
}

TEST_CASE("witness matrices are Hermitian with the expected structure") {
    const auto& bank = bell_witnesses();
    REQUIRE(bank.size() == 5);
    const auto tr_on = [&](int i, const char* state) {
        const ComplexMatrix rho = named_state(state).rho.matrix();
        cplx t = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int k = 0; k < 4; ++k) t += rho(r, k) * bank[i].matrix(k, r);
        return t.real();
    };
    for (const auto& w : bank) CHECK(w.matrix.is_hermitian(1e-12));

    // W1, W2, W4 reach -1/2 on the Bell state each is optimized for.
    CHECK(tr_on(0, "psi_minus") == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(tr_on(1, "psi_plus") == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(tr_on(3, "phi_minus") == doctest::Approx(-0.5).epsilon(1e-12));

    // W3 and W5 are Bell projectors: PSD, they never detect.
    CHECK(hermitian_eigenvalues(bank[2].matrix).front() >= -1e-12);
    CHECK(hermitian_eigenvalues(bank[4].matrix).front() >= -1e-12);
    CHECK(bank[2].matrix.max_abs_diff(named_state("phi_plus").rho.matrix()) < 1e-12);
    CHECK(bank[4].matrix.max_abs_diff(named_state("psi_minus").rho.matrix()) < 1e-12);
}

TEST_CASE("local-uncertainty criterion") {
    const Verdict vphi = lur_criterion(named_state("phi_plus"));
    CHECK(vphi.detected);
    CHECK(vphi.margin == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(vphi.threshold == doctest::Approx(1.0).epsilon(1e-10));

    RngStream rng(44, 0);
    const DensityMatrix rhoA = random_density_matrix(2, rng);
    const DensityMatrix rhoB = random_density_matrix(2, rng);
    const BipartiteState prod = BipartiteState::make(
        2, 2, DensityMatrix::from_matrix(tensor_product(rhoA.matrix(), rhoB.matrix())));
    CHECK_FALSE(lur_criterion(prod).detected);

    for (int trial = 0; trial < 300; ++trial)
        CHECK_FALSE(lur_criterion(separable_mixture(2, 4, rng)).detected);
}

TEST_CASE("maximal entanglement is reached exactly by rotated Phi+") {
    RngStream rng(45, 0);
    for (int d : {2, 3}) {
        const BipartiteState phi = named_state("phi_plus", d);
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix u = haar_unitary(d, rng);
            const ComplexMatrix v = haar_unitary(d, rng);
            ComplexMatrix rot = tensor_product(u, v) * phi.rho.matrix() *
                                tensor_product(u, v).dagger();
            const BipartiteState rotated =
                BipartiteState::make(d, d, DensityMatrix::from_matrix(std::move(rot)));
            const MubPair basesA = MubPair::make(rotate_basis(computational_basis(d), u),
                                                 rotate_basis(fourier_basis(d), u));
            const MubPair basesB = MubPair::make(rotate_basis(computational_basis(d), v),
                                                 rotate_basis(fourier_basis(d), v));
            CHECK(max_entanglement_test(rotated, basesA, basesB));
        }
    }

    const MubPair plain = MubPair::make(computational_basis(2), fourier_basis(2));
    CHECK_FALSE(max_entanglement_test(schmidt_state(0.3), plain, plain));
    CHECK_FALSE(max_entanglement_test(
        rho_cc(computational_basis(2), computational_basis(2)), plain, plain));
}

TEST_CASE("CC/CQ classification") {
    const MubPair pair = MubPair::make(computational_basis(2), fourier_basis(2));

    const ClassificationReport cc =
        cc_cq_classification_check(rho_cc(computational_basis(2), computational_basis(2)), pair);
    CHECK(cc.S_first == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cc.S_second == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cc.maximal_on_first);
    CHECK(cc.uniform_on_second);

    // CC in a random rotated basis behaves the same way.
    RngStream rng(46, 0);
    const ComplexMatrix u = haar_unitary(2, rng);
    const OrthonormalBasis rotated = rotate_basis(computational_basis(2), u);
    const MubPair rpair = MubPair::make(rotated, rotate_basis(fourier_basis(2), u));
    const ClassificationReport rcc =
        cc_cq_classification_check(rho_cc(rotated, rotated), rpair);
    CHECK(rcc.maximal_on_first);
    CHECK(rcc.uniform_on_second);

    // CQ state: orthogonal ensemble on A, non-orthogonal on B. No maximal
    // correlation on either pair.
    const ComplexMatrix p0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const ComplexMatrix p1 = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const ComplexMatrix plus = ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    ComplexMatrix cq = 0.5 * tensor_product(p0, p0);
    cq += 0.5 * tensor_product(p1, plus);
    const ClassificationReport rcq = cc_cq_classification_check(
        BipartiteState::make(2, 2, DensityMatrix::from_matrix(cq)), pair);
    // Individual conditionals may reach 1; the theorem forbids all of them
    // doing so at once.
    CHECK_FALSE(rcq.maximal_on_first);
    double min_cond = 1.0;
    for (double c : rcq.diag_conditionals_first) min_cond = std::min(min_cond, c);
    CHECK(min_cond < 1.0 - 1e-9);

    const ClassificationReport rqq =
        cc_cq_classification_check(named_state("qq_four_corner"), pair);
    for (double c : rqq.diag_conditionals_first)
        CHECK(c == doctest::Approx(0.75).epsilon(1e-12));
    for (double c : rqq.diag_conditionals_second)
        CHECK(c == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("verdict margins are consistent with detection") {
    RngStream rng(47, 0);
    const MubSet pauli = qubit_pauli_mubs();
    for (int trial = 0; trial < 100; ++trial) {
        const BipartiteState s = random_bipartite(2, rng);
        const CorrelationReport rep = full_report(s, pauli);
        for (const Verdict& v :
             {ppt_oracle(s), mi_criterion(rep, 2), mi3_criterion(rep),
              pearson_criterion(rep, 3), condprob_criterion(rep, 2),
              witness_bank_aggregate(s), lur_criterion(s)}) {
            if (v.detected) CHECK(v.margin > 0.0);
            if (!v.detected) CHECK(v.margin <= 1e-9);
        }
    }
}

#pragma once

#include <complex>
#include <cstddef>

namespace qcorr::kernels {

/// out = G G^dagger / Tr(G G^dagger); g and out are n x n row-major.
using GramUnitTraceFn = void (*)(const std::complex<double>* g, int n,
                                 std::complex<double>* out);

/// out = U diag(lam) U^dagger; u and out are n x n row-major.
using ConjugateDiagFn = void (*)(const std::complex<double>* u, const double* lam, int n,
                                 std::complex<double>* out);

/// Batched Pearson-sum statistic in Bloch coordinates.
///
/// T is the 3x3 correlation matrix (row-major), rA/rB the local Bloch
/// vectors. Candidate axes are stored structure-of-arrays: component c of
/// axis k of candidate i sits at axes[(k*3 + c)*count + i]. For candidate i,
///   out[i] = sum_k |u_k^T T v_k - (u_k.rA)(v_k.rB)|
///                  / sqrt((1 - (u_k.rA)^2)(1 - (v_k.rB)^2)),
/// with a term contributing 0 whenever either variance is <= 1e-12.
using CorrSumBatchFn = void (*)(const double* T, const double* rA, const double* rB,
                                int n_axes, std::size_t count, const double* axesA,
                                const double* axesB, double* out);

struct Ops {
    const char* name;
    GramUnitTraceFn gram_unit_trace;
    ConjugateDiagFn conjugate_diag;
    CorrSumBatchFn corr_sum_batch;
};

/// Reference implementation. Mirrors the SIMD variants operation-for-
/// operation (explicit fma, fixed accumulation order) so the equivalence
/// tests can require bit-identical outputs.
const Ops& scalar_ops();

/// AVX2+FMA variant, or nullptr when the CPU (or build) lacks it.
const Ops* avx2_ops();

/// Backend picked once per process: AVX2 when available, else scalar.
/// QCORR_KERNELS=scalar|avx2 in the environment forces a choice.
const Ops& active();

}  // namespace qcorr::kernels

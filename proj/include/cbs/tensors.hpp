#pragma once

#include "cbs/cvec3.hpp"
#include "cbs/half_int.hpp"
#include "cbs/transition.hpp"

namespace cbs {

/// Dimensionless 3x3 atomic scattering tensor between ground sublevels,
/// the resonant frequency factor stripped off. Vanishes for |m' - m| > 2;
/// equals the identity for the J=0 -> Je=1 line.
using ScatteringTensor = CMat3;

/// Which of the two interfering two-atom scattering sequences is meant:
/// Direct absorbs at the first tensor's atom, Reverse at the second's.
enum class PathOrder { Direct, Reverse };

/// Cartesian matrix-element vector <Je me| d |J m> of the reduced dipole
/// operator, Wigner-Eckart with reduced element sqrt(2Je+1) folded in so
/// that the spherical components are plain Clebsch-Gordan coefficients.
/// Throws std::invalid_argument for invalid projections.
CVec3 dipole_cartesian(const Transition& t, HalfInt me, HalfInt m);

/// t_ij(m, m') = <J m'| d_i d_j |J m>, the emission factor taken as the
/// Hermitian adjoint of the Cartesian absorption factor.
ScatteringTensor scattering_tensor(const Transition& t, HalfInt m,
                                   HalfInt m_prime);

/// Closed form of the internally averaged four-vector contraction:
/// w1 (x1.x2)(x3.x4) + w2 (x1.x3)(x2.x4) + w3 (x1.x4)(x2.x3), with the
/// bilinear dot product. Callers pass conjugated vectors where a formula
/// requires them.
Complex vertex_trace_closed(const WCoeffs& w, const CVec3& x1,
                            const CVec3& x2, const CVec3& x3,
                            const CVec3& x4);

/// Brute-force evaluation of the same average by explicit summation over
/// all sublevel chains with the uniform internal density matrix. Oracle
/// for vertex_trace_closed; agrees to better than 1e-12.
Complex vertex_trace_oracle(const Transition& t, const CVec3& x1,
                            const CVec3& x2, const CVec3& x3,
                            const CVec3& x4);

/// Contracted two-atom amplitude e'bar . t_second . Delta . t_first . e
/// with the transverse projector Delta = 1 - n n^T between the tensors.
/// `eps_out_conj` is the already-conjugated outgoing polarization. The
/// direction n must be unit to 1e-9.
Complex double_amplitude(const ScatteringTensor& t1,
                         const ScatteringTensor& t2, const Vec3& n,
                         const CVec3& eps, const CVec3& eps_out_conj,
                         PathOrder order);

/// Residual of the generalized reciprocity relation for one sublevel
/// assignment: |T_dir - (-1)^{sum(m'-m)} T_rev(reflected)|. Contract: zero
/// to 1e-12 for every valid input.
double reciprocity_residual(const Transition& t, const Vec3& n,
                            const CVec3& eps, const CVec3& eps_prime,
                            HalfInt m1, HalfInt m1_prime, HalfInt m2,
                            HalfInt m2_prime);

}  // namespace cbs

#pragma once

#include "cascade/banded_matrix.hpp"
#include "cascade/coupling_table.hpp"
#include "cascade/model_spec.hpp"

namespace cascade {

/// Nearest-neighbour model (s = 2) with the diagonal second invariant.
CouplingTable build_s2_diag(int p, int r, double gamma, double h0);

/// Range-3 model (s = 3) with the diagonal second invariant.
CouplingTable build_s3_diag(int p, int r, double gamma, double h0);

/// s = 2 model with the off-diagonal second invariant, including the
/// Kronecker corrections at shells 0, 1, r - 1 and r.
CouplingTable build_s2_offdiag(int p, int r, double gamma, double h0);

/// GOY model: a lambda^i (v_{i+1} v_{i+2} - eps/lambda v_{i-1} v_{i+1}
///                        + (eps - 1)/lambda^2 v_{i-2} v_{i-1}).
CouplingTable build_goy(double lambda, double eps, double a, int r);

/// h_ij = h0 p^(gamma i) delta_ij.
HMatrix h_diag(int p, int r, double gamma, double h0);

/// Tridiagonal h with zero diagonal, h_{i,i-1} = h0 p^(gamma i) / (2 (1 - 1/p)^2),
/// so that the second invariant reads h0/p sum_i p^((gamma + 2) i) V_i V_{i-1}.
HMatrix h_offdiag(int p, int r, double gamma, double h0);

/// Expands the general range-s cascade for an arbitrary banded h:
///
///   dV_i/dt = (1 - 1/p)^3 p^(2i) sum_{j,k,l=0}^{2s} th(s,j) th(s,k) th(s,l) [j+k+l = 3s]
///             p^(-alpha (max(s,j) + max(s,k) + max(s,l)) - j - k)
///             V_{i+j-s} sum_m h_{i-k+s, m} p^m V_m
///
/// with th(s,j) = sign(s - j). All of h0 and the gamma dependence live in h.
/// Throws UnsupportedError when h has bandwidth above one.
CouplingTable build_general(int p, int r, int s, double alpha, const HMatrix& h);

/// Dispatches on spec.family. General uses h_diag(p, r, gamma, h0).
CouplingTable build(const ModelSpec& spec);

/// The second invariant weight defined with a family for a family, when it has one.
/// S2Diag/S3Diag/General: helicity_weights(h_diag); S2OffDiag: helicity_weights(h_offdiag);
/// GOY: (eps - 1)^-i.
WeightMatrix second_invariant_weights(const ModelSpec& spec);

/// Energy weights for a family: (1 - 1/p) p^i, or unit weights for GOY.
WeightMatrix natural_energy_weights(const ModelSpec& spec);

}  // namespace cascade

#pragma once

#include <string>
#include <vector>

#include "tauq/quiver.hpp"

namespace tauq {

// Canonical bound quivers of the non-distributive minimal
// representation-infinite families, plus a few auxiliary shapes. Arm and cycle
// lengths equal the parameters. Vertex and arrow names are fixed so that
// certificates can refer to them.

/// Arms alpha1..alphap and beta1..betaq from a to z; I = 0.
BoundQuiver model_A(int p, int q, Field f = Field::rationals());
/// A(p,q) plus gamma1, gamma2 through g; I = <gamma2.gamma1 + beta_q..beta1 + alpha_p..alpha1>.
BoundQuiver model_B(int p, int q, Field f = Field::rationals());
/// alpha: a->m, beta: m->z, cycle rho1..rhop at m; I = <rho1.rhop>.
BoundQuiver model_C(int p, Field f = Field::rationals());
/// C(p) plus gamma1..gamma_{q+1}: a -> z; I = <rho1.rhop, gamma_{q+1}..gamma1 - beta.alpha>.
BoundQuiver model_D(int p, int q, Field f = Field::rationals());
/// Cycle alpha1..alphap at h1, bar theta1..thetar from h1 to h2, cycle
/// gamma1..gammaq at h2; I = <alpha1.alphap, gamma1.gammaq, gamma1.theta_r..theta1.alphap>.
BoundQuiver model_E(int p, int q, int r, Field f = Field::rationals());

/// v1 -> v2 -> ... -> vn.
BoundQuiver linear_A(int n, Field f = Field::rationals());
/// Cycle-shaped quiver on m+1 vertices w0..wm with I = 0. Arrow i joins w_i
/// and w_{i+1 mod m+1}; forward[i] orients it w_i -> w_{i+1}. Must not be a
/// cyclic orientation.
BoundQuiver acyclic_Atilde(const std::vector<bool>& forward, Field f = Field::rationals());
/// Loop alpha at x, loop delta at y, bar x <- w -> y; I = <alpha.alpha, delta.delta>.
BoundQuiver barbell_loops(Field f = Field::rationals());

}  // namespace tauq

#pragma once

#include "cbs/cvec3.hpp"
#include "cbs/transition.hpp"

namespace cbs {

/// The four standard backscattering polarization channels: preserved and
/// flipped helicity for circular incident light, parallel and crossed
/// analyzer for linear incident light.
enum class ChannelKind { HelPar, HelPerp, LinPar, LinPerp };

/// A polarization channel plus, for linear channels, the angle phi between
/// the incident polarization and the direction of the intensity scan.
/// Helicity channels ignore phi.
struct Channel {
  ChannelKind kind = ChannelKind::HelPar;
  double phi = 0.0;
};

/// Canonical polarization pair (eps, eps') at exact backscattering, for
/// incidence along +z and observation along -z. The helicity handedness is
/// fixed to eps = (1, i, 0)/sqrt(2); the opposite choice is unobservable in
/// all four channels.
struct ChannelVectors {
  CVec3 eps;
  CVec3 eps_prime;
};

ChannelVectors channel_polarizations(const Channel& c);

const char* channel_name(ChannelKind k);

/// Transverse projector Delta = 1 - n n^T onto the plane perpendicular to
/// the unit vector n. Delta^2 = Delta, tr Delta = 2, Delta n = 0.
Mat3 transverse_projector(const Vec3& n);

/// Single-scattering bistatic coefficient at exact backscattering,
/// gamma_S = (3/4) (w1 |e'bar.e|^2 + w2 |e'.e|^2 + w3).
double gamma_single(const WCoeffs& w, const Channel& c);

/// Differential cross-section for single scattering on an unpolarized
/// atom, (3 sigma_tot / 8 pi) (w1 |e'bar.e|^2 + w2 |e'.e|^2 + w3), for
/// arbitrary directions with unit polarization vectors.
double single_diff_cross_section(const Transition& t, double detuning,
                                 double wavenumber, const CVec3& eps,
                                 const CVec3& eps_prime);

/// Double-scattering ladder polarization kernel at backscattering for
/// inter-atom direction n.
double ladder_kernel(const WCoeffs& w, const Vec3& n, const CVec3& eps,
                     const CVec3& eps_prime);

/// Double-scattering crossed (interference) polarization kernel at
/// backscattering for inter-atom direction n.
double crossed_kernel(const WCoeffs& w, const Vec3& n, const CVec3& eps,
                      const CVec3& eps_prime);

}  // namespace cbs

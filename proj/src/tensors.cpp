#include "cbs/tensors.hpp"

#include "cbs/angular.hpp"
#include "cbs/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cbs {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void require_unit(const Vec3& n) {
  if (std::abs(norm(n) - 1.0) > 1e-9)
    throw std::invalid_argument("direction vector must be unit length");
}

// All dipole vectors of a transition, indexed by (me, m) twice-values.
struct DipoleTable {
  std::vector<CVec3> a;  // (me_index * nm + m_index)
  long long nm, nme;

  explicit DipoleTable(const Transition& t)
      : nm(t.j.twice() + 1), nme(t.je.twice() + 1) {
    a.resize(static_cast<size_t>(nm * nme));
    for (long long ime = 0; ime < nme; ++ime)
      for (long long im = 0; im < nm; ++im) {
        const HalfInt me = HalfInt::from_twice(2 * ime - t.je.twice());
        const HalfInt m = HalfInt::from_twice(2 * im - t.j.twice());
        a[static_cast<size_t>(ime * nm + im)] = dipole_cartesian(t, me, m);
      }
  }

  const CVec3& operator()(long long ime, long long im) const {
    return a[static_cast<size_t>(ime * nm + im)];
  }
};

// The exact-arithmetic Clebsch-Gordan evaluations are slow enough to
// matter in the brute-force sublevel sums; tables are computed once per
// line. std::map keeps references stable while the cache grows.
const DipoleTable& dipole_table(const Transition& t) {
  static std::mutex mtx;
  static std::map<std::pair<long long, long long>, DipoleTable> cache;
  std::lock_guard<std::mutex> lock(mtx);
  const auto key = std::make_pair(t.j.twice(), t.je.twice());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, DipoleTable(t)).first;
  return it->second;
}

}  // namespace

CVec3 dipole_cartesian(const Transition& t, HalfInt me, HalfInt m) {
  if (!valid_projection(t.je, me))
    throw std::invalid_argument("me is not a valid projection of Je");
  if (!valid_projection(t.j, m))
    throw std::invalid_argument("m is not a valid projection of J");

  const long long dq = (me - m).twice() / 2;
  if ((me - m).twice() % 2 != 0 || std::abs(dq) > 1) return {};

  // <Je me| d_q |J m> = <J 1; m q | Je me> in the spherical basis,
  // converted to Cartesian components.
  const double cg = clebsch_gordan(t.j, 1, m, HalfInt(static_cast<int>(dq)),
                                   t.je, me);
  switch (dq) {
    case -1:
      return {cg * kInvSqrt2, Complex(0, cg * kInvSqrt2), 0.0};
    case +1:
      return {-cg * kInvSqrt2, Complex(0, cg * kInvSqrt2), 0.0};
    default:
      return {0.0, 0.0, cg};
  }
}

ScatteringTensor scattering_tensor(const Transition& t, HalfInt m,
                                   HalfInt m_prime) {
  if (!valid_projection(t.j, m) || !valid_projection(t.j, m_prime))
    throw std::invalid_argument("invalid ground-state projection");

  const DipoleTable& d = dipole_table(t);
  const long long im = (m.twice() + t.j.twice()) / 2;
  const long long imp = (m_prime.twice() + t.j.twice()) / 2;

  ScatteringTensor out;
  for (long long ime = 0; ime < d.nme; ++ime) {
    const CVec3& absorb = d(ime, im);
    const CVec3& emit = d(ime, imp);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out(i, j) += std::conj(emit[i]) * absorb[j];
  }
  return out;
}

Complex vertex_trace_closed(const WCoeffs& w, const CVec3& x1,
                            const CVec3& x2, const CVec3& x3,
                            const CVec3& x4) {
  return w.w1 * dot(x1, x2) * dot(x3, x4) + w.w2 * dot(x1, x3) * dot(x2, x4) +
         w.w3 * dot(x1, x4) * dot(x2, x3);
}

Complex vertex_trace_oracle(const Transition& t, const CVec3& x1,
                            const CVec3& x2, const CVec3& x3,
                            const CVec3& x4) {
  const DipoleTable& d = dipole_table(t);

  // Chain |J m> -(x1.d)-> |Je me> -(x2.d)-> |J mm> -(x3.d)-> |Je mep>
  // -(x4.d)-> <J m|, summed over everything; matrix elements back into
  // the ground manifold are adjoints of the absorption vectors.
  Complex sum = 0;
  for (long long im = 0; im < d.nm; ++im)
    for (long long imm = 0; imm < d.nm; ++imm)
      for (long long ime = 0; ime < d.nme; ++ime) {
        const Complex leg12 =
            dot(x1, d(ime, im)) * dot(x2, conj(d(ime, imm)));
        if (leg12 == Complex(0)) continue;
        for (long long imep = 0; imep < d.nme; ++imep)
          sum += leg12 * dot(x3, d(imep, imm)) * dot(x4, conj(d(imep, im)));
      }

  const double norm =
      multiplicity_ratio(t) * static_cast<double>(t.j.twice() + 1);
  return sum / norm;
}

Complex double_amplitude(const ScatteringTensor& t1,
                         const ScatteringTensor& t2, const Vec3& n,
                         const CVec3& eps, const CVec3& eps_out_conj,
                         PathOrder order) {
  require_unit(n);
  const Mat3 delta = transverse_projector(n);
  const ScatteringTensor& first = (order == PathOrder::Direct) ? t1 : t2;
  const ScatteringTensor& second = (order == PathOrder::Direct) ? t2 : t1;
  return dot(eps_out_conj, second * (delta * (first * eps)));
}

double reciprocity_residual(const Transition& t, const Vec3& n,
                            const CVec3& eps, const CVec3& eps_prime,
                            HalfInt m1, HalfInt m1_prime, HalfInt m2,
                            HalfInt m2_prime) {
  const Complex direct =
      double_amplitude(scattering_tensor(t, m1, m1_prime),
                       scattering_tensor(t, m2, m2_prime), n, eps,
                       conj(eps_prime), PathOrder::Direct);

  // Reciprocal process: reversed sequence, conjugated polarizations
  // exchanged, all magnetic quantum numbers flipped in sign.
  const Complex reciprocal =
      double_amplitude(scattering_tensor(t, -m2_prime, -m2),
                       scattering_tensor(t, -m1_prime, -m1), n,
                       conj(eps_prime), eps, PathOrder::Direct);

  const long long dm =
      ((m1_prime - m1) + (m2_prime - m2)).twice() / 2;
  const double phase = (dm % 2 == 0) ? 1.0 : -1.0;
  return std::abs(direct - phase * reciprocal);
}

}  // namespace cbs

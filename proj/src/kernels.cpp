#include "exl/kernels.hpp"

#include <stdexcept>

#include "exl/geometry.hpp"
#include "exl/spectral.hpp"

namespace exl {

namespace {

void check_fields(const FieldSet& f) {
  if (f.v == nullptr) throw std::invalid_argument("velocity field required");
  if (f.w != nullptr) require_same_grid(f.v->grid(), f.w->grid());
  if (f.h != nullptr) require_same_grid(f.v->grid(), f.h->grid());
}

void check_separations(std::span<const Separation> seps) {
  for (const auto& s : seps)
    if (!(s.r > 0.0)) throw std::invalid_argument("separation radius must be positive");
}

// Written out term by term: the degenerate-input identities (w = v, h = v, h = 0)
// hold bitwise only if every moment uses exactly these operation orders.
inline void accumulate(MomentRow& m, const Vec3& n, const Vec3& a, const Vec3& w, const Vec3& b) {
  const double pa = dot(n, a);
  const double pw = dot(n, w);
  const double pb = dot(n, b);
  const double aa = dot(a, a);
  const double aw = dot(a, w);
  const double bb = dot(b, b);
  const double ab = dot(a, b);

  m[kHelLongV] += pa * (pa * pw);
  m[kHelLongW] += pw * (pa * pa);
  m[kHelTransV] += pa * (aw - pa * pw);
  m[kHelTransW] += pw * (aa - pa * pa);
  m[kHelFluxW] += pw * aa;
  m[kHelFluxV] += pa * aw;

  m[kELongV] += pa * (pa * pa + pb * pb);
  m[kELongH] += pb * (pa * pb);
  m[kETransV] += pa * ((aa - pa * pa) + (bb - pb * pb));
  m[kETransH] += pb * (ab - pa * pb);
  m[kEFluxV] += pa * bb;
  m[kEFluxH] += pb * ab;

  m[kCLongV] += pa * (pb * pa);
  m[kCLongH] += pb * (pb * pb + pa * pa);
  m[kCTransV] += pa * (ab - pb * pa);
  m[kCTransH] += pb * ((bb - pb * pb) + (aa - pa * pa));
  m[kCFluxH] += pb * aa;
  m[kCFluxV] += pa * ab;

  m[kDrFull] += pa * aa;
  m[kDrLong] += pa * (pa * pa);
}

}  // namespace

std::vector<Separation> separations(std::span<const double> radii, std::span<const Vec3> dirs) {
  std::vector<Separation> out;
  out.reserve(radii.size() * dirs.size());
  for (double r : radii)
    for (const Vec3& n : dirs) out.push_back({r, n});
  return out;
}

std::vector<MomentRow> increment_moments(const FieldSet& fields, std::span<const Separation> seps) {
  check_fields(fields);
  check_separations(seps);
  const Grid3& g = fields.v->grid();
  const int n = g.n();
  const std::size_t npts = g.size();
  const std::array<const VectorField3*, 3> src{fields.v, fields.w, fields.h};

  // Slots holding the same field as an earlier slot reuse its shifted copy.
  std::array<int, 3> owner{0, 1, 2};
  for (int f = 1; f < 3; ++f)
    for (int e = 0; e < f; ++e)
      if (src[f] != nullptr && src[e] == src[f] && owner[f] == f) owner[f] = e;

  std::array<std::array<ComplexBuffer, 3>, 3> spec;
  for (int f = 0; f < 3; ++f)
    if (src[f] != nullptr && owner[f] == f)
      for (int c = 0; c < 3; ++c) spec[f][c] = spectral::forward((*src[f])[c]);

  const auto plan = spectral::FftPlan::get(n);
  std::vector<MomentRow> out(seps.size());
  const long count = static_cast<long>(seps.size());
  const Vec3 zero{0.0, 0.0, 0.0};

#pragma omp parallel default(none) shared(g, n, npts, src, owner, spec, plan, out, count, seps, zero)
  {
    ComplexBuffer tmp(g.spectral_size());
    std::array<std::array<RealBuffer, 3>, 3> shifted;
    for (int f = 0; f < 3; ++f)
      if (src[f] != nullptr && owner[f] == f)
        for (int c = 0; c < 3; ++c) shifted[f][c].resize(npts);

#pragma omp for schedule(dynamic, 1)
    for (long s = 0; s < count; ++s) {
      const Vec3 ell = seps[s].r * seps[s].n;
      const auto px = spectral::axis_phases(g, ell[0]);
      const auto py = spectral::axis_phases(g, ell[1]);
      const auto pz = spectral::axis_phases(g, ell[2]);
      for (int f = 0; f < 3; ++f) {
        if (src[f] == nullptr || owner[f] != f) continue;
        for (int c = 0; c < 3; ++c) {
          spectral::apply_shift(g, px, py, pz, spec[f][c].data(), tmp.data());
          plan->inverse(tmp.data(), shifted[f][c].data());
        }
      }
      const auto diff = [&](int f, std::size_t i) {
        if (src[f] == nullptr) return zero;
        const VectorField3& u = *src[f];
        const auto& sh = shifted[owner[f]];
        return Vec3{sh[0][i] - u[0][i], sh[1][i] - u[1][i], sh[2][i] - u[2][i]};
      };
      // Plane partial sums, then planes in order.
      MomentRow total{};
      const std::size_t plane = static_cast<std::size_t>(n) * n;
      for (int k = 0; k < n; ++k) {
        MomentRow part{};
        const std::size_t base = k * plane;
        for (std::size_t i = base; i < base + plane; ++i) accumulate(part, seps[s].n, diff(0, i), diff(1, i), diff(2, i));
        for (int m = 0; m < kNumMoments; ++m) total[m] += part[m];
      }
      for (double& x : total) x /= static_cast<double>(npts);
      out[s] = total;
    }
  }
  return out;
}

std::vector<MomentRow> increment_moments_reference(const FieldSet& fields, std::span<const Separation> seps) {
  check_fields(fields);
  check_separations(seps);
  const Grid3& g = fields.v->grid();
  const VectorField3 zero_field(g);
  const VectorField3& v = *fields.v;
  const VectorField3& w = fields.w ? *fields.w : zero_field;
  const VectorField3& h = fields.h ? *fields.h : zero_field;

  std::vector<MomentRow> out;
  out.reserve(seps.size());
  for (const auto& s : seps) {
    const Vec3 ell = s.r * s.n;
    const VectorField3 dv = increment(v, ell);
    const VectorField3 dw = increment(w, ell);
    const VectorField3 dh = increment(h, ell);
    const IncrementPair sv = split_long_trans(dv, s.n);
    const IncrementPair sw = split_long_trans(dw, s.n);
    const IncrementPair sh = split_long_trans(dh, s.n);
    MomentRow m{};
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec3 a = dv.at(i), b = dh.at(i), c = dw.at(i);
      const Vec3 aL = sv.longitudinal.at(i), aT = sv.transverse.at(i);
      const Vec3 cL = sw.longitudinal.at(i), cT = sw.transverse.at(i);
      const Vec3 bL = sh.longitudinal.at(i), bT = sh.transverse.at(i);
      const double na = dot(s.n, a), nb = dot(s.n, b), nc = dot(s.n, c);

      m[kHelLongV] += na * dot(aL, cL);
      m[kHelLongW] += nc * dot(aL, aL);
      m[kHelTransV] += na * dot(aT, cT);
      m[kHelTransW] += nc * dot(aT, aT);
      m[kHelFluxW] += nc * dot(a, a);
      m[kHelFluxV] += na * dot(a, c);

      m[kELongV] += na * (dot(aL, aL) + dot(bL, bL));
      m[kELongH] += nb * dot(aL, bL);
      m[kETransV] += na * (dot(aT, aT) + dot(bT, bT));
      m[kETransH] += nb * dot(aT, bT);
      m[kEFluxV] += na * dot(b, b);
      m[kEFluxH] += nb * dot(a, b);

      m[kCLongV] += na * dot(bL, aL);
      m[kCLongH] += nb * (dot(bL, bL) + dot(aL, aL));
      m[kCTransV] += na * dot(bT, aT);
      m[kCTransH] += nb * (dot(bT, bT) + dot(aT, aT));
      m[kCFluxH] += nb * dot(a, a);
      m[kCFluxV] += na * dot(a, b);

      m[kDrFull] += na * dot(a, a);
      m[kDrLong] += na * dot(aL, aL);
    }
    for (double& x : m) x /= static_cast<double>(g.size());
    out.push_back(m);
  }
  return out;
}

}  // namespace exl

#include "fracmax/interpolation.hpp"

#include <atomic>
#include <stdexcept>

#include "fracmax/fft.hpp"

namespace fracmax {
namespace {

std::atomic<std::uint64_t> next_id{1};

// Two-point integrands evaluate the same off-lattice point twice in a row
// (v(x,y) and v(y,x)); a tiny per-thread memo avoids the repeated sum.
struct EvalMemo {
  std::uint64_t owner = 0;
  Vec3 y{};
  CVec3 value{};
};
thread_local EvalMemo memo[2];
thread_local int memo_next = 0;

}  // namespace

TrigInterpolant::TrigInterpolant(const std::vector<ScalarField>& fields, int refine)
    : grid_(fields.at(0).grid()), refine_(refine), id_(next_id++) {
  if (fields.size() > 3) throw std::invalid_argument("TrigInterpolant: at most three components");
  if (refine < 1) throw std::invalid_argument("TrigInterpolant: refine must be >= 1");
  const int n = grid_.n();
  const int m = n * refine;
  const double inv_n = 1.0 / static_cast<double>(grid_.size());
  for (const auto& f : fields) {
    require_same_grid(grid_, f.grid(), "TrigInterpolant");
    require_finite(f, "TrigInterpolant");
    auto spec = fft::forward(f);
    for (auto& c : spec) c *= inv_n;

    // Zero-padded spectrum on the refined lattice; Nyquist coefficients are
    // split evenly between +n/2 and -n/2 to realize the cosine convention.
    std::vector<Complex> padded(static_cast<std::size_t>(m) * m * m);
    for (std::size_t idx = 0; idx < spec.size(); ++idx) {
      if (spec[idx] == Complex(0.0)) continue;
      const auto ijk = grid_.unravel(idx);
      int targets[3][2];
      int counts[3];
      for (int a = 0; a < 3; ++a) {
        const int k = grid_.signed_index(ijk[a]);
        if (grid_.is_nyquist(ijk[a])) {
          targets[a][0] = n / 2;
          targets[a][1] = m - n / 2;
          counts[a] = refine == 1 ? 1 : 2;
        } else {
          targets[a][0] = k >= 0 ? k : m + k;
          counts[a] = 1;
        }
      }
      const double share = 1.0 / (counts[0] * counts[1] * counts[2]);
      for (int p = 0; p < counts[0]; ++p)
        for (int q = 0; q < counts[1]; ++q)
          for (int r = 0; r < counts[2]; ++r) {
            const std::size_t t = static_cast<std::size_t>(targets[0][p]) +
                                  static_cast<std::size_t>(m) * (targets[1][q] + static_cast<std::size_t>(m) * targets[2][r]);
            padded[t] += share * spec[idx];
          }
    }
    std::vector<Complex> samples = padded;
    // Unnormalized backward transform: samples = sum of coefficients * phases.
    fft::inverse_inplace(samples, {m, m, m});
    for (auto& v : samples) v *= static_cast<double>(samples.size());
    coeffs_.push_back(std::move(spec));
    refined_.push_back(std::move(samples));
  }
}

TrigInterpolant::TrigInterpolant(const ScalarField& f, int refine)
    : TrigInterpolant(std::vector<ScalarField>{f}, refine) {}

TrigInterpolant::TrigInterpolant(const VectorField3& f, int refine)
    : TrigInterpolant(std::vector<ScalarField>{f[0], f[1], f[2]}, refine) {}

CVec3 TrigInterpolant::eval(const Vec3& y) const {
  const double L = grid_.length();
  const double hf = grid_.spacing() / refine_;
  const double tol = 1e-9 * hf;
  for (int a = 0; a < 3; ++a) {
    if (y[a] < -tol || y[a] > L + tol) return {};
  }
  const int m = grid_.n() * refine_;
  int idx[3];
  bool on_lattice = true;
  for (int a = 0; a < 3; ++a) {
    const double j = std::round(y[a] / hf);
    if (std::abs(y[a] - j * hf) > tol) {
      on_lattice = false;
      break;
    }
    idx[a] = static_cast<int>(j) % m;
  }
  if (!on_lattice) {
    for (const auto& entry : memo) {
      if (entry.owner == id_ && entry.y == y) return entry.value;
    }
    const CVec3 v = direct_sum(y);
    memo[memo_next] = {id_, y, v};
    memo_next ^= 1;
    return v;
  }
  const std::size_t flat = static_cast<std::size_t>(idx[0]) +
                           static_cast<std::size_t>(m) * (idx[1] + static_cast<std::size_t>(m) * idx[2]);
  CVec3 out{};
  for (int c = 0; c < components(); ++c) out[c] = refined_[c][flat];
  return out;
}

CVec3 TrigInterpolant::direct_sum(const Vec3& y) const {
  const int n = grid_.n();
  const double f = grid_.fundamental();
  std::vector<Complex> e[3];
  for (int a = 0; a < 3; ++a) {
    e[a].resize(n);
    for (int i = 0; i < n; ++i) {
      const double arg = f * grid_.signed_index(i) * y[a];
      e[a][i] = grid_.is_nyquist(i) ? Complex(std::cos(arg), 0.0) : std::polar(1.0, arg);
    }
  }
  CVec3 out{};
  const int nc = components();
  for (int k = 0; k < n; ++k) {
    Complex plane[3] = {};
    for (int j = 0; j < n; ++j) {
      Complex row[3] = {};
      const std::size_t base = static_cast<std::size_t>(n) * (j + static_cast<std::size_t>(n) * k);
      for (int c = 0; c < nc; ++c) {
        const Complex* cf = coeffs_[c].data() + base;
        Complex acc = 0.0;
        for (int i = 0; i < n; ++i) acc += cf[i] * e[0][i];
        row[c] = acc;
      }
      for (int c = 0; c < nc; ++c) plane[c] += row[c] * e[1][j];
    }
    for (int c = 0; c < nc; ++c) out[c] += plane[c] * e[2][k];
  }
  return out;
}

}  // namespace fracmax

#include "tangle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace tangle {

namespace {

// Internal arithmetic runs in extended precision: the quartic route splits
// multiple roots by O(sqrt(machine eps)), and the downstream spectra carry
// exact double eigenvalues that must survive to ~1e-9.
using CL = std::complex<long double>;
using MatL = Eigen::Matrix<CL, Eigen::Dynamic, Eigen::Dynamic>;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

MatL widen(const CMatrix& m) {
  MatL out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(r, c) = CL(m(r, c).real(), m(r, c).imag());
  return out;
}

CL eval_poly(const std::vector<CL>& coeffs, CL x) {
  CL acc = 0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

// Collapse root clusters to their centroid. A root of exact multiplicity m
// comes out of Durand-Kerner as a near-symmetric cluster of radius
// O(eps^(1/m)); the centroid cancels the symmetric part and restores O(eps)
// accuracy. The radius grows with m, so larger clusters are only accepted
// at correspondingly larger tolerances; the multiset sum is preserved.
std::vector<CL> poly_deriv(const std::vector<CL>& coeffs) {
  std::vector<CL> out;
  for (size_t k = 1; k < coeffs.size(); ++k) out.push_back((long double)(k)*coeffs[k]);
  return out;
}

// An m-fold root of p is a simple root of p^(m-1); a few Newton steps on
// that derivative sharpen the cluster centroid.
CL polish_multiple(const std::vector<CL>& coeffs, CL z, size_t multiplicity) {
  std::vector<CL> p = coeffs;
  for (size_t k = 1; k < multiplicity; ++k) p = poly_deriv(p);
  const std::vector<CL> dp = poly_deriv(p);
  for (int it = 0; it < 4; ++it) {
    const CL denom = eval_poly(dp, z);
    if (std::abs(denom) == 0) break;
    z -= eval_poly(p, z) / denom;
  }
  return z;
}

void merge_pass(const std::vector<CL>& coeffs, std::vector<CL>& roots, long double tol,
                size_t min_size) {
  const size_t d = roots.size();
  std::vector<int> group(d);
  for (size_t i = 0; i < d; ++i) group[i] = int(i);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j)
      if (std::abs(roots[i] - roots[j]) < tol) {
        const int from = group[j], to = group[i];
        for (auto& g : group)
          if (g == from) g = to;
      }
  for (size_t i = 0; i < d; ++i) {
    CL sum = 0;
    size_t count = 0;
    for (size_t j = 0; j < d; ++j)
      if (group[j] == group[i]) {
        sum += roots[j];
        ++count;
      }
    if (count >= std::max<size_t>(min_size, 2)) {
      const CL centroid = polish_multiple(coeffs, sum / (long double)(count), count);
      for (size_t j = 0; j < d; ++j)
        if (group[j] == group[i]) roots[j] = centroid;
    }
  }
}

void merge_clusters(const std::vector<CL>& coeffs, std::vector<CL>& roots,
                    long double scale) {
  merge_pass(coeffs, roots, 1e-7L * scale, 2);
  merge_pass(coeffs, roots, 3e-5L * scale, 3);
  merge_pass(coeffs, roots, 1e-3L * scale, 4);
}

}  // namespace

CVector Spectrum::sorted_by_real() const {
  std::vector<Complex> v(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  CVector out(Eigen::Index(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[Eigen::Index(i)] = v[i];
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.rows(), "matmul: dimension mismatch");
  return a * b;
}

Complex det(const CMatrix& m) {
  require(m.rows() == m.cols(), "det: matrix must be square");
  require(m.rows() >= 1 && m.rows() <= 4, "det: dim must be 1..4");
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m.partialPivLu().determinant();
}

std::vector<Complex> char_poly(const CMatrix& m) {
  require(m.rows() == m.cols(), "char_poly: matrix must be square");
  require(m.rows() >= 1 && m.rows() <= 4, "char_poly: dim must be 1..4");
  const Eigen::Index d = m.rows();
  const MatL a = widen(m);
  // Faddeev-LeVerrier: M_1 = A, c_{d-k} = -tr(A M_k)/k
  MatL mk = MatL::Identity(d, d);
  std::vector<CL> coeffs(size_t(d) + 1);
  coeffs[size_t(d)] = 1;
  for (Eigen::Index k = 1; k <= d; ++k) {
    mk = a * mk;
    const CL ck = -mk.trace() / (long double)(k);
    coeffs[size_t(d - k)] = ck;
    mk += ck * MatL::Identity(d, d);
  }
  std::vector<Complex> out(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i)
    out[i] = Complex(double(coeffs[i].real()), double(coeffs[i].imag()));
  return out;
}

Spectrum poly_roots(const std::vector<Complex>& monic_ascending) {
  const size_t d = monic_ascending.size() - 1;
  require(monic_ascending.size() >= 2 && d <= 4, "poly_roots: degree must be 1..4");
  require(std::abs(monic_ascending.back() - Complex(1.0)) <= 1e-12,
          "poly_roots: polynomial must be monic");

  std::vector<CL> coeffs(monic_ascending.size());
  long double max_coeff = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = CL(monic_ascending[i].real(), monic_ascending[i].imag());
    max_coeff = std::max(max_coeff, std::abs(coeffs[i]));
  }
  coeffs.back() = 1;

  // Deflate near-zero trailing coefficients: rank-deficient matrices make
  // these exact-zero roots, and leaving them to the iteration smears them
  // into clusters that the downstream sqrt amplifies.
  size_t zero_roots = 0;
  while (coeffs.size() > 2 && std::abs(coeffs[0]) <= 1e-14L * (1 + max_coeff)) {
    coeffs.erase(coeffs.begin());
    ++zero_roots;
  }
  const size_t live = coeffs.size() - 1;

  // perturbed circle start: r * (0.4 + 0.9i)^k
  const long double r = 1 + max_coeff;
  const CL w(0.4L, 0.9L);
  std::vector<CL> z(live);
  CL wk = 1;
  for (size_t k = 0; k < live; ++k) {
    z[k] = r * wk;
    wk *= w;
  }

  if (live == 1) {
    z[0] = -coeffs[0];
  } else {
    for (int iter = 0; iter < 500; ++iter) {
      long double max_step = 0;
      for (size_t i = 0; i < live; ++i) {
        CL denom = 1;
        for (size_t j = 0; j < live; ++j)
          if (j != i) denom *= z[i] - z[j];
        const CL step = eval_poly(coeffs, z[i]) / denom;
        z[i] -= step;
        max_step = std::max(max_step, std::abs(step));
      }
      if (max_step < 1e-13L) break;
    }
  }

  long double max_residual = 0;
  for (size_t i = 0; i < live; ++i)
    max_residual = std::max(max_residual, std::abs(eval_poly(coeffs, z[i])));
  long double rpow = 1;
  for (size_t i = 0; i < live; ++i) rpow *= r;
  if (max_residual > 1e-6L * rpow) {
    std::ostringstream os;
    os << "poly_roots: no convergence; residuals:";
    for (size_t i = 0; i < live; ++i) os << ' ' << double(std::abs(eval_poly(coeffs, z[i])));
    throw std::runtime_error(os.str());
  }

  long double scale = 1;
  for (const CL& root : z) scale = std::max(scale, std::abs(root));
  merge_clusters(coeffs, z, scale);
  z.insert(z.end(), zero_roots, CL(0, 0));

  Spectrum sp;
  sp.eigenvalues = CVector(Eigen::Index(d));
  for (size_t i = 0; i < d; ++i)
    sp.eigenvalues[Eigen::Index(i)] = Complex(double(z[i].real()), double(z[i].imag()));
  return sp;
}

Spectrum eigenvalues(const CMatrix& m) {
  // Rescale to unit size first: clustered roots of the characteristic
  // polynomial carry absolute error set by the coefficient scale, so a
  // matrix far below unit norm would lose all relative accuracy.
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale <= 0.0 || scale == 1.0) return poly_roots(char_poly(m));
  Spectrum sp = poly_roots(char_poly(CMatrix(m / scale)));
  sp.eigenvalues *= scale;
  return sp;
}

}  // namespace tangle

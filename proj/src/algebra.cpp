#include "czlab/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace czlab {

bool is_hermitian(const Mat& a, double tol_rel) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol_rel * scale;
}

void require_hermitian(const Mat& a, const char* who, double tol_rel) {
  if (!is_hermitian(a, tol_rel))
    throw InvalidInput(std::string(who) + ": matrix is not Hermitian");
}

SpectralData spectral_decompose(const Mat& a) {
  require_hermitian(a, "spectral_decompose");
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.compute((a + a.adjoint()) / 2.0);  // symmetrize rounding noise away
  if (es.info() != Eigen::Success)
    throw InvalidInput("spectral_decompose: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Mat func_calc(const Mat& a, const std::function<double(double)>& g) {
  SpectralData sd = spectral_decompose(a);
  RVec mapped(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i)
    mapped[i] = g(sd.eigenvalues[i]);
  return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

namespace {

// Shared eigenvalue-window projection. keep(eig) decides membership.
Mat window_proj(const SpectralData& sd,
                const std::function<bool(double)>& keep) {
  const int n = static_cast<int>(sd.eigenvalues.size());
  Mat p = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (keep(sd.eigenvalues[i]))
      p += sd.eigenvectors.col(i) * sd.eigenvectors.col(i).adjoint();
  return (p + p.adjoint()) / 2.0;
}

}  // namespace

Mat spectral_proj_leq(const Mat& a, double lam, const Tolerances& tol) {
  if (!(lam > 0)) throw InvalidInput("spectral_proj_leq: lambda must be > 0");
  SpectralData sd = spectral_decompose(a);
  const double scale =
      std::max(std::abs(sd.eigenvalues[0]),
               std::abs(sd.eigenvalues[sd.eigenvalues.size() - 1]));
  const double lo = tol.zero * scale;
  const double hi = lam + tol.eig * scale;
  return window_proj(sd, [=](double e) { return e > lo && e <= hi; });
}

Mat spectral_proj_gt(const Mat& a, double lam, const Tolerances& tol) {
  if (!(lam > 0)) throw InvalidInput("spectral_proj_gt: lambda must be > 0");
  SpectralData sd = spectral_decompose(a);
  const double scale =
      std::max(std::abs(sd.eigenvalues[0]),
               std::abs(sd.eigenvalues[sd.eigenvalues.size() - 1]));
  const double hi = lam + tol.eig * scale;
  return window_proj(sd, [=](double e) { return e > hi; });
}

Mat support_of_psd(const Mat& s, double rank_tol_rel) {
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.compute((s + s.adjoint()) / 2.0);
  const RVec& ev = es.eigenvalues();
  const double cut = rank_tol_rel * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  const int n = static_cast<int>(ev.size());
  Mat p = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (ev[i] > cut)
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return (p + p.adjoint()) / 2.0;
}

bool is_projection(const Mat& p, double tol) {
  if (p.rows() != p.cols()) return false;
  if (!is_hermitian(p, tol)) return false;
  if (op_norm(p * p - p) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.compute((p + p.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff() >= -tol;
}

Mat proj_join(std::span<const Mat> ps, int dim, const Tolerances& tol) {
  if (ps.empty()) return Mat::Zero(dim, dim);
  Mat s = Mat::Zero(dim, dim);
  for (const Mat& p : ps) {
    if (p.rows() != dim || p.cols() != dim)
      throw InvalidInput("proj_join: dimension mismatch");
    if (!is_projection(p, tol.proj))
      throw InvalidInput("proj_join: input is not a projection");
    s += p;
  }
  return support_of_psd(s, tol.rank);
}

Mat proj_meet(std::span<const Mat> ps, int dim, const Tolerances& tol) {
  if (ps.empty()) return Mat::Identity(dim, dim);
  std::vector<Mat> comps;
  comps.reserve(ps.size());
  for (const Mat& p : ps) {
    if (p.rows() != dim || p.cols() != dim)
      throw InvalidInput("proj_meet: dimension mismatch");
    if (!is_projection(p, tol.proj))
      throw InvalidInput("proj_meet: input is not a projection");
    comps.push_back(Mat::Identity(dim, dim) - p);
  }
  return Mat::Identity(dim, dim) - proj_join(comps, dim, tol);
}

double trace_re(const Mat& a) { return a.trace().real(); }

RVec singular_values(const Mat& a) {
  if (is_hermitian(a, 1e-13)) {
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.compute((a + a.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    RVec sv = es.eigenvalues().cwiseAbs();
    std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
    return sv;
  }
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues();
}

double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)[0];
}

double schatten_norm(const Mat& a, double p) {
  if (p < 1.0) throw InvalidInput("schatten_norm: p must be >= 1");
  RVec sv = singular_values(a);
  if (std::isinf(p)) return sv.size() ? sv[0] : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i], p);
  return std::pow(acc, 1.0 / p);
}

Mat herm_sqrt(const Mat& psd) {
  return func_calc(psd, [](double e) { return std::sqrt(std::max(e, 0.0)); });
}

}  // namespace czlab

#include "czlab/field.hpp"

#include <cstring>
#include <fstream>

namespace czlab {

OperatorField::OperatorField(DyadicDomain dom, int level, int mat_dim)
    : dom_(dom), level_(level), n_(mat_dim) {
  if (level < 0 || level > dom.depth)
    throw InvalidInput("OperatorField: level out of range");
  if (mat_dim <= 0) throw InvalidInput("OperatorField: bad matrix dim");
  vals_.assign(static_cast<std::size_t>(std::int64_t{1} << (dom.dim * level)),
               Mat::Zero(mat_dim, mat_dim));
}

OperatorField OperatorField::constant(const DyadicDomain& dom, int level,
                                      const Mat& value) {
  OperatorField f(dom, level, static_cast<int>(value.rows()));
  for (auto& v : f.vals_) v = value;
  return f;
}

OperatorField OperatorField::identity_field(const DyadicDomain& dom, int level,
                                            int mat_dim) {
  return constant(dom, level, Mat::Identity(mat_dim, mat_dim));
}

OperatorField OperatorField::zero_field(const DyadicDomain& dom, int level,
                                        int mat_dim) {
  return OperatorField(dom, level, mat_dim);
}

double OperatorField::cell_volume() const {
  return 1.0 / static_cast<double>(std::int64_t{1} << (dom_.dim * level_));
}

std::int64_t OperatorField::fine_to_index(std::int64_t x) const {
  const int shift = dom_.depth - level_;
  if (shift == 0) return x;
  const auto c = dom_.coords_of(x);
  if (dom_.dim == 1) return c[0] >> shift;
  return (static_cast<std::int64_t>(c[1] >> shift) << level_) +
         (c[0] >> shift);
}

const Mat& OperatorField::at_fine(std::int64_t x) const {
  return vals_[static_cast<std::size_t>(fine_to_index(x))];
}

OperatorField OperatorField::refined(int new_level) const {
  if (new_level < level_)
    throw InvalidInput("refined: target level is coarser");
  if (new_level == level_) return *this;
  OperatorField out(dom_, new_level, n_);
  const int up = new_level - level_;
  if (dom_.dim == 1) {
    for (std::int64_t i = 0; i < out.size(); ++i)
      out.vals_[static_cast<std::size_t>(i)] =
          vals_[static_cast<std::size_t>(i >> up)];
  } else {
    const int nside = 1 << new_level;
    for (std::int64_t i = 0; i < out.size(); ++i) {
      const int x = static_cast<int>(i % nside), y = static_cast<int>(i / nside);
      const std::int64_t src =
          (static_cast<std::int64_t>(y >> up) << level_) + (x >> up);
      out.vals_[static_cast<std::size_t>(i)] =
          vals_[static_cast<std::size_t>(src)];
    }
  }
  return out;
}

OperatorField OperatorField::adjoint() const {
  OperatorField out = *this;
  for (auto& v : out.vals_) v = v.adjoint().eval();
  return out;
}

namespace {

void align_levels(OperatorField& a, const OperatorField& b,
                  OperatorField& b_out) {
  if (a.domain() != b.domain() || a.mat_dim() != b.mat_dim())
    throw InvalidInput("field arithmetic: incompatible fields");
  if (a.level() < b.level()) a = a.refined(b.level());
  b_out = b.level() < a.level() ? b.refined(a.level()) : b;
}

}  // namespace

OperatorField& OperatorField::operator+=(const OperatorField& o) {
  OperatorField rhs;
  align_levels(*this, o, rhs);
  for (std::int64_t i = 0; i < size(); ++i) value(i) += rhs.value(i);
  return *this;
}

OperatorField& OperatorField::operator-=(const OperatorField& o) {
  OperatorField rhs;
  align_levels(*this, o, rhs);
  for (std::int64_t i = 0; i < size(); ++i) value(i) -= rhs.value(i);
  return *this;
}

OperatorField& OperatorField::operator*=(double s) {
  for (auto& v : vals_) v *= s;
  return *this;
}

double OperatorField::phi() const {
  const double vol = cell_volume();
  double acc = 0.0;
  for (const auto& v : vals_) acc += v.trace().real();
  return vol * acc;
}

OperatorField operator+(OperatorField a, const OperatorField& b) {
  a += b;
  return a;
}
OperatorField operator-(OperatorField a, const OperatorField& b) {
  a -= b;
  return a;
}
OperatorField operator*(double s, OperatorField f) {
  f *= s;
  return f;
}

OperatorField field_product(const OperatorField& a, const OperatorField& b) {
  if (a.domain() != b.domain() || a.mat_dim() != b.mat_dim())
    throw InvalidInput("field_product: incompatible fields");
  const int lvl = std::max(a.level(), b.level());
  const OperatorField& fa = a.level() == lvl ? a : a.refined(lvl);
  const OperatorField& fb = b.level() == lvl ? b : b.refined(lvl);
  OperatorField out(a.domain(), lvl, a.mat_dim());
  for (std::int64_t i = 0; i < out.size(); ++i)
    out.value(i) = fa.value(i) * fb.value(i);
  return out;
}

OperatorField sandwich(const OperatorField& p, const OperatorField& f) {
  if (p.domain() != f.domain() || p.mat_dim() != f.mat_dim())
    throw InvalidInput("sandwich: incompatible fields");
  const int lvl = std::max(p.level(), f.level());
  const OperatorField& fp = p.level() == lvl ? p : p.refined(lvl);
  const OperatorField& ff = f.level() == lvl ? f : f.refined(lvl);
  OperatorField out(p.domain(), lvl, p.mat_dim());
  for (std::int64_t i = 0; i < out.size(); ++i)
    out.value(i) = fp.value(i) * ff.value(i) * fp.value(i);
  return out;
}

bool is_hermitian_field(const OperatorField& f, double tol_rel) {
  for (std::int64_t i = 0; i < f.size(); ++i)
    if (!is_hermitian(f.value(i), tol_rel)) return false;
  return true;
}

bool is_psd_field(const OperatorField& f, double tol) {
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (!is_hermitian(f.value(i), tol)) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.compute(f.value(i), Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -tol * scale) return false;
  }
  return true;
}

bool is_projection_field(const OperatorField& f, double tol) {
  for (std::int64_t i = 0; i < f.size(); ++i)
    if (!is_projection(f.value(i), tol)) return false;
  return true;
}

double max_cell_distance(const OperatorField& a, const OperatorField& b) {
  const int lvl = std::max(a.level(), b.level());
  const OperatorField& fa = a.level() == lvl ? a : a.refined(lvl);
  const OperatorField& fb = b.level() == lvl ? b : b.refined(lvl);
  double m = 0.0;
  for (std::int64_t i = 0; i < fa.size(); ++i)
    m = std::max(m, op_norm(fa.value(i) - fb.value(i)));
  return m;
}

double max_op_norm(const OperatorField& f) {
  double m = 0.0;
  for (std::int64_t i = 0; i < f.size(); ++i)
    m = std::max(m, op_norm(f.value(i)));
  return m;
}

// --- serialization -----------------------------------------------------
//
// Layout: "CZF1", then five little-endian int32 {d, K, n, level, boundary},
// then the cell matrices in ascending cell order, each row-major with every
// entry as re,im doubles. Round trips are bit exact.

void OperatorField::save_stream(std::ostream& out) const {
  out.write("CZF1", 4);
  const std::int32_t hdr[5] = {dom_.dim, dom_.depth, n_, level_,
                               dom_.boundary == BoundaryMode::periodic ? 0 : 1};
  out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
  std::vector<double> buf(static_cast<std::size_t>(n_) * n_ * 2);
  for (const Mat& v : vals_) {
    std::size_t j = 0;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        buf[j++] = v(r, c).real();
        buf[j++] = v(r, c).imag();
      }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(double)));
  }
  if (!out) throw InvalidInput("save: stream write failed");
}

OperatorField OperatorField::load_stream(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "CZF1", 4) != 0)
    throw InvalidInput("load: bad field magic");
  std::int32_t hdr[5];
  in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
  if (!in) throw InvalidInput("load: truncated header");
  DyadicDomain dom{hdr[0], hdr[1],
                   hdr[4] == 0 ? BoundaryMode::periodic
                               : BoundaryMode::interior};
  OperatorField f(dom, hdr[3], hdr[2]);
  const int n = hdr[2];
  std::vector<double> buf(static_cast<std::size_t>(n) * n * 2);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!in) throw InvalidInput("load: truncated payload");
    Mat& v = f.value(i);
    std::size_t j = 0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        v(r, c) = Cplx(buf[j], buf[j + 1]);
        j += 2;
      }
  }
  return f;
}

void OperatorField::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InvalidInput("save: cannot open " + file.string());
  save_stream(out);
  if (!out) throw InvalidInput("save: write failed for " + file.string());
}

OperatorField OperatorField::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidInput("load: cannot open " + file.string());
  return load_stream(in);
}

}  // namespace czlab

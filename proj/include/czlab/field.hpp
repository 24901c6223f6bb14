#pragma once

// Matrix-valued step functions on the dyadic window. A field stores one
// matrix per cell of its own level; coarse fields (conditional expectations,
// stopping projections) stay coarse and are refined on demand.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "czlab/algebra.hpp"
#include "czlab/grid.hpp"

namespace czlab {

class OperatorField {
 public:
  OperatorField() = default;
  OperatorField(DyadicDomain dom, int level, int mat_dim);

  static OperatorField constant(const DyadicDomain& dom, int level,
                                const Mat& value);
  static OperatorField identity_field(const DyadicDomain& dom, int level,
                                      int mat_dim);
  static OperatorField zero_field(const DyadicDomain& dom, int level,
                                  int mat_dim);

  const DyadicDomain& domain() const { return dom_; }
  int level() const { return level_; }
  int mat_dim() const { return n_; }
  std::int64_t size() const { return static_cast<std::int64_t>(vals_.size()); }
  double cell_volume() const;

  Mat& value(std::int64_t i) { return vals_[static_cast<std::size_t>(i)]; }
  const Mat& value(std::int64_t i) const {
    return vals_[static_cast<std::size_t>(i)];
  }

  /// Value on the finest-level cell x (maps down to the stored level).
  const Mat& at_fine(std::int64_t x) const;
  /// Index into this field for a finest-level cell.
  std::int64_t fine_to_index(std::int64_t x) const;

  /// Copy of this field stored at a finer level.
  OperatorField refined(int new_level) const;

  OperatorField adjoint() const;
  OperatorField& operator+=(const OperatorField& o);
  OperatorField& operator-=(const OperatorField& o);
  OperatorField& operator*=(double s);

  /// phi(f) = sum over cells of |cell| * Re tr f.
  double phi() const;

  bool same_shape(const OperatorField& o) const {
    return dom_ == o.dom_ && level_ == o.level_ && n_ == o.n_;
  }

  void save(const std::filesystem::path& file) const;
  static OperatorField load(const std::filesystem::path& file);
  void save_stream(std::ostream& out) const;
  static OperatorField load_stream(std::istream& in);

 private:
  DyadicDomain dom_;
  int level_ = 0;
  int n_ = 0;
  std::vector<Mat> vals_;
};

OperatorField operator+(OperatorField a, const OperatorField& b);
OperatorField operator-(OperatorField a, const OperatorField& b);
OperatorField operator*(double s, OperatorField f);

/// Pointwise matrix product a(x) b(x), at the finer of the two levels.
OperatorField field_product(const OperatorField& a, const OperatorField& b);
/// Pointwise p(x) f(x) p(x).
OperatorField sandwich(const OperatorField& p, const OperatorField& f);

/// Do all cells hold Hermitian matrices?
bool is_hermitian_field(const OperatorField& f,
                        double tol_rel = default_tols().herm);
/// Do all cells hold PSD matrices (within slack)?
bool is_psd_field(const OperatorField& f, double tol = default_tols().proj);
/// Do all cells hold orthogonal projections (within slack)?
bool is_projection_field(const OperatorField& f,
                         double tol = default_tols().proj);
/// max over cells of ||a(x) - b(x)||_op (fields refined as needed).
double max_cell_distance(const OperatorField& a, const OperatorField& b);
/// max over cells of ||f(x)||_op.
double max_op_norm(const OperatorField& f);

using ProjectionField = OperatorField;

}  // namespace czlab

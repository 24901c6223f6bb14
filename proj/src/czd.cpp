#include "czlab/czd.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "czlab/norms.hpp"
#include "czlab/parallel.hpp"

namespace czlab {

namespace {

// E_k f with the convention f_k = f once k passes the storage level.
OperatorField level_avg(const OperatorField& f, int k) {
  return k <= f.level() ? cond_exp(f, k) : f;
}

std::int64_t parent_index(const DyadicDomain& dom, int k, std::int64_t c) {
  // index of the level-(k-1) cube containing level-k cube c
  if (dom.dim == 1) return c >> 1;
  const int side = 1 << k;
  const int x = static_cast<int>(c % side), y = static_cast<int>(c / side);
  return (static_cast<std::int64_t>(y >> 1) << (k - 1)) + (x >> 1);
}

// value of a (possibly coarser) field on the level-k cell with index c
const Mat& value_at_level(const OperatorField& f, const DyadicDomain& dom,
                          int k, std::int64_t c) {
  const int shift = k - f.level();
  if (shift == 0) return f.value(c);
  if (dom.dim == 1) return f.value(c >> shift);
  const int side = 1 << k;
  const int x = static_cast<int>(c % side), y = static_cast<int>(c / side);
  return f.value((static_cast<std::int64_t>(y >> shift) << f.level()) +
                 (x >> shift));
}

}  // namespace

CuculescuSequence cuculescu(const OperatorField& f, double lambda,
                            const Tolerances& tol) {
  if (!(lambda > 0)) throw InvalidInput("cuculescu: lambda must be > 0");
  if (!is_psd_field(f, tol.proj))
    throw InvalidInput("cuculescu: f must be a PSD field");
  const DyadicDomain& dom = f.domain();
  const int n = f.mat_dim();
  const int depth = dom.depth;

  const OperatorField f0 = level_avg(f, 0);
  const double start = op_norm(f0.value(0));
  if (start > lambda * (1.0 + tol.eig))
    throw PreconditionError(
        "cuculescu: ||E_0 f||_op = " + std::to_string(start) +
        " exceeds lambda = " + std::to_string(lambda) +
        "; rerun with a larger lambda");

  CuculescuSequence cu;
  cu.lambda = lambda;
  cu.q.resize(static_cast<std::size_t>(depth) + 1);
  cu.p.resize(static_cast<std::size_t>(depth) + 1);
  cu.q[0] = OperatorField::identity_field(dom, 0, n);

  for (int k = 1; k <= depth; ++k) {
    const OperatorField fk = level_avg(f, k);
    const OperatorField& prev = cu.q[static_cast<std::size_t>(k - 1)];
    OperatorField qk(dom, k, n);
    OperatorField pk(dom, k, n);
    parallel_for(qk.size(), [&](std::int64_t c) {
      const Mat& qp = prev.value(parent_index(dom, k, c));
      const Mat& fv = value_at_level(fk, dom, k, c);
      Mat a = qp * fv * qp;
      qk.value(c) = spectral_proj_leq((a + a.adjoint()) / 2.0, lambda, tol);
      pk.value(c) = qp - qk.value(c);
    });
    cu.q[static_cast<std::size_t>(k)] = std::move(qk);
    cu.p[static_cast<std::size_t>(k)] = std::move(pk);
  }
  cu.q_final = cu.q[static_cast<std::size_t>(depth)];
  return cu;
}

CZBundle cz_decompose(const OperatorField& f, double lambda,
                      const Tolerances& tol) {
  const DyadicDomain& dom = f.domain();
  const int depth = dom.depth;
  const int n = f.mat_dim();
  const OperatorField ff = f.refined(depth);

  CZBundle bz;
  bz.cu = cuculescu(ff, lambda, tol);
  const ProjectionField& q = bz.cu.q_final;
  OperatorField q_perp = OperatorField::identity_field(dom, depth, n) - q;

  std::vector<OperatorField> fk(static_cast<std::size_t>(depth) + 1);
  for (int k = 0; k <= depth; ++k)
    fk[static_cast<std::size_t>(k)] = cond_exp(ff, k);

  // diagonal parts
  bz.good_diag = sandwich(q, ff);
  for (int k = 1; k <= depth; ++k)
    bz.good_diag += sandwich(bz.cu.p[static_cast<std::size_t>(k)],
                             fk[static_cast<std::size_t>(k)]);

  bz.b_n.assign(static_cast<std::size_t>(depth) + 1,
                OperatorField::zero_field(dom, depth, n));
  bz.bad_diag = OperatorField::zero_field(dom, depth, n);
  for (int k = 1; k <= depth; ++k) {
    bz.b_n[static_cast<std::size_t>(k)] =
        sandwich(bz.cu.p[static_cast<std::size_t>(k)],
                 ff - fk[static_cast<std::size_t>(k)]);
    bz.bad_diag += bz.b_n[static_cast<std::size_t>(k)];
  }

  // off-diagonal parts, via the (i, j) = (i, i+s) pairings
  bz.good_off = field_product(field_product(q, ff), q_perp) +
                field_product(field_product(q_perp, ff), q);
  bz.bad_off = OperatorField::zero_field(dom, depth, n);
  for (int i = 1; i <= depth; ++i) {
    const OperatorField& pi = bz.cu.p[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= depth; ++j) {
      const OperatorField& pj = bz.cu.p[static_cast<std::size_t>(j)];
      const OperatorField& fij = fk[static_cast<std::size_t>(j)];  // i v j = j
      OperatorField lower = field_product(field_product(pi, fij), pj);
      bz.good_off += lower + lower.adjoint();
      OperatorField bad_lower =
          field_product(field_product(pi, ff - fij), pj);
      OperatorField b_pair = bad_lower + bad_lower.adjoint();
      bz.bad_off += b_pair;
      bz.b_ns.emplace(std::make_pair(i, j - i), std::move(b_pair));
    }
  }

  // martingale slices of the good off-diagonal part
  for (int s = 1; s <= depth - 1; ++s) {
    for (int k = 1; k + s <= depth; ++k) {
      OperatorField df = fk[static_cast<std::size_t>(k + s)] -
                         fk[static_cast<std::size_t>(k + s - 1)];
      const OperatorField& pk = bz.cu.p[static_cast<std::size_t>(k)];
      const OperatorField& qprev = bz.cu.q[static_cast<std::size_t>(k + s - 1)];
      bz.g_left.emplace(std::make_pair(s, k),
                        field_product(field_product(pk, df), qprev));
      bz.g_right.emplace(std::make_pair(s, k),
                         field_product(field_product(qprev, df), pk));
    }
  }

  bz.zeta = zeta_projection(bz.cu, tol);
  return bz;
}

ProjectionField dilated_join(const DyadicDomain& dom,
                             const std::vector<ProjectionField>& levels,
                             int dilation, int mat_dim,
                             const Tolerances& tol) {
  if (dilation <= 0 || dilation % 2 == 0)
    throw InvalidInput("dilated_join: dilation must be odd");
  const int reach = (dilation - 1) / 2;
  ProjectionField join(dom, dom.depth, mat_dim);
  parallel_for(join.size(), [&](std::int64_t x) {
    Mat acc = Mat::Zero(mat_dim, mat_dim);
    bool any = false;
    for (int k = 1; k < static_cast<int>(levels.size()); ++k) {
      const ProjectionField& pk = levels[static_cast<std::size_t>(k)];
      if (pk.size() == 0) continue;
      const DyadicCube cx = cube_of(dom, x, k);
      const int cubes = 1 << k;
      // collect the distinct cubes Q at this level with x in dilation*Q
      std::vector<std::int64_t> idx;
      for (int dy = (dom.dim == 2 ? -reach : 0);
           dy <= (dom.dim == 2 ? reach : 0); ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
          std::array<int, 2> cc = {cx.coords[0] + dx, cx.coords[1] + dy};
          if (dom.boundary == BoundaryMode::periodic) {
            cc[0] = ((cc[0] % cubes) + cubes) % cubes;
            cc[1] = dom.dim == 2 ? ((cc[1] % cubes) + cubes) % cubes : 0;
          } else {
            if (cc[0] < 0 || cc[0] >= cubes) continue;
            if (dom.dim == 2 && (cc[1] < 0 || cc[1] >= cubes)) continue;
          }
          idx.push_back((static_cast<std::int64_t>(cc[1]) << k) + cc[0]);
        }
      }
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      for (std::int64_t q : idx) {
        const Mat& v = pk.value(q);
        if (v.trace().real() > 0.5) {  // projections have integer trace
          acc += v;
          any = true;
        }
      }
    }
    join.value(x) =
        any ? support_of_psd(acc, tol.rank) : Mat::Zero(mat_dim, mat_dim);
  });
  return join;
}

ProjectionField zeta_projection(const CuculescuSequence& cu,
                                const Tolerances& tol) {
  const DyadicDomain& dom = cu.q_final.domain();
  const int n = cu.q_final.mat_dim();
  ProjectionField join = dilated_join(dom, cu.p, 5, n, tol);
  ProjectionField zeta = OperatorField::identity_field(dom, dom.depth, n);
  zeta -= join;
  return zeta;
}

ProjectionField pseudo_loc_support(const std::vector<OperatorField>& dh,
                                   int s,
                                   const std::vector<ProjectionField>& a_fields,
                                   double hypothesis_eps,
                                   const Tolerances& tol) {
  if (s < 1) throw InvalidInput("pseudo_loc_support: s must be >= 1");
  if (a_fields.size() < 2)
    throw InvalidInput("pseudo_loc_support: no per-level projections");
  const DyadicDomain* domp = nullptr;
  int n = 0;
  for (const auto& a : a_fields)
    if (a.size() > 0) {
      domp = &a.domain();
      n = a.mat_dim();
      break;
    }
  if (!domp) throw InvalidInput("pseudo_loc_support: empty projections");
  const DyadicDomain dom = *domp;

  // uncovered low differences must vanish
  for (int j = 1; j < static_cast<int>(dh.size()) && j <= s; ++j) {
    if (dh[static_cast<std::size_t>(j)].size() == 0) continue;
    const double m = max_op_norm(dh[static_cast<std::size_t>(j)]);
    if (m > hypothesis_eps)
      throw PreconditionError(
          "pseudo_loc_support: difference at level " + std::to_string(j) +
          " is below the covered range and does not vanish (norm " +
          std::to_string(m) + ")");
  }
  // annihilation hypothesis A_k^perp dh_{k+s} = 0
  for (int k = 1; k < static_cast<int>(a_fields.size()); ++k) {
    const int j = k + s;
    if (j >= static_cast<int>(dh.size())) break;
    const OperatorField& d = dh[static_cast<std::size_t>(j)];
    if (d.size() == 0) continue;
    const ProjectionField& ak = a_fields[static_cast<std::size_t>(k)];
    const OperatorField fine = d.refined(dom.depth);
    for (std::int64_t x = 0; x < fine.size(); ++x) {
      const Mat aperp =
          Mat::Identity(n, n) - (ak.size() > 0 ? ak.at_fine(x)
                                               : Mat::Zero(n, n));
      const double r = op_norm(aperp * fine.value(x));
      if (r > hypothesis_eps)
        throw PreconditionError(
            "pseudo_loc_support: hypothesis fails at k = " +
            std::to_string(k) + ", cell = " + std::to_string(x) +
            " (residual " + std::to_string(r) + ")");
    }
  }
  return dilated_join(dom, a_fields, 5, n, tol);
}

MaximalProjectionResult maximal_projection(const OperatorField& f,
                                           double lambda,
                                           const LevelRange& range,
                                           int subsamples,
                                           const Tolerances& tol) {
  const DyadicDomain& dom = f.domain();
  const int n = f.mat_dim();
  CZBundle bz = cz_decompose(f, lambda, tol);
  const ProjectionField& e1 = bz.cu.q_final;

  std::vector<OperatorField> tks = tk_family(f, range, subsamples);
  std::vector<OperatorField> g_seq, h_seq;
  OperatorField zperp = OperatorField::identity_field(dom, dom.depth, n);
  zperp -= bz.zeta;
  for (const auto& t : tks) {
    g_seq.push_back(field_product(bz.zeta, t));
    h_seq.push_back(field_product(zperp, t));
  }
  const OperatorField sg = sq_function(g_seq, Side::col);
  const OperatorField sh = sq_function(h_seq, Side::row);

  // the spectral cut keeps the kernel: where the square function vanishes
  // the projection must be full
  MaximalProjectionResult res;
  res.lambda = lambda;
  res.q = OperatorField(dom, dom.depth, n);
  parallel_for(res.q.size(), [&](std::int64_t x) {
    const Mat e2 = Mat::Identity(n, n) - spectral_proj_gt(sg.value(x), lambda, tol);
    const Mat e3 = Mat::Identity(n, n) - spectral_proj_gt(sh.value(x), lambda, tol);
    const Mat mats[3] = {e1.at_fine(x), e2, e3};
    res.q.value(x) = proj_meet(std::span<const Mat>(mats, 3), n, tol);
  });

  double sup = 0.0;
  for (int k = range.lo; k <= range.hi; ++k) {
    OperatorField mk = ball_avg(f, k, subsamples);
    sup = std::max(sup, max_op_norm(sandwich(res.q, mk)));
  }
  res.sup_qmq = sup;
  OperatorField one_minus_q = OperatorField::identity_field(dom, dom.depth, n);
  one_minus_q -= res.q;
  res.mass = one_minus_q.phi();
  return res;
}

// --- bundle container --------------------------------------------------
//
// Layout: "CZB1", u64 manifest length, manifest JSON, then the fields in
// manifest order, each as a CZF1 block. The manifest fixes the order, so
// identical bundles serialize byte for byte.

namespace {

using nlohmann::json;

void write_named(std::ostream& out, const OperatorField& f) {
  f.save_stream(out);
}

}  // namespace

void save_bundle(const CZBundle& bz, const std::filesystem::path& file) {
  const DyadicDomain& dom = bz.good_diag.domain();
  json manifest;
  manifest["schema"] = "czlab-bundle-v1";
  manifest["lambda"] = bz.cu.lambda;
  manifest["d"] = dom.dim;
  manifest["K"] = dom.depth;
  manifest["n"] = bz.good_diag.mat_dim();
  manifest["boundary"] =
      dom.boundary == BoundaryMode::periodic ? "periodic" : "interior";
  json names = json::array();
  std::vector<const OperatorField*> order;
  auto push = [&](const std::string& name, const OperatorField& f) {
    names.push_back(name);
    order.push_back(&f);
  };
  push("good_diag", bz.good_diag);
  push("good_off", bz.good_off);
  push("bad_diag", bz.bad_diag);
  push("bad_off", bz.bad_off);
  push("zeta", bz.zeta);
  push("q_final", bz.cu.q_final);
  for (std::size_t k = 0; k < bz.cu.q.size(); ++k)
    push("q/" + std::to_string(k), bz.cu.q[k]);
  for (std::size_t k = 1; k < bz.cu.p.size(); ++k)
    push("p/" + std::to_string(k), bz.cu.p[k]);
  for (std::size_t nn = 1; nn < bz.b_n.size(); ++nn)
    push("b_n/" + std::to_string(nn), bz.b_n[nn]);
  for (const auto& [key, fld] : bz.b_ns)
    push("b_ns/" + std::to_string(key.first) + "," +
             std::to_string(key.second),
         fld);
  for (const auto& [key, fld] : bz.g_left)
    push("gl/" + std::to_string(key.first) + "," + std::to_string(key.second),
         fld);
  for (const auto& [key, fld] : bz.g_right)
    push("gr/" + std::to_string(key.first) + "," + std::to_string(key.second),
         fld);
  manifest["fields"] = names;

  std::ofstream out(file, std::ios::binary);
  if (!out) throw InvalidInput("save_bundle: cannot open " + file.string());
  out.write("CZB1", 4);
  const std::string m = manifest.dump();
  const std::uint64_t len = m.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(m.data(), static_cast<std::streamsize>(m.size()));
  for (const OperatorField* f : order) write_named(out, *f);
  if (!out) throw InvalidInput("save_bundle: write failed");
}

CZBundle load_bundle(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidInput("load_bundle: cannot open " + file.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "CZB1")
    throw InvalidInput("load_bundle: bad magic");
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string m(len, '\0');
  in.read(m.data(), static_cast<std::streamsize>(len));
  if (!in) throw InvalidInput("load_bundle: truncated manifest");
  json manifest = json::parse(m);

  CZBundle bz;
  bz.cu.lambda = manifest["lambda"].get<double>();
  const int depth = manifest["K"].get<int>();
  bz.cu.q.resize(static_cast<std::size_t>(depth) + 1);
  bz.cu.p.resize(static_cast<std::size_t>(depth) + 1);
  bz.b_n.resize(static_cast<std::size_t>(depth) + 1);

  for (const auto& name_json : manifest["fields"]) {
    const std::string name = name_json.get<std::string>();
    OperatorField f = OperatorField::load_stream(in);
    auto keyed = [&](const std::string& prefix) {
      return name.rfind(prefix, 0) == 0;
    };
    if (name == "good_diag") bz.good_diag = std::move(f);
    else if (name == "good_off") bz.good_off = std::move(f);
    else if (name == "bad_diag") bz.bad_diag = std::move(f);
    else if (name == "bad_off") bz.bad_off = std::move(f);
    else if (name == "zeta") bz.zeta = std::move(f);
    else if (name == "q_final") bz.cu.q_final = std::move(f);
    else if (keyed("q/"))
      bz.cu.q[static_cast<std::size_t>(std::stoi(name.substr(2)))] =
          std::move(f);
    else if (keyed("p/"))
      bz.cu.p[static_cast<std::size_t>(std::stoi(name.substr(2)))] =
          std::move(f);
    else if (keyed("b_n/"))
      bz.b_n[static_cast<std::size_t>(std::stoi(name.substr(4)))] =
          std::move(f);
    else if (keyed("b_ns/") || keyed("gl/") || keyed("gr/")) {
      const auto at = name.find('/');
      const auto comma = name.find(',', at);
      const int a = std::stoi(name.substr(at + 1, comma - at - 1));
      const int b = std::stoi(name.substr(comma + 1));
      if (keyed("b_ns/")) bz.b_ns.emplace(std::make_pair(a, b), std::move(f));
      else if (keyed("gl/")) bz.g_left.emplace(std::make_pair(a, b), std::move(f));
      else bz.g_right.emplace(std::make_pair(a, b), std::move(f));
    } else {
      throw InvalidInput("load_bundle: unknown field " + name);
    }
  }
  return bz;
}

}  // namespace czlab

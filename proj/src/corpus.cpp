#include "czlab/corpus.hpp"

#include <cmath>
#include <random>

#include "czlab/operators.hpp"

namespace czlab {

namespace {

Mat gaussian_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Cplx(g(rng), g(rng)) / std::sqrt(2.0);
  return m;
}

void normalize_l1(OperatorField& f) {
  const double mass = f.phi();  // = ||f||_1 for PSD fields
  if (mass <= 0) throw InvalidInput("corpus: degenerate field");
  f *= 1.0 / mass;
}

}  // namespace

Mat random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat g = gaussian_matrix(n, rng);
  return (g + g.adjoint()) / 2.0;
}

Mat random_projection(int n, int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat g = gaussian_matrix(n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat qmat = qr.householderQ();
  Mat p = Mat::Zero(n, n);
  for (int r = 0; r < rank && r < n; ++r)
    p += qmat.col(r) * qmat.col(r).adjoint();
  return (p + p.adjoint()) / 2.0;
}

CorpusInstance gen_smooth(const DyadicDomain& dom, int mat_dim,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int K = dom.depth;
  // multiscale Hermitian synthesis, then squared to make it PSD
  OperatorField h = OperatorField::zero_field(dom, K, mat_dim);
  for (int k = 0; k <= K; ++k) {
    OperatorField layer(dom, k, mat_dim);
    const double amp = std::pow(2.0, -0.8 * k);
    for (std::int64_t i = 0; i < layer.size(); ++i) {
      Mat g = gaussian_matrix(mat_dim, rng);
      layer.value(i) = amp * (g + g.adjoint()) / 2.0;
    }
    h += layer;
  }
  OperatorField f(dom, K, mat_dim);
  for (std::int64_t i = 0; i < f.size(); ++i)
    f.value(i) = h.value(i) * h.value(i);
  // strictly positive floor: 5% of the mass, spread uniformly
  const double floor = 0.05 * f.phi() / mat_dim;
  for (std::int64_t i = 0; i < f.size(); ++i)
    f.value(i) += floor * Mat::Identity(mat_dim, mat_dim);
  normalize_l1(f);
  CorpusInstance inst;
  inst.f = std::move(f);
  inst.family = "smooth";
  inst.seed = seed;
  return inst;
}

CorpusInstance gen_spike(const DyadicDomain& dom, int mat_dim,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int K = dom.depth;
  OperatorField f = OperatorField::zero_field(dom, K, mat_dim);
  const int nspikes = 1 + static_cast<int>(rng() % 3);
  double spike_mass = 0.0;
  double max_height = 0.0;
  for (int j = 0; j < nspikes; ++j) {
    const std::int64_t cell =
        static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(
                                            dom.cell_count()));
    const double height = std::pow(10.0, 0.5 + 1.5 * uni(rng));
    Mat dir = random_projection(mat_dim, 1, rng());
    f.value(cell) += height * dir;
    spike_mass += height * f.cell_volume();
    max_height = std::max(max_height, height);
  }
  // 10% of the spike mass as a flat strictly positive floor
  const double floor =
      0.1 * spike_mass / static_cast<double>(mat_dim);
  for (std::int64_t i = 0; i < f.size(); ++i)
    f.value(i) += floor * Mat::Identity(mat_dim, mat_dim);
  const double mass = f.phi();
  normalize_l1(f);
  CorpusInstance inst;
  inst.f = std::move(f);
  inst.family = "spike";
  inst.seed = seed;
  inst.height = max_height / mass;
  inst.support_fraction =
      static_cast<double>(nspikes) / static_cast<double>(dom.cell_count());
  return inst;
}

CorpusInstance gen_diagonal(const DyadicDomain& dom, int mat_dim,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const std::int64_t cells = dom.cell_count();
  std::vector<std::vector<double>> comps;
  for (int c = 0; c < mat_dim; ++c) {
    std::vector<double> v(static_cast<std::size_t>(cells), 0.0);
    const int shape = static_cast<int>(rng() % 3);
    if (shape == 0) {
      // exponentiated random walk
      double acc = 0.0;
      for (auto& x : v) {
        acc += 0.25 * g(rng);
        x = std::exp(acc);
      }
    } else if (shape == 1) {
      // scalar spikes over a floor
      for (auto& x : v) x = 0.1;
      const int ns = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < ns; ++j)
        v[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(cells))] +=
            std::pow(10.0, 0.5 + uni(rng));
    } else {
      // a few indicator bumps over a floor
      for (auto& x : v) x = 0.2;
      const int nb = 2 + static_cast<int>(rng() % 3);
      for (int j = 0; j < nb; ++j) {
        const std::int64_t start = static_cast<std::int64_t>(
            rng() % static_cast<std::uint64_t>(cells));
        const std::int64_t len = 1 + static_cast<std::int64_t>(
                                         rng() % static_cast<std::uint64_t>(
                                                     std::max<std::int64_t>(
                                                         cells / 4, 1)));
        const double amp = 0.5 + 2.0 * uni(rng);
        for (std::int64_t i = 0; i < len; ++i)
          v[static_cast<std::size_t>((start + i) % cells)] += amp;
      }
    }
    comps.push_back(std::move(v));
  }
  // joint L1 normalization so the embedding has unit mass
  double mass = 0.0;
  for (const auto& v : comps)
    for (double x : v) mass += x;
  mass /= static_cast<double>(cells);
  for (auto& v : comps)
    for (double& x : v) x /= mass;

  OperatorField f(dom, dom.depth, mat_dim);
  for (std::int64_t i = 0; i < cells; ++i) {
    Mat m = Mat::Zero(mat_dim, mat_dim);
    for (int c = 0; c < mat_dim; ++c)
      m(c, c) = comps[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
    f.value(i) = m;
  }
  CorpusInstance inst;
  inst.f = std::move(f);
  inst.family = "diagonal";
  inst.seed = seed;
  inst.scalar_components = std::move(comps);
  return inst;
}

AdversarialInstance gen_adversarial(const DyadicDomain& dom, int mat_dim,
                                    int s, std::uint64_t seed) {
  if (s < 1) throw InvalidInput("gen_adversarial: s must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int K = dom.depth;
  AdversarialInstance inst;
  inst.s = s;
  inst.seed = seed;
  inst.dh.assign(static_cast<std::size_t>(K) + 1, OperatorField());
  inst.a_fields.assign(static_cast<std::size_t>(K) + 1, ProjectionField());
  inst.h = OperatorField::zero_field(dom, K, mat_dim);

  for (int k = 1; k + s <= K; ++k) {
    ProjectionField ak(dom, k, mat_dim);
    const std::int64_t cubes = cube_count(dom, k);
    const double density = std::min(1.0, 4.0 / static_cast<double>(cubes));
    bool any = false;
    for (std::int64_t c = 0; c < cubes; ++c) {
      if (uni(rng) < density) {
        ak.value(c) = random_projection(mat_dim, 1 + static_cast<int>(rng() % 2),
                                        rng());
        any = true;
      }
    }
    if (!any)  // keep every level active so the sweep has signal
      ak.value(static_cast<std::int64_t>(
          rng() % static_cast<std::uint64_t>(cubes))) =
          random_projection(mat_dim, 1, rng());

    OperatorField w(dom, k + s, mat_dim);
    for (std::int64_t i = 0; i < w.size(); ++i) {
      Mat gmat = gaussian_matrix(mat_dim, rng);
      w.value(i) = (gmat + gmat.adjoint()) / 2.0;
    }
    OperatorField u = w - cond_exp(w, k + s - 1);
    OperatorField d = field_product(field_product(ak, u), ak);
    inst.h += d;
    inst.dh[static_cast<std::size_t>(k + s)] = std::move(d);
    inst.a_fields[static_cast<std::size_t>(k)] = std::move(ak);
  }
  return inst;
}

std::vector<CorpusInstance> gen_family(const std::string& family,
                                       const DyadicDomain& dom, int mat_dim,
                                       int count, std::uint64_t base_seed) {
  std::vector<CorpusInstance> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = base_seed + 1000003ull * (i + 1);
    CorpusInstance inst;
    if (family == "smooth") inst = gen_smooth(dom, mat_dim, seed);
    else if (family == "spike") inst = gen_spike(dom, mat_dim, seed);
    else if (family == "diagonal") inst = gen_diagonal(dom, mat_dim, seed);
    else throw InvalidInput("gen_family: unknown family " + family);
    inst.index = i;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace czlab

#include "dimscope/datasets.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "dimscope/error.hpp"

namespace dimscope {

RowMatrix random_orthogonal(std::size_t dim, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

DataSet linear_embed(const DataSet& data, std::size_t ambient_dim, Rng& rng) {
  const std::size_t d = data.ambient_dim();
  if (ambient_dim < d) {
    throw InvalidSpec("embedding dimension " + std::to_string(ambient_dim) +
                      " is below the data dimension " + std::to_string(d));
  }
  const RowMatrix q = random_orthogonal(ambient_dim, rng);
  const RowMatrix y =
      data.matrix() * q.leftCols(static_cast<Eigen::Index>(d)).transpose();
  return DataSet::from_matrix(y);
}

namespace {

template <typename Draw>
DataSet sample_iid(std::size_t d, std::size_t n, Draw draw) {
  if (d == 0) throw InvalidSpec("intrinsic dimension must be positive");
  std::vector<double> v(n * d);
  for (double& x : v) x = draw();
  return {n, d, std::move(v)};
}

void require_embeddable(std::size_t d, std::size_t ambient_dim) {
  if (ambient_dim < d) {
    throw InvalidSpec("family requires D >= d (got d=" + std::to_string(d) +
                      ", D=" + std::to_string(ambient_dim) + ")");
  }
}

}  // namespace

DataSet sample_hypercube(std::size_t d, std::size_t n, Rng& rng) {
  return sample_iid(d, n, [&] { return rng.uniform(); });
}

DataSet sample_binary(std::size_t d, std::size_t n, Rng& rng) {
  return sample_iid(d, n, [&] { return rng.bit(); });
}

DataSet sample_gaussian(std::size_t d, std::size_t n, Rng& rng) {
  return sample_iid(d, n, [&] { return rng.normal(); });
}

DataSet gen_hypercube(std::size_t d, std::size_t ambient_dim, std::size_t n,
                      Rng& rng) {
  require_embeddable(d, ambient_dim);
  return linear_embed(sample_hypercube(d, n, rng), ambient_dim, rng);
}

DataSet gen_binary(std::size_t d, std::size_t ambient_dim, std::size_t n,
                   Rng& rng) {
  require_embeddable(d, ambient_dim);
  return linear_embed(sample_binary(d, n, rng), ambient_dim, rng);
}

DataSet gen_gaussian(std::size_t d, std::size_t ambient_dim, std::size_t n,
                     Rng& rng) {
  require_embeddable(d, ambient_dim);
  return linear_embed(sample_gaussian(d, n, rng), ambient_dim, rng);
}

DataSet gen_sphere(std::size_t d_sphere, std::size_t n, double r_s, Rng& rng) {
  if (d_sphere < 1) throw InvalidSpec("sphere dimension must be at least 1");
  if (!(r_s > 0.0)) throw InvalidSpec("sphere radius must be positive");
  const std::size_t dim = d_sphere + 1;
  std::vector<double> v(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        v[i * dim + k] = rng.normal();
        norm2 += v[i * dim + k] * v[i * dim + k];
      }
    } while (norm2 == 0.0);
    const double scale = r_s / std::sqrt(norm2);
    for (std::size_t k = 0; k < dim; ++k) v[i * dim + k] *= scale;
  }
  return {n, dim, std::move(v)};
}

std::vector<double> cmanifold_map(std::span<const double> x) {
  const std::size_t d = x.size();
  std::vector<double> out(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    const double radius = x[(i + 1) % d];
    out[2 * i] = radius * std::cos(x[i]);
    out[2 * i + 1] = radius * std::sin(x[i]);
  }
  return out;
}

DataSet gen_cmanifold(std::size_t d, std::size_t n, Rng& rng) {
  if (d < 2) throw InvalidSpec("the curved manifold needs d >= 2");
  std::vector<double> v;
  v.reserve(n * 2 * d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& t : x) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto y = cmanifold_map(x);
    v.insert(v.end(), y.begin(), y.end());
  }
  return {n, 2 * d, std::move(v)};
}

std::array<double, 3> swissroll_map(double x, double y) {
  const double phase = 2.0 * std::numbers::pi * y;
  return {x * std::cos(phase), y, x * std::sin(phase)};
}

DataSet gen_swissroll(std::size_t n, Rng& rng) {
  std::vector<double> v;
  v.reserve(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    const auto p = swissroll_map(x, y);
    v.insert(v.end(), p.begin(), p.end());
  }
  return {n, 3, std::move(v)};
}

BlobParams draw_blob_params(Rng& rng, std::size_t l) {
  BlobParams p;
  p.dx = rng.uniform(-20.0, 20.0);
  p.dy = rng.uniform(-20.0, 20.0);
  p.s = rng.uniform(1.0, 3.0);
  p.e = rng.uniform(5.0, 10.0);
  p.theta = rng.uniform(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  p.l = l;
  return p;
}

double blob_pixel(const BlobParams& p, double i, double j) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const double a = c * (j - p.dx) + s * (i + p.dy);
  const double b = -s * (j - p.dx) + c * (i + p.dy);
  return 1.0 - std::sqrt((a * a + p.e * p.e * b * b) /
                         ((1.0 + p.e * p.e) * p.s * p.s));
}

std::vector<double> render_blob(const BlobParams& p) {
  const std::size_t l = p.l;
  const double half = 0.5 * static_cast<double>(l - 1);
  std::vector<double> img(l * l);
  for (std::size_t row = 0; row < l; ++row) {
    for (std::size_t col = 0; col < l; ++col) {
      const double v = blob_pixel(p, static_cast<double>(row) - half,
                                  static_cast<double>(col) - half);
      img[row * l + col] = v < kBlobThreshold ? 0.0 : v;
    }
  }
  return img;
}

DataSet gen_blobs(std::size_t n_blobs, std::size_t n, Rng& rng,
                  std::size_t l) {
  if (n_blobs < 1) throw InvalidSpec("at least one blob per image");
  if (l < 1) throw InvalidSpec("bitmap side must be positive");
  const std::size_t dim = l * l;
  std::vector<double> v(n * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < n_blobs; ++b) {
      const auto img = render_blob(draw_blob_params(rng, l));
      for (std::size_t k = 0; k < dim; ++k) v[i * dim + k] += img[k];
    }
  }
  return {n, dim, std::move(v)};
}

DataSet add_gaussian_noise(const DataSet& data, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidSpec("noise level must be non-negative");
  if (sigma == 0.0) return data;
  std::vector<double> v(data.values().begin(), data.values().end());
  for (double& x : v) x += sigma * rng.normal();
  return {data.n_samples(), data.ambient_dim(), std::move(v)};
}

DataSet union_rows(const DataSet& a, const DataSet& b) {
  if (b.empty()) return a;
  if (a.empty()) return b;
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InvalidInput("union of datasets with different dimensions (" +
                       std::to_string(a.ambient_dim()) + " vs " +
                       std::to_string(b.ambient_dim()) + ")");
  }
  std::vector<double> v(a.values().begin(), a.values().end());
  v.insert(v.end(), b.values().begin(), b.values().end());
  return {a.n_samples() + b.n_samples(), a.ambient_dim(), std::move(v)};
}

DataSet gen_cube_union(std::size_t d_small, std::size_t d_large,
                       std::size_t ambient_dim, std::size_t n_small,
                       std::size_t n_large, Rng& rng, double offset) {
  if (d_small > d_large) {
    throw InvalidSpec("the first cube must not be larger than the second");
  }
  require_embeddable(d_large, ambient_dim);
  auto shifted = [&](DataSet raw) {
    if (offset == 0.0) return raw;
    std::vector<double> v(raw.values().begin(), raw.values().end());
    for (double& x : v) x += offset;
    return DataSet(raw.n_samples(), raw.ambient_dim(), std::move(v));
  };
  const DataSet small = shifted(sample_hypercube(d_small, n_small, rng));
  const DataSet large = shifted(sample_hypercube(d_large, n_large, rng));
  const DataSet small_in_large = linear_embed(small, d_large, rng);
  return linear_embed(union_rows(small_in_large, large), ambient_dim, rng);
}

DataSet generate(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  DataSet out;
  const std::string& f = spec.family;
  if (f == "hypercube") {
    out = gen_hypercube(spec.d, spec.ambient_dim, spec.n, rng);
  } else if (f == "binary") {
    out = gen_binary(spec.d, spec.ambient_dim, spec.n, rng);
  } else if (f == "gaussian") {
    out = gen_gaussian(spec.d, spec.ambient_dim, spec.n, rng);
  } else if (f == "sphere") {
    if (spec.ambient_dim != 0 && spec.ambient_dim < spec.d + 1) {
      throw InvalidSpec("a d-sphere needs D >= d + 1");
    }
    out = gen_sphere(spec.d, spec.n, spec.radius, rng);
    if (spec.ambient_dim > spec.d + 1) {
      out = linear_embed(out, spec.ambient_dim, rng);
    }
  } else if (f == "cmanifold") {
    if (spec.ambient_dim != 0 && spec.ambient_dim != 2 * spec.d) {
      throw InvalidSpec("cmanifold requires D = 2d");
    }
    out = gen_cmanifold(spec.d, spec.n, rng);
  } else if (f == "swissroll") {
    if ((spec.d != 0 && spec.d != 2) ||
        (spec.ambient_dim != 0 && spec.ambient_dim != 3)) {
      throw InvalidSpec("swissroll fixes d = 2, D = 3");
    }
    out = gen_swissroll(spec.n, rng);
  } else if (f == "blobs") {
    if (spec.ambient_dim != 0 && spec.ambient_dim != 81 * 81) {
      throw InvalidSpec("blobs fixes D = 81^2");
    }
    out = gen_blobs(spec.blobs, spec.n, rng);
  } else if (f == "union") {
    out = gen_cube_union(spec.d, spec.d_second, spec.ambient_dim, spec.n,
                         spec.n_second, rng);
  } else {
    throw InvalidSpec("unknown family '" + f + "'");
  }
  if (spec.noise > 0.0) out = add_gaussian_noise(out, spec.noise, rng);
  return out;
}

KeyValues describe(const SyntheticSpec& spec) {
  KeyValues kv{{"family", spec.family},
               {"d", std::to_string(spec.d)},
               {"D", std::to_string(spec.ambient_dim)},
               {"n", std::to_string(spec.n)},
               {"seed", std::to_string(spec.seed)},
               {"noise", format_double(spec.noise)}};
  if (spec.family == "blobs") kv.emplace_back("blobs", std::to_string(spec.blobs));
  if (spec.family == "sphere") kv.emplace_back("radius", format_double(spec.radius));
  if (spec.family == "union") {
    kv.emplace_back("d_second", std::to_string(spec.d_second));
    kv.emplace_back("n_second", std::to_string(spec.n_second));
  }
  return kv;
}

}  // namespace dimscope

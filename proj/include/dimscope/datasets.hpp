#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dimscope/data.hpp"
#include "dimscope/io.hpp"
#include "dimscope/rng.hpp"

namespace dimscope {

/// Haar-distributed orthogonal D x D matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q.
RowMatrix random_orthogonal(std::size_t dim, Rng& rng);

/// Appends D - d zero coordinates and applies a random orthogonal map of R^D.
/// Throws InvalidSpec when D < d.
DataSet linear_embed(const DataSet& data, std::size_t ambient_dim, Rng& rng);

// Raw samples in R^d, before embedding.
DataSet sample_hypercube(std::size_t d, std::size_t n, Rng& rng);
DataSet sample_binary(std::size_t d, std::size_t n, Rng& rng);
DataSet sample_gaussian(std::size_t d, std::size_t n, Rng& rng);

/// Uniform on [0,1]^d, linearly embedded in R^D.
DataSet gen_hypercube(std::size_t d, std::size_t ambient_dim, std::size_t n,
                      Rng& rng);
/// Uniform on {0,1}^d, linearly embedded in R^D.
DataSet gen_binary(std::size_t d, std::size_t ambient_dim, std::size_t n,
                   Rng& rng);
/// Standard Gaussian in R^d, linearly embedded in R^D.
DataSet gen_gaussian(std::size_t d, std::size_t ambient_dim, std::size_t n,
                     Rng& rng);

/// Uniform on the d-sphere of radius r_s in R^(d+1).
DataSet gen_sphere(std::size_t d_sphere, std::size_t n, double r_s, Rng& rng);

/// Curved manifold in R^(2d): coordinate pair i is
/// (x_{i+1} cos x_i, x_{i+1} sin x_i) with the successor taken cyclically.
std::vector<double> cmanifold_map(std::span<const double> x);
/// Uniform on [0, 2 pi]^d mapped by cmanifold_map. Requires d >= 2.
DataSet gen_cmanifold(std::size_t d, std::size_t n, Rng& rng);

/// (x cos 2 pi y, y, x sin 2 pi y).
std::array<double, 3> swissroll_map(double x, double y);
DataSet gen_swissroll(std::size_t n, Rng& rng);

/// One elliptic blob. Ranges of the random draw: dx, dy in (-20, 20),
/// s in (1, 3), e in (5, 10), theta in (-pi/2, pi/2).
struct BlobParams {
  double dx = 0.0;
  double dy = 0.0;
  double s = 2.0;
  double e = 7.5;
  double theta = 0.0;
  std::size_t l = 81;
};

inline constexpr double kBlobThreshold = 0.01;

BlobParams draw_blob_params(Rng& rng, std::size_t l = 81);

/// Unthresholded pixel value at centered indices (i, j), each in
/// [-(l-1)/2, (l-1)/2].
double blob_pixel(const BlobParams& p, double i, double j);

/// l*l image, row-major over i then j, with values below the threshold
/// set to 0.
std::vector<double> render_blob(const BlobParams& p);

/// N images of n_blobs summed single-blob images, flattened to D = l^2.
DataSet gen_blobs(std::size_t n_blobs, std::size_t n, Rng& rng,
                  std::size_t l = 81);

/// Adds i.i.d. N(0, sigma^2) to every coordinate.
DataSet add_gaussian_noise(const DataSet& data, double sigma, Rng& rng);

/// Row concatenation. An empty operand returns the other unchanged.
DataSet union_rows(const DataSet& a, const DataSet& b);

/// Two uniform hypercubes [0,1]^d_small and [0,1]^d_large that meet at the
/// origin. The small cube is embedded in R^d_large by its own random
/// rotation, so its span lies inside the large cube's span; the union is then
/// embedded in R^D with one common rotation. Rows 0..n_small-1 belong to the
/// small cube. `offset` is added to every raw coordinate of both cubes.
DataSet gen_cube_union(std::size_t d_small, std::size_t d_large,
                       std::size_t ambient_dim, std::size_t n_small,
                       std::size_t n_large, Rng& rng, double offset = 0.0);

/// Everything needed to regenerate a dataset.
struct SyntheticSpec {
  std::string family;  // binary gaussian hypercube cmanifold swissroll sphere blobs union
  std::size_t d = 0;
  std::size_t ambient_dim = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t blobs = 1;
  double noise = 0.0;
  double radius = 1.0;       // sphere
  std::size_t d_second = 0;  // union: dimension of the second cube
  std::size_t n_second = 0;  // union: samples of the second cube
};

/// Validates the family constraints and generates. Noise, if any, is added
/// after embedding. Throws InvalidSpec.
DataSet generate(const SyntheticSpec& spec);

KeyValues describe(const SyntheticSpec& spec);

}  // namespace dimscope

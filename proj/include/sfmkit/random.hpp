#pragma once

// Seeded generators for test instances and the `random` CLI command.

#include <cstdint>
#include <random>
#include <string>

#include "sfmkit/sfm.hpp"

namespace sfmkit {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);
Matrix random_hermitian(Rng& rng, std::size_t dim);
/// G G* with G of size dim × rank.
Matrix random_psd(Rng& rng, std::size_t dim, std::size_t rank);
/// Haar-distributed unitary via QR with phase correction.
Matrix random_unitary(Rng& rng, std::size_t dim);
Vector random_unit_vector(Rng& rng, std::size_t dim);

enum class MeasureKind { General, Symmetric, Positive };

MeasureKind parse_measure_kind(const std::string& name);

/// M atoms labelled "w0", "w1", … with forms of the requested kind.
AtomicSFM random_sfm(Rng& rng, std::size_t dim, std::size_t atoms, MeasureKind kind = MeasureKind::General);

}  // namespace sfmkit

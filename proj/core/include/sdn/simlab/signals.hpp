#pragma once

#include <cstdint>
#include <variant>

#include "sdn/types.hpp"

namespace sdn::simlab {

// Alternating light/dark cells; the light cells carry a fraction f of the
// energy and ||X||_F = 1.
struct Checkerboard {
  double f = 0.7;
  Index cell_rows = 4;
  Index cell_cols = 4;
};

// Haar-like random orthonormal factors with the given singular values.
struct RandomOrthonormal {
  Vector t;
  std::uint64_t seed = 0;
};

// Rank one; each singular vector puts `energy_fraction` of its energy,
// uniformly, on the first half of its coordinates and the rest on the second.
struct PiecewiseConstant {
  double t = 1.0;
  double energy_fraction = 0.5;
};

// Rank two: first component constant, second +1 on the first half and -1 on
// the second half (both normalized). Dimensions must be even.
struct ConstantSplit {
  double t1 = 2.0;
  double t2 = 1.0;
};

// Piecewise constant over a cell grid with nearly equispaced cells.
struct BlockImage {
  Matrix cells;
};

struct Custom {
  Matrix U;
  Vector t;
  Matrix V;
};

using SignalKind = std::variant<Checkerboard, RandomOrthonormal, PiecewiseConstant, ConstantSplit, BlockImage, Custom>;

struct SignalSpec {
  Index p = 0;
  Index n = 0;
  SignalKind kind;
};

struct Signal {
  Matrix X;
  Matrix U;
  Vector t;
  Matrix V;
};

Signal gen_signal(const SignalSpec& spec);

// Random p x r matrix with orthonormal columns.
Matrix random_orthonormal(Index p, Index r, std::uint64_t seed);

// A fixed 15 x 30 rank-5 block pattern standing in for a logo image.
Matrix logo_cells();

}  // namespace sdn::simlab

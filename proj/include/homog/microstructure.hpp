#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homog/field.hpp"

namespace homog {

enum class MicroKind { obnosov, checkerboard, four_disks };

/// Two-phase indicator map. chi1[k] != 0 marks phase 1 (the inclusion).
struct Microstructure {
    Grid2D grid;
    std::vector<std::uint8_t> chi1;
    double f1 = 0.0;  // exact pixel-count fraction of phase 1
};

/// Generate one of the benchmark microstructures on an n x n grid.
///
/// obnosov:      centered axis-aligned square of side n/2 (requires n % 4 == 0,
///               n >= 4), f1 = 0.25 exactly.
/// checkerboard: 2x2 blocks of half-cell squares (n even), f1 = 0.5 exactly.
/// four_disks:   equal disks at the four quarter-cell points (n >= 8), radius
///               chosen by bisection on the pixel count so f1 is the closest
///               achievable to 0.5. A pixel belongs to a disk iff its center
///               lies strictly inside.
Microstructure generate(MicroKind kind, int n);

double volume_fraction(const Microstructure& m);

/// Binary PGM (P5), maxval 255: 255 = phase 1, 0 = phase 2, row j=0 first.
void save_pgm(const Microstructure& m, const std::string& path);
Microstructure load_pgm(const std::string& path);

/// Pointwise multiply by a per-phase scalar: m1 on phase 1, m2 on phase 2.
RealVectorField2D scale_by_phase(const Microstructure& m, const RealVectorField2D& f,
                                 double m1, double m2);

}  // namespace homog

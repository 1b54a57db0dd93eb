#pragma once

#include "okvalid/interval.hpp"

namespace okvalid {

// Embedding constants on (0,1)^d:
//   ||u||_inf    <= Cm    ||u||_{H^2}      (general u)
//   ||u||_inf    <= CmBar ||u||_{Hbar^2}   (zero mean)
//   ||uv||_{H^2} <= Cb    ||u||_{H^2} ||v||_{H^2}
struct EmbeddingConstants {
    int dim = 1;
    double Cm = 0;
    double CmBar = 0;
    double Cb = 0;
    double equivFactor = 0;  // upper bound of sqrt(1 + pi^4) / pi^2
};

// Tabulated upper bounds for d = 1, 2, 3.
EmbeddingConstants table_constants(int dim);

// Enclosure of (sum_{k != 0} c_k^2 kappa_k^-2)^(1/2): the lattice sum up to
// |k| < ncut plus an integral bound for the remainder.
Interval recompute_cmbar(int dim, int ncut = 1000);

// Enclosure of the finite part only (no tail), used for diagnostics.
Interval cmbar_partial_sum(int dim, int ncut);

// Upper bound of the remainder sum_{|z| >= ncut, z in Z^d} |z|^-4.
Interval lattice_tail_bound(int dim, int ncut);

// sqrt(1 + pi^4) / pi^2.
Interval equiv_factor();

}  // namespace okvalid

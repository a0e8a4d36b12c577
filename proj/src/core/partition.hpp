#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/elliptic.hpp"

namespace seglab {

enum class RegionLabel : std::uint8_t {
    R12, // u1>0, u2>0, u3=0  (h23 > 0, h13 > 0)
    R13, // u1>0, u3>0, u2=0  (h23 < 0, h12 > 0)
    R23, // u2>0, u3>0, u1=0  (h12 < 0, h13 < 0)
    Pure1, // on {h23=0} with h12=h13>0
    Pure2, // on {h13=0} with h12<0
    Pure3, // on {h12=0} with h13<0
    Interface, // within a positive band of a single deciding zero set
    Triple, // within band of two zero sets (hence of all three)
    Undecided // inconsistent sign pattern (surfaced, never relabeled)
};

const char* to_string(RegionLabel l);

/// Per-node sign-pattern classification of the harmonic differences.
/// band = 0 gives the exact prediction; pure labels then occur only where a
/// difference vanishes exactly. With band > 0 the near-zero-set nodes become
/// Interface/Triple (for classifying noisy solution-derived fields).
std::vector<RegionLabel> classify(const HarmonicTriple& h, double band);

struct Polyline {
    std::vector<Point> pts;
};

/// Marching-squares zero contour with linear edge interpolation; the saddle
/// ambiguity is resolved by the cell-center sign. Returns stitched polylines
/// (1D grids: degenerate one-point "polylines" at sign changes).
std::vector<Polyline> zero_contours(const ScalarField& field);

struct TriplePoint {
    Point p;
    bool refined = false; // Newton-converged vs cell-center fallback
};

/// Intersections of {h12=0} and {h23=0}: per-cell Newton on the bilinear
/// interpolants, clustered so one crossing yields one point.
std::vector<TriplePoint> triple_points(const HarmonicTriple& h);

struct TransversalityEntry {
    std::string pair; // "h12", "h13", "h23"
    double min_grad = 0.0; // min |grad h| sampled along the zero contour
    std::size_t n_vertices = 0;
    bool degenerate = false; // empty contour or min gradient below 1e-6
};

std::array<TransversalityEntry, 3> transversality_report(const HarmonicTriple& h);

struct PartitionMap {
    Grid grid;
    std::vector<RegionLabel> labels;
    std::array<std::vector<Polyline>, 3> contours; // {h12=0}, {h13=0}, {h23=0}
    std::vector<TriplePoint> triples;
};

PartitionMap build_partition(const HarmonicTriple& h, double band);

} // namespace seglab

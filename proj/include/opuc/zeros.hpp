#pragma once

#include "opuc/coeffseq.hpp"
#include "opuc/roots.hpp"
#include "opuc/szego.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opuc {

enum class ZeroClass { Interior, Band, NevaiTotik };
std::string to_string(ZeroClass c);

struct ClassifyOptions {
    std::optional<double> delta;      // default 0.2 b
    std::optional<double> delta_band; // default max(4 log n / n * b, 0.05 b)
    // Precomputed limits of the NT zeros; scanned from the outer limit otherwise.
    std::optional<std::vector<Complex>> nt_candidates;
    double nt_outer = 0.995;
    ScanOptions scan;
    RootOptions roots;
    double gap_flag_factor = 1.5;
    double gap_tolerance = 0.25;
};

struct GapRecord {
    std::size_t term = 0;
    Complex node;              // conj(b_l)
    double node_arg = 0.0;     // in [0, 2 pi)
    Complex before;            // band zero just below node_arg (cyclically)
    Complex after;             // band zero just above
    double offset_before = 0.0; // (node_arg - arg before) n / (2 pi)
    double offset_after = 0.0;  // (arg after - node_arg) n / (2 pi)
    double flank_spacing = 0.0; // arg after - arg before
    double flank_ratio = 0.0;   // flank_spacing / (4 pi / n)
    bool flagged = false;       // flank_spacing > factor * median band spacing
    bool verdict = false;       // offsets within tolerance of 1 and ratio of 1
};

struct ZeroReport {
    int n = 0;
    double b = 0.0;
    double delta = 0.0;
    double delta_band = 0.0;
    RootSet zeros;
    std::vector<ZeroClass> classes; // parallel to zeros.roots
    std::vector<Complex> interior;
    std::vector<Complex> band;
    std::vector<Complex> nt;
    std::vector<Complex> nt_candidates;
    std::vector<double> nt_match_distance; // per NT zero; negative when unmatched
    // Sorted band arguments with one synthetic point at arg conj(b_l) per term.
    std::vector<double> augmented_args;
    std::vector<bool> synthetic;
    std::vector<double> spacing; // consecutive differences, wrapping; sums to 2 pi
    std::vector<GapRecord> gaps;
    double max_band_offset = 0.0; // max | |z| - b | over band zeros
    std::vector<std::string> warnings;
};

// Zeros of Phi_n split into interior / band / NT populations.
ZeroReport classify(const SzegoApprox& approx, const DecayModel& model, int n,
                    const ClassifyOptions& opts = {});

struct ClockStats {
    int n = 0;
    double mean_relative = 0.0; // mean | spacing n / (2 pi) - 1 |
    double max_relative = 0.0;
    double max_absolute = 0.0;  // max | spacing - 2 pi / n |
};

ClockStats clock_report(const ZeroReport& report);

// Exponent e in max_absolute ~ n^{-e} over a sweep.
double spacing_exponent(const std::vector<ClockStats>& sweep);

std::vector<GapRecord> gap_check(const ZeroReport& report, const DecayModel& model,
                                 double flag_factor = 1.5, double tolerance = 0.25);

struct InteriorPair {
    Complex predicted;
    Complex zero;
    double distance = 0.0;
};

struct InteriorMatch {
    std::vector<InteriorPair> pairs;
    std::vector<Complex> unmatched_predicted;
    std::vector<Complex> unmatched_zeros;
    // Every prediction paired within delta and no interior zero left over.
    bool complete(double delta) const;
};

// Greedy pairing by increasing distance.
InteriorMatch match_interior(const ZeroReport& report, const std::vector<Complex>& predicted);
// Throws UnmatchedZero unless match.complete(delta).
void require_matched(const InteriorMatch& match, double delta);

} // namespace opuc

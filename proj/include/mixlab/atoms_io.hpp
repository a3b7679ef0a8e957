#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixlab/field.hpp"
#include "mixlab/scheme.hpp"

namespace mixlab {

// Versioned binary atoms file, magic "MIXLAB01", little-endian throughout.
// Header: atom count, pass count, config hash, final J, core scheme
// parameters and the window, base kind and profile id; then per-pass
// (side, count); then fixed-width atom records:
//   cube center 3 x f64 | side f64 | parity u8 | direction 5 x f64 |
//   frequency 4 x f64 (zeta1 zeta2 xi0 b) | k u32.

struct AtomsFileHeader {
    std::uint32_t n_atoms = 0;
    std::uint32_t n_passes = 0;
    std::uint64_t config_hash = 0;
    double final_J = 0.0;
    double speed_c = 1.0;
    double M = 5.0;
    double margin_delta = 0.0;
    double window[6] = {0, 0, 0, 0, 0, 0};
    std::uint8_t base_kind = 0; // 0 flat, 1 sampled
    std::uint8_t profile_id = 0; // 0 cosine, 1 square3
};

struct AtomsFile {
    AtomsFileHeader header;
    std::vector<std::pair<double, std::vector<WaveAtom>>> passes;

    SpaceTimeWindow window() const {
        return {{{header.window[0], header.window[2]}, {header.window[1], header.window[3]}},
                header.window[4],
                header.window[5]};
    }
    std::string profile_name() const { return header.profile_id == 1 ? "square3" : "cosine"; }
};

void write_atoms_file(const std::string& path, const FieldModel& field, const RunConfig& config,
                      std::uint64_t config_hash, double final_J);

AtomsFile read_atoms_file(const std::string& path);

/// Rebuilds the field from a flat-base atoms file; sampled bases need the
/// original interface table and are reconstructed by the caller.
FieldModel field_from_atoms(const AtomsFile& file);

} // namespace mixlab

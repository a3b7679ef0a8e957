#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "mixlab/profile.hpp"
#include "mixlab/subsolution.hpp"
#include "mixlab/wave.hpp"

namespace mixlab {

/// Coarse-grained base field plus the ordered list of wave atoms appended by
/// the perturbation passes. Within one pass the atoms live on disjoint grid
/// cubes, so evaluation resolves at most one atom per pass by direct cube
/// arithmetic.
class FieldModel {
  public:
    FieldModel() = default;
    FieldModel(SubsolutionField base, HullParams params, Profile profile);

    StateZ eval(const Vec2& x, double t) const;
    StateZ atoms_eval(const Vec2& x, double t) const;

    /// Appends one pass worth of atoms living on a grid of side s.
    /// Atoms are sorted by (zx, zy, ti) for deterministic output.
    void append_pass(double s, std::vector<WaveAtom> atoms);

    const SubsolutionField& base() const { return base_; }
    const HullParams& params() const { return params_; }
    const Profile& profile() const { return profile_; }
    const std::vector<WaveAtom>& atoms() const { return atoms_; }
    std::size_t pass_count() const { return layers_.size(); }
    double pass_side(std::size_t p) const { return layers_[p].s; }
    std::span<const WaveAtom> pass_atoms(std::size_t p) const;

  private:
    struct PassLayer {
        double s = 0.0;
        std::size_t first = 0;
        std::size_t count = 0;
        std::unordered_map<std::uint64_t, std::uint32_t> index; // cube key -> atom
    };
    static std::uint64_t cube_key(int zx, int zy, int ti);

    SubsolutionField base_;
    HullParams params_;
    Profile profile_;
    std::vector<WaveAtom> atoms_;
    std::vector<PassLayer> layers_;
};

} // namespace mixlab

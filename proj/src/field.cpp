#include "mixlab/field.hpp"

#include <algorithm>
#include <cmath>

#include "mixlab/grid.hpp"

namespace mixlab {

FieldModel::FieldModel(SubsolutionField base, HullParams params, Profile profile)
    : base_(std::move(base)), params_(params), profile_(std::move(profile)) {}

std::uint64_t FieldModel::cube_key(int zx, int zy, int ti) {
    constexpr std::uint64_t off = 1u << 20;
    return (static_cast<std::uint64_t>(zx + off)) |
           (static_cast<std::uint64_t>(zy + off) << 21) |
           (static_cast<std::uint64_t>(ti + off) << 42);
}

void FieldModel::append_pass(double s, std::vector<WaveAtom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [s](const WaveAtom& a, const WaveAtom& b) {
        const int axz = static_cast<int>(std::lround(a.center.x / s));
        const int ayz = static_cast<int>(std::lround(a.center.y / s));
        const int bxz = static_cast<int>(std::lround(b.center.x / s));
        const int byz = static_cast<int>(std::lround(b.center.y / s));
        const int ap = ShiftedGrid::parity_of(axz, ayz);
        const int bp = ShiftedGrid::parity_of(bxz, byz);
        const int ati = static_cast<int>(std::lround(a.t_center / s - 0.5 * ap));
        const int bti = static_cast<int>(std::lround(b.t_center / s - 0.5 * bp));
        return std::tie(axz, ayz, ati, ap) < std::tie(bxz, byz, bti, bp);
    });

    PassLayer layer;
    layer.s = s;
    layer.first = atoms_.size();
    layer.count = atoms.size();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const WaveAtom& a = atoms[i];
        const int zx = static_cast<int>(std::lround(a.center.x / s));
        const int zy = static_cast<int>(std::lround(a.center.y / s));
        const int p = ShiftedGrid::parity_of(zx, zy);
        const int ti = static_cast<int>(std::lround(a.t_center / s - 0.5 * p));
        layer.index.emplace(cube_key(zx, zy, ti), static_cast<std::uint32_t>(i));
    }
    atoms_.insert(atoms_.end(), atoms.begin(), atoms.end());
    layers_.push_back(std::move(layer));
}

std::span<const WaveAtom> FieldModel::pass_atoms(std::size_t p) const {
    const PassLayer& l = layers_[p];
    return {atoms_.data() + l.first, l.count};
}

StateZ FieldModel::atoms_eval(const Vec2& x, double t) const {
    StateZ sum;
    for (const PassLayer& layer : layers_) {
        const double inv_s = 1.0 / layer.s;
        const int zx = static_cast<int>(std::lround(x.x * inv_s));
        const int zy = static_cast<int>(std::lround(x.y * inv_s));
        const int p = ShiftedGrid::parity_of(zx, zy);
        const int ti = static_cast<int>(std::lround(t * inv_s - 0.5 * p));
        const auto it = layer.index.find(cube_key(zx, zy, ti));
        if (it == layer.index.end()) continue;
        sum += atom_eval(atoms_[layer.first + it->second], profile_, x, t);
    }
    return sum;
}

StateZ FieldModel::eval(const Vec2& x, double t) const {
    StateZ z = base_.eval(x, t);
    if (!layers_.empty()) z += atoms_eval(x, t);
    return z;
}

} // namespace mixlab

#include "mixlab/atoms_io.hpp"

#include <cstring>
#include <fstream>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

constexpr char kMagic[8] = {'M', 'I', 'X', 'L', 'A', 'B', '0', '1'};

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("truncated atoms file");
    return v;
}

void put_atom(std::ostream& out, const WaveAtom& a) {
    put(out, a.center.x);
    put(out, a.center.y);
    put(out, a.t_center);
    put(out, a.side_space);
    put(out, a.parity);
    put(out, a.direction.rho);
    put(out, a.direction.v.x);
    put(out, a.direction.v.y);
    put(out, a.direction.m.x);
    put(out, a.direction.m.y);
    put(out, a.freq.zeta.x);
    put(out, a.freq.zeta.y);
    put(out, a.freq.xi0);
    put(out, a.freq.b_coeff);
    put(out, a.k);
}

WaveAtom get_atom(std::istream& in) {
    WaveAtom a;
    a.center.x = get<double>(in);
    a.center.y = get<double>(in);
    a.t_center = get<double>(in);
    a.side_space = get<double>(in);
    a.side_time = a.side_space;
    a.parity = get<std::uint8_t>(in);
    a.direction.rho = get<double>(in);
    a.direction.v.x = get<double>(in);
    a.direction.v.y = get<double>(in);
    a.direction.m.x = get<double>(in);
    a.direction.m.y = get<double>(in);
    a.freq.zeta.x = get<double>(in);
    a.freq.zeta.y = get<double>(in);
    a.freq.xi0 = get<double>(in);
    a.freq.b_coeff = get<double>(in);
    a.k = get<std::uint32_t>(in);
    return a;
}

} // namespace

void write_atoms_file(const std::string& path, const FieldModel& field, const RunConfig& config,
                      std::uint64_t config_hash, double final_J) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write atoms file: " + path);
    out.write(kMagic, sizeof(kMagic));
    put(out, static_cast<std::uint32_t>(field.atoms().size()));
    put(out, static_cast<std::uint32_t>(field.pass_count()));
    put(out, config_hash);
    put(out, final_J);
    put(out, config.speed_c);
    put(out, config.M);
    put(out, config.margin_delta);
    put(out, config.window.space.lo.x);
    put(out, config.window.space.hi.x);
    put(out, config.window.space.lo.y);
    put(out, config.window.space.hi.y);
    put(out, config.window.t0);
    put(out, config.window.t1);
    put(out, static_cast<std::uint8_t>(config.interface_path.empty() ? 0 : 1));
    put(out, static_cast<std::uint8_t>(config.profile_name == "square3" ? 1 : 0));
    for (std::size_t p = 0; p < field.pass_count(); ++p) {
        put(out, field.pass_side(p));
        put(out, static_cast<std::uint32_t>(field.pass_atoms(p).size()));
    }
    for (std::size_t p = 0; p < field.pass_count(); ++p)
        for (const WaveAtom& a : field.pass_atoms(p)) put_atom(out, a);
    if (!out) throw IoError("write failure on atoms file: " + path);
}

AtomsFile read_atoms_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open atoms file: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not an atoms file (bad magic): " + path);

    AtomsFile file;
    file.header.n_atoms = get<std::uint32_t>(in);
    file.header.n_passes = get<std::uint32_t>(in);
    file.header.config_hash = get<std::uint64_t>(in);
    file.header.final_J = get<double>(in);
    file.header.speed_c = get<double>(in);
    file.header.M = get<double>(in);
    file.header.margin_delta = get<double>(in);
    for (double& w : file.header.window) w = get<double>(in);
    file.header.base_kind = get<std::uint8_t>(in);
    file.header.profile_id = get<std::uint8_t>(in);

    std::vector<std::uint32_t> counts(file.header.n_passes);
    for (std::uint32_t p = 0; p < file.header.n_passes; ++p) {
        const double s = get<double>(in);
        counts[p] = get<std::uint32_t>(in);
        file.passes.emplace_back(s, std::vector<WaveAtom>{});
    }
    std::uint64_t total = 0;
    for (std::uint32_t p = 0; p < file.header.n_passes; ++p) {
        auto& [s, atoms] = file.passes[p];
        atoms.reserve(counts[p]);
        for (std::uint32_t i = 0; i < counts[p]; ++i) atoms.push_back(get_atom(in));
        total += counts[p];
    }
    if (total != file.header.n_atoms) throw IoError("atoms file count mismatch");
    return file;
}

FieldModel field_from_atoms(const AtomsFile& file) {
    if (file.header.base_kind != 0)
        throw IoError("atoms file has a sampled base; rebuild it with the interface table");
    HullParams params{file.header.M, file.header.margin_delta};
    FieldModel field(SubsolutionField::flat(file.header.speed_c, file.header.window[5]), params,
                     Profile::by_name(file.profile_name()));
    for (const auto& [s, atoms] : file.passes) field.append_pass(s, atoms);
    return field;
}

} // namespace mixlab

#include "dcspec/field_io.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

namespace dcspec {

namespace {

static_assert(std::endian::native == std::endian::little, "field files are written little-endian");

constexpr const char* kFormat = "dcspec-field";
constexpr int kVersion = 1;

std::filesystem::path with_ext(std::filesystem::path p, const char* ext) {
    p.replace_extension(ext);
    return p;
}

}  // namespace

FieldFiles write_field(const std::filesystem::path& stem, const Field& f, const json& meta) {
    FieldFiles files{with_ext(stem, ".bin"), with_ext(stem, ".json")};
    if (files.data.has_parent_path()) std::filesystem::create_directories(files.data.parent_path());
    {
        std::ofstream out(files.data, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + files.data.string());
        out.write(reinterpret_cast<const char*>(f.data()),
                  static_cast<std::streamsize>(f.size() * sizeof(cplx)));
        if (!out) throw std::runtime_error("short write to " + files.data.string());
    }
    json side{{"format", kFormat},
              {"version", kVersion},
              {"data", files.data.filename().string()},
              {"dtype", "complex128"},
              {"layout", "site-major, component fastest, axis 0 slowest"},
              {"dims", f.lattice().dims},
              {"grid", f.grid()},
              {"ncomp", f.ncomp()},
              {"sites", f.sites()},
              {"bytes", f.size() * sizeof(cplx)},
              {"meta", meta}};
    write_json(files.sidecar, side);
    return files;
}

Field read_field(const std::filesystem::path& sidecarOrStem, json* meta) {
    const auto sidecar = with_ext(sidecarOrStem, ".json");
    const json side = read_json(sidecar);
    if (side.value("format", std::string{}) != kFormat) throw std::runtime_error(sidecar.string() + " is not a field sidecar");
    if (side.value("version", 0) != kVersion) throw std::runtime_error("unsupported field file version");

    Lattice lat{side.at("grid").get<GridSpec>(), side.at("dims").get<int>()};
    lat.validate();
    Field f(lat, side.at("ncomp").get<int>());

    const auto data = sidecar.parent_path() / side.at("data").get<std::string>();
    const auto bytes = f.size() * sizeof(cplx);
    if (std::filesystem::file_size(data) != bytes)
        throw std::runtime_error(data.string() + " does not match the size recorded in its sidecar");
    std::ifstream in(data, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + data.string());
    in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw std::runtime_error("short read from " + data.string());
    if (meta) *meta = side.value("meta", json::object());
    return f;
}

}  // namespace dcspec

#pragma once

#include <filesystem>

#include "dcspec/field.hpp"
#include "dcspec/report.hpp"

namespace dcspec {

// A field is stored as two files: `<stem>.bin` holds the raw complex128
// values (real, imaginary interleaved, little-endian, site-major with the
// component index fastest and lattice axis 0 slowest) and `<stem>.json`
// describes the lattice, the component count and free-form metadata.
struct FieldFiles {
    std::filesystem::path data;
    std::filesystem::path sidecar;
};

FieldFiles write_field(const std::filesystem::path& stem, const Field& f, const json& meta = json::object());

// Reads a field back from its sidecar path (or stem). Throws if the data
// file size does not match the sidecar.
Field read_field(const std::filesystem::path& sidecarOrStem, json* meta = nullptr);

}  // namespace dcspec

#pragma once

// Field serialization.
//
// CSV: a comment line "# geometry=<g> r_max=<x> n=<k>", the header "r,re_u,im_u",
// then one row per interior node.
//
// Binary snapshot (little endian):
//   char[8]  magic "HNLSSNAP"
//   uint32   version (1)
//   uint32   geometry (0 = hyperbolic, 1 = euclidean)
//   float64  r_max
//   int64    n
//   float64  2n values: (Re h_j, Im h_j), j = 1..n
// The reduced profile h is stored so that a snapshot round-trips bit-exactly.

#include <filesystem>

#include "hnls/radial_field.hpp"

namespace hnls::io {

void write_csv(const RadialField& f, const std::filesystem::path& path);
RadialField read_csv(const std::filesystem::path& path);

void write_snapshot(const RadialField& f, const std::filesystem::path& path);
RadialField read_snapshot(const std::filesystem::path& path);

}  // namespace hnls::io

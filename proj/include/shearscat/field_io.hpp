// Field persistence: .ssf binary format plus PGM export.
//
// File layout (little endian):
//   bytes  0..3   magic "SSF1"
//   bytes  4..7   u32 n
//   bytes  8..15  two reserved u32 words (zero)
//   then n*n entries of (f64 re, f64 im), row major.
// An optional JSON sidecar <path>.json records {"n":..,"domain":[-1,1]}.
#ifndef SHEARSCAT_FIELD_IO_HPP
#define SHEARSCAT_FIELD_IO_HPP

#include <string>

#include "shearscat/grid.hpp"

namespace shearscat {

void save_field(const std::string& path, const ComplexField& f, bool sidecar = true);
ComplexField load_field(const std::string& path);

// 8-bit P5 PGM of the real part (or |f| when magnitude is set), min-max scaled.
void save_pgm(const std::string& path, const ComplexField& f, bool magnitude = false);

} // namespace shearscat

#endif

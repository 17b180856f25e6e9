#pragma once

// JSON form of a CurDecomposition:
//
//   {"format":"fastcur.cur/1","algorithm":"fast_cur","rows":m,"cols":n,
//    "params":{"k":..,"eps":..,"eps0":..,"c1":..,"c2":..,"r1":..,"r2":..},
//    "col_indices":[..],"row_indices":[..],
//    "C":{"rows":..,"cols":..,"data":[row-major]},"U":{..},"R":{..}}
//
// The factor objects are present only when requested. Reals are written in
// scientific notation with 17 significant digits, which round-trips doubles.

#include <string>

#include "fastcur/cur.hpp"

namespace fastcur {

// "%.16e" formatting shared by every text writer in the library.
std::string format_real(double x);

std::string to_json(const CurDecomposition& dec, bool include_factors);

// Throws ParseError on malformed input. Factors absent from the text come back empty.
CurDecomposition decomposition_from_json(const std::string& text);

}  // namespace fastcur

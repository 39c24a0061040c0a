#pragma once

#include <string>

#include "matrix.hpp"

namespace latdist {

/** A basis file: the matrix whose columns generate the lattice, plus an
 *  optional human-readable label carried through from the file. */
struct MatrixFile {
    RatMatrix matrix;
    std::string label;
};

/** Parses a basis from text.  Two formats are accepted: the JSON object
 *  {"n": cols, "basis": [[entries...], ...], "label": optional} where each
 *  entry is a rational string like "-3/4" (plain JSON integers also work),
 *  and a bare whitespace grid of integers, one row per line.  The grid may
 *  be rectangular with at least as many rows as columns; the columns must
 *  be linearly independent.  Throws errc::parse on malformed input and
 *  errc::rank_deficient on dependent columns. */
MatrixFile parse_matrix_text(const std::string& text);

/** Renders a matrix as the JSON object format, entries as canonical
 *  rational strings.  An empty label is omitted. */
std::string matrix_file_json(const RatMatrix& m, const std::string& label = "");

/** Reads a whole file; throws errc::parse if it cannot be opened. */
std::string read_text_file(const std::string& path);

/** Writes text to a file; throws errc::parse on failure. */
void write_text_file(const std::string& path, const std::string& text);

/** 64-bit FNV-1a of the bytes, rendered as 16 lowercase hex digits. */
std::string fnv1a64_hex(const std::string& data);

/** Fixed rendering for floating-point report fields: 12 significant
 *  digits, so identical runs produce byte-identical reports. */
std::string format_double(double x);

}  // namespace latdist

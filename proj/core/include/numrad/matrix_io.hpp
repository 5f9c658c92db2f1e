#pragma once

// Matrix file format:
//   {"n": <int>, "entries": [[[re, im], ... n pairs], ... n rows]}
// Row-major; every complex entry is a two-element array of finite doubles.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "numrad/matrix.hpp"

namespace numrad {

/// Throws ParseError on malformed JSON, ragged rows, a wrong `n`, or
/// non-finite values.
ComplexMatrix parse_matrix_json(std::string_view text);

/// Reads and parses a matrix file; I/O failures are reported as ParseError
/// with the path in the message.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

std::string matrix_to_json(const ComplexMatrix& m);

} // namespace numrad

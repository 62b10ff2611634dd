#pragma once

#include <iosfwd>
#include <string>

#include "fiberscope/flag_complex.hpp"

namespace fiberscope {

// Plain-text complex format:
//
//   # comment
//   n <vertex_count>
//   e <i> <j>            (0-based, one line per edge)
//   label <i> <string>   (optional, rest of line)
//
// `write_complex` emits edges in lexicographic order so equal complexes
// serialize byte-identically.

FlagComplex read_complex(std::istream& in, std::size_t vertex_cap = FlagComplex::kDefaultVertexCap);
FlagComplex read_complex_file(const std::string& path,
                              std::size_t vertex_cap = FlagComplex::kDefaultVertexCap);
void write_complex(std::ostream& out, const FlagComplex& complex);
std::string to_text(const FlagComplex& complex);

/// 64-bit FNV-1a of the canonical unlabeled text form, as 16 hex digits.
std::string complex_hash(const FlagComplex& complex);

}  // namespace fiberscope

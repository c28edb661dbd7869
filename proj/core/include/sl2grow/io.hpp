#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "sl2grow/element_set.hpp"

namespace sl2grow {

/// Set files: a `p=<prime>` header, then one matrix per line in the
/// `[[a,b],[c,d]]` form. Blank lines and text after `#` are ignored.
void write_set(std::ostream& out, const ElementSet& s);
std::string format_set(const ElementSet& s);

/// Builds the group table for the header prime. Throws ParseError on
/// malformed input.
ElementSet read_set(std::istream& in, const TableOptions& opts = {});
ElementSet parse_set(std::string_view text, const TableOptions& opts = {});
/// Reads into an existing table; the header prime must match it.
ElementSet read_set(std::istream& in, const TablePtr& table);
ElementSet read_set_file(const std::string& path, const TableOptions& opts = {});

}  // namespace sl2grow

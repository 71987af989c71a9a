#pragma once

#include <string>
#include <string_view>

#include "magsq/array.hpp"

namespace magsq {

enum class Format { json, csv, latex, pretty };

/// Parse a format name ("json", "csv", "latex", "pretty").
Format parse_format(std::string_view name);

/// Cell syntax used by csv/latex/pretty: "(c1,...,ct)"; a single
/// coordinate prints bare in latex/pretty.
std::string format_element(const GroupElement& e, bool parenthesize_scalars = true);

/// Group literal "m1,m2,..." as used on the command line and in csv headers.
std::string group_literal(const AbelianGroup& g);
GroupPtr parse_group_literal(std::string_view text);

/**
 * json and csv round-trip through parse(); latex and pretty are
 * write-only. json embeds the freshly computed verification report.
 * csv layout: a "# group: m1,m2,..." header line, then one array row per
 * line with cells "(c1,...,ct)" separated by ';'.
 */
std::string serialize(const GroupArray& a, Format f);

/// Inverse of serialize for json and csv. Throws parse_error with the
/// offending text location on malformed input.
GroupArray parse(std::string_view text, Format f);

/// Guess json vs csv from the first significant byte.
Format sniff_format(std::string_view text);

} // namespace magsq

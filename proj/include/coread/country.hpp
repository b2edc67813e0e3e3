#ifndef COREAD_COUNTRY_HPP_
#define COREAD_COUNTRY_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace coread {

struct CountryEntry {
    std::string_view alpha2;
    std::string_view name; // official ISO short name
    std::span<const std::string_view> aliases;
};

// The bundled ISO country registry (237 entries).
std::span<const CountryEntry> iso_country_table();

struct NormalizedCountry {
    std::string value;       // alpha-2 code, or the original label verbatim
    bool recognized = false;
};

// Case-insensitive, whitespace-trimmed match on official name, alias, or
// the alpha-2 code itself. Unrecognized labels come back unchanged so they
// can still be analyzed as their own nodes.
NormalizedCountry normalize_country(std::string_view label);

// Official name for an alpha-2 code, if the code is in the registry.
std::optional<std::string_view> country_name(std::string_view alpha2);

} // namespace coread

#endif // COREAD_COUNTRY_HPP_

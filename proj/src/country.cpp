#include "coread/country.hpp"

#include <cctype>
#include <unordered_map>
#include <vector>

namespace coread {

namespace {

// Registry rows: alpha-2 code, official short name, pipe-separated aliases.
// Covers the ISO 3166-1 list minus a dozen uninhabited territories.
struct Row {
    const char* alpha2;
    const char* name;
    const char* aliases; // "a|b|c" or ""
};

constexpr Row kRows[] = {
    {"AD", "Andorra", ""},
    {"AE", "United Arab Emirates", "UAE"},
    {"AF", "Afghanistan", ""},
    {"AG", "Antigua and Barbuda", ""},
    {"AI", "Anguilla", ""},
    {"AL", "Albania", ""},
    {"AM", "Armenia", ""},
    {"AO", "Angola", ""},
    {"AR", "Argentina", ""},
    {"AS", "American Samoa", ""},
    {"AT", "Austria", ""},
    {"AU", "Australia", ""},
    {"AW", "Aruba", ""},
    {"AX", "Åland Islands", "Aland Islands"},
    {"AZ", "Azerbaijan", ""},
    {"BA", "Bosnia and Herzegovina", "Bosnia"},
    {"BB", "Barbados", ""},
    {"BD", "Bangladesh", ""},
    {"BE", "Belgium", ""},
    {"BF", "Burkina Faso", ""},
    {"BG", "Bulgaria", ""},
    {"BH", "Bahrain", ""},
    {"BI", "Burundi", ""},
    {"BJ", "Benin", ""},
    {"BL", "Saint Barthélemy", "Saint Barthelemy|St. Barthelemy"},
    {"BM", "Bermuda", ""},
    {"BN", "Brunei Darussalam", "Brunei"},
    {"BO", "Bolivia", "Bolivia, Plurinational State of|Plurinational State of Bolivia"},
    {"BQ", "Bonaire, Sint Eustatius and Saba", "Caribbean Netherlands"},
    {"BR", "Brazil", ""},
    {"BS", "Bahamas", "The Bahamas"},
    {"BT", "Bhutan", ""},
    {"BW", "Botswana", ""},
    {"BY", "Belarus", ""},
    {"BZ", "Belize", ""},
    {"CA", "Canada", ""},
    {"CD", "Congo, the Democratic Republic of the",
     "Democratic Republic of the Congo|DR Congo|Congo-Kinshasa|DRC"},
    {"CF", "Central African Republic", ""},
    {"CG", "Congo", "Republic of the Congo|Congo-Brazzaville"},
    {"CH", "Switzerland", ""},
    {"CI", "Côte d'Ivoire", "Cote d'Ivoire|Ivory Coast"},
    {"CK", "Cook Islands", ""},
    {"CL", "Chile", ""},
    {"CM", "Cameroon", ""},
    {"CN", "China", "People's Republic of China"},
    {"CO", "Colombia", ""},
    {"CR", "Costa Rica", ""},
    {"CU", "Cuba", ""},
    {"CV", "Cape Verde", "Cabo Verde"},
    {"CW", "Curaçao", "Curacao"},
    {"CY", "Cyprus", ""},
    {"CZ", "Czech Republic", "Czechia"},
    {"DE", "Germany", ""},
    {"DJ", "Djibouti", ""},
    {"DK", "Denmark", ""},
    {"DM", "Dominica", ""},
    {"DO", "Dominican Republic", ""},
    {"DZ", "Algeria", ""},
    {"EC", "Ecuador", ""},
    {"EE", "Estonia", ""},
    {"EG", "Egypt", ""},
    {"EH", "Western Sahara", ""},
    {"ER", "Eritrea", ""},
    {"ES", "Spain", ""},
    {"ET", "Ethiopia", ""},
    {"FI", "Finland", ""},
    {"FJ", "Fiji", ""},
    {"FK", "Falkland Islands (Malvinas)", "Falkland Islands"},
    {"FM", "Micronesia, Federated States of",
     "Micronesia|Federated States of Micronesia"},
    {"FO", "Faroe Islands", "Faeroe Islands"},
    {"FR", "France", ""},
    {"GA", "Gabon", ""},
    {"GB", "United Kingdom",
     "UK|Great Britain|United Kingdom of Great Britain and Northern Ireland"},
    {"GD", "Grenada", ""},
    {"GE", "Georgia", ""},
    {"GF", "French Guiana", ""},
    {"GG", "Guernsey", ""},
    {"GH", "Ghana", ""},
    {"GI", "Gibraltar", ""},
    {"GL", "Greenland", ""},
    {"GM", "Gambia", "The Gambia"},
    {"GN", "Guinea", ""},
    {"GP", "Guadeloupe", ""},
    {"GQ", "Equatorial Guinea", ""},
    {"GR", "Greece", ""},
    {"GT", "Guatemala", ""},
    {"GU", "Guam", ""},
    {"GW", "Guinea-Bissau", "Guinea Bissau"},
    {"GY", "Guyana", ""},
    {"HK", "Hong Kong", "Hong Kong SAR China"},
    {"HN", "Honduras", ""},
    {"HR", "Croatia", ""},
    {"HT", "Haiti", ""},
    {"HU", "Hungary", ""},
    {"ID", "Indonesia", ""},
    {"IE", "Ireland", "Republic of Ireland"},
    {"IL", "Israel", ""},
    {"IM", "Isle of Man", ""},
    {"IN", "India", ""},
    {"IQ", "Iraq", ""},
    {"IR", "Iran, Islamic Republic of", "Iran|Islamic Republic of Iran"},
    {"IS", "Iceland", ""},
    {"IT", "Italy", ""},
    {"JE", "Jersey", ""},
    {"JM", "Jamaica", ""},
    {"JO", "Jordan", ""},
    {"JP", "Japan", ""},
    {"KE", "Kenya", ""},
    {"KG", "Kyrgyzstan", "Kyrgyz Republic"},
    {"KH", "Cambodia", ""},
    {"KI", "Kiribati", ""},
    {"KM", "Comoros", ""},
    {"KN", "Saint Kitts and Nevis", "St. Kitts and Nevis"},
    {"KP", "Korea, Democratic People's Republic of",
     "North Korea|Democratic People's Republic of Korea"},
    {"KR", "Korea, Republic of", "South Korea|Republic of Korea|Korea"},
    {"KW", "Kuwait", ""},
    {"KY", "Cayman Islands", ""},
    {"KZ", "Kazakhstan", ""},
    {"LA", "Lao People's Democratic Republic", "Laos|Lao PDR"},
    {"LB", "Lebanon", ""},
    {"LC", "Saint Lucia", "St. Lucia"},
    {"LI", "Liechtenstein", ""},
    {"LK", "Sri Lanka", ""},
    {"LR", "Liberia", ""},
    {"LS", "Lesotho", ""},
    {"LT", "Lithuania", ""},
    {"LU", "Luxembourg", ""},
    {"LV", "Latvia", ""},
    {"LY", "Libya", "Libyan Arab Jamahiriya"},
    {"MA", "Morocco", ""},
    {"MC", "Monaco", ""},
    {"MD", "Moldova, Republic of", "Moldova|Republic of Moldova"},
    {"ME", "Montenegro", ""},
    {"MF", "Saint Martin (French part)", "Saint Martin"},
    {"MG", "Madagascar", ""},
    {"MH", "Marshall Islands", ""},
    {"MK", "Macedonia, the former Yugoslav Republic of",
     "Macedonia|North Macedonia|FYROM"},
    {"ML", "Mali", ""},
    {"MM", "Myanmar", "Burma"},
    {"MN", "Mongolia", ""},
    {"MO", "Macao", "Macau|Macao SAR China"},
    {"MP", "Northern Mariana Islands", ""},
    {"MQ", "Martinique", ""},
    {"MR", "Mauritania", ""},
    {"MS", "Montserrat", ""},
    {"MT", "Malta", ""},
    {"MU", "Mauritius", ""},
    {"MV", "Maldives", ""},
    {"MW", "Malawi", ""},
    {"MX", "Mexico", ""},
    {"MY", "Malaysia", ""},
    {"MZ", "Mozambique", ""},
    {"NA", "Namibia", ""},
    {"NC", "New Caledonia", ""},
    {"NE", "Niger", ""},
    {"NG", "Nigeria", ""},
    {"NI", "Nicaragua", ""},
    {"NL", "Netherlands", "The Netherlands|Holland"},
    {"NO", "Norway", ""},
    {"NP", "Nepal", ""},
    {"NR", "Nauru", ""},
    {"NU", "Niue", ""},
    {"NZ", "New Zealand", ""},
    {"OM", "Oman", ""},
    {"PA", "Panama", ""},
    {"PE", "Peru", ""},
    {"PF", "French Polynesia", ""},
    {"PG", "Papua New Guinea", ""},
    {"PH", "Philippines", "The Philippines"},
    {"PK", "Pakistan", ""},
    {"PL", "Poland", ""},
    {"PM", "Saint Pierre and Miquelon", ""},
    {"PR", "Puerto Rico", ""},
    {"PS", "Palestine, State of",
     "Palestine|State of Palestine|Palestinian Territory|Palestinian Territories"},
    {"PT", "Portugal", ""},
    {"PW", "Palau", ""},
    {"PY", "Paraguay", ""},
    {"QA", "Qatar", ""},
    {"RE", "Réunion", "Reunion"},
    {"RO", "Romania", ""},
    {"RS", "Serbia", ""},
    {"RU", "Russian Federation", "Russia"},
    {"RW", "Rwanda", ""},
    {"SA", "Saudi Arabia", ""},
    {"SB", "Solomon Islands", ""},
    {"SC", "Seychelles", ""},
    {"SD", "Sudan", ""},
    {"SE", "Sweden", ""},
    {"SG", "Singapore", ""},
    {"SH", "Saint Helena, Ascension and Tristan da Cunha", "Saint Helena"},
    {"SI", "Slovenia", ""},
    {"SK", "Slovakia", "Slovak Republic"},
    {"SL", "Sierra Leone", ""},
    {"SM", "San Marino", ""},
    {"SN", "Senegal", ""},
    {"SO", "Somalia", ""},
    {"SR", "Suriname", ""},
    {"SS", "South Sudan", ""},
    {"ST", "Sao Tome and Principe", "São Tomé and Príncipe"},
    {"SV", "El Salvador", ""},
    {"SX", "Sint Maarten (Dutch part)", "Sint Maarten"},
    {"SY", "Syrian Arab Republic", "Syria"},
    {"SZ", "Swaziland", "Eswatini"},
    {"TC", "Turks and Caicos Islands", ""},
    {"TD", "Chad", ""},
    {"TG", "Togo", ""},
    {"TH", "Thailand", ""},
    {"TJ", "Tajikistan", ""},
    {"TK", "Tokelau", ""},
    {"TL", "Timor-Leste", "East Timor"},
    {"TM", "Turkmenistan", ""},
    {"TN", "Tunisia", ""},
    {"TO", "Tonga", ""},
    {"TR", "Turkey", "Turkiye|Türkiye"},
    {"TT", "Trinidad and Tobago", ""},
    {"TV", "Tuvalu", ""},
    {"TW", "Taiwan, Province of China", "Taiwan|Republic of China"},
    {"TZ", "Tanzania, United Republic of", "Tanzania|United Republic of Tanzania"},
    {"UA", "Ukraine", ""},
    {"UG", "Uganda", ""},
    {"US", "United States", "United States of America|USA|U.S.A.|America"},
    {"UY", "Uruguay", ""},
    {"UZ", "Uzbekistan", ""},
    {"VA", "Holy See (Vatican City State)",
     "Holy See (Vatican City)|Vatican City|Holy See|Vatican"},
    {"VC", "Saint Vincent and the Grenadines", "St. Vincent and the Grenadines"},
    {"VE", "Venezuela", "Venezuela, Bolivarian Republic of|Bolivarian Republic of Venezuela"},
    {"VG", "Virgin Islands, British", "British Virgin Islands"},
    {"VI", "Virgin Islands, U.S.", "U.S. Virgin Islands|US Virgin Islands"},
    {"VN", "Viet Nam", "Vietnam"},
    {"VU", "Vanuatu", ""},
    {"WF", "Wallis and Futuna", ""},
    {"WS", "Samoa", "Western Samoa"},
    {"YE", "Yemen", ""},
    {"YT", "Mayotte", ""},
    {"ZA", "South Africa", ""},
    {"ZM", "Zambia", ""},
    {"ZW", "Zimbabwe", ""},
};

std::string fold_key(std::string_view s) {
    // trim
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    std::string out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
    return out;
}

struct Tables {
    std::vector<std::vector<std::string_view>> alias_lists;
    std::vector<CountryEntry> entries;
    std::unordered_map<std::string, const CountryEntry*> lookup;
};

Tables build_tables() {
    Tables t;
    const std::size_t n = std::size(kRows);
    t.alias_lists.resize(n);
    t.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string_view aliases = kRows[i].aliases;
        std::size_t start = 0;
        while (start < aliases.size()) {
            std::size_t bar = aliases.find('|', start);
            if (bar == std::string_view::npos)
                bar = aliases.size();
            t.alias_lists[i].push_back(aliases.substr(start, bar - start));
            start = bar + 1;
        }
        t.entries.push_back({kRows[i].alpha2, kRows[i].name, t.alias_lists[i]});
    }
    for (const auto& entry : t.entries) {
        t.lookup.emplace(fold_key(entry.alpha2), &entry);
        t.lookup.emplace(fold_key(entry.name), &entry);
        for (auto alias : entry.aliases)
            t.lookup.emplace(fold_key(alias), &entry);
    }
    return t;
}

const Tables& tables() {
    static const Tables t = build_tables();
    return t;
}

} // namespace

std::span<const CountryEntry> iso_country_table() {
    return tables().entries;
}

NormalizedCountry normalize_country(std::string_view label) {
    const auto& t = tables();
    auto it = t.lookup.find(fold_key(label));
    if (it == t.lookup.end())
        return {std::string(label), false};
    return {std::string(it->second->alpha2), true};
}

std::optional<std::string_view> country_name(std::string_view alpha2) {
    const auto& t = tables();
    auto it = t.lookup.find(fold_key(alpha2));
    if (it == t.lookup.end())
        return std::nullopt;
    return it->second->name;
}

} // namespace coread

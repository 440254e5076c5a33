/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "core/textconfig.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace pp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<ConfigEntry> parse_config_text(const std::string& text,
                                           const std::string& origin) {
    std::vector<ConfigEntry> entries;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                raise(ErrorCode::ParseError,
                      origin + ":" + std::to_string(lineno) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            entries.push_back({section, "", "", lineno});  // section marker
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            raise(ErrorCode::ParseError,
                  origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        ConfigEntry entry;
        entry.section = section;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = lineno;
        if (entry.key.empty()) {
            raise(ErrorCode::ParseError,
                  origin + ":" + std::to_string(lineno) + ": empty key");
        }
        entries.push_back(entry);
    }
    return entries;
}

std::vector<ConfigEntry> parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, path + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::optional<std::string> ConfigView::find(const std::string& section,
                                            const std::string& key) const {
    for (const auto& e : entries_) {
        if (e.key.empty()) continue;
        if (!section.empty() && e.section != section) continue;
        if (e.key == key) return e.value;
    }
    return std::nullopt;
}

double ConfigView::require_double(const std::string& section, const std::string& key) const {
    auto v = find(section, key);
    if (!v) raise(ErrorCode::ParseError, "missing required key '" + key + "'");
    return parse_double_value(*v, key);
}

double ConfigView::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    auto v = find(section, key);
    return v ? parse_double_value(*v, key) : fallback;
}

long long ConfigView::get_int(const std::string& section, const std::string& key,
                              long long fallback) const {
    auto v = find(section, key);
    return v ? parse_int_value(*v, key) : fallback;
}

bool ConfigView::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    auto v = find(section, key);
    return v ? parse_bool_value(*v, key) : fallback;
}

double parse_double_value(const std::string& value, const std::string& context) {
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        raise(ErrorCode::ParseError, "'" + context + "': not a number: " + value);
    }
    return parsed;
}

long long parse_int_value(const std::string& value, const std::string& context) {
    char* end = nullptr;
    const long long parsed = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        raise(ErrorCode::ParseError, "'" + context + "': not an integer: " + value);
    }
    return parsed;
}

bool parse_bool_value(const std::string& value, const std::string& context) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    raise(ErrorCode::ParseError, "'" + context + "': not a boolean: " + value);
}

} // namespace pp

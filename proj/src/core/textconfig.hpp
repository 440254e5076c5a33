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
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pp {

// Minimal sectioned key=value format shared by config and scene files.
// '#' starts a comment, '[name]' opens a section (sections may repeat),
// keys are 'key = value'. Entries keep file order.

struct ConfigEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::vector<ConfigEntry> parse_config_text(const std::string& text,
                                           const std::string& origin);
std::vector<ConfigEntry> parse_config_file(const std::string& path);

/// Lookup helpers over a parsed entry list. Section "" matches any section.
class ConfigView {
public:
    explicit ConfigView(const std::vector<ConfigEntry>& entries) : entries_(entries) {}

    std::optional<std::string> find(const std::string& section, const std::string& key) const;
    double require_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

private:
    const std::vector<ConfigEntry>& entries_;
};

double parse_double_value(const std::string& value, const std::string& context);
long long parse_int_value(const std::string& value, const std::string& context);
bool parse_bool_value(const std::string& value, const std::string& context);

} // namespace pp
